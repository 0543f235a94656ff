#pragma once

// Flat-text persistence for lifted pair chains. One record per line:
//
//   p=157 order=2 digits=62,40 delta=33 backend=exact
//
// Files are append-only and order-independent; every record re-verifies its
// order-1 divisibility on load.

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "bern/arith.hpp"
#include "bern/pairs.hpp"
#include "bern/zeta.hpp"

namespace bern {

struct PairCacheRecord {
    u64 p;
    std::vector<u64> digits;
    u64 delta;            // order-1 Delta
    std::string backend;  // provenance tag, e.g. "exact", "voronoi", "zeta"

    unsigned order() const { return static_cast<unsigned>(digits.size()); }

    bool operator==(const PairCacheRecord&) const = default;
};

struct CacheError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace detail {

inline std::string format_record(const PairCacheRecord& rec) {
    std::ostringstream os;
    os << "p=" << rec.p << " order=" << rec.order() << " digits=";
    for (std::size_t i = 0; i < rec.digits.size(); ++i) {
        if (i) os << ',';
        os << rec.digits[i];
    }
    os << " delta=" << rec.delta << " backend=" << rec.backend;
    return os.str();
}

inline PairCacheRecord parse_record(const std::string& line, unsigned long lineno) {
    auto fail = [lineno](const std::string& why) -> CacheError {
        return CacheError("pair cache line " + std::to_string(lineno) + ": " + why);
    };
    PairCacheRecord rec{};
    unsigned long order = 0;
    bool have_p = false, have_order = false, have_digits = false, have_delta = false;
    std::istringstream is(line);
    std::string field;
    while (is >> field) {
        auto eq = field.find('=');
        if (eq == std::string::npos) throw fail("malformed field '" + field + "'");
        std::string key = field.substr(0, eq);
        std::string val = field.substr(eq + 1);
        try {
            if (key == "p") { rec.p = std::stoull(val); have_p = true; }
            else if (key == "order") { order = std::stoul(val); have_order = true; }
            else if (key == "digits") {
                std::istringstream ds(val);
                std::string tok;
                while (std::getline(ds, tok, ',')) rec.digits.push_back(std::stoull(tok));
                have_digits = true;
            }
            else if (key == "delta") { rec.delta = std::stoull(val); have_delta = true; }
            else if (key == "backend") { rec.backend = val; }
            else throw fail("unknown field '" + key + "'");
        } catch (const std::invalid_argument&) {
            throw fail("non-numeric value in '" + field + "'");
        } catch (const std::out_of_range&) {
            throw fail("value out of range in '" + field + "'");
        }
    }
    if (!have_p || !have_order || !have_digits || !have_delta)
        throw fail("missing required field");
    if (order != rec.digits.size()) throw fail("order does not match digit count");
    return rec;
}

}  // namespace detail

inline void cache_write(const std::string& path, const std::vector<PairCacheRecord>& records,
                        bool append = true) {
    std::ofstream out(path, append ? std::ios::app : std::ios::trunc);
    if (!out) throw CacheError("pair cache: cannot open '" + path + "' for writing");
    for (const auto& rec : records) out << detail::format_record(rec) << '\n';
    if (!out) throw CacheError("pair cache: write to '" + path + "' failed");
}

// Loads all records; each is re-verified: digit ranges, Delta consistency
// and the order-1 divisibility p | B_{s_1}/s_1.
inline std::vector<PairCacheRecord> cache_read(const std::string& path,
                                               const DividedModFn& eval = divided_mod_auto) {
    std::ifstream in(path);
    if (!in) throw CacheError("pair cache: cannot open '" + path + "'");
    std::vector<PairCacheRecord> out;
    std::string line;
    unsigned long lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        PairCacheRecord rec = detail::parse_record(line, lineno);
        PairDigits pd{rec.p, rec.digits};
        try {
            validate_digits(pd);
            // full-order divisibility p^n | B_{l_n}/l_n catches any altered digit
            Int l = index_from_digits(pd);
            unsigned n = pd.order();
            Int v;
            try {
                v = eval(l, rec.p, n);
            } catch (const BudgetExceeded&) {
                v = zeta_backend(rec.p, pd.digits[0], n)(l, rec.p, n);
            }
            if (mod_reduce(v, pow_int(Int(rec.p), n)) != 0)
                throw std::logic_error("stored digits fail the divisibility test");
            DeltaValue dv = delta(PairDigits{rec.p, {pd.digits[0]}}, eval);
            if (dv.value != rec.delta) throw std::logic_error("stored Delta mismatches");
        } catch (const std::exception& e) {
            throw CacheError("pair cache line " + std::to_string(lineno) +
                             ": verification failed: " + e.what());
        }
        out.push_back(rec);
    }
    return out;
}

inline PairCacheRecord make_cache_record(u64 p, unsigned long l, unsigned order,
                                         const std::string& backend = "exact",
                                         const DividedModFn& eval = divided_mod_auto) {
    PairDigits pd = lift_to_order(p, l, order, eval);
    DeltaValue dv = delta(PairDigits{p, {l}}, eval);
    return {p, pd.digits, dv.value, backend};
}

}  // namespace bern
