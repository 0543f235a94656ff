#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <fstream>

#include "bern/cache.hpp"

using namespace bern;

namespace {

struct TempFile {
    std::string path;
    explicit TempFile(const char* name) : path(std::string("bern_test_") + name) {}
    ~TempFile() { std::remove(path.c_str()); }
};

}  // namespace

TEST_CASE("cache round-trips records unchanged") {
    TempFile f("roundtrip.cache");
    std::vector<PairCacheRecord> recs;
    for (u64 p : {37ull, 59ull, 67ull, 101ull, 103ull, 131ull, 149ull, 157ull})
        for (const auto& pr : scan_irregular(p))
            recs.push_back(make_cache_record(p, pr.l, 3));
    REQUIRE(recs.size() >= 9);
    cache_write(f.path, recs, false);
    CHECK(cache_read(f.path) == recs);

    // append keeps earlier records
    cache_write(f.path, {make_cache_record(233, 84, 2)});
    auto all = cache_read(f.path);
    REQUIRE(all.size() == recs.size() + 1);
    CHECK(all.back().p == 233);
}

TEST_CASE("tampered digits are rejected with the offending line") {
    TempFile f("tamper.cache");
    cache_write(f.path, {make_cache_record(37, 32, 2), make_cache_record(157, 62, 2)}, false);
    std::string text;
    {
        std::ifstream in(f.path);
        std::string line;
        while (std::getline(in, line)) {
            auto pos = line.find("digits=62,40");
            if (pos != std::string::npos) line.replace(pos, 12, "digits=62,41");
            text += line + '\n';
        }
    }
    {
        std::ofstream out(f.path, std::ios::trunc);
        out << text;
    }
    CHECK_THROWS_WITH(cache_read(f.path), Catch::Matchers::ContainsSubstring("line 2"));
}

TEST_CASE("malformed records name the offending line") {
    TempFile f("malformed.cache");
    {
        std::ofstream out(f.path);
        out << "p=37 order=1 digits=32 delta=21 backend=exact\n";
        out << "p=37 order=2 digits=32 delta=21 backend=exact\n";  // order/digit mismatch
    }
    CHECK_THROWS_WITH(cache_read(f.path), Catch::Matchers::ContainsSubstring("line 2"));
    {
        std::ofstream out(f.path, std::ios::trunc);
        out << "p=37 order=1 digits=3x delta=21 backend=exact\n";
    }
    CHECK_THROWS_WITH(cache_read(f.path), Catch::Matchers::ContainsSubstring("line 1"));
}

TEST_CASE("empty files and comments load as empty sets") {
    TempFile f("empty.cache");
    {
        std::ofstream out(f.path);
        out << "# header only\n\n";
    }
    CHECK(cache_read(f.path).empty());
    CHECK_THROWS_AS(cache_read("does_not_exist.cache"), CacheError);
}
