#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "lmt/errors.hpp"
#include "lmt/sieve.hpp"
#include "lmt/table_io.hpp"
#include "oracles.hpp"

using namespace lmt;

TEST_SUITE_BEGIN("table_io");

TEST_CASE("file length is 32 + ceil(count/4) + optional omega bytes") {
    std::mt19937_64 rng(11);
    FactorSignTable four = oracles::random_table(rng, 4, false);
    std::stringstream out;
    CHECK(save(four, out) == 33);
    CHECK(out.str().size() == 33);

    for (std::uint64_t count : {1ull, 3ull, 5ull, 64ull, 65ull, 1000ull}) {
        for (bool with_omega : {false, true}) {
            FactorSignTable t = oracles::random_table(rng, count, with_omega);
            std::stringstream ss;
            std::uint64_t written = save(t, ss);
            CHECK(written == file_size_for(count, with_omega));
            CHECK(ss.str().size() == written);
        }
    }
    CHECK(file_size_for(100'000'000, false) == 32 + 25'000'000);
}

TEST_CASE("round-trip is bit-exact on random tables") {
    std::mt19937_64 rng(23);
    std::uniform_int_distribution<std::uint64_t> size_dist(1, 300);
    for (int k = 0; k < 50; ++k) {
        FactorSignTable t = oracles::random_table(rng, size_dist(rng), k % 2 == 0);
        std::stringstream ss;
        save(t, ss);
        FactorSignTable back = load(ss);
        REQUIRE(back == t);
    }
}

TEST_CASE("round-trip of a sieved table through a file") {
    SieveConfig config;
    config.limit = 100'000;
    config.include_omega = true;
    FactorSignTable t = sieve_range(config);

    auto path = std::filesystem::temp_directory_path() / "lmt_io_test.lmt";
    std::uint64_t written = save_file(t, path);
    CHECK(written == std::filesystem::file_size(path));
    FactorSignTable back = load_file(path);
    CHECK(back == t);
    CHECK(*back.query(12).omega == 3);
    CHECK(back.query(4).lambda == 1);
    CHECK_FALSE(back.query(4).square_free);
    CHECK(back.query(4).mu() == 0);
    std::filesystem::remove(path);
}

TEST_CASE("derived mu is never nonzero without the square-free flag") {
    std::mt19937_64 rng(31);
    FactorSignTable t = oracles::random_table(rng, 500, false);
    for (std::uint64_t n = 1; n <= 500; ++n) {
        NValues v = t.query(n);
        if (!v.square_free) REQUIRE(v.mu() == 0);
        if (v.square_free) REQUIRE(v.mu() == v.lambda);
    }
}

TEST_CASE("format errors") {
    std::mt19937_64 rng(43);
    FactorSignTable t = oracles::random_table(rng, 20, true);
    std::stringstream good;
    save(t, good);
    std::string bytes = good.str();

    SUBCASE("corrupt magic") {
        std::string corrupt = bytes;
        corrupt[0] = 'X';
        std::stringstream in(corrupt);
        CHECK_THROWS_AS(load(in), FormatError);
    }
    SUBCASE("unsupported version") {
        std::string corrupt = bytes;
        corrupt[4] = 9;
        std::stringstream in(corrupt);
        CHECK_THROWS_AS(load(in), FormatError);
    }
    SUBCASE("unknown flag bits") {
        std::string corrupt = bytes;
        corrupt[25] = 1;
        std::stringstream in(corrupt);
        CHECK_THROWS_AS(load(in), FormatError);
    }
    SUBCASE("truncated payload names byte counts") {
        std::string corrupt = bytes.substr(0, 34);
        std::stringstream in(corrupt);
        try {
            load(in);
            FAIL("expected FormatError");
        } catch (const FormatError& e) {
            std::string what = e.what();
            CHECK(what.find("expected") != std::string::npos);
            CHECK(what.find("got") != std::string::npos);
        }
    }
    SUBCASE("trailing bytes rejected") {
        std::string corrupt = bytes + "x";
        std::stringstream in(corrupt);
        CHECK_THROWS_AS(load(in), FormatError);
    }
    SUBCASE("declared count zero") {
        std::string corrupt = bytes;
        for (int i = 16; i < 24; ++i) corrupt[i] = 0;
        std::stringstream in(corrupt);
        CHECK_THROWS_AS(load(in), FormatError);
    }
    SUBCASE("file size mismatch detected before reading") {
        auto path = std::filesystem::temp_directory_path() / "lmt_truncated.lmt";
        std::ofstream out(path, std::ios::binary);
        out << bytes.substr(0, bytes.size() - 3);
        out.close();
        CHECK_THROWS_AS(load_file(path), FormatError);
        std::filesystem::remove(path);
    }
}

TEST_CASE("saving an empty table is invalid") {
    FactorSignTable empty;
    std::stringstream ss;
    CHECK_THROWS_AS(save(empty, ss), InvalidArgumentError);
}

TEST_CASE("sink write failure raises an I/O error") {
    std::mt19937_64 rng(47);
    FactorSignTable t = oracles::random_table(rng, 100, false);
    std::stringstream broken;
    broken.setstate(std::ios::badbit);
    CHECK_THROWS_AS(save(t, broken), IoError);
}

TEST_CASE("save rejects a sign bit inconsistent with omega parity") {
    std::mt19937_64 rng(57);
    FactorSignTable t = oracles::random_table(rng, 32, true);
    t.mutable_omega_bytes()[5] += 1; // break parity at n=6
    std::stringstream ss;
    CHECK_THROWS_AS(save(t, ss), InvalidArgumentError);
}

TEST_CASE("query outside coverage names the interval") {
    std::mt19937_64 rng(61);
    FactorSignTable t = oracles::random_table(rng, 10, false);
    CHECK_THROWS_AS(t.query(0), RangeError);
    CHECK_THROWS_AS(t.query(11), RangeError);
    try {
        t.query(11);
    } catch (const RangeError& e) {
        std::string what = e.what();
        CHECK(what.find("[1, 10]") != std::string::npos);
    }
}

TEST_SUITE_END();
