#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "lmt/errors.hpp"
#include "lmt/sieve.hpp"
#include "oracles.hpp"

using namespace lmt;

namespace {

const FactorSignTable& million_table() {
    static FactorSignTable table = [] {
        SieveConfig config;
        config.limit = 1'001'000;
        return sieve_range(config);
    }();
    return table;
}

} // namespace

TEST_SUITE_BEGIN("sieve");

TEST_CASE("factor_oracle handles small hand-checked values") {
    NValues one = factor_oracle(1);
    CHECK(*one.omega == 0);
    CHECK(one.lambda == 1);
    CHECK(one.square_free);

    NValues thirty = factor_oracle(30); // 2*3*5
    CHECK(*thirty.omega == 3);
    CHECK(thirty.lambda == -1);
    CHECK(thirty.square_free);
    CHECK(thirty.mu() == -1);

    NValues hundred = factor_oracle(100); // 2^2 * 5^2
    CHECK(*hundred.omega == 4);
    CHECK(hundred.lambda == 1);
    CHECK_FALSE(hundred.square_free);
    CHECK(hundred.mu() == 0);

    NValues twelve = factor_oracle(12); // 2^2 * 3
    CHECK(*twelve.omega == 3);
    CHECK(twelve.lambda == -1);
    CHECK_FALSE(twelve.square_free);

    CHECK_THROWS_AS(factor_oracle(0), InvalidArgumentError);
}

TEST_CASE("sieve matches trial division on every channel up to 1e5") {
    SieveConfig config;
    config.limit = 100'000;
    config.include_omega = true;
    FactorSignTable table = sieve_range(config);
    for (std::uint64_t n = 1; n <= config.limit; ++n) {
        NValues expect = factor_oracle(n);
        NValues got = table.query(n);
        REQUIRE(got.lambda == expect.lambda);
        REQUIRE(got.square_free == expect.square_free);
        REQUIRE(*got.omega == *expect.omega);
    }
}

TEST_CASE("summatory Liouville values at powers of ten") {
    const auto& table = million_table();
    std::int64_t sums[3] = {0, 0, 0};
    std::int64_t running = 0;
    for (std::uint64_t n = 1; n <= 1'000'000; ++n) {
        running += table.lambda_at(n);
        if (n == 10'000) sums[0] = running;
        if (n == 100'000) sums[1] = running;
        if (n == 1'000'000) sums[2] = running;
    }
    CHECK(sums[0] == -94);
    CHECK(sums[1] == -288);
    CHECK(sums[2] == -530);
}

TEST_CASE("summatory Liouville at 1e6 cross-checked by trial division") {
    std::int64_t by_oracle = 0;
    for (std::uint64_t n = 1; n <= 1'000'000; ++n) by_oracle += factor_oracle(n).lambda;
    CHECK(by_oracle == -530);
}

TEST_CASE("square-free count at 1e4") {
    const auto& table = million_table();
    std::uint64_t count = 0;
    for (std::uint64_t n = 1; n <= 10'000; ++n) count += table.square_free_at(n);
    CHECK(count == 6083);
}

TEST_CASE("lambda is completely multiplicative on random pairs") {
    const auto& table = million_table();
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<std::uint64_t> dist(1, 1000);
    for (int k = 0; k < 500; ++k) {
        std::uint64_t a = dist(rng), b = dist(rng);
        REQUIRE(table.lambda_at(a * b) == table.lambda_at(a) * table.lambda_at(b));
    }
}

TEST_CASE("square-free density approaches 6/pi^2") {
    const auto& table = million_table();
    std::uint64_t count = 0, next_x = 10'000;
    for (std::uint64_t n = 1; n <= 1'000'000; ++n) {
        count += table.square_free_at(n);
        if (n == next_x) {
            double density = static_cast<double>(count) / static_cast<double>(n);
            double bound = 3.0 / std::sqrt(static_cast<double>(n));
            CHECK(std::abs(density - 6.0 / (std::numbers::pi * std::numbers::pi)) < bound);
            next_x *= 10;
        }
    }
}

TEST_CASE("segment size and thread count never change the output") {
    SieveConfig base;
    base.limit = 300'000;
    FactorSignTable reference = sieve_range(base);
    for (std::uint64_t seg : {std::uint64_t{1}, std::uint64_t{1000}, std::uint64_t{4096},
                              std::uint64_t{65536}, base.limit}) {
        SieveConfig config = base;
        config.segment_size = seg;
        CHECK(sieve_range(config) == reference);
    }
    SieveConfig threaded = base;
    threaded.threads = 3;
    threaded.segment_size = 10'000;
    CHECK(sieve_range(threaded) == reference);

    SieveConfig with_omega = base;
    with_omega.include_omega = true;
    FactorSignTable omega_ref = sieve_range(with_omega);
    with_omega.segment_size = 777;
    with_omega.threads = 2;
    CHECK(sieve_range(with_omega) == omega_ref);
}

TEST_CASE("config validation") {
    SieveConfig config;
    config.limit = 0;
    CHECK_THROWS_AS(sieve_range(config), InvalidArgumentError);

    config.limit = 100;
    config.segment_size = 0;
    CHECK_THROWS_AS(sieve_range(config), InvalidArgumentError);

    SieveConfig tiny_budget;
    tiny_budget.limit = 1'000'000;
    tiny_budget.memory_budget_bytes = 1024;
    CHECK_THROWS_WITH_AS(sieve_range(tiny_budget),
                         doctest::Contains("memory budget of 1024 bytes"), ResourceError);

    SieveConfig huge;
    huge.limit = 1ull << 32;
    huge.memory_budget_bytes = ~0ull;
    CHECK_THROWS_AS(sieve_range(huge), InvalidArgumentError);
}

TEST_CASE("factor oracle at 1e8: 2^8 * 5^8") {
    NValues v = factor_oracle(100'000'000);
    CHECK(*v.omega == 16);
    CHECK(v.lambda == 1);
    CHECK_FALSE(v.square_free);
}

TEST_CASE("n=1 is the empty factorization") {
    SieveConfig config;
    config.limit = 1;
    config.include_omega = true;
    FactorSignTable table = sieve_range(config);
    NValues v = table.query(1);
    CHECK(*v.omega == 0);
    CHECK(v.lambda == 1);
    CHECK(v.square_free);
    CHECK(v.mu() == 1);
}

TEST_CASE("primes_up_to") {
    CHECK(primes_up_to(1).empty());
    CHECK(primes_up_to(10) == std::vector<std::uint64_t>{2, 3, 5, 7});
    CHECK(primes_up_to(1'000'000).size() == 78498);
}

TEST_SUITE_END();
