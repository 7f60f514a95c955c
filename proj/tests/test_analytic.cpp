#include <doctest.h>

#include <cmath>
#include <numbers>

#include "lmt/analytic.hpp"
#include "lmt/errors.hpp"
#include "lmt/sieve.hpp"
#include "oracles.hpp"

using namespace lmt;

namespace {
constexpr double kPi2Over6 = std::numbers::pi * std::numbers::pi / 6.0;
}

TEST_SUITE_BEGIN("analytic");

TEST_CASE("residue class counts modulo p^2") {
    std::int64_t s01[] = {0, 1};
    std::int64_t s04[] = {0, 4};
    CHECK(residue_class_count(s01, 2) == 2);
    CHECK(residue_class_count(s04, 2) == 1); // 4 ≡ 0 mod 4
    CHECK(residue_class_count(s04, 3) == 2); // 4 ≢ 0 mod 9
    std::int64_t neg[] = {-4, 0};
    CHECK(residue_class_count(neg, 2) == 1);
    CHECK_THROWS_AS(residue_class_count(s01, 4), InvalidArgumentError);
    CHECK_THROWS_AS(residue_class_count(std::span<const std::int64_t>{}, 2),
                    InvalidArgumentError);
}

TEST_CASE("stabilized factors: u(p) = r once p^2 exceeds the largest difference") {
    std::int64_t shifts[] = {0, 12, 30};
    for (std::uint64_t p : {7ull, 11ull, 101ull}) // p² > 30
        CHECK(residue_class_count(shifts, p) == 3);
}

TEST_CASE("single shift product converges to 6/pi^2") {
    std::int64_t zero[] = {0};
    EulerProductValue v = euler_product_A(zero, 1'000'000);
    CHECK(std::abs(v.value - kSquareFreeDensity) < 1e-6);
    CHECK(v.value > kSquareFreeDensity); // truncation only removes factors < 1
    CHECK(v.truncation_prime == 999'983);
    CHECK(v.tail_bound == doctest::Approx(2e-6));
}

TEST_CASE("pair product matches the factor-by-factor oracle") {
    std::vector<std::int64_t> shifts = {0, 1};
    EulerProductValue v = euler_product_A(shifts, 100'000);
    double direct = oracles::euler_product_direct(shifts, 100'000);
    CHECK(v.value == doctest::Approx(direct).epsilon(1e-14));
    CHECK(v.value == doctest::Approx(0.3226).epsilon(1e-3));

    std::vector<std::int64_t> with_square = {0, 4};
    EulerProductValue w = euler_product_A(with_square, 100'000);
    CHECK(w.value == doctest::Approx(oracles::euler_product_direct(with_square, 100'000))
                         .epsilon(1e-14));
    // u(2) drops from 2 to 1: the p=2 factor is 3/4 instead of 1/2.
    CHECK(w.value == doctest::Approx(1.5 * v.value).epsilon(1e-12));
}

TEST_CASE("duplicate shifts collapse") {
    std::vector<std::int64_t> dup = {0, 1, 1, 0};
    std::vector<std::int64_t> pair = {0, 1};
    CHECK(euler_product_A(dup, 10'000).value ==
          euler_product_A(pair, 10'000).value);
}

TEST_CASE("A({0,h}) is the same for every square-free h") {
    std::int64_t h1[] = {0, 1};
    std::int64_t h3[] = {0, 3};
    std::int64_t h15[] = {0, 15};
    double a1 = euler_product_A(h1, 50'000).value;
    CHECK(euler_product_A(h3, 50'000).value == a1);
    CHECK(euler_product_A(h15, 50'000).value == a1);
    // A square divisor changes u(p) at its prime.
    std::int64_t h4[] = {0, 4};
    CHECK(euler_product_A(h4, 50'000).value != a1);
}

TEST_CASE("log-space accumulation for more than four shifts matches direct products") {
    std::vector<std::int64_t> shifts = {0, 2, 4, 6, 8};
    EulerProductValue v = euler_product_A(shifts, 50'000);
    double direct = oracles::euler_product_direct(shifts, 50'000);
    CHECK(v.value == doctest::Approx(direct).epsilon(1e-12));
}

TEST_CASE("a full residue cover yields a non-positive factor error") {
    std::vector<std::int64_t> cover = {0, 1, 2, 3}; // all residues mod 4
    CHECK_THROWS_AS(euler_product_A(cover, 100), InvalidArgumentError);
}

TEST_CASE("monotone truncation within the tail bound") {
    std::vector<std::int64_t> shifts = {0, 3};
    EulerProductValue coarse = euler_product_A(shifts, 1'000);
    EulerProductValue fine = euler_product_A(shifts, 100'000);
    CHECK(std::abs(fine.value - coarse.value) <= coarse.tail_bound);
    CHECK(fine.tail_bound < coarse.tail_bound);
}

TEST_CASE("conditional square-free density") {
    double d = conditional_squarefree_density(1, 1'000'000);
    CHECK(d == doctest::Approx(0.5307).epsilon(1e-3));
    CHECK(d < kSquareFreeDensity);
    // Independent of the (square-free) shift.
    CHECK(conditional_squarefree_density(3, 10'000) == conditional_squarefree_density(1, 10'000));
    CHECK_THROWS_AS(conditional_squarefree_density(4, 10'000), InvalidArgumentError);
    CHECK_THROWS_AS(conditional_squarefree_density(0, 10'000), InvalidArgumentError);
}

TEST_CASE("truncated closed forms agree to 1e-8 at P=1e5") {
    auto primes = primes_up_to(100'000);
    double lhs = 1.0, rhs = 1.0;
    for (std::uint64_t p : primes) {
        double p2 = static_cast<double>(p) * static_cast<double>(p);
        lhs *= (p2 / (p2 - 1.0)) * (1.0 - 2.0 / p2);
        rhs *= 1.0 - 1.0 / (p2 - 1.0);
    }
    CHECK(std::abs(lhs - rhs) < 1e-8);
    // The same product via the engine's pieces.
    std::int64_t pair[] = {0, 1};
    double zeta2_factors = 1.0;
    for (std::uint64_t p : primes) {
        double p2 = static_cast<double>(p) * static_cast<double>(p);
        zeta2_factors *= p2 / (p2 - 1.0);
    }
    CHECK(std::abs(zeta2_factors * euler_product_A(pair, 100'000).value -
                   conditional_squarefree_density(1, 100'000)) < 1e-8);
}

TEST_CASE("empirical pair density tracks the Euler product") {
    SieveConfig config;
    config.limit = 100'100;
    FactorSignTable table = sieve_range(config);
    double envelope = 5.0 * std::pow(1e5, -1.0 / 3.0);
    for (std::uint32_t h = 1; h <= 5; ++h) {
        std::int64_t shifts[] = {0, h};
        double analytic = euler_product_A(shifts, 100'000).value;
        double empirical = empirical_pair_density(table, 100'000, h);
        CHECK(std::abs(empirical - analytic) < envelope);
    }
    CHECK(empirical_pair_density(table, 100'000, 1, 3) ==
          empirical_pair_density(table, 100'000, 1, 1));
    CHECK_THROWS_AS(empirical_pair_density(table, 100'100, 1), RangeError);
    CHECK_THROWS_AS(empirical_pair_density(table, 100, 0), InvalidArgumentError);
}

TEST_CASE("ratio of pair density to square-free share approaches the conditional density") {
    SieveConfig config;
    config.limit = 1'000'010;
    FactorSignTable table = sieve_range(config);
    std::uint64_t y1 = 0;
    for (std::uint64_t n = 1; n <= 1'000'000; ++n) y1 += table.square_free_at(n);
    for (std::int64_t h : {1, 2, 5}) {
        double pair = empirical_pair_density(table, 1'000'000, static_cast<std::uint32_t>(h));
        double ratio = pair / (static_cast<double>(y1) / 1e6);
        CHECK(std::abs(ratio - conditional_squarefree_density(h, 100'000)) < 1e-2);
    }
}

TEST_CASE("tail bound requires a truncation prime of at least 2r") {
    std::vector<std::int64_t> shifts = {0, 6, 12, 18, 24};
    EulerProductValue v = euler_product_A(shifts, 3);
    CHECK(std::isinf(v.tail_bound));
    CHECK(euler_product_A(shifts, 50'000).tail_bound ==
          doctest::Approx(2.0 * 5 / 50'000.0));
}

TEST_SUITE_END();
