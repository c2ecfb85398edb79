#include <doctest.h>

#include <numeric>
#include <stdexcept>

#include "friable/sieve.hpp"

using namespace friable;

TEST_CASE("lpf table basics") {
    CHECK(build_table(12).lpf[12] == 3);
    CHECK(build_table(1).lpf[1] == 1);
    auto t = build_table(100);
    CHECK(t.lpf[97] == 97);
    CHECK(t.lpf[1] == 1);
    for (std::uint64_t n = 2; n <= 100; ++n) {
        CHECK(t.lpf[n] <= n);
        // brute-force largest prime factor
        std::uint64_t m = n, largest = 1;
        for (std::uint64_t p = 2; p <= m; ++p)
            while (m % p == 0) { largest = p; m /= p; }
        CHECK(t.lpf[n] == largest);
    }
    // primes list agrees with fixed points of lpf
    std::vector<std::uint64_t> fixed;
    for (std::uint64_t n = 2; n <= 100; ++n)
        if (t.lpf[n] == n) fixed.push_back(n);
    CHECK(t.primes == fixed);
}

TEST_CASE("capacity errors") {
    CHECK_THROWS_AS(build_table(0), std::length_error);
    CHECK_THROWS_AS(build_table(kSieveCap + 1), std::length_error);
    auto t = build_table(100);
    CHECK_THROWS_AS(psi_exact(t, 101, 5), std::out_of_range);
    CHECK_THROWS_AS(enumerate_smooth(t, 1e6, 5), std::out_of_range);
    CHECK_THROWS_AS(indicator_vector(t, 101, 5), std::out_of_range);
}

TEST_CASE("psi_exact examples") {
    auto t = build_table(200);
    CHECK(psi_exact(t, 16, 3) == 9);
    CHECK(psi_exact(t, 10, 10) == 10);
    CHECK(psi_exact(t, 100, 1) == 1);
}

TEST_CASE("enumeration") {
    auto t = build_table(100);
    CHECK(enumerate_smooth(t, 8, 2) == std::vector<std::uint64_t>{1, 2, 4, 8});
    CHECK(enumerate_smooth(t, 16, 3) ==
          std::vector<std::uint64_t>{1, 2, 3, 4, 6, 8, 9, 12, 16});
    CHECK(enumerate_smooth(t, 5, 1) == std::vector<std::uint64_t>{1});
}

TEST_CASE("indicator vector") {
    auto t = build_table(100);
    CHECK(indicator_vector(t, 4, 2) == std::vector<std::uint8_t>{0, 1, 1, 0, 1});
    CHECK(indicator_vector(t, 3, 3)[3] == 1);
    auto v = indicator_vector(t, 60, 5);
    std::uint64_t s = std::accumulate(v.begin(), v.end(), std::uint64_t(0));
    CHECK(s == psi_exact(t, 60, 5));
}

TEST_CASE("psi monotonicity and boundary values") {
    auto t = build_table(500);
    for (double x : {10.0, 50.0, 200.0, 500.0}) {
        CHECK(psi_exact(t, x, x) == static_cast<std::uint64_t>(x));
        CHECK(psi_exact(t, x, 1) == 1);
    }
    for (double y : {2.0, 5.0, 17.0}) {
        std::uint64_t prev = 0;
        for (double x = 1; x <= 500; ++x) {
            auto c = psi_exact(t, x, y);
            CHECK(c >= prev);
            prev = c;
        }
    }
    for (double x : {100.0, 499.0}) {
        std::uint64_t prev = 0;
        for (double y = 1; y <= x; ++y) {
            auto c = psi_exact(t, x, y);
            CHECK(c >= prev);
            prev = c;
        }
    }
}

namespace {
// independent recursive count, no lpf table
std::uint64_t buchstab(std::uint64_t x, std::uint64_t y,
                       const std::vector<std::uint64_t>& primes) {
    if (x == 0) return 0;
    std::uint64_t total = 1;
    for (std::uint64_t p : primes) {
        if (p > y || p > x) break;
        total += buchstab(x / p, p, primes);
    }
    return total;
}
}  // namespace

TEST_CASE("Buchstab recursion cross-check") {
    auto t = build_table(2000);
    auto primes = primes_up_to(100);
    for (std::uint64_t x : {16, 100, 729, 1234, 2000})
        for (std::uint64_t y : {2, 3, 7, 30, 100})
            CHECK(psi_exact(t, static_cast<double>(x), static_cast<double>(y)) ==
                  buchstab(x, y, primes));
}

TEST_CASE("multiplicative functions from the lpf table") {
    auto t = build_table(1000);
    CHECK(mobius(t, 1) == 1);
    CHECK(mobius(t, 2) == -1);
    CHECK(mobius(t, 6) == 1);
    CHECK(mobius(t, 12) == 0);
    CHECK(mobius(t, 30) == -1);
    CHECK(euler_phi(t, 1) == 1);
    CHECK(euler_phi(t, 12) == 4);
    CHECK(euler_phi(t, 97) == 96);
    CHECK(euler_phi(t, 1000) == 400);
}
