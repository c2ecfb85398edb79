#include <doctest.h>

#include <cmath>
#include <numeric>
#include <random>
#include <vector>

#include "friable/abc.hpp"
#include "friable/saddle.hpp"
#include "friable/sieve.hpp"

using namespace friable;

namespace {

std::vector<std::int64_t> convolve_schoolbook(const std::vector<std::int64_t>& v) {
    std::vector<std::int64_t> out(2 * v.size() - 1, 0);
    for (std::size_t i = 0; i < v.size(); ++i)
        for (std::size_t j = 0; j < v.size(); ++j) out[i + j] += v[i] * v[j];
    return out;
}

std::uint64_t count_abc_brute(const SmoothTable& t, std::uint64_t x, double y) {
    auto smooth = enumerate_smooth(t, static_cast<double>(x), y);
    std::uint64_t n = 0;
    for (auto a : smooth)
        for (auto b : smooth) {
            const auto c = a + b;
            if (c <= x && t.is_smooth(c, y)) ++n;
        }
    return n;
}

}  // namespace

TEST_CASE("convolution examples") {
    CHECK(convolve_exact({0, 1, 1}) == std::vector<std::int64_t>{0, 0, 1, 2, 1});
    CHECK(convolve_exact({1}) == std::vector<std::int64_t>{1});
    CHECK(convolve_exact({2, 3}) == std::vector<std::int64_t>{4, 12, 9});
}

TEST_CASE("convolution mass and schoolbook agreement") {
    std::mt19937 rng(424242);
    for (int trial = 0; trial < 20; ++trial) {
        std::uniform_int_distribution<std::size_t> len_d(1, 512);
        std::uniform_int_distribution<int> bit(0, 1);
        std::vector<std::int64_t> v(len_d(rng));
        for (auto& b : v) b = bit(rng);
        const auto fast = convolve_exact(v);
        CHECK(fast == convolve_schoolbook(v));
        const std::int64_t mass = std::accumulate(v.begin(), v.end(), std::int64_t(0));
        const std::int64_t conv_mass =
            std::accumulate(fast.begin(), fast.end(), std::int64_t(0));
        CHECK(conv_mass == mass * mass);
    }
}

TEST_CASE("triple count examples") {
    auto t = build_table(3000);
    CHECK(count_abc_exact(t, 8, 2) == 3);
    // y >= x counts every ordered pair a + b <= x: for x = 10 that is 45
    CHECK(count_abc_exact(t, 10, 10) == 45);
    CHECK(count_abc_exact(t, 100, 100) == 100 * 99 / 2);
}

TEST_CASE("triple count vs brute force") {
    auto t = build_table(3000);
    for (std::uint64_t x : {100, 500, 2000})
        for (double y : {2.0, 3.0, 5.0, 10.0, 50.0})
            CHECK(count_abc_exact(t, x, y) == count_abc_brute(t, x, y));
}

TEST_CASE("triple count symmetry and monotonicity") {
    auto t = build_table(3000);
    // classify pairs: N = 2 #(a<b) + #(a=b)
    const std::uint64_t x = 1000;
    const double y = 7;
    auto smooth = enumerate_smooth(t, static_cast<double>(x), y);
    std::uint64_t lt = 0, eq = 0;
    for (auto a : smooth)
        for (auto b : smooth) {
            if (a + b > x || !t.is_smooth(a + b, y)) continue;
            if (a < b) ++lt;
            if (a == b) ++eq;
        }
    CHECK(count_abc_exact(t, x, y) == 2 * lt + eq);

    std::uint64_t prev = 0;
    for (std::uint64_t xx : {100, 300, 1000, 3000}) {
        const auto n = count_abc_exact(t, xx, 5);
        CHECK(n >= prev);
        prev = n;
    }
    prev = 0;
    for (double yy : {2.0, 3.0, 5.0, 11.0, 31.0}) {
        const auto n = count_abc_exact(t, 1000, yy);
        CHECK(n >= prev);
        prev = n;
    }
}

TEST_CASE("report fields") {
    auto t = build_table(1000);
    auto sd = solve_alpha(8, 2);
    auto rep = abc_report(t, sd, 8, 2);
    CHECK(rep.n_exact == 3);
    CHECK(rep.psi == 4);
    CHECK(rep.prediction == doctest::Approx(4.0));
    CHECK(rep.ratio == doctest::Approx(0.75));
    CHECK(rep.bound_shape ==
          doctest::Approx(std::log(std::log(8.0) / std::log(2.0) + 1) / std::log(2.0)));
}

namespace {

using u128 = unsigned __int128;

std::uint64_t mulmod_u(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>(static_cast<u128>(a) * b % m);
}

std::uint64_t powmod_u(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
    std::uint64_t r = 1;
    for (; e; e >>= 1, b = mulmod_u(b, b, m))
        if (e & 1) r = mulmod_u(r, b, m);
    return r;
}

bool miller_rabin(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        if (n == p) return true;
        if (n % p == 0) return false;
    }
    std::uint64_t d = n - 1;
    int r = 0;
    while (d % 2 == 0) d /= 2, ++r;
    for (std::uint64_t a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        std::uint64_t v = powmod_u(a, d, n);
        if (v == 1 || v == n - 1) continue;
        bool composite = true;
        for (int i = 1; i < r; ++i) {
            v = mulmod_u(v, v, n);
            if (v == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

}  // namespace

TEST_CASE("transform moduli are genuine NTT primes") {
    constexpr std::uint64_t p1 = 4179340454199820289ull;  // 29 * 2^57 + 1
    constexpr std::uint64_t p2 = 1945555039024054273ull;  // 27 * 2^56 + 1
    CHECK(miller_rabin(p1));
    CHECK(miller_rabin(p2));
    CHECK((p1 - 1) % (std::uint64_t(1) << 57) == 0);
    CHECK((p2 - 1) % (std::uint64_t(1) << 56) == 0);
    // generators: g^{(p-1)/2} = -1 and g^{(p-1)/r} != 1 for the odd part r
    CHECK(powmod_u(3, (p1 - 1) / 2, p1) == p1 - 1);
    CHECK(powmod_u(3, (p1 - 1) / 29, p1) != 1);
    CHECK(powmod_u(5, (p2 - 1) / 2, p2) == p2 - 1);
    CHECK(powmod_u(5, (p2 - 1) / 3, p2) != 1);
}
