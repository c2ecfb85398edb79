#include "friable/sieve.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace friable {

std::vector<std::uint64_t> primes_up_to(std::uint64_t y) {
    std::vector<std::uint64_t> primes;
    if (y < 2) return primes;
    std::vector<std::uint8_t> comp(y + 1, 0);
    for (std::uint64_t i = 2; i * i <= y; ++i)
        if (!comp[i])
            for (std::uint64_t j = i * i; j <= y; j += i) comp[j] = 1;
    for (std::uint64_t i = 2; i <= y; ++i)
        if (!comp[i]) primes.push_back(i);
    return primes;
}

SmoothTable build_table(std::uint64_t x_max) {
    if (x_max == 0 || x_max > kSieveCap)
        throw std::length_error("build_table: x_max out of capacity range");

    SmoothTable t;
    t.x_max = x_max;
    t.lpf.assign(x_max + 1, 0);
    t.lpf[0] = 0;
    if (x_max >= 1) t.lpf[1] = 1;

    // Phase A: primes up to S = segment size, segment by segment, ascending
    // primes so the last write is the largest factor <= S.
    const std::uint64_t S = std::min<std::uint64_t>(kSegmentSize, x_max);
    std::vector<std::uint64_t> small = primes_up_to(S);
    for (std::uint64_t lo = 2; lo <= x_max; lo += kSegmentSize) {
        const std::uint64_t hi = std::min(x_max, lo + kSegmentSize - 1);
        for (std::uint64_t p : small) {
            if (p > hi) break;
            std::uint64_t start = std::max(p, ((lo + p - 1) / p) * p);
            for (std::uint64_t m = start; m <= hi; m += p) t.lpf[m] = static_cast<std::uint32_t>(p);
        }
    }

    // Phase B: primes p > S. Since x_max <= S^2, every n <= x_max has at most
    // one prime factor above S, and it is the largest; any n still unmarked
    // after phase A is itself prime.
    for (std::uint64_t n = S + 1; n <= x_max; ++n) {
        if (t.lpf[n] == 0) {
            for (std::uint64_t m = n; m <= x_max; m += n) t.lpf[m] = static_cast<std::uint32_t>(n);
        }
    }

    t.primes.reserve(small.size());
    for (std::uint64_t n = 2; n <= x_max; ++n)
        if (t.lpf[n] == n) t.primes.push_back(n);
    return t;
}

static std::uint64_t floor_checked(const SmoothTable& t, double x) {
    if (!(x >= 0) || std::floor(x) > static_cast<double>(t.x_max))
        throw std::out_of_range("x exceeds table range");
    return static_cast<std::uint64_t>(std::floor(x));
}

std::uint64_t psi_exact(const SmoothTable& t, double x, double y) {
    const std::uint64_t xf = floor_checked(t, x);
    std::uint64_t count = 0;
    for (std::uint64_t n = 1; n <= xf; ++n)
        if (static_cast<double>(t.lpf[n]) <= y) ++count;
    return count;
}

std::vector<std::uint64_t> enumerate_smooth(const SmoothTable& t, double x, double y) {
    const std::uint64_t xf = floor_checked(t, x);
    std::vector<std::uint64_t> out;
    for (std::uint64_t n = 1; n <= xf; ++n)
        if (static_cast<double>(t.lpf[n]) <= y) out.push_back(n);
    return out;
}

std::vector<std::uint8_t> indicator_vector(const SmoothTable& t, std::uint64_t x, double y) {
    if (x > t.x_max) throw std::out_of_range("x exceeds table range");
    std::vector<std::uint8_t> v(x + 1, 0);
    for (std::uint64_t n = 1; n <= x; ++n)
        if (static_cast<double>(t.lpf[n]) <= y) v[n] = 1;
    return v;
}

std::vector<std::pair<std::uint64_t, unsigned>> factorize(const SmoothTable& t, std::uint64_t n) {
    if (n == 0 || n > t.x_max) throw std::out_of_range("factorize: n out of table range");
    std::vector<std::pair<std::uint64_t, unsigned>> f;
    while (n > 1) {
        std::uint64_t p = t.lpf[n];
        unsigned e = 0;
        while (n % p == 0) { n /= p; ++e; }
        f.emplace_back(p, e);
    }
    std::reverse(f.begin(), f.end());
    return f;
}

int mobius(const SmoothTable& t, std::uint64_t n) {
    auto f = factorize(t, n);
    for (auto& [p, e] : f)
        if (e > 1) return 0;
    return (f.size() % 2 == 0) ? 1 : -1;
}

std::uint64_t euler_phi(const SmoothTable& t, std::uint64_t n) {
    std::uint64_t r = 1;
    for (auto& [p, e] : factorize(t, n)) {
        std::uint64_t pe = 1;
        for (unsigned i = 1; i < e; ++i) pe *= p;
        r *= pe * (p - 1);
    }
    return r;
}

}  // namespace friable
