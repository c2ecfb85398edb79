#pragma once
// Largest-prime-factor sieve and exact smooth-number combinatorics.

#include <cstdint>
#include <vector>

namespace friable {

// lpf[n] = largest prime factor of n (lpf[1] = 1). Immutable after build;
// safe for concurrent readers.
struct SmoothTable {
    std::uint64_t x_max = 0;
    std::vector<std::uint32_t> lpf;     // index 0..x_max, lpf[0] unused (0)
    std::vector<std::uint64_t> primes;  // all primes <= x_max, ascending

    bool is_smooth(std::uint64_t n, double y) const {
        return n >= 1 && static_cast<double>(lpf[n]) <= y;
    }
};

inline constexpr std::uint64_t kSieveCap = std::uint64_t(1) << 31;
inline constexpr std::uint64_t kSegmentSize = std::uint64_t(1) << 20;

SmoothTable build_table(std::uint64_t x_max);

// Standalone prime list (no lpf array); used by the saddle module.
std::vector<std::uint64_t> primes_up_to(std::uint64_t y);

// #{n <= floor(x) : P(n) <= y}
std::uint64_t psi_exact(const SmoothTable& t, double x, double y);

std::vector<std::uint64_t> enumerate_smooth(const SmoothTable& t, double x, double y);

// v[n] = 1 iff n in S(x,y); v[0] = 0; length x+1.
std::vector<std::uint8_t> indicator_vector(const SmoothTable& t, std::uint64_t x, double y);

// Exact multiplicative functions via lpf factorization.
std::vector<std::pair<std::uint64_t, unsigned>> factorize(const SmoothTable& t, std::uint64_t n);
int mobius(const SmoothTable& t, std::uint64_t n);
std::uint64_t euler_phi(const SmoothTable& t, std::uint64_t n);

}  // namespace friable
