#pragma once
// Exact count of smooth a + b = c triples via integer convolution over two
// word-size NTT primes with residue reconstruction.

#include <cstdint>
#include <vector>

#include "friable/saddle.hpp"
#include "friable/sieve.hpp"

namespace friable {

inline constexpr std::size_t kConvolutionCap = std::size_t(1) << 27;

// Exact self-convolution (v*v)[k] = sum_i v[i] v[k-i]; output length 2n-1,
// zero-padded internally to a power of two >= 2n so no cyclic wraparound
// touches valid indices.
std::vector<std::int64_t> convolve_exact(const std::vector<std::int64_t>& v);

// #{(a,b) in S(x,y)^2 : a + b in S(x,y), a + b <= x}
std::uint64_t count_abc_exact(const SmoothTable& t, std::uint64_t x, double y);

struct AbcReport {
    std::uint64_t x = 0;
    double y = 0;
    std::uint64_t n_exact = 0;
    std::uint64_t psi = 0;
    double prediction = 0;   // psi^3 / (2x)
    double ratio = 0;        // n_exact / prediction
    double bound_shape = 0;  // log(u+1)/log y
};

AbcReport abc_report(const SmoothTable& t, const SaddleData& sd, std::uint64_t x, double y);

}  // namespace friable
