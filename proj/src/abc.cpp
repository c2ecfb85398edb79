#include "friable/abc.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

namespace friable {

namespace {

// NTT-friendly primes: p = c * 2^k + 1 with 2^k well above the length cap.
constexpr std::uint64_t kP1 = 4179340454199820289ULL;  // 29 * 2^57 + 1, g = 3
constexpr std::uint64_t kP2 = 1945555039024054273ULL;  // 27 * 2^56 + 1, g = 5
constexpr std::uint64_t kG1 = 3;
constexpr std::uint64_t kG2 = 5;

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % p);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
    std::uint64_t r = 1;
    while (e) {
        if (e & 1) r = mulmod(r, a, p);
        a = mulmod(a, a, p);
        e >>= 1;
    }
    return r;
}

void ntt(std::vector<std::uint64_t>& a, std::uint64_t p, std::uint64_t g) {
    const std::size_t n = a.size();
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const std::uint64_t wlen = powmod(g, (p - 1) / len, p);
        for (std::size_t i = 0; i < n; i += len) {
            std::uint64_t w = 1;
            for (std::size_t j = 0; j < len / 2; ++j) {
                std::uint64_t u = a[i + j];
                std::uint64_t v = mulmod(a[i + j + len / 2], w, p);
                a[i + j] = u + v < p ? u + v : u + v - p;
                a[i + j + len / 2] = u >= v ? u - v : u + p - v;
                w = mulmod(w, wlen, p);
            }
        }
    }
}

// Inverse transform: forward NTT, reverse indices 1..n-1, scale by n^{-1}.
void intt(std::vector<std::uint64_t>& a, std::uint64_t p, std::uint64_t g) {
    const std::size_t n = a.size();
    ntt(a, p, g);
    std::reverse(a.begin() + 1, a.end());
    const std::uint64_t n_inv = powmod(n % p, p - 2, p);
    for (auto& v : a) v = mulmod(v, n_inv, p);
}

std::vector<std::uint64_t> self_convolve_mod(const std::vector<std::int64_t>& v,
                                             std::size_t padded, std::uint64_t p,
                                             std::uint64_t g) {
    std::vector<std::uint64_t> a(padded, 0);
    for (std::size_t i = 0; i < v.size(); ++i) {
        std::int64_t x = v[i];
        a[i] = x >= 0 ? static_cast<std::uint64_t>(x) % p
                      : p - (static_cast<std::uint64_t>(-x) % p);
        if (a[i] == p) a[i] = 0;
    }
    ntt(a, p, g);
    for (auto& x : a) x = mulmod(x, x, p);
    intt(a, p, g);
    return a;
}

}  // namespace

std::vector<std::int64_t> convolve_exact(const std::vector<std::int64_t>& v) {
    if (v.empty()) return {};
    if (v.size() > kConvolutionCap / 2)
        throw std::length_error("convolve_exact: input beyond length cap");
    const std::size_t out_len = 2 * v.size() - 1;
    const std::size_t padded = std::bit_ceil(out_len + 1);

    auto r1 = self_convolve_mod(v, padded, kP1, kG1);
    auto r2 = self_convolve_mod(v, padded, kP2, kG2);

    // Garner reconstruction mod p1*p2; anything that does not fit int64 is an
    // overflow (cannot happen for 0/1 inputs within the cap).
    const std::uint64_t p1_inv_mod_p2 = powmod(kP1 % kP2, kP2 - 2, kP2);
    std::vector<std::int64_t> out(out_len);
    for (std::size_t k = 0; k < out_len; ++k) {
        const std::uint64_t a1 = r1[k], a2 = r2[k];
        const std::uint64_t d = a2 >= a1 % kP2 ? a2 - a1 % kP2 : a2 + kP2 - a1 % kP2;
        const std::uint64_t t = mulmod(d, p1_inv_mod_p2, kP2);
        const unsigned __int128 full =
            static_cast<unsigned __int128>(t) * kP1 + a1;
        if (full > static_cast<unsigned __int128>(INT64_MAX))
            throw std::overflow_error("convolve_exact: value exceeds int64 range");
        out[k] = static_cast<std::int64_t>(full);
    }
    return out;
}

std::uint64_t count_abc_exact(const SmoothTable& t, std::uint64_t x, double y) {
    if (x > t.x_max) throw std::out_of_range("count_abc_exact: x exceeds table range");
    auto ind = indicator_vector(t, x, y);
    std::vector<std::int64_t> v(ind.begin(), ind.end());
    auto conv = convolve_exact(v);
    std::uint64_t total = 0;
    for (std::uint64_t c = 2; c <= x; ++c)
        if (ind[c]) total += static_cast<std::uint64_t>(conv[c]);
    return total;
}

AbcReport abc_report(const SmoothTable& t, const SaddleData& sd, std::uint64_t x,
                     double y) {
    AbcReport r;
    r.x = x;
    r.y = y;
    r.n_exact = count_abc_exact(t, x, y);
    r.psi = psi_exact(t, static_cast<double>(x), y);
    const double psi = static_cast<double>(r.psi);
    r.prediction = psi * psi * psi / (2.0 * static_cast<double>(x));
    r.ratio = static_cast<double>(r.n_exact) / r.prediction;
    r.bound_shape = std::log(sd.u + 1.0) / std::log(y);
    return r;
}

}  // namespace friable
