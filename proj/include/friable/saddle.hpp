#pragma once
// Saddle-point equation for alpha(x,y), truncated Euler products, and the
// Hildebrand-Tenenbaum smooth-count estimate.

#include <complex>
#include <cstdint>
#include <memory>
#include <vector>

namespace friable {

struct SaddleData {
    double x = 0;
    double y = 0;
    double u = 0;            // log x / log y
    double alpha = 0;        // root of sum_{p<=y} log p/(p^alpha - 1) = log x
    double sigma2 = 0;       // sum_{p<=y} p^alpha (log p)^2 / (p^alpha - 1)^2
    double zeta_alpha_y = 0; // zeta(alpha, y)
    double log_zeta_alpha_y = 0;
    double h_u = 0;          // H(u), when u >= 1 (else 0)
    std::shared_ptr<const std::vector<std::uint64_t>> primes_y;
};

// Root of the defining equation, tolerance 1e-12 on alpha. Bracketed Newton
// with bisection fallback on [1e-6, 1.5].
SaddleData solve_alpha(double x, double y);
SaddleData solve_alpha(double x, double y,
                       std::shared_ptr<const std::vector<std::uint64_t>> primes);

// Leading term of the asymptotic formula: log(1 + y/log x)/log y.
double alpha_asymptotic(double x, double y);

// zeta(s, y) = prod_{p<=y} (1 - p^{-s})^{-1}, evaluated in log space with
// compensated summation. Requires Re(s) > 0.
std::complex<double> zeta_y(std::complex<double> s, double y,
                            const std::vector<std::uint64_t>& primes);
std::complex<double> log_zeta_y(std::complex<double> s, double y,
                                const std::vector<std::uint64_t>& primes);
double zeta_y(double s, double y, const std::vector<std::uint64_t>& primes);

// q^{1-s}/phi(q) * prod_{p|q} (1 - p^{s-1}) * zeta(s, y); needs P(q) <= y.
std::complex<double> zeta_q_y(std::complex<double> s, std::uint64_t q, double y,
                              const std::vector<std::uint64_t>& primes);

double sigma2(const SaddleData& sd);

// x^alpha zeta(alpha,y) / (alpha sqrt(2 pi sigma2))
double ht_psi_estimate(const SaddleData& sd);

// x^sigma zeta(sigma, y); minimized at sigma = alpha.
double rankin_bound(const SaddleData& sd, double sigma);

// H(u) = exp(u / log(u+1)^2), u >= 1.
double h_of_u(double u);

}  // namespace friable
