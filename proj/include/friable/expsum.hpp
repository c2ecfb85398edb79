#pragma once
// Exact exponential sums over smooth numbers, the Phi0 kernel, major-arc
// decomposition, the main-term predictors, and the truncated Perron
// evaluator.

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <unordered_map>

#include "friable/dickman.hpp"
#include "friable/saddle.hpp"
#include "friable/sieve.hpp"

namespace friable {

using cplx = std::complex<double>;

struct MajorArc {
    std::int64_t a = 0;  // 0 <= a < q, gcd(a, q) = 1
    std::int64_t q = 1;
    double eta = 0;      // theta - a/q (theta reduced mod 1)
    std::int64_t Q = 0;  // denominator bound used at construction
};

// Pole of Phi0 at a nonpositive integer; carries the residue (2 i pi lambda)^n / n!.
class phi0_pole_error : public std::domain_error {
  public:
    phi0_pole_error(int n, cplx residue)
        : std::domain_error("phi0: pole at s = -" + std::to_string(n)),
          pole_order_index(n),
          residue(residue) {}
    int pole_order_index;
    cplx residue;
};

// e(t) = exp(2 i pi t); the product n*theta is reduced mod 1 in double-double
// precision before the trig call.
cplx e_of(std::uint64_t n, double theta);

// E(x, y; theta) = sum_{n in S(x,y)} e(n theta)
cplx exp_sum_exact(const SmoothTable& t, double x, double y, double theta);

// sum f(n) e(n theta); throws std::invalid_argument on a missing weight.
cplx exp_sum_weighted(const SmoothTable& t, double x, double y, double theta,
                      const std::unordered_map<std::uint64_t, cplx>& weights);

// Smallest q <= Q with coprime a and |theta - a/q| <= 1/(qQ) (Dirichlet).
MajorArc rational_approx(double theta, std::int64_t Q);

// Phi0(lambda, s) = int_0^1 e(lambda t) t^{s-1} dt, continued by its power
// series for Re(s) <= 0.
cplx phi0(double lambda, cplx s);

// Constant-explicit kernel bounds, valid for
// Re(s) >= 1/2: |Phi0| <= 1/sigma and |Phi0| <= (1 + 2 pi |lambda|/(sigma+1))/|s|.
bool phi0_bounds_check(double lambda, cplx s);

// V(x,y;q,eta) = sum_{n in S(x,y)} mu(q/(q,n))/phi(q/(q,n)) e(n eta)
cplx v_exact(const SmoothTable& t, double x, double y, std::uint64_t q, double eta);

// alpha q^{1-alpha}/phi(q) prod_{p|q}(1 - p^{alpha-1}) Phi0(eta x, alpha) Psi
cplx major_arc_main_term(const SaddleData& sd, double psi, std::uint64_t q, double eta);

// sum_{k|q} mu(q/k) k / phi(q) * sum_{n<=x, k|n} e(n eta) lambda(n/k, y)
cplx v_tilde(const SmoothTable& t, const DickmanTable& dt, double x, double y,
             std::uint64_t q, double eta, const LambdaEvaluator* lam = nullptr);

// (1/2 i pi) int_{alpha-iT}^{alpha+iT} zeta(s,q;y) x^s Phi0(eta x, s) ds by
// adaptive Gauss-Kronrod panels of width <= pi/(2 log x).
cplx perron_numeric(const SaddleData& sd, std::uint64_t q, double x, double eta, double T);

struct ParsevalResult {
    std::int64_t psi = 0;
    double rounding_error = 0;  // |raw - psi|
};

// (1/N) sum_j |E(x,y;j/N)|^2, exact by orthogonality when N > floor(x).
ParsevalResult discrete_parseval(const SmoothTable& t, double x, double y, std::uint64_t N);

}  // namespace friable
