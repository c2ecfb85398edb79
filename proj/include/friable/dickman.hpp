#pragma once
// Dickman rho, its derivative from the delay ODE, and the de Bruijn
// quantities Lambda(x,y) and lambda(t,y).

#include <cstddef>
#include <cstdint>
#include <map>
#include <vector>

namespace friable {

// Dense grid of rho(u) and rho'(u) on [0, u_max], spacing 1/m with m integer
// so panels never straddle the integer knots where rho is only C^0.
struct DickmanTable {
    double u_max = 0;
    double step = 0;         // exact grid spacing, 1/m
    std::size_t per_unit = 0;  // m = 1/step
    std::vector<double> rho;
    std::vector<double> rho_prime;  // -rho(u-1)/u for u > 1, else 0
};

DickmanTable build_dickman(double u_max, double step);

// Interpolated rho(u); u < 0 returns 0, u in [0,1] returns 1 exactly.
double rho(const DickmanTable& t, double u);
// Interpolated rho'(u) (right-continuous at u = 1).
double rho_prime(const DickmanTable& t, double u);

// Lambda(x,y) via the Stieltjes splitting: atoms at integers n <= x plus the
// absolutely continuous part -floor(w)/w^2 dw on [1,x]. `refine` doubles the
// quadrature panel count (self-convergence checks).
double lambda_de_bruijn_big(const DickmanTable& t, double x, double y, int refine = 1);

// lambda(t,y) = Lambda(t,y)/t + (1/log y) * (same splitting with rho').
double lambda_small(const DickmanTable& t, double tt, double y, int refine = 1);

// Memoized/interpolated lambda(m, y) at integer arguments, for the v_tilde
// double sum: exact below `exact_below`, log-t interpolation on a geometric
// grid above it.
class LambdaEvaluator {
  public:
    LambdaEvaluator(const DickmanTable& t, double y, double t_max,
                    std::uint64_t exact_below = 4096, int nodes_per_octave = 128);
    double operator()(double tt) const;

  private:
    const DickmanTable& table_;
    double y_;
    double t_lo_, ratio_;
    std::vector<double> grid_vals_;          // lambda at t_lo * ratio^j
    mutable std::map<std::uint64_t, double> exact_cache_;
    std::uint64_t exact_below_;
};

}  // namespace friable
