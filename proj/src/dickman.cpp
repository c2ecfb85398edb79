#include "friable/dickman.hpp"

#include <cmath>
#include <stdexcept>

namespace friable {

namespace {

// Gauss-Legendre order 8 on [-1, 1].
constexpr double kGlNode[8] = {
    -0.9602898564975363, -0.7966664774136267, -0.5255324099163290, -0.1834346424956498,
    0.1834346424956498,  0.5255324099163290,  0.7966664774136267,  0.9602898564975363};
constexpr double kGlWeight[8] = {
    0.1012285362903763, 0.2223810344533745, 0.3137066458778873, 0.3626837833783620,
    0.3626837833783620, 0.3137066458778873, 0.2223810344533745, 0.1012285362903763};

struct KahanSum {
    double s = 0, c = 0;
    void add(double v) {
        double t = s + v;
        if (std::abs(s) >= std::abs(v))
            c += (s - t) + v;
        else
            c += (v - t) + s;
        s = t;
    }
    double value() const { return s + c; }
};

template <typename F>
double gl8(F&& f, double a, double b) {
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    double s = 0;
    for (int i = 0; i < 8; ++i) s += kGlWeight[i] * f(mid + half * kGlNode[i]);
    return s * half;
}

}  // namespace

DickmanTable build_dickman(double u_max, double step) {
    if (!(u_max >= 2) || !(step > 0) || step > 1e-3 + 1e-15)
        throw std::domain_error("build_dickman: need u_max >= 2, 0 < step <= 1e-3");
    DickmanTable t;
    t.per_unit = static_cast<std::size_t>(std::llround(1.0 / step));
    t.step = 1.0 / static_cast<double>(t.per_unit);
    const std::size_t m = t.per_unit;
    const std::size_t n = static_cast<std::size_t>(std::ceil(u_max * m - 1e-9));
    t.u_max = static_cast<double>(n) / static_cast<double>(m);
    t.rho.resize(n + 1);
    t.rho_prime.resize(n + 1);

    for (std::size_t i = 0; i <= std::min(m, n); ++i) {
        t.rho[i] = 1.0;
        t.rho_prime[i] = 0.0;
    }
    if (n >= m) t.rho_prime[m] = -1.0;  // right-continuous ODE value at u = 1

    for (std::size_t i = m + 1; i <= n; ++i) {
        const double u0 = static_cast<double>(i - 1) * t.step;
        const double u1 = static_cast<double>(i) * t.step;
        // rho(u1) = rho(u0) - int_{u0}^{u1} rho(v-1)/v dv; rho(v-1) lies in the
        // already-built interval [u0-1, u1-1].
        double inc = gl8([&](double v) { return rho(t, v - 1.0) / v; }, u0, u1);
        t.rho[i] = t.rho[i - 1] - inc;
        t.rho_prime[i] = -t.rho[i - m] / u1;
    }
    return t;
}

double rho(const DickmanTable& t, double u) {
    if (u < 0) return 0.0;
    if (u <= 1.0) return 1.0;
    if (u > t.u_max) {
        if (u <= t.u_max * (1 + 1e-12)) u = t.u_max;
        else throw std::out_of_range("rho: u exceeds table range");
    }
    const double g = u / t.step;
    std::size_t k = static_cast<std::size_t>(g);
    if (k >= t.rho.size() - 1) k = t.rho.size() - 2;
    const double th = g - static_cast<double>(k);
    // cubic Hermite with ODE-exact derivatives at the grid points
    const double h00 = (1 + 2 * th) * (1 - th) * (1 - th);
    const double h10 = th * (1 - th) * (1 - th);
    const double h01 = th * th * (3 - 2 * th);
    const double h11 = th * th * (th - 1);
    return h00 * t.rho[k] + h10 * t.step * t.rho_prime[k] + h01 * t.rho[k + 1] +
           h11 * t.step * t.rho_prime[k + 1];
}

double rho_prime(const DickmanTable& t, double u) {
    if (u < 1.0) return 0.0;
    if (u > t.u_max) {
        if (u <= t.u_max * (1 + 1e-12)) u = t.u_max;
        else throw std::out_of_range("rho_prime: u exceeds table range");
    }
    const double g = u / t.step;
    std::size_t k = static_cast<std::size_t>(g);
    if (k >= t.rho_prime.size() - 1) k = t.rho_prime.size() - 2;
    if (k < t.per_unit) return -1.0 * (g - static_cast<double>(k));  // u == 1 edge
    const double th = g - static_cast<double>(k);
    return (1 - th) * t.rho_prime[k] + th * t.rho_prime[k + 1];
}

namespace {

// Shared Stieltjes evaluation: sum_{n<=x} f(u - log n/L)/n minus
// int_1^x f(u - log w/L) floor(w)/w^2 dw, panels per unit interval.
template <typename F>
double stieltjes_pair(F&& f, double x, double log_y, double u, int refine) {
    const std::uint64_t xf = static_cast<std::uint64_t>(std::floor(x));
    KahanSum atoms;
    for (std::uint64_t n = 1; n <= xf; ++n)
        atoms.add(f(u - std::log(static_cast<double>(n)) / log_y) /
                  static_cast<double>(n));

    KahanSum integral;
    auto integrand = [&](double w) {
        return f(u - std::log(w) / log_y) * std::floor(w) / (w * w);
    };
    auto add_panel = [&](double a, double b) {
        const int parts = refine;
        const double h = (b - a) / parts;
        for (int j = 0; j < parts; ++j)
            integral.add(gl8(integrand, a + j * h, a + (j + 1) * h));
    };
    for (std::uint64_t w0 = 1; w0 < xf; ++w0)
        add_panel(static_cast<double>(w0), static_cast<double>(w0 + 1));
    if (x > static_cast<double>(xf)) add_panel(static_cast<double>(xf), x);

    return atoms.value() - integral.value();
}

}  // namespace

double lambda_de_bruijn_big(const DickmanTable& t, double x, double y, int refine) {
    if (y < 2 || x < 1) throw std::domain_error("lambda_de_bruijn_big: need y >= 2, x >= 1");
    const double L = std::log(y);
    const double u = std::log(x) / L;
    if (u > t.u_max) throw std::out_of_range("lambda_de_bruijn_big: u exceeds table range");
    return x * stieltjes_pair([&](double v) { return rho(t, v); }, x, L, u, refine);
}

double lambda_small(const DickmanTable& t, double tt, double y, int refine) {
    if (y < 2 || tt < 1) throw std::domain_error("lambda_small: need y >= 2, t >= 1");
    const double L = std::log(y);
    const double u = std::log(tt) / L;
    if (u > t.u_max) throw std::out_of_range("lambda_small: u exceeds table range");
    const double big = lambda_de_bruijn_big(t, tt, y, refine);
    const double deriv_part =
        stieltjes_pair([&](double v) { return rho_prime(t, v); }, tt, L, u, refine);
    return big / tt + deriv_part / L;
}

LambdaEvaluator::LambdaEvaluator(const DickmanTable& t, double y, double t_max,
                                 std::uint64_t exact_below, int nodes_per_octave)
    : table_(t), y_(y), exact_below_(exact_below) {
    t_lo_ = static_cast<double>(exact_below);
    ratio_ = std::pow(2.0, 1.0 / nodes_per_octave);
    if (t_max > t_lo_) {
        std::size_t count =
            static_cast<std::size_t>(std::ceil(std::log(t_max / t_lo_) / std::log(ratio_))) + 2;
        grid_vals_.reserve(count);
        double tv = t_lo_;
        for (std::size_t j = 0; j < count; ++j) {
            grid_vals_.push_back(lambda_small(table_, tv, y_));
            tv *= ratio_;
        }
    }
}

double LambdaEvaluator::operator()(double tt) const {
    if (tt < static_cast<double>(exact_below_)) {
        const double r = std::round(tt);
        if (std::abs(tt - r) < 1e-9 && r >= 1) {
            const std::uint64_t key = static_cast<std::uint64_t>(r);
            auto it = exact_cache_.find(key);
            if (it != exact_cache_.end()) return it->second;
            const double v = lambda_small(table_, tt, y_);
            exact_cache_.emplace(key, v);
            return v;
        }
        return lambda_small(table_, tt, y_);
    }
    const double j = std::log(tt / t_lo_) / std::log(ratio_);
    std::size_t k = static_cast<std::size_t>(j);
    if (k + 1 >= grid_vals_.size()) throw std::out_of_range("LambdaEvaluator: t beyond grid");
    const double th = j - static_cast<double>(k);
    return (1 - th) * grid_vals_[k] + th * grid_vals_[k + 1];
}

}  // namespace friable
