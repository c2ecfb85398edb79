#include "friable/expsum.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <optional>
#include <vector>

namespace friable {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

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

struct KahanCplx {
    KahanSum re, im;
    void add(cplx v) {
        re.add(v.real());
        im.add(v.imag());
    }
    cplx value() const { return {re.value(), im.value()}; }
};

// Gauss-Kronrod 7-15 nodes/weights (positive half).
constexpr double kGkNode[8] = {0.991455371120813, 0.949107912342759, 0.864864423359769,
                               0.741531185599394, 0.586087235467691, 0.405845151377397,
                               0.207784955007898, 0.0};
constexpr double kGkWeight[8] = {0.022935322010529, 0.063092092629979, 0.104790010322250,
                                 0.140653259715525, 0.169004726639267, 0.190350578064785,
                                 0.204432940075298, 0.209482141084728};
constexpr double kG7Weight[4] = {0.129484966168870, 0.279705391489277, 0.381830050505119,
                                 0.417959183673469};

template <typename F>
void gk15(F&& f, double a, double b, cplx& kronrod, cplx& gauss) {
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    cplx vals_p[8], vals_m[7];
    for (int i = 0; i < 8; ++i) vals_p[i] = f(mid + half * kGkNode[i]);
    for (int i = 0; i < 7; ++i) vals_m[i] = f(mid - half * kGkNode[i]);
    cplx k = kGkWeight[7] * vals_p[7];
    for (int i = 0; i < 7; ++i) k += kGkWeight[i] * (vals_p[i] + vals_m[i]);
    // Gauss-7 lives on the odd Kronrod nodes (indices 1, 3, 5) plus center.
    cplx g = kG7Weight[3] * vals_p[7];
    g += kG7Weight[0] * (vals_p[1] + vals_m[1]);
    g += kG7Weight[1] * (vals_p[3] + vals_m[3]);
    g += kG7Weight[2] * (vals_p[5] + vals_m[5]);
    kronrod = k * half;
    gauss = g * half;
}

template <typename F>
cplx adaptive_panel(F&& f, double a, double b, double abs_tol, int max_depth,
                    bool* converged) {
    cplx k, g;
    gk15(f, a, b, k, g);
    if (std::abs(k - g) <= abs_tol || max_depth == 0) {
        if (std::abs(k - g) > abs_tol) *converged = false;
        return k;
    }
    double mid = 0.5 * (a + b);
    return adaptive_panel(f, a, mid, abs_tol / 2, max_depth - 1, converged) +
           adaptive_panel(f, mid, b, abs_tol / 2, max_depth - 1, converged);
}

std::vector<std::uint64_t> divisors_of(std::uint64_t q) {
    std::vector<std::uint64_t> d;
    for (std::uint64_t i = 1; i * i <= q; ++i) {
        if (q % i == 0) {
            d.push_back(i);
            if (i != q / i) d.push_back(q / i);
        }
    }
    std::sort(d.begin(), d.end());
    return d;
}

}  // namespace

cplx e_of(std::uint64_t n, double theta) {
    // two-term Dekker product: nd*theta = p + e exactly
    const double nd = static_cast<double>(n);
    const double p = nd * theta;
    const double err = std::fma(nd, theta, -p);
    double r = (p - std::floor(p)) + err;
    r -= std::floor(r);
    const double ang = kTwoPi * r;
    return {std::cos(ang), std::sin(ang)};
}

cplx exp_sum_exact(const SmoothTable& t, double x, double y, double theta) {
    if (std::floor(x) > static_cast<double>(t.x_max))
        throw std::out_of_range("exp_sum_exact: x exceeds table range");
    const std::uint64_t xf = static_cast<std::uint64_t>(std::floor(x));
    KahanCplx sum;
    for (std::uint64_t n = 1; n <= xf; ++n)
        if (static_cast<double>(t.lpf[n]) <= y) sum.add(e_of(n, theta));
    return sum.value();
}

cplx exp_sum_weighted(const SmoothTable& t, double x, double y, double theta,
                      const std::unordered_map<std::uint64_t, cplx>& weights) {
    if (std::floor(x) > static_cast<double>(t.x_max))
        throw std::out_of_range("exp_sum_weighted: x exceeds table range");
    const std::uint64_t xf = static_cast<std::uint64_t>(std::floor(x));
    KahanCplx sum;
    for (std::uint64_t n = 1; n <= xf; ++n) {
        if (static_cast<double>(t.lpf[n]) > y) continue;
        auto it = weights.find(n);
        if (it == weights.end())
            throw std::invalid_argument("exp_sum_weighted: missing weight for n=" +
                                        std::to_string(n));
        sum.add(it->second * e_of(n, theta));
    }
    return sum.value();
}

MajorArc rational_approx(double theta, std::int64_t Q) {
    if (Q < 3) throw std::domain_error("rational_approx: Q < 3");
    const double th = theta - std::floor(theta);
    for (std::int64_t q = 1; q <= Q; ++q) {
        const std::int64_t a0 = std::llround(th * static_cast<double>(q));
        const double d = th - static_cast<double>(a0) / static_cast<double>(q);
        if (std::abs(d) <= 1.0 / (static_cast<double>(q) * static_cast<double>(Q)) &&
            std::gcd(a0, q) == 1) {
            MajorArc arc;
            arc.q = q;
            arc.a = a0 % q;  // a0 == q means the arc sits at 0 mod 1
            arc.eta = d;
            arc.Q = Q;
            return arc;
        }
    }
    throw std::runtime_error("rational_approx: no denominator found (unreachable)");
}

namespace {

cplx phi0_series(double lambda, cplx s) {
    const cplx z(0.0, kTwoPi * lambda);
    cplx term = 1.0;  // z^n / n!
    KahanCplx sum;
    const double az = std::abs(z);
    for (int n = 0; n <= 5000; ++n) {
        sum.add(term / (s + static_cast<double>(n)));
        term *= z / static_cast<double>(n + 1);
        if (static_cast<double>(n) > az &&
            std::abs(term) < 1e-17 * std::max(1e-300, std::abs(sum.value())))
            break;
    }
    return sum.value();
}

cplx phi0_quadrature(double lambda, cplx s) {
    // direct integral, Re(s) > 0 required; t = e^w absorbs the t^{s-1}
    // endpoint on (0, c], then oscillation-resolving panels cover [c, 1]
    const double sigma = s.real(), tau = s.imag();
    bool ok = true;
    KahanCplx total;
    const double c = std::min(1.0, 1.0 / std::max(1.0, kTwoPi * std::abs(lambda)));
    auto g = [&](double w) {
        return std::exp(cplx(0.0, kTwoPi * lambda * std::exp(w)) + s * w);
    };
    const double w_hi = std::log(c);
    const double w_lo = w_hi - 40.0 / sigma;  // e^{sigma w} below 1e-17 past here
    const int wp =
        std::max(16, static_cast<int>((w_hi - w_lo) * (1.0 + std::abs(tau) / 4.0)));
    const double hw = (w_hi - w_lo) / wp;
    for (int i = 0; i < wp; ++i)
        total.add(adaptive_panel(g, w_lo + i * hw, w_lo + (i + 1) * hw, 1e-13, 12, &ok));
    if (c < 1.0) {
        auto f = [&](double t) {
            return std::exp(cplx(0.0, kTwoPi * lambda * t)) *
                   std::exp((s - 1.0) * std::log(t));
        };
        const int tp = std::max(
            16, static_cast<int>(4.0 * (std::abs(lambda) * (1.0 - c) + std::abs(tau))));
        const double ht = (1.0 - c) / tp;
        for (int i = 0; i < tp; ++i)
            total.add(adaptive_panel(f, c + i * ht, c + (i + 1) * ht, 1e-13, 12, &ok));
    }
    if (!ok) throw std::runtime_error("phi0: quadrature did not converge");
    return total.value();
}

// Phi0(lambda, s) = (e(lambda) - 2 i pi lambda Phi0(lambda, s+1)) / s by parts;
// walks Re(s) up into quadrature territory, then unwinds.
cplx phi0_descend(double lambda, cplx s) {
    if (s.real() > 0.5) return phi0_quadrature(lambda, s);
    const cplx up = phi0_descend(lambda, s + 1.0);
    return (std::exp(cplx(0.0, kTwoPi * lambda)) - cplx(0.0, kTwoPi * lambda) * up) / s;
}

}  // namespace

cplx phi0(double lambda, cplx s) {
    const double r = std::round(s.real());
    if (r <= 0.0 && std::abs(s - r) < 1e-12) {
        const int n0 = static_cast<int>(-r);
        cplx res = 1.0;
        const cplx z(0.0, kTwoPi * lambda);
        for (int k = 1; k <= n0; ++k) res *= z / static_cast<double>(k);
        throw phi0_pole_error(n0, res);
    }
    // the alternating series loses ~e^{2 pi |lambda|} to cancellation, so it
    // is only used while that factor stays below the accuracy budget
    if (kTwoPi * std::abs(lambda) <= 12.0) return phi0_series(lambda, s);
    if (s.real() > 0) return phi0_quadrature(lambda, s);
    return phi0_descend(lambda, s);
}

bool phi0_bounds_check(double lambda, cplx s) {
    if (s.real() < 0.5) throw std::domain_error("phi0_bounds_check: Re(s) < 1/2");
    const double v = std::abs(phi0(lambda, s));
    const double sigma = s.real();
    const double b1 = 1.0 / sigma;
    const double b2 = (1.0 + kTwoPi * std::abs(lambda) / (sigma + 1.0)) / std::abs(s);
    const double slack = 1e-9 * (1.0 + v);
    return v <= b1 + slack && v <= b2 + slack;
}

cplx v_exact(const SmoothTable& t, double x, double y, std::uint64_t q, double eta) {
    if (std::floor(x) > static_cast<double>(t.x_max))
        throw std::out_of_range("v_exact: x exceeds table range");
    if (q == 0) throw std::domain_error("v_exact: q = 0");
    const std::uint64_t xf = static_cast<std::uint64_t>(std::floor(x));
    // coefficient mu(q/d)/phi(q/d) per divisor d = (q, n)
    std::vector<double> coef(q + 1, 0.0);
    for (std::uint64_t d : divisors_of(q))
        coef[d] = static_cast<double>(mobius(t, q / d)) /
                  static_cast<double>(euler_phi(t, q / d));
    KahanCplx sum;
    for (std::uint64_t n = 1; n <= xf; ++n) {
        if (static_cast<double>(t.lpf[n]) > y) continue;
        const double c = coef[std::gcd(n, q)];
        if (c != 0.0) sum.add(c * e_of(n, eta));
    }
    return sum.value();
}

cplx major_arc_main_term(const SaddleData& sd, double psi, std::uint64_t q, double eta) {
    const double a = sd.alpha;
    std::uint64_t phi = 1, m = q;
    double prod = 1.0;
    for (std::uint64_t p = 2; p * p <= m; ++p) {
        if (m % p == 0) {
            std::uint64_t pe = 1;
            while (m % p == 0) { m /= p; pe *= p; }
            phi *= (pe / p) * (p - 1);
            prod *= 1.0 - std::pow(static_cast<double>(p), a - 1.0);
        }
    }
    if (m > 1) {
        phi *= m - 1;
        prod *= 1.0 - std::pow(static_cast<double>(m), a - 1.0);
    }
    const double pref = a * std::pow(static_cast<double>(q), 1.0 - a) /
                        static_cast<double>(phi) * prod;
    return pref * phi0(eta * sd.x, {a, 0.0}) * psi;
}

cplx v_tilde(const SmoothTable& t, const DickmanTable& dt, double x, double y,
             std::uint64_t q, double eta, const LambdaEvaluator* lam) {
    if (q == 0) throw std::domain_error("v_tilde: q = 0");
    const std::uint64_t xf = static_cast<std::uint64_t>(std::floor(x));
    std::optional<LambdaEvaluator> local;
    if (!lam) {
        local.emplace(dt, y, x + 1);
        lam = &*local;
    }
    const double phi_q = static_cast<double>(euler_phi(t, q));
    KahanCplx total;
    for (std::uint64_t k : divisors_of(q)) {
        const double coef = static_cast<double>(mobius(t, q / k)) *
                            static_cast<double>(k) / phi_q;
        if (coef == 0.0) continue;
        KahanCplx inner;
        const std::uint64_t m_max = xf / k;
        for (std::uint64_t m = 1; m <= m_max; ++m)
            inner.add(e_of(k * m, eta) * (*lam)(static_cast<double>(m)));
        total.add(coef * inner.value());
    }
    return total.value();
}

cplx perron_numeric(const SaddleData& sd, std::uint64_t q, double x, double eta,
                    double T) {
    if (T < 2) throw std::domain_error("perron_numeric: T < 2");
    const double a = sd.alpha;
    const double lx = std::log(x);
    const auto& primes = *sd.primes_y;
    const double lambda = eta * x;
    auto integrand = [&](double tau) {
        const cplx s(a, tau);
        return zeta_q_y(s, q, sd.y, primes) * std::exp(s * lx) * phi0(lambda, s);
    };
    const double width = std::numbers::pi / (2.0 * lx);
    const std::int64_t panels =
        std::max<std::int64_t>(8, static_cast<std::int64_t>(std::ceil(2.0 * T / width)));
    const double h = 2.0 * T / static_cast<double>(panels);
    const double scale = std::exp(a * lx + sd.log_zeta_alpha_y);
    const double panel_tol = 1e-9 * scale / static_cast<double>(panels);
    bool ok = true;
    KahanCplx sum;
    for (std::int64_t i = 0; i < panels; ++i) {
        const double lo = -T + h * static_cast<double>(i);
        sum.add(adaptive_panel(integrand, lo, lo + h, panel_tol, 10, &ok));
    }
    if (!ok)
        throw std::runtime_error(
            "perron_numeric: quadrature did not converge (x=" + std::to_string(x) +
            ", T=" + std::to_string(T) + ")");
    return sum.value() / kTwoPi;
}

ParsevalResult discrete_parseval(const SmoothTable& t, double x, double y,
                                 std::uint64_t N) {
    const std::uint64_t xf = static_cast<std::uint64_t>(std::floor(x));
    if (xf > t.x_max) throw std::out_of_range("discrete_parseval: x exceeds table range");
    if (N <= xf) throw std::domain_error("discrete_parseval: need N > floor(x) (aliasing)");
    if (N > (std::uint64_t(1) << 26))
        throw std::length_error("discrete_parseval: N beyond root-table cap");

    std::vector<std::uint64_t> smooth;
    for (std::uint64_t n = 1; n <= xf; ++n)
        if (static_cast<double>(t.lpf[n]) <= y) smooth.push_back(n);

    std::vector<cplx> root(N);
    for (std::uint64_t k = 0; k < N; ++k) {
        const double ang = kTwoPi * static_cast<double>(k) / static_cast<double>(N);
        root[k] = {std::cos(ang), std::sin(ang)};
    }

    KahanSum power;
    for (std::uint64_t j = 0; j < N; ++j) {
        double re = 0, im = 0;
        for (std::uint64_t n : smooth) {
            const cplx& w = root[(n * j) % N];
            re += w.real();
            im += w.imag();
        }
        power.add(re * re + im * im);
    }
    const double raw = power.value() / static_cast<double>(N);
    ParsevalResult res;
    res.psi = std::llround(raw);
    res.rounding_error = std::abs(raw - static_cast<double>(res.psi));
    return res;
}

}  // namespace friable
