#include "friable/saddle.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "friable/sieve.hpp"

namespace friable {

namespace {

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

// residual f(a) = sum log p/(p^a - 1) - log x and its derivative
double residual(double a, const std::vector<std::uint64_t>& primes, double log_x) {
    KahanSum sum;
    for (std::uint64_t p : primes) {
        double lp = std::log(static_cast<double>(p));
        sum.add(lp / std::expm1(a * lp));
    }
    return sum.value() - log_x;
}

double residual_deriv(double a, const std::vector<std::uint64_t>& primes) {
    KahanSum sum;
    for (std::uint64_t p : primes) {
        double lp = std::log(static_cast<double>(p));
        double pa = std::exp(a * lp);
        double d = std::expm1(a * lp);
        sum.add(-pa * lp * lp / (d * d));
    }
    return sum.value();
}

}  // namespace

double h_of_u(double u) {
    if (u < 1) throw std::domain_error("h_of_u: u < 1");
    double l = std::log(u + 1);
    return std::exp(u / (l * l));
}

double alpha_asymptotic(double x, double y) {
    if (y < 2 || y > x) throw std::domain_error("alpha_asymptotic: need 2 <= y <= x");
    return std::log(1.0 + y / std::log(x)) / std::log(y);
}

std::complex<double> log_zeta_y(std::complex<double> s, double y,
                                const std::vector<std::uint64_t>& primes) {
    if (s.real() <= 0) throw std::domain_error("zeta_y: Re(s) <= 0");
    KahanSum re, im;
    for (std::uint64_t p : primes) {
        if (static_cast<double>(p) > y) break;
        std::complex<double> ps = std::exp(-s * std::log(static_cast<double>(p)));
        std::complex<double> term = -std::log(1.0 - ps);
        re.add(term.real());
        im.add(term.imag());
    }
    return {re.value(), im.value()};
}

std::complex<double> zeta_y(std::complex<double> s, double y,
                            const std::vector<std::uint64_t>& primes) {
    return std::exp(log_zeta_y(s, y, primes));
}

double zeta_y(double s, double y, const std::vector<std::uint64_t>& primes) {
    return zeta_y(std::complex<double>(s, 0.0), y, primes).real();
}

std::complex<double> zeta_q_y(std::complex<double> s, std::uint64_t q, double y,
                              const std::vector<std::uint64_t>& primes) {
    if (s.real() <= 0) throw std::domain_error("zeta_q_y: Re(s) <= 0");
    std::uint64_t phi = 1, m = q;
    std::complex<double> fac = 1.0;
    for (std::uint64_t p = 2; p * p <= m; ++p) {
        if (m % p == 0) {
            if (static_cast<double>(p) > y) throw std::domain_error("zeta_q_y: P(q) > y");
            std::uint64_t pe = 1;
            while (m % p == 0) { m /= p; pe *= p; }
            phi *= (pe / p) * (p - 1);
            fac *= 1.0 - std::exp((s - 1.0) * std::log(static_cast<double>(p)));
        }
    }
    if (m > 1) {
        if (static_cast<double>(m) > y) throw std::domain_error("zeta_q_y: P(q) > y");
        phi *= m - 1;
        fac *= 1.0 - std::exp((s - 1.0) * std::log(static_cast<double>(m)));
    }
    std::complex<double> pref =
        std::exp((1.0 - s) * std::log(static_cast<double>(q))) / static_cast<double>(phi);
    return pref * fac * zeta_y(s, y, primes);
}

SaddleData solve_alpha(double x, double y,
                       std::shared_ptr<const std::vector<std::uint64_t>> primes) {
    if (y < 2 || y > x) throw std::domain_error("solve_alpha: need 2 <= y <= x");
    const auto& pv = *primes;
    const double log_x = std::log(x);

    double lo = 1e-6, hi = 1.5;
    double flo = residual(lo, pv, log_x);
    double fhi = residual(hi, pv, log_x);
    if (!(flo > 0) || !(fhi < 0))
        throw std::runtime_error("solve_alpha: failed to bracket root");

    double a = 0.5 * (lo + hi);
    for (int it = 0; it < 200; ++it) {
        double f = residual(a, pv, log_x);
        if (f > 0) lo = a; else hi = a;
        double df = residual_deriv(a, pv);
        double step = f / df;
        double next = a - step;
        if (!(next > lo) || !(next < hi)) next = 0.5 * (lo + hi);  // bisection guard
        if (std::abs(next - a) < 1e-12 * std::max(1.0, std::abs(a))) { a = next; break; }
        a = next;
    }

    SaddleData sd;
    sd.x = x;
    sd.y = y;
    sd.u = log_x / std::log(y);
    sd.alpha = a;
    sd.primes_y = std::move(primes);
    sd.log_zeta_alpha_y = log_zeta_y({a, 0.0}, y, pv).real();
    sd.zeta_alpha_y = std::exp(sd.log_zeta_alpha_y);
    {
        KahanSum s2;
        for (std::uint64_t p : pv) {
            double lp = std::log(static_cast<double>(p));
            double pa = std::exp(a * lp);
            double d = pa - 1.0;
            s2.add(pa * lp * lp / (d * d));
        }
        sd.sigma2 = s2.value();
    }
    sd.h_u = (sd.u >= 1) ? h_of_u(sd.u) : 0.0;
    return sd;
}

SaddleData solve_alpha(double x, double y) {
    auto primes = std::make_shared<const std::vector<std::uint64_t>>(
        primes_up_to(static_cast<std::uint64_t>(std::floor(y))));
    return solve_alpha(x, y, std::move(primes));
}

double sigma2(const SaddleData& sd) { return sd.sigma2; }

double ht_psi_estimate(const SaddleData& sd) {
    return std::exp(sd.alpha * std::log(sd.x) + sd.log_zeta_alpha_y) /
           (sd.alpha * std::sqrt(2.0 * std::numbers::pi * sd.sigma2));
}

double rankin_bound(const SaddleData& sd, double sigma) {
    if (sigma <= 0) throw std::domain_error("rankin_bound: sigma <= 0");
    return std::exp(sigma * std::log(sd.x) +
                    log_zeta_y({sigma, 0.0}, sd.y, *sd.primes_y).real());
}

}  // namespace friable
