#pragma once

#include <cmath>
#include <complex>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "quadrature.hpp"
#include "su2.hpp"

namespace picard {

namespace detail {

inline std::string fmt(cplx z) {
    std::ostringstream os;
    os.precision(17);
    os << "(" << z.real() << "," << z.imag() << ")";
    return os.str();
}

inline void check_pole(cplx z, const char *who) {
    if (z.real() <= 0.5 && std::abs(z.imag()) < 1e-12) {
        double n = std::round(z.real());
        if (n <= 0 && std::abs(z.real() - n) < 1e-12)
            throw std::domain_error(std::string(who) + ": pole at z = " + fmt(z));
    }
}

// B_{2k} / (2k (2k-1)), k = 1..10
inline constexpr double stirling_coeff[10] = {
    1.0 / 12, -1.0 / 360, 1.0 / 1260, -1.0 / 1680, 1.0 / 1188,
    -691.0 / 360360, 1.0 / 156, -3617.0 / 122400, 43867.0 / 244188, -174611.0 / 125400};

// B_{2k} / (2k), k = 1..10
inline constexpr double digamma_coeff[10] = {
    1.0 / 12, -1.0 / 120, 1.0 / 252, -1.0 / 240, 1.0 / 132,
    -691.0 / 32760, 1.0 / 12, -3617.0 / 8160, 43867.0 / 14364, -174611.0 / 6600};

// log(sin(pi z)) without overflow for large |Im z|; correct modulo 2 pi i.
inline cplx log_sin_pi(cplx z) {
    const cplx I(0, 1);
    if (std::abs(z.imag()) < 20) return std::log(std::sin(pi * z));
    if (z.imag() > 0) return -I * pi * z + std::log(1.0 - std::exp(2.0 * I * pi * z)) - std::log(-2.0 * I);
    return I * pi * z + std::log(1.0 - std::exp(-2.0 * I * pi * z)) - std::log(2.0 * I);
}

} // namespace detail

// log Gamma(z), branch not normalized (exp(lgamma) = Gamma).
inline cplx lgamma_complex(cplx z) {
    detail::check_pole(z, "lgamma_complex");
    if (z.real() < 0.5) return std::log(pi) - detail::log_sin_pi(z) - lgamma_complex(1.0 - z);
    cplx shift = 0;
    while (std::abs(z) < 15.0 || z.real() < 8.0) {
        shift += std::log(z);
        z += 1.0;
    }
    cplx zi = 1.0 / z, zi2 = zi * zi, ser = 0, p = zi;
    for (double c : detail::stirling_coeff) {
        ser += c * p;
        p *= zi2;
    }
    return (z - 0.5) * std::log(z) - z + 0.5 * std::log(2 * pi) + ser - shift;
}

inline cplx gamma_complex(cplx z) {
    detail::check_pole(z, "gamma_complex");
    if (z.imag() == 0 && z.real() > 0 && z.real() < 170) return std::tgamma(z.real());
    return std::exp(lgamma_complex(z));
}

inline cplx digamma(cplx z) {
    detail::check_pole(z, "digamma");
    if (z.real() < 0.5) {
        cplx c = std::abs(z.imag()) < 20 ? std::cos(pi * z) / std::sin(pi * z) : cplx(0, z.imag() > 0 ? -1.0 : 1.0);
        return digamma(1.0 - z) - pi * c;
    }
    cplx shift = 0;
    while (std::abs(z) < 15.0 || z.real() < 8.0) {
        shift += 1.0 / z;
        z += 1.0;
    }
    cplx zi2 = 1.0 / (z * z), ser = 0, p = zi2;
    for (double c : detail::digamma_coeff) {
        ser += c * p;
        p *= zi2;
    }
    return std::log(z) - 0.5 / z - ser - shift;
}

// sum_{k=0}^{m-1} 1/(s+k), so that digamma(s+m) = digamma_shift(s,m) + digamma(s).
inline cplx digamma_shift(cplx s, int m) {
    if (m < 1) throw std::invalid_argument("digamma_shift: m must be >= 1");
    cplx r = 0;
    for (int k = 0; k < m; ++k) {
        cplx d = s + double(k);
        if (std::abs(d) < 1e-14) throw std::domain_error("digamma_shift: pole at s = " + detail::fmt(s));
        r += 1.0 / d;
    }
    return r;
}

struct BesselResult {
    cplx value;
    double error;
};

// K_nu(x) = int_0^inf exp(-x cosh u) cosh(nu u) du by composite Gauss-Legendre
// over [0, u_max] where the integrand is below 1e-300 of its peak scale.
inline BesselResult bessel_k_checked(cplx nu, double x, double tol = 1e-10) {
    if (!(x > 0)) throw std::domain_error("bessel_k_complex: x must be > 0");
    double sig = std::abs(nu.real()), t = std::abs(nu.imag());
    // log of the integrand envelope: -x cosh u + sig u
    auto env = [&](double u) { return -x * std::cosh(u) + sig * u; };
    double u_peak = (sig > x) ? std::asinh(sig / x) : 0.0;
    double peak = env(u_peak);
    double u_max = u_peak + 1.0;
    while (env(u_max) > peak - 40.0) u_max += 0.5;
    int panels = std::max(4, int(std::ceil(u_max * (1.0 + t) / 2.0)));
    quad::Rule base = quad::gauss_legendre(20);
    auto run = [&](int np, double &l1) {
        cplx s = 0;
        l1 = 0;
        double h = u_max / np;
        for (int p = 0; p < np; ++p) {
            double c = (p + 0.5) * h;
            for (std::size_t i = 0; i < base.x.size(); ++i) {
                double u = c + 0.5 * h * base.x[i];
                cplx f = std::exp(-x * std::cosh(u)) * std::cosh(nu * u);
                s += 0.5 * h * base.w[i] * f;
                l1 += 0.5 * h * base.w[i] * std::abs(f);
            }
        }
        return s;
    };
    double l1 = 0;
    cplx prev = run(panels, l1);
    if (l1 < 1e-280) return {prev, l1}; // at the bottom of the double range
    for (int lev = 0; lev < 8; ++lev) {
        panels *= 2;
        cplx cur = run(panels, l1);
        double err = std::abs(cur - prev);
        double floor_err = 1e-16 * l1 * std::sqrt(double(panels));
        if (err <= tol * std::abs(cur) || (err <= 4 * floor_err && floor_err <= tol * std::abs(cur))) {
            return {cur, std::max(err, floor_err)};
        }
        if (floor_err > tol * std::abs(cur)) {
            std::ostringstream os;
            os.precision(6);
            os << "bessel_k_complex: accuracy " << tol << " unreachable for nu = " << detail::fmt(nu) << ", x = " << x
               << " (integrand mass " << l1 << " vs value " << std::abs(cur) << ", cancellation floor " << floor_err << ")";
            throw std::runtime_error(os.str());
        }
        prev = cur;
    }
    throw std::runtime_error("bessel_k_complex: refinement did not converge for nu = " + detail::fmt(nu));
}

inline cplx bessel_k_complex(cplx nu, double x, double tol = 1e-10) { return bessel_k_checked(nu, x, tol).value; }

// Chebyshev interpolant of exp(x) sqrt(x) K_nu(x) in log x over [x_lo, x_hi].
// The build verifies itself at interleaved points; usable() is false when the
// interpolant misses tol, and callers then fall back to direct quadrature.
class BesselKTable {
public:
    BesselKTable() = default;
    BesselKTable(cplx nu, double x_lo, double x_hi, int degree = 56, double tol = 1e-10)
        : nu_(nu), a_(std::log(x_lo)), b_(std::log(x_hi)) {
        int n = degree;
        std::vector<cplx> vals(n);
        for (int i = 0; i < n; ++i) {
            double t = std::cos(pi * (i + 0.5) / n);
            vals[i] = g(t);
        }
        coef_.assign(n, 0.0);
        for (int k = 0; k < n; ++k) {
            cplx s = 0;
            for (int i = 0; i < n; ++i) s += vals[i] * std::cos(pi * k * (i + 0.5) / n);
            coef_[k] = s * (2.0 / n);
        }
        coef_[0] *= 0.5;
        ok_ = true;
        for (int i = 0; i < 7; ++i) {
            double t = -0.93 + 0.31 * i;
            cplx ref = g(t), ap = clenshaw(t);
            if (std::abs(ref - ap) > tol * std::abs(ref)) ok_ = false;
        }
    }

    bool usable() const { return ok_; }
    bool covers(double x) const {
        double lx = std::log(x);
        return lx >= a_ && lx <= b_;
    }
    cplx operator()(double x) const {
        double t = (2 * std::log(x) - a_ - b_) / (b_ - a_);
        return clenshaw(t) * std::exp(-x) / std::sqrt(x);
    }

private:
    cplx g(double t) const {
        double x = std::exp(0.5 * (a_ + b_) + 0.5 * (b_ - a_) * t);
        return bessel_k_complex(nu_, x) * std::exp(x) * std::sqrt(x);
    }
    cplx clenshaw(double t) const {
        cplx b1 = 0, b2 = 0;
        for (int k = int(coef_.size()) - 1; k >= 1; --k) {
            cplx b0 = 2 * t * b1 - b2 + coef_[k];
            b2 = b1;
            b1 = b0;
        }
        return t * b1 - b2 + coef_[0];
    }

    cplx nu_ = 0;
    double a_ = 0, b_ = 1;
    std::vector<cplx> coef_;
    bool ok_ = false;
};

// int_0^inf x^{-z} K_mu(x) K_nu(x) dx in closed form.
inline cplx kk_mellin_integral(cplx z, cplx mu, cplx nu) {
    if (!(z.real() < 1 - std::abs(mu.real()) - std::abs(nu.real())))
        throw std::domain_error("kk_mellin_integral: requires Re z < 1 - |Re mu| - |Re nu|");
    cplx a = 1.0 - z;
    cplx lg = lgamma_complex(0.5 * (a + mu + nu)) + lgamma_complex(0.5 * (a + mu - nu)) +
              lgamma_complex(0.5 * (a - mu + nu)) + lgamma_complex(0.5 * (a - mu - nu)) - lgamma_complex(a);
    return std::pow(2.0, -2.0 - z) * std::exp(lg);
}

} // namespace picard
