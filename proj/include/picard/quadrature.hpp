#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace picard::quad {

struct Rule {
    std::vector<double> x, w;
};

// Gauss-Legendre nodes on [a, b].
inline Rule gauss_legendre(int n, double a = -1.0, double b = 1.0) {
    if (n < 1) throw std::invalid_argument("gauss_legendre: n must be >= 1");
    Rule r;
    r.x.resize(n);
    r.w.resize(n);
    const double pi = std::acos(-1.0);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(pi * (i + 0.75) / (n + 0.5));
        double dp = 0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1, p1 = x;
            for (int k = 2; k <= n; ++k) {
                double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            if (n == 1) p1 = x, p0 = 1;
            dp = n * (x * p1 - p0) / (x * x - 1);
            double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        double w = 2 / ((1 - x * x) * dp * dp);
        r.x[i] = -x;
        r.x[n - 1 - i] = x;
        r.w[i] = r.w[n - 1 - i] = w;
    }
    double h = 0.5 * (b - a), c = 0.5 * (a + b);
    for (int i = 0; i < n; ++i) {
        r.x[i] = c + h * r.x[i];
        r.w[i] *= h;
    }
    return r;
}

template <class F>
auto integrate(const Rule &r, F &&f) {
    using T = decltype(f(0.0));
    T s{};
    for (std::size_t i = 0; i < r.x.size(); ++i) s += r.w[i] * f(r.x[i]);
    return s;
}

struct Result {
    std::complex<double> value;
    double error;
    int levels;
};

// Composite Gauss-Legendre on [a,b] with panel doubling until two successive
// estimates agree to tol (absolute or relative, whichever is looser).
template <class F>
Result adaptive_gl(F &&f, double a, double b, double tol, int order = 12, int max_panels = 1 << 14) {
    Rule base = gauss_legendre(order);
    auto run = [&](int panels) {
        std::complex<double> s = 0;
        double h = (b - a) / panels;
        for (int p = 0; p < panels; ++p) {
            double lo = a + p * h, c = lo + 0.5 * h;
            for (int i = 0; i < order; ++i) s += 0.5 * h * base.w[i] * std::complex<double>(f(c + 0.5 * h * base.x[i]));
        }
        return s;
    };
    std::complex<double> prev = run(1);
    int lev = 0;
    for (int panels = 2; panels <= max_panels; panels *= 2) {
        std::complex<double> cur = run(panels);
        ++lev;
        double err = std::abs(cur - prev);
        if (err <= tol * std::max(1.0, std::abs(cur))) return {cur, err, lev};
        prev = cur;
    }
    throw std::runtime_error("adaptive_gl: no convergence on [" + std::to_string(a) + ", " + std::to_string(b) + "]");
}

// Double-exponential (tanh-sinh type) rule for [0, inf) integrands with
// exponential decay: x = exp(pi/2 sinh t).
template <class F>
Result de_half_line(F &&f, double tol = 1e-12, double tmax = 4.5) {
    const double pi = std::acos(-1.0);
    auto eval = [&](double h, bool odd_only) {
        std::complex<double> s = 0;
        int n = int(std::ceil(tmax / h));
        for (int k = -n; k <= n; ++k) {
            if (odd_only && (k % 2 == 0)) continue;
            double t = k * h;
            double x = std::exp(0.5 * pi * std::sinh(t));
            double dx = 0.5 * pi * std::cosh(t) * x;
            if (x == 0 || !std::isfinite(x)) continue;
            std::complex<double> v = f(x);
            if (std::isfinite(v.real()) && std::isfinite(v.imag())) s += v * dx;
        }
        return s;
    };
    double h = 0.5;
    std::complex<double> raw = eval(h, false);
    std::complex<double> est = raw * h;
    double err = std::numeric_limits<double>::infinity();
    int lev = 0;
    for (lev = 1; lev <= 10; ++lev) {
        h *= 0.5;
        raw += eval(h, true);
        std::complex<double> next = raw * h;
        err = std::abs(next - est);
        est = next;
        if (lev >= 3 && err <= tol * std::max(std::abs(est), 1e-300)) break;
    }
    return {est, err, lev};
}

} // namespace picard::quad
