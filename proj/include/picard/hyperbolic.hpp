#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>

#include "parallel.hpp"
#include "quadrature.hpp"
#include "su2.hpp"

namespace picard {

// z + lambda j
struct H3Point {
    double x = 0, y = 0, lambda = 1;

    H3Point() = default;
    H3Point(double x_, double y_, double l_) : x(x_), y(y_), lambda(l_) {
        if (!(l_ > 0)) throw std::invalid_argument("H3Point: lambda must be > 0");
    }
    cplx z() const { return {x, y}; }
};

struct GroupElementSL2C {
    cplx a{1}, b{0}, c{0}, d{1};

    cplx det() const { return a * d - b * c; }
    GroupElementSL2C operator*(const GroupElementSL2C &o) const {
        return {a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d};
    }
    GroupElementSL2C inverse() const { return {d, -b, -c, a}; }
    GroupElementSL2C operator-() const { return {-a, -b, -c, -d}; }

    static GroupElementSL2C identity() { return {}; }
    static GroupElementSL2C translation(cplx z) { return {1.0, z, 0.0, 1.0}; }
    // a[h] = diag(sqrt h, 1/sqrt h), moves j to h j
    static GroupElementSL2C dilation(double h) { return {std::sqrt(h), 0.0, 0.0, 1.0 / std::sqrt(h)}; }
    static GroupElementSL2C from_su2(const SU2Element &K) { return {K.alpha, K.beta, -std::conj(K.beta), std::conj(K.alpha)}; }
    static GroupElementSL2C at(const H3Point &p) { return translation(p.z()) * dilation(p.lambda); }
};

inline double max_abs_diff(const GroupElementSL2C &g, const GroupElementSL2C &h) {
    return std::max(std::max(std::abs(g.a - h.a), std::abs(g.b - h.b)), std::max(std::abs(g.c - h.c), std::abs(g.d - h.d)));
}

inline H3Point mobius_act(const GroupElementSL2C &g, const H3Point &p) {
    cplx z = p.z();
    double l2 = p.lambda * p.lambda;
    cplx cz_d = g.c * z + g.d;
    double den = std::norm(cz_d) + std::norm(g.c) * l2;
    cplx nz = ((g.a * z + g.b) * std::conj(cz_d) + g.a * std::conj(g.c) * l2) / den;
    return {nz.real(), nz.imag(), p.lambda / den};
}

inline double hyperbolic_distance(const H3Point &p, const H3Point &q) {
    double num = std::norm(p.z() - q.z()) + (p.lambda - q.lambda) * (p.lambda - q.lambda);
    return std::acosh(1 + num / (2 * p.lambda * q.lambda));
}

struct IwasawaCoords {
    cplx z;
    double height;
    SU2Element k;

    GroupElementSL2C recompose() const {
        return GroupElementSL2C::translation(z) * GroupElementSL2C::dilation(height) * GroupElementSL2C::from_su2(k);
    }
    H3Point point() const { return {z.real(), z.imag(), height}; }
};

// K-part of a matrix from its bottom row (c, d): with h = 1/(|c|^2+|d|^2),
// K = [[conj(d'), -conj(c')], [c', d']] where (c', d') = sqrt(h) (c, d).
inline SU2Element k_from_bottom_row(cplx c, cplx d) {
    double n = std::sqrt(std::norm(c) + std::norm(d));
    return {std::conj(d) / n, -std::conj(c) / n};
}

inline IwasawaCoords iwasawa_decompose(const GroupElementSL2C &g) {
    double n = std::norm(g.c) + std::norm(g.d);
    IwasawaCoords r;
    r.z = (g.a * std::conj(g.c) + g.b * std::conj(g.d)) / n;
    r.height = 1.0 / n;
    r.k = k_from_bottom_row(g.c, g.d);
    return r;
}

// T(gamma n[z] a[lambda]), the rotation picked up when gamma moves the frame at p.
inline SU2Element frame_transport(const GroupElementSL2C &gamma, const H3Point &p) {
    cplx z = p.z();
    double l = std::sqrt(p.lambda);
    return k_from_bottom_row(gamma.c * l, (gamma.c * z + gamma.d) / l);
}

inline bool in_fundamental_domain(const H3Point &p, double tol = 1e-12) {
    if (std::abs(p.x) > 0.5 + tol || std::abs(p.y) > 0.5 + tol) return false;
    return p.x * p.x + p.y * p.y + p.lambda * p.lambda >= 1 - tol;
}

enum class Domain { fundamental, strip, box };

struct IntegrationResult {
    cplx value;
    double error;
};

namespace detail {

// int_lo^hi g(lambda) dlambda / lambda^3 in u = log(lambda); hi may be +inf, lo may be 0.
inline IntegrationResult integrate_lambda(const std::function<cplx(double)> &g, double lo, double hi, double tol) {
    auto h = [&](double u) {
        double l = std::exp(u);
        return g(l) * std::exp(-2 * u);
    };
    const double block = 2.0;
    const int max_blocks = 40;
    cplx total = 0;
    double err = 0;
    auto add_block = [&](double a, double b) {
        auto r = quad::adaptive_gl(h, a, b, tol * 0.1, 16);
        err += r.error;
        return r.value;
    };
    double ulo = (lo > 0) ? std::log(lo) : -std::numeric_limits<double>::infinity();
    double uhi = std::isfinite(hi) ? std::log(hi) : std::numeric_limits<double>::infinity();
    auto march = [&](double from, double dir) {
        cplx acc = 0;
        int quiet = 0;
        for (int k = 0; k < max_blocks; ++k) {
            double a = from + dir * k * block, b = from + dir * (k + 1) * block;
            cplx v = add_block(std::min(a, b), std::max(a, b));
            acc += v;
            if (std::abs(v) <= tol * std::max(1e-300, std::abs(total + acc))) {
                if (++quiet >= 2) return acc;
            } else {
                quiet = 0;
            }
        }
        throw std::runtime_error("integrate_dV: integral does not converge in lambda (tail blocks not decaying)");
    };
    if (std::isfinite(ulo) && std::isfinite(uhi)) {
        total = add_block(ulo, uhi);
    } else if (std::isfinite(ulo)) {
        total = march(ulo, +1.0);
    } else if (std::isfinite(uhi)) {
        total = march(uhi, -1.0);
    } else {
        total = march(0.0, +1.0);
        total += march(0.0, -1.0);
    }
    return {total, err};
}

} // namespace detail

struct QuadratureSpec {
    int n_xy = 16;
    double tol = 1e-10;
    double lambda_lo = 0.0, lambda_hi = std::numeric_limits<double>::infinity();
};

// int f dV, dV = dx dy dlambda / lambda^3, over F, the strip [0,1]^2 x (0, inf),
// or the box [0,1]^2 x (lambda_lo, lambda_hi). Gauss-Legendre in x, y.
inline IntegrationResult integrate_dV(const std::function<cplx(const H3Point &)> &f, Domain dom, const QuadratureSpec &q = {}) {
    double x0 = 0, x1 = 1;
    if (dom == Domain::fundamental) x0 = -0.5, x1 = 0.5;
    quad::Rule rx = quad::gauss_legendre(q.n_xy, x0, x1);
    std::size_t n = rx.x.size();
    struct Cell {
        cplx v;
        double e;
    };
    auto cells = parallel::ordered_map<Cell>(n * n, [&](std::size_t idx) {
        double x = rx.x[idx / n], y = rx.x[idx % n];
        double lo = 0, hi = std::numeric_limits<double>::infinity();
        if (dom == Domain::fundamental) {
            lo = std::sqrt(std::max(0.0, 1 - x * x - y * y));
        } else if (dom == Domain::box) {
            lo = q.lambda_lo;
            hi = q.lambda_hi;
        }
        auto g = [&](double l) { return f(H3Point{x, y, l}); };
        auto r = detail::integrate_lambda(g, lo, hi, q.tol);
        return Cell{r.value * rx.w[idx / n] * rx.w[idx % n], r.error * rx.w[idx / n] * rx.w[idx % n]};
    });
    cplx tot = 0;
    double err = 0;
    for (auto &c : cells) {
        tot += c.v;
        err += c.e;
    }
    return {tot, err};
}

} // namespace picard
