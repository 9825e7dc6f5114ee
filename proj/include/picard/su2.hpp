#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include "parallel.hpp"
#include "quadrature.hpp"

namespace picard {

inline constexpr double pi = 3.141592653589793238462643383279502884;

// Half-integers are carried as twice their value.
inline int twice(double x) {
    double t = 2.0 * x;
    long r = std::lround(t);
    if (std::abs(t - double(r)) > 1e-9) throw std::invalid_argument("not a half-integer: " + std::to_string(x));
    return int(r);
}

struct SpectralIndex {
    int two_l = 0, two_k = 0, two_m = 0;

    SpectralIndex() = default;
    SpectralIndex(double l, double k, double m) : two_l(twice(l)), two_k(twice(k)), two_m(twice(m)) { validate(); }

    double l() const { return 0.5 * two_l; }
    double k() const { return 0.5 * two_k; }
    double m() const { return 0.5 * two_m; }

    void validate() const {
        if (two_l < 0) throw std::invalid_argument("spectral index: l must be >= 0");
        if (std::abs(two_k) > two_l || std::abs(two_m) > two_l)
            throw std::invalid_argument("spectral index: |k|, |m| must not exceed l");
        if (((two_k - two_l) % 2) != 0 || ((two_m - two_l) % 2) != 0)
            throw std::invalid_argument("spectral index: k, m must be congruent to l mod 1");
        if (two_l > 64) throw std::invalid_argument("spectral index: l > 32 not supported");
    }
};

namespace detail {

inline double factorial(int n) {
    static const std::vector<double> table = [] {
        std::vector<double> t(171, 1.0);
        for (int i = 1; i < 171; ++i) t[i] = t[i - 1] * i;
        return t;
    }();
    if (n < 0 || n > 170) throw std::out_of_range("factorial argument out of range");
    return table[n];
}

inline double binom(int n, int k) {
    if (k < 0 || k > n) return 0.0;
    return std::round(factorial(n) / (factorial(k) * factorial(n - k)));
}

inline cplx ipow(cplx z, int n) {
    cplx r = 1;
    if (n < 0) {
        z = 1.0 / z;
        n = -n;
    }
    while (n) {
        if (n & 1) r *= z;
        z *= z;
        n >>= 1;
    }
    return r;
}

} // namespace detail

// K[alpha, beta] = [[alpha, beta], [-conj(beta), conj(alpha)]]
struct SU2Element {
    cplx alpha{1, 0}, beta{0, 0};

    SU2Element() = default;
    SU2Element(cplx a, cplx b) : alpha(a), beta(b) {
        double n = std::sqrt(std::norm(a) + std::norm(b));
        if (!(n > 0)) throw std::invalid_argument("SU2Element: zero parameters");
        alpha /= n;
        beta /= n;
    }

    static SU2Element identity() { return {}; }

    SU2Element operator*(const SU2Element &o) const {
        SU2Element r;
        r.alpha = alpha * o.alpha - beta * std::conj(o.beta);
        r.beta = alpha * o.beta + beta * std::conj(o.alpha);
        return r;
    }
    SU2Element inverse() const {
        SU2Element r;
        r.alpha = std::conj(alpha);
        r.beta = -beta;
        return r;
    }
    SU2Element operator-() const {
        SU2Element r;
        r.alpha = -alpha;
        r.beta = -beta;
        return r;
    }
    std::array<std::array<cplx, 2>, 2> matrix() const {
        return {{{alpha, beta}, {-std::conj(beta), std::conj(alpha)}}};
    }
};

// conjugation by diag(i, -i)
inline SU2Element conj_by_I(const SU2Element &K) {
    SU2Element r;
    r.alpha = K.alpha;
    r.beta = -K.beta;
    return r;
}

using SO3Matrix = std::array<std::array<double, 3>, 3>;

inline SO3Matrix mat_mul(const SO3Matrix &A, const SO3Matrix &B) {
    SO3Matrix C{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            for (int k = 0; k < 3; ++k) C[i][j] += A[i][k] * B[k][j];
    return C;
}

inline double max_abs_diff(const SO3Matrix &A, const SO3Matrix &B) {
    double d = 0;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) d = std::max(d, std::abs(A[i][j] - B[i][j]));
    return d;
}

inline SO3Matrix so3_identity() { return {{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}}; }

inline SO3Matrix spin_cover(const SU2Element &A) {
    const cplx a = A.alpha, b = A.beta;
    const cplx a2 = a * a, b2 = b * b;
    return {{{(a2 - b2).real(), -(a2 + b2).imag(), 2 * (a * b).real()},
             {(a2 - b2).imag(), (a2 + b2).real(), 2 * (a * b).imag()},
             {-2 * (std::conj(a) * b).real(), 2 * (a * std::conj(b)).imag(), std::norm(a) - std::norm(b)}}};
}

struct EulerAngles {
    double theta = 0, chi = 0, phi = 0;
};

inline SO3Matrix rot_z(double t) { return {{{std::cos(t), std::sin(t), 0}, {-std::sin(t), std::cos(t), 0}, {0, 0, 1}}}; }
inline SO3Matrix rot_y(double c) { return {{{std::cos(c), 0, -std::sin(c)}, {0, 1, 0}, {std::sin(c), 0, std::cos(c)}}}; }

inline SO3Matrix rot(double theta, double chi, double phi) { return mat_mul(mat_mul(rot_z(theta), rot_y(chi)), rot_z(phi)); }
inline SO3Matrix rot(const EulerAngles &e) { return rot(e.theta, e.chi, e.phi); }

// SU(2) lifts: spin_cover(lift_z(t)) = rot_z(t), spin_cover(lift_y(c)) = rot_y(c).
inline SU2Element lift_z(double t) { return {std::polar(1.0, -0.5 * t), 0.0}; }
inline SU2Element lift_y(double c) { return {std::cos(0.5 * c), -std::sin(0.5 * c)}; }
inline SU2Element lift_rot(double theta, double chi, double phi) { return lift_z(theta) * lift_y(chi) * lift_z(phi); }

inline EulerAngles euler_decompose(const SO3Matrix &R) {
    EulerAngles e;
    double c = std::max(-1.0, std::min(1.0, R[2][2]));
    e.chi = std::acos(c);
    double s = std::sqrt(R[0][2] * R[0][2] + R[1][2] * R[1][2]);
    if (s < 1e-12) {
        e.theta = 0;
        e.phi = (c > 0) ? std::atan2(R[0][1], R[0][0]) : std::atan2(-R[0][1], -R[0][0]);
        e.chi = (c > 0) ? 0.0 : pi;
    } else {
        e.chi = std::atan2(s, R[2][2]);
        e.theta = std::atan2(R[1][2], -R[0][2]);
        e.phi = std::atan2(R[2][1], R[2][0]);
    }
    if (e.theta < 0) e.theta += 2 * pi;
    if (e.theta >= 2 * pi) e.theta -= 2 * pi;
    return e;
}

inline double wigner_small_d(double j, double k, double m, double chi) {
    SpectralIndex ix(j, k, m);
    int J2 = ix.two_l, K2 = ix.two_k, M2 = ix.two_m;
    int jpm = (J2 + M2) / 2, jmm = (J2 - M2) / 2, jpk = (J2 + K2) / 2, jmk = (J2 - K2) / 2;
    int kmm = (K2 - M2) / 2;
    double c = std::cos(0.5 * chi), s = std::sin(0.5 * chi);
    double sum = 0;
    for (int n = std::max(0, -kmm); n <= std::min(jpm, jmk); ++n) {
        double sign = ((n + kmm) % 2 == 0) ? 1.0 : -1.0;
        sum += sign * std::pow(c, jpm + jmk - 2 * n) * std::pow(s, kmm + 2 * n) /
               (detail::factorial(jpm - n) * detail::factorial(jmk - n) * detail::factorial(n) * detail::factorial(n + kmm));
    }
    using detail::factorial;
    return sum * std::sqrt(factorial(jpk) * factorial(jmk) * factorial(jpm) * factorial(jmm));
}

namespace detail {

// Coefficient of x^{j+k} y^{j-k} in (conj(a) x - b y)^{j+m} (conj(b) x + a y)^{j-m}, doubled indices.
inline cplx wigner_poly_coeff(const SpectralIndex &ix, cplx a, cplx b) {
    int n1 = (ix.two_l + ix.two_m) / 2, n2 = (ix.two_l - ix.two_m) / 2, ty = (ix.two_l - ix.two_k) / 2;
    cplx ac = std::conj(a), bc = std::conj(b);
    cplx tot = 0;
    for (int p = std::max(0, ty - n2); p <= std::min(n1, ty); ++p) {
        int q = ty - p;
        tot += binom(n1, p) * binom(n2, q) * ipow(ac, n1 - p) * ipow(-b, p) * ipow(bc, n2 - q) * ipow(a, q);
    }
    return tot;
}

} // namespace detail

// D^j_{km} evaluated on the SU(2) element itself (single-valued for half-integer j).
inline cplx wigner_D_su2(double j, double k, double m, const SU2Element &A) {
    SpectralIndex ix(j, k, m);
    using detail::factorial;
    double norm = std::sqrt(factorial((ix.two_l + ix.two_k) / 2) * factorial((ix.two_l - ix.two_k) / 2)) /
                  std::sqrt(factorial((ix.two_l + ix.two_m) / 2) * factorial((ix.two_l - ix.two_m) / 2));
    return norm * detail::wigner_poly_coeff(ix, A.alpha, A.beta);
}

// Integer-order D on a rotation through its Euler angles.
inline cplx wigner_D_so3(int j, int k, int m, const SO3Matrix &R) {
    EulerAngles e = euler_decompose(R);
    return std::polar(1.0, k * e.theta) * wigner_small_d(j, k, m, e.chi) * std::polar(1.0, m * e.phi);
}

// Matrix D^j(A), rows/cols indexed by k, m = -j..j.
inline std::vector<std::vector<cplx>> wigner_D_matrix(double j, const SU2Element &A) {
    int n = twice(j) + 1;
    std::vector<std::vector<cplx>> M(n, std::vector<cplx>(n));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) M[a][b] = wigner_D_su2(j, -j + a, -j + b, A);
    return M;
}

inline double b_coefficient(double l, double k, double m) {
    SpectralIndex ix(l, k, m);
    using detail::factorial;
    return std::sqrt(factorial((ix.two_l + ix.two_m) / 2) * factorial((ix.two_l - ix.two_m) / 2)) /
           std::sqrt(factorial((ix.two_l + ix.two_k) / 2) * factorial((ix.two_l - ix.two_k) / 2));
}

// Coefficient of z^{l-k} in (alpha z - conj(beta))^{l-m} (beta z + conj(alpha))^{l+m}.
inline cplx phi_coeff(double l, double k, double m, const SU2Element &K) {
    SpectralIndex ix(l, k, m);
    int n1 = (ix.two_l - ix.two_m) / 2, n2 = (ix.two_l + ix.two_m) / 2, e = (ix.two_l - ix.two_k) / 2;
    cplx a = K.alpha, b = K.beta;
    cplx tot = 0;
    for (int p = std::max(0, e - n2); p <= std::min(n1, e); ++p) {
        int q = e - p;
        // p powers of z from the first factor, q from the second
        tot += detail::binom(n1, p) * detail::ipow(a, p) * detail::ipow(-std::conj(b), n1 - p) * detail::binom(n2, q) *
               detail::ipow(b, q) * detail::ipow(std::conj(a), n2 - q);
    }
    return tot;
}

// The orthonormal-type basis on SU(2): sqrt((l+1)/(2 pi^2)) D^{l/2}_{mk}(A).
inline cplx t_basis(int l, double k, double m, const SU2Element &A) {
    if (l < 0) throw std::invalid_argument("t_basis: l must be >= 0");
    return std::sqrt((l + 1) / (2 * pi * pi)) * wigner_D_su2(0.5 * l, m, k, A);
}

struct SymmetryReport {
    double conj_I = 0;      // D(I K I^-1) = (-1)^{m-k} D(K)
    double inverse = 0;     // D(K^-1) = (-1)^{m-k} D_{-m,-k}(K) = conj(D_{mk}(K))
    double so3_route = 0;   // Cayley-Klein vs Euler angles (integer j only)
    double change_basis = 0; // Phi = B * D(I K I^-1)
    double max() const { return std::max(std::max(conj_I, inverse), std::max(so3_route, change_basis)); }
};

inline SymmetryReport wigner_symmetries_check(double j, double k, double m, const SU2Element &A) {
    SpectralIndex ix(j, k, m);
    SymmetryReport r;
    double sgn = (((ix.two_m - ix.two_k) / 2) % 2 == 0) ? 1.0 : -1.0;
    cplx d = wigner_D_su2(j, k, m, A);
    r.conj_I = std::abs(wigner_D_su2(j, k, m, conj_by_I(A)) - sgn * d);
    cplx dinv = wigner_D_su2(j, k, m, A.inverse());
    r.inverse = std::max(std::abs(dinv - sgn * wigner_D_su2(j, -m, -k, A)), std::abs(dinv - std::conj(wigner_D_su2(j, m, k, A))));
    if (ix.two_l % 2 == 0) r.so3_route = std::abs(d - wigner_D_so3(ix.two_l / 2, ix.two_k / 2, ix.two_m / 2, spin_cover(A)));
    r.change_basis = std::abs(phi_coeff(j, k, m, A) - b_coefficient(j, k, m) * wigner_D_su2(j, k, m, conj_by_I(A)));
    return r;
}

// Product grid for the normalized Haar measure on SU(2) in Euler angles:
// theta in [0, 2pi), phi in [-2pi, 2pi) trapezoidal, chi Gauss-Legendre.
struct HaarGrid {
    std::vector<SU2Element> points;
    std::vector<double> weights;
};

inline HaarGrid haar_grid(int n_theta, int n_chi, int n_phi) {
    HaarGrid g;
    quad::Rule gl = quad::gauss_legendre(n_chi, 0.0, pi);
    for (int a = 0; a < n_theta; ++a) {
        double th = 2 * pi * a / n_theta;
        for (int c = 0; c < n_chi; ++c) {
            double chi = gl.x[c], wc = gl.w[c];
            for (int b = 0; b < n_phi; ++b) {
                double ph = -2 * pi + 4 * pi * b / n_phi;
                g.points.push_back(lift_rot(th, chi, ph));
                g.weights.push_back(std::sin(chi) * wc / (2.0 * n_theta * n_phi));
            }
        }
    }
    return g;
}

} // namespace picard
