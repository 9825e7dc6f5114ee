#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "eisenstein.hpp"
#include "hyperbolic.hpp"
#include "parallel.hpp"
#include "quadrature.hpp"
#include "special.hpp"
#include "su2.hpp"
#include "zeta.hpp"

namespace picard {

// Each point of the strip lies in exactly this many images sigma(F), sigma in
// Gamma'_inf \ Gamma: a factor 2 from +-sigma and a factor 2 because F is twice
// a fundamental domain of PSL(2, Z[i]).
inline constexpr int covering_multiplicity = 4;

// f = sum coeff * F^j_{ab}(psi), a Gamma-invariant function on G with finitely many fiber modes.
struct FiberMode {
    double j, a, b;
    cplx coeff;
};

struct FiberFunction {
    std::vector<FiberMode> modes;
    TestFunctionPsi psi = TestFunctionPsi::bump(0.5, 4.0);

    void validate() const {
        for (auto &m : modes) {
            SpectralIndex(m.j, m.a, m.b).validate();
            if (twice(m.j) % 2 != 0) throw std::invalid_argument("FiberFunction: j must be an integer");
        }
    }

    // f(g) for g in G, by direct coset sums.
    cplx operator()(const GroupElementSL2C &g) const {
        cplx tot = 0;
        for (auto &m : modes) tot += m.coeff * incomplete_series_direct(SpectralIndex(m.j, m.a, m.b), psi, g);
        return tot;
    }
};

using FiberKey = std::tuple<int, int, int>; // (l, 2k, 2m) with l = 2j

// hat f^l_{k,m}(p): analytic from the mode list.
inline std::map<FiberKey, cplx> fiber_coefficients(const FiberFunction &f, const H3Point &p) {
    f.validate();
    std::map<FiberKey, cplx> out;
    GroupElementSL2C g = GroupElementSL2C::at(p);
    for (auto &m : f.modes) {
        int tj = twice(m.j);
        double nrm = std::sqrt(2 * pi * pi / (tj + 1));
        for (int tr = -tj; tr <= tj; tr += 2) {
            cplx v = m.coeff * nrm * incomplete_series_direct(SpectralIndex(m.j, 0.5 * tr, m.b), f.psi, g);
            out[{tj, twice(m.a), tr}] += v;
        }
    }
    return out;
}

// hat f^l_{k,m}(p) = 2 pi^2 int_K f(p K) conj(T^l_{km}(K)) dK by Haar quadrature.
inline cplx fiber_coefficient_quadrature(const FiberFunction &f, const H3Point &p, int l, double k, double m, int n = 12) {
    HaarGrid G = haar_grid(n, n, 2 * n);
    GroupElementSL2C g = GroupElementSL2C::at(p);
    // f(pK) = sum_r D^j_{ra}(K) F^j_{rb}(p)
    std::vector<std::vector<cplx>> Fr;
    for (auto &md : f.modes) {
        int tj = twice(md.j);
        std::vector<cplx> row;
        for (int tr = -tj; tr <= tj; tr += 2) row.push_back(incomplete_series_direct(SpectralIndex(md.j, 0.5 * tr, md.b), f.psi, g));
        Fr.push_back(row);
    }
    cplx tot = 0;
    for (std::size_t i = 0; i < G.points.size(); ++i) {
        const SU2Element &K = G.points[i];
        cplx fv = 0;
        for (std::size_t q = 0; q < f.modes.size(); ++q) {
            auto &md = f.modes[q];
            int tj = twice(md.j);
            for (int tr = -tj, r = 0; tr <= tj; tr += 2, ++r) fv += md.coeff * wigner_D_su2(md.j, 0.5 * tr, md.a, K) * Fr[q][r];
        }
        tot += G.weights[i] * fv * std::conj(t_basis(l, k, m, K));
    }
    return 2 * pi * pi * tot;
}

// Transport check in the form hat f_{k,m}(gamma p) = sum_u (-1)^{u-m} conj(D_{-u,-m}(T^{-1})) hat f_{k,u}(p).
inline double lemma_lp_deviation(const FiberFunction &f, const GroupElementSL2C &gamma, const H3Point &p) {
    auto lhs = fiber_coefficients(f, mobius_act(gamma, p));
    auto rhs0 = fiber_coefficients(f, p);
    SU2Element Tinv = frame_transport(gamma, p).inverse();
    double dev = 0;
    for (auto &[key, val] : lhs) {
        auto [l, tk, tm] = key;
        double j = 0.5 * l, m = 0.5 * tm;
        cplx acc = 0;
        for (int tu = -l; tu <= l; tu += 2) {
            auto it = rhs0.find({l, tk, tu});
            if (it == rhs0.end()) continue;
            double u = 0.5 * tu;
            double sg = (int(std::lround(u - m)) % 2 == 0) ? 1.0 : -1.0;
            acc += sg * std::conj(wigner_D_su2(j, -u, -m, Tinv)) * it->second;
        }
        dev = std::max(dev, std::abs(acc - val) / std::max(1.0, std::abs(val)));
    }
    return dev;
}

struct MellinResult {
    cplx value;
    double estimate; // truncation estimate
};

// Mellin transform int_strip f(z + lambda j, I) lambda^{1+s} dV. The identity
// coset contributes 4 [b even] delta_{ab} H(1-s); the remaining cosets unfold
// onto R^2 x (0, inf), which leaves an L-ratio times an angular integral.
inline MellinResult mellin_transform_direct(const FiberFunction &f, cplx s, const TruncationConfig &cfg = {}) {
    if (!(s.real() > 1)) throw std::domain_error("mellin_transform: requires Re(s) > 1");
    f.validate();
    cplx tot = 0;
    double est = 0;
    cplx H1 = mellin_of_psi(f.psi, 1.0 - s), H2 = mellin_of_psi(f.psi, 1.0 + s);
    for (auto &md : f.modes) {
        SpectralIndex ix(md.j, md.a, md.b);
        bool b_even = ix.two_m % 4 == 0;
        cplx v = 0;
        if (ix.two_k == ix.two_m && b_even) v += 4.0 * H1;
        if (b_even) {
            int n = ix.two_m; // chi_{2b}
            detail::WignerEval ev(ix);
            auto ang = [&](int nth, int nph) {
                quad::Rule rt = quad::gauss_legendre(nth, 0, pi / 2);
                cplx acc = 0;
                for (std::size_t i = 0; i < rt.x.size(); ++i) {
                    double th = rt.x[i];
                    cplx row = 0;
                    for (int q = 0; q < nph; ++q) {
                        double ph = 2 * pi * q / nph;
                        SU2Element K0(std::polar(std::cos(th), -ph), -std::sin(th));
                        row += std::conj(ev(K0.inverse()));
                    }
                    row *= 2 * pi / nph;
                    acc += rt.w[i] * row * std::cos(th) * std::exp((2.0 * s - 1.0) * std::log(std::sin(th)));
                }
                return acc;
            };
            cplx J = ang(48, 64), J2 = ang(64, 96);
            cplx lr = 4.0 * l_value(s, n, cfg.l_truncation) / l_value(1.0 + s, n, cfg.l_truncation);
            v += lr * H2 * J2;
            est += std::abs(md.coeff * lr * H2 * (J2 - J));
        }
        tot += md.coeff * v;
    }
    return {tot, est};
}

struct PPrResult {
    cplx via_eisenstein;   // sum over modes of int_F hat f E dV, literal
    cplx corrected;        // divided by covering_multiplicity
    double estimate;
};

// Right side assembled from Fourier-expanded Eisenstein series over F.
inline PPrResult mellin_via_eisenstein(const FiberFunction &f, cplx s, const TruncationConfig &cfg = {}, int n_xy = 20, int n_l = 28) {
    if (!(s.real() > 1)) throw std::domain_error("mellin_via_eisenstein: requires Re(s) > 1");
    f.validate();
    double top = f.psi.height_ceiling();
    // expansions E^j_{-u,-a}(., s) per mode and u
    struct Term {
        std::size_t mode;
        double u;
        std::shared_ptr<FourierExpansion> E;
    };
    std::vector<Term> terms;
    for (std::size_t q = 0; q < f.modes.size(); ++q) {
        auto &md = f.modes[q];
        int tj = twice(md.j);
        for (int tu = -tj; tu <= tj; tu += 2) {
            auto E = std::make_shared<FourierExpansion>(SpectralIndex(md.j, -0.5 * tu, -md.a), s, cfg);
            if (E->identically_zero()) continue;
            terms.push_back({q, 0.5 * tu, E});
        }
    }
    auto integrand = [&](const H3Point &p) {
        GroupElementSL2C g = GroupElementSL2C::at(p);
        cplx tot = 0;
        for (auto &t : terms) {
            auto &md = f.modes[t.mode];
            double sg = (int(std::lround(t.u - md.a)) % 2 == 0) ? 1.0 : -1.0;
            cplx F = incomplete_series_direct(SpectralIndex(md.j, t.u, md.b), f.psi, g);
            if (F == 0.0) continue;
            tot += md.coeff * sg * F * (*t.E)(p);
        }
        return tot;
    };
    auto run = [&](int nxy, int nl) {
        quad::Rule rx = quad::gauss_legendre(nxy, -0.5, 0.5);
        quad::Rule rl = quad::gauss_legendre(nl, -1, 1);
        std::size_t n = rx.x.size();
        return parallel::ordered_sum<cplx>(n * n, [&](std::size_t idx) {
            double x = rx.x[idx / n], y = rx.x[idx % n];
            double lo = std::log(std::sqrt(1 - x * x - y * y)), hi = std::log(top);
            cplx acc = 0;
            for (std::size_t i = 0; i < rl.x.size(); ++i) {
                double u = 0.5 * (lo + hi) + 0.5 * (hi - lo) * rl.x[i];
                double l = std::exp(u);
                acc += 0.5 * (hi - lo) * rl.w[i] * integrand(H3Point(x, y, l)) / (l * l);
            }
            return acc * rx.w[idx / n] * rx.w[idx % n];
        }, 4);
    };
    cplx v = run(n_xy, n_l);
    cplx v2 = run(n_xy * 3 / 4, n_l * 3 / 4);
    double est = std::abs(v - v2);
    return {v, v / double(covering_multiplicity), est / covering_multiplicity};
}

// Sum_{u=0}^l (-1)^u xi^l_0(0,u) / (1+l-u)
inline double suma_es0(int l) {
    if (l < 0) throw std::invalid_argument("suma_es0: l must be >= 0");
    double s = 0;
    for (int u = 0; u <= l; ++u) s += (u % 2 == 0 ? 1.0 : -1.0) * xi_coefficient(l, 0, 0, u) / (1 + l - u);
    return s;
}

inline double verify_suma_es0(int l) {
    if (l < 1) throw std::invalid_argument("verify_suma_es0: requires l >= 1");
    return std::abs(suma_es0(l));
}

struct LemmaIntegralReport {
    double lhs, rhs, deviation;
};

// int_{Gamma \ G} F^0_{00}(psi) dg unfolded to the strip, against H(2).
inline LemmaIntegralReport verify_lemma_integral(const TestFunctionPsi &psi, double scale = 1.0) {
    QuadratureSpec q;
    q.n_xy = 2;
    q.tol = 1e-12;
    auto r = integrate_dV([&](const H3Point &p) { return cplx(scale * psi(p.lambda)); }, Domain::strip, q);
    double rhs = scale * mellin_of_psi(psi, 2.0).real();
    return {r.value.real(), rhs, std::abs(r.value.real() - rhs) / std::abs(rhs)};
}

// Pluggable L-values for the cusp pairing on the critical line.
struct LProvider {
    std::string name;
    std::function<cplx(cplx, int)> cusp_l;      // L(s, F, chi_n)
    std::function<cplx(cplx, int)> character_l; // L(s, chi_n)
    std::function<cplx(cplx)> zeta_k;

    static LProvider mock_unit() {
        LProvider p;
        p.name = "mock-unit (all L-values set to 1)";
        p.cusp_l = [](cplx, int) { return cplx(1.0); };
        p.character_l = [](cplx, int) { return cplx(1.0); };
        p.zeta_k = [](cplx) { return cplx(1.0); };
        return p;
    }
};

struct CuspFormSpec {
    double l = 0, p = 0, q = 0;
    double r = 0;
    SyntheticCuspCoefficients coefficients;
    double constant = 1.0; // overall absolute constant
    void validate() const { SpectralIndex(l, p, q).validate(); }
};

// The Gamma-factor string of the pairing, including 1/Gamma(1+it).
inline cplx cusp_gamma_block(const CuspFormSpec &c, double t) {
    c.validate();
    const cplx I(0, 1);
    double Q = std::abs(c.q + c.p);
    cplx ir = I * c.r, it = I * t;
    cplx head = lgamma_complex(0.5 + 0.5 * Q - 0.5 * ir) + lgamma_complex(0.5 + 0.5 * Q - 0.5 * ir - it) - lgamma_complex(1.0 + it);
    int vmax = int(std::lround(c.l - 0.5 * (std::abs(c.q + c.p) + std::abs(c.q - c.p))));
    cplx sum = 0;
    for (int v = 0; v <= vmax; ++v) {
        cplx lg = lgamma_complex(0.5 + c.l - v - 0.5 * Q + 0.5 * ir) + lgamma_complex(0.5 + c.l - v - 0.5 * Q + 0.5 * ir - it) -
                  lgamma_complex(1.0 + c.l - v + ir) - lgamma_complex(1.0 + c.l - v - it);
        sum += (v % 2 == 0 ? 1.0 : -1.0) * xi_coefficient(c.l, c.p, c.q, v) * std::exp(head + lg);
    }
    return sum;
}

inline cplx cusp_pairing_formula(const CuspFormSpec &c, double t, const LProvider &L) {
    if (t == 0) throw std::invalid_argument("cusp_pairing: t must be nonzero");
    if (!L.cusp_l || !L.character_l || !L.zeta_k)
        throw std::invalid_argument("cusp_pairing: provider must supply L(1/2 - ir/2 - it, F), L(1/2 - ir/2, F), "
                                    "L(1 - ir - it, chi) and zeta_K(1 + it)");
    const cplx I(0, 1);
    int n = int(std::lround(-c.p - c.q));
    double sgn = (int(std::lround(c.l - c.p)) % 2 == 0) ? 1.0 : -1.0;
    cplx ph = std::pow(I, -c.p - c.q);
    cplx pw = std::exp((-1.0 + I * c.r + 2.0 * I * t) * std::log(pi));
    cplx L1 = L.cusp_l(0.5 - 0.5 * I * c.r - I * t, n), L2 = L.cusp_l(0.5 - 0.5 * I * c.r, n);
    cplx den = L.zeta_k(1.0 + I * t) * L.character_l(1.0 - I * c.r - I * t, 2 * n);
    return c.constant * sgn * ph * pw * L1 * L2 / den * cusp_gamma_block(c, t);
}

// Constant Laurent coefficient of zeta_K at 1, by Richardson extrapolation.
inline double laurent_a0() {
    auto g = [](double h) { return (dedekind_zeta(1.0 + h) - (pi / 4) / h).real(); };
    double h = 1e-2;
    double f0 = g(h), f1 = g(h / 2), f2 = g(h / 4);
    double r1 = 2 * f1 - f0, r2 = 2 * f2 - f1;
    return (4 * r2 - r1) / 3;
}

// Res at a point of G(s) (A_{-1}/(s-s0) + A_0)^2.
inline cplx double_pole_residue(cplx G, cplx dlogG, double am1, double a0) { return G * am1 * (2 * a0 + am1 * dlogG); }

struct PairingConfig {
    TruncationConfig truncation;
    bool exact_laurent = false; // A_{-1} = pi/2 instead of pi/4
    double contour_step = 0.05;
    double contour_tol = 1e-6;
};

struct IncompletePairing {
    cplx F1 = 0;
    std::optional<cplx> F2;
    std::optional<cplx> residue; // summed residue part of F2
    cplx main_term = 0;
    std::optional<cplx> remainder;
    std::string status;
};

namespace detail {

struct PairingPieces {
    int l;
    double t;
    cplx H2, dH2;
    double am1, a0;
};

// B(s) / (Gamma(1+it) Gamma(1+l-u-it)) for a = b = 0.
inline cplx b_integrand_normalized(const TestFunctionPsi &psi, int l, int u, double t, cplx s) {
    const cplx I(0, 1);
    if (std::abs(s - 1.0) < 1e-13) return 0.0; // 1 / zeta_K(s) vanishes at the pole
    cplx it = I * t;
    int e = l - u;
    cplx lg = lgamma_complex(0.5 * s + double(e)) + lgamma_complex(0.5 * s + it) + lgamma_complex(0.5 * s + double(e) - it) +
              lgamma_complex(0.5 * s) - lgamma_complex(s + double(e)) - lgamma_complex(1.0 + it) - lgamma_complex(1.0 + double(e) - it) -
              s * std::log(pi);
    cplx z = dedekind_zeta(0.5 * s);
    cplx zeta_part = z * z * dedekind_zeta(0.5 * s + it) * dedekind_zeta(0.5 * s - it) / dedekind_zeta(s);
    return mellin_of_psi(psi, s) * zeta_part * std::exp(lg);
}

// (1/2 pi i) int_{(sigma)} of the normalized B by trapezoid with halving.
inline cplx b_contour(const TestFunctionPsi &psi, int l, int u, double t, double sigma, double step, double tol) {
    double peak = std::abs(mellin_of_psi(psi, sigma));
    double T = 2;
    while (std::abs(mellin_of_psi(psi, cplx(sigma, T))) > 1e-12 * peak || std::abs(mellin_of_psi(psi, cplx(sigma, -T))) > 1e-12 * peak) {
        T += 0.5;
        if (T > 400) throw std::runtime_error("incomplete_pairing: H does not decay on the contour");
    }
    auto f = [&](double tau) { return b_integrand_normalized(psi, l, u, t, cplx(sigma, tau)); };
    double h = step;
    int n = int(std::ceil(T / h));
    h = T / n;
    cplx sum = 0;
    for (int k = -n; k <= n; ++k) sum += (std::abs(k) == n ? 0.5 : 1.0) * f(k * h);
    cplx est = sum * h;
    for (int lev = 0; lev < 8; ++lev) {
        cplx add = 0;
        for (int k = -n; k < n; ++k) add += f((k + 0.5) * h);
        sum += add;
        n *= 2;
        h *= 0.5;
        cplx next = sum * h;
        bool ok = std::abs(next - est) <= tol * std::max(1e-30, std::abs(next)) || std::abs(next - est) < 1e-14;
        est = next;
        if (ok) return est / (2 * pi);
    }
    throw std::runtime_error("incomplete_pairing: contour quadrature not stable to tolerance");
}

} // namespace detail

inline cplx incomplete_b_residue_normalized(const TestFunctionPsi &psi, int l, int u, double t, bool exact_laurent) {
    const cplx I(0, 1);
    cplx it = I * t;
    int e = l - u;
    cplx dH;
    cplx H = mellin_of_psi(psi, 2.0, &dH);
    double am1 = exact_laurent ? pi / 2 : pi / 4;
    double a0 = laurent_a0();
    // G(2) / (Gamma(1+it) Gamma(1+l-u-it))
    cplx zp = dedekind_zeta(1.0 + it), zm = dedekind_zeta(1.0 - it);
    cplx G = H * zp * zm / (pi * pi * double(1 + e) * dedekind_zeta(2.0));
    cplx dlogG = dH / H + 0.5 * dedekind_zeta_logderiv(1.0 + it) + 0.5 * dedekind_zeta_logderiv(1.0 - it) + 0.5 * digamma(double(1 + e)) +
                 0.5 * digamma(1.0 + it) + 0.5 * digamma(double(1 + e) - it) + 0.5 * digamma(1.0) - std::log(pi) -
                 digamma(double(2 + e)) - dedekind_zeta_logderiv(2.0);
    return double_pole_residue(G, dlogG, am1, a0);
}

// (F^l_{ab}(psi), d eps_it) through F_2; F_1 is not modeled and reported as 0.
inline IncompletePairing incomplete_pairing(const SpectralIndex &ix, const TestFunctionPsi &psi, double t, const PairingConfig &cfg = {}) {
    if (t == 0) throw std::invalid_argument("incomplete_pairing: t must be nonzero");
    ix.validate();
    IncompletePairing R;
    int ta = ix.two_k, tb = ix.two_m;
    if (ta != tb && ta != -tb) {
        R.residue = 0.0;
        R.status = "residue is 0 (B analytic at s = 2); contour term needs L(s, chi) with Re(s) <= 1: unavailable";
        return R;
    }
    if (ta != 0 || ix.two_l % 2 != 0) {
        R.status = "needs L(1 + it, chi) for a nontrivial character: unavailable";
        return R;
    }
    int l = ix.two_l / 2;
    double am1 = cfg.exact_laurent ? pi / 2 : pi / 4;
    cplx H = mellin_of_psi(psi, 2.0);
    double sgnl = (l % 2 == 0) ? 1.0 : -1.0;
    double B = b_coefficient(l, 0, 0);
    cplx zden = dedekind_zeta(cplx(1, t)) * dedekind_zeta(cplx(1, -t));
    cplx cont = 0, res = 0;
    double main_w = 0;
    for (int u = 0; u <= l; ++u) {
        double w = (u % 2 == 0 ? 1.0 : -1.0) * xi_coefficient(l, 0, 0, u);
        cont += w * detail::b_contour(psi, l, u, t, 1.0, cfg.contour_step, cfg.contour_tol);
        res += w * incomplete_b_residue_normalized(psi, l, u, t, cfg.exact_laurent);
        main_w += w / (1 + l - u);
    }
    cplx pre = 4.0 * sgnl * B / zden;
    R.F2 = pre * (cont + res);
    R.residue = pre * res;
    // the ln t part of the residue: (1/2)(psi(1+it) + psi(1+l-u-it)) ~ ln t
    R.main_term = 4.0 * sgnl * B * main_w * am1 * am1 * H / (pi * pi * dedekind_zeta(2.0)) * std::log(std::abs(t));
    R.remainder = *R.F2 - R.main_term;
    R.status = "ok";
    return R;
}

// (1/2 pi i) int_{(3)} normalized B, for the contour-shift check.
inline cplx incomplete_b_contour(const TestFunctionPsi &psi, int l, int u, double t, double sigma, const PairingConfig &cfg = {}) {
    return detail::b_contour(psi, l, u, t, sigma, cfg.contour_step, cfg.contour_tol);
}

struct ScanRow {
    double t;
    cplx value;
    cplx main_term;
    double value_over_lnt;
};

enum class ScanTask { cusp, incomplete };

struct ScanConfig {
    ScanTask task = ScanTask::incomplete;
    SpectralIndex index{0, 0, 0};
    TestFunctionPsi psi = TestFunctionPsi::log_gaussian();
    PairingConfig pairing;
    CuspFormSpec cusp;
};

inline std::vector<ScanRow> scan_t(const ScanConfig &cfg, std::vector<double> grid) {
    for (double t : grid)
        if (t == 0) throw std::invalid_argument("scan_t: t must be nonzero");
    std::sort(grid.begin(), grid.end());
    LProvider mock = LProvider::mock_unit();
    return parallel::ordered_map<ScanRow>(grid.size(), [&](std::size_t i) {
        double t = grid[i];
        ScanRow r{t, 0.0, 0.0, 0.0};
        if (cfg.task == ScanTask::cusp) {
            r.value = cusp_pairing_formula(cfg.cusp, t, mock);
        } else {
            auto p = incomplete_pairing(cfg.index, cfg.psi, t, cfg.pairing);
            if (!p.F2) throw std::runtime_error("scan_t: " + p.status);
            r.value = *p.F2 + p.F1;
            r.main_term = p.main_term;
        }
        r.value_over_lnt = r.value.real() / std::log(std::abs(t));
        return r;
    });
}

} // namespace picard
