#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "gaussian.hpp"
#include "hyperbolic.hpp"
#include "parallel.hpp"
#include "quadrature.hpp"
#include "special.hpp"
#include "su2.hpp"
#include "zeta.hpp"

namespace picard {

struct TruncationConfig {
    long long coset_norm_bound = 1000;
    long long lattice_norm_bound = 400; // bound on N(2w) for the frequency sum
    double bessel_tol = 1e-10;
    double quadrature_tol = 1e-10;
    int index_gamma_inf = 4;
    long long l_truncation = 1000000;
    bool bessel_tables = true;
    double table_lambda_min = 0.3;

    void validate() const {
        if (coset_norm_bound < 1 || lattice_norm_bound < 1 || l_truncation < 1)
            throw std::invalid_argument("TruncationConfig: bounds must be positive");
        if (!(bessel_tol > 0) || !(quadrature_tol > 0)) throw std::invalid_argument("TruncationConfig: tolerances must be positive");
        if (index_gamma_inf < 1) throw std::invalid_argument("TruncationConfig: index_gamma_inf must be positive");
        if (!(table_lambda_min > 0)) throw std::invalid_argument("TruncationConfig: table_lambda_min must be positive");
    }
};

struct SeriesParams {
    SpectralIndex index;
    cplx s;
    TruncationConfig truncation;
};

namespace detail {

// D^j_{km} on SU(2) with the monomial expansion precomputed for one index.
class WignerEval {
public:
    WignerEval() = default;
    explicit WignerEval(const SpectralIndex &ix) {
        ix.validate();
        n1_ = (ix.two_l + ix.two_m) / 2;
        n2_ = (ix.two_l - ix.two_m) / 2;
        int ty = (ix.two_l - ix.two_k) / 2;
        double norm = std::sqrt(factorial((ix.two_l + ix.two_k) / 2) * factorial((ix.two_l - ix.two_k) / 2)) /
                      std::sqrt(factorial(n1_) * factorial(n2_));
        for (int p = std::max(0, ty - n2_); p <= std::min(n1_, ty); ++p) {
            int q = ty - p;
            terms_.push_back({norm * binom(n1_, p) * binom(n2_, q), p, q});
        }
    }

    cplx operator()(const SU2Element &A) const {
        cplx ac = std::conj(A.alpha), mb = -A.beta, bc = std::conj(A.beta), a = A.alpha;
        cplx pac[66], pmb[66], pbc[66], pa[66];
        int n = std::max(n1_, n2_);
        pac[0] = pmb[0] = pbc[0] = pa[0] = 1.0;
        for (int i = 1; i <= n; ++i) {
            pac[i] = pac[i - 1] * ac;
            pmb[i] = pmb[i - 1] * mb;
            pbc[i] = pbc[i - 1] * bc;
            pa[i] = pa[i - 1] * a;
        }
        cplx tot = 0;
        for (auto &t : terms_) tot += t.c * pac[n1_ - t.p] * pmb[t.p] * pbc[n2_ - t.q] * pa[t.q];
        return tot;
    }

private:
    struct Term {
        double c;
        int p, q;
    };
    int n1_ = 0, n2_ = 0;
    std::vector<Term> terms_;
};

inline bool index_vanishes(const SpectralIndex &ix) {
    // E^l_{km} is identically zero unless m is an even integer
    return ix.two_m % 4 != 0;
}

// Coset rows (c, d), coprime, with Im(sigma g (j)) >= h_min, i.e.
// N_g(c,d) = |c|^2 / n_b + n_b |d - d0(c)|^2 <= 1 / h_min.
inline void for_rows_above_height(const GroupElementSL2C &g, double h_min, const std::function<void(const GaussInt &, const GaussInt &)> &fn) {
    if (!(h_min > 0)) throw std::invalid_argument("rows above height: h_min must be > 0");
    double bnd = 1.0 / h_min;
    double nb = std::norm(g.c) + std::norm(g.d);
    cplx X = g.a * std::conj(g.c) + g.b * std::conj(g.d);
    long long rc = (long long)std::floor(std::sqrt(bnd * nb)) + 1;
    for (long long c1 = -rc; c1 <= rc; ++c1)
        for (long long c2 = -rc; c2 <= rc; ++c2) {
            double nc = double(c1 * c1 + c2 * c2);
            double rem = bnd - nc / nb;
            if (rem < 0) continue;
            GaussInt c{c1, c2};
            cplx d0 = -cplx(double(c1), double(c2)) * X / nb;
            double rd = std::sqrt(rem / nb);
            for (long long d1 = (long long)std::ceil(d0.real() - rd); d1 <= (long long)std::floor(d0.real() + rd); ++d1)
                for (long long d2 = (long long)std::ceil(d0.imag() - rd); d2 <= (long long)std::floor(d0.imag() + rd); ++d2) {
                    GaussInt d{d1, d2};
                    if (c.is_zero() && d.is_zero()) continue;
                    if (std::norm(cplx(double(d1), double(d2)) - d0) > rem / nb) continue;
                    if (!coprime(c, d)) continue;
                    fn(c, d);
                }
        }
}

} // namespace detail

// conj(D^l_{km}(T(g)^{-1})) Im(g j)^{1+s}
inline cplx f_seed(const SpectralIndex &ix, const GroupElementSL2C &g, cplx s) {
    IwasawaCoords iw = iwasawa_decompose(g);
    return std::conj(wigner_D_su2(ix.l(), ix.k(), ix.m(), iw.k.inverse())) * std::exp((1.0 + s) * std::log(iw.height));
}

inline double xi_coefficient(double l, double k, double v, int u) {
    int tl = twice(l), tk = twice(k), tv = twice(v);
    SpectralIndex(l, k, k).validate();
    if (std::abs(tv) > tl || (tv - tl) % 2 != 0) throw std::invalid_argument("xi_coefficient: invalid v");
    int A2 = tl - (std::abs(tv + tk) + std::abs(tv - tk)) / 2;
    int B2 = tl - (std::abs(tv + tk) - std::abs(tv - tk)) / 2;
    if (A2 % 2 != 0 || B2 % 2 != 0) throw std::invalid_argument("xi_coefficient: l + k and v must be of the same type");
    int A = A2 / 2, B = B2 / 2;
    if (u < 0 || u > A) throw std::invalid_argument("xi_coefficient: u out of range [0, " + std::to_string(A) + "]");
    using detail::factorial;
    return factorial(u) * factorial(tl - u) / (factorial((tl + tk) / 2) * factorial((tl - tk) / 2)) * detail::binom(A, u) *
           detail::binom(B, u);
}

struct CosetSumResult {
    cplx value;  // extrapolated from bounds B and 2B
    cplx raw_b;  // partial sum with row norm <= B
    cplx raw_2b; // partial sum with row norm <= 2B
    double tail;
};

// Coset sums for several indices in one enumeration of coprime rows with
// |c|^2 + |d|^2 <= 2B. The extrapolation assumes a B^{1-s} tail.
inline std::vector<CosetSumResult> eisenstein_coset_sums(const std::vector<SpectralIndex> &ixs, const GroupElementSL2C &g, cplx s, long long B) {
    if (!(s.real() > 1)) throw std::domain_error("eisenstein_coset_sum: requires Re(s) > 1");
    if (B < 1) throw std::invalid_argument("eisenstein_coset_sum: bound must be >= 1");
    const std::size_t n = ixs.size();
    std::vector<detail::WignerEval> ev;
    for (auto &ix : ixs) ev.emplace_back(ix);
    struct Acc {
        std::vector<cplx> b, b2;
        Acc &operator+=(const Acc &o) {
            if (b.empty()) {
                b = o.b;
                b2 = o.b2;
            } else if (!o.b.empty()) {
                for (std::size_t i = 0; i < b.size(); ++i) b[i] += o.b[i], b2[i] += o.b2[i];
            }
            return *this;
        }
    };
    const long long B2 = 2 * B;
    std::vector<GaussInt> cs = enumerate_shells(B2);
    cs.insert(cs.begin(), GaussInt{0, 0});
    Acc tot = parallel::ordered_sum<Acc>(cs.size(), [&](std::size_t idx) {
        Acc a;
        a.b.assign(n, 0.0);
        a.b2.assign(n, 0.0);
        const GaussInt c = cs[idx];
        long long nc = c.norm();
        long long r = (long long)std::sqrt(double(B2 - nc)) + 1;
        cplx cc = c.to_complex();
        for (long long d1 = -r; d1 <= r; ++d1)
            for (long long d2 = -r; d2 <= r; ++d2) {
                long long nr = nc + d1 * d1 + d2 * d2;
                if (nr == 0 || nr > B2) continue;
                GaussInt d{d1, d2};
                if (!coprime(c, d)) continue;
                cplx dd = d.to_complex();
                cplx C = cc * g.a + dd * g.c, D = cc * g.b + dd * g.d;
                double N = std::norm(C) + std::norm(D);
                SU2Element Kinv = k_from_bottom_row(C, D).inverse();
                cplx hp = std::exp(-(1.0 + s) * std::log(N));
                for (std::size_t i = 0; i < n; ++i) {
                    cplx t = std::conj(ev[i](Kinv)) * hp;
                    a.b2[i] += t;
                    if (nr <= B) a.b[i] += t;
                }
            }
        return a;
    }, 16);
    std::vector<CosetSumResult> out(n);
    cplx q = std::pow(2.0, s - 1.0);
    for (std::size_t i = 0; i < n; ++i) {
        if (detail::index_vanishes(ixs[i])) {
            out[i] = {0.0, tot.b[i], tot.b2[i], std::abs(tot.b2[i] - tot.b[i])};
            continue;
        }
        cplx ext = (tot.b2[i] * q - tot.b[i]) / (q - 1.0);
        out[i] = {ext, tot.b[i], tot.b2[i], std::abs(tot.b2[i] - tot.b[i])};
    }
    return out;
}

inline CosetSumResult eisenstein_coset_sum(const SeriesParams &P, const GroupElementSL2C &g) {
    P.truncation.validate();
    return eisenstein_coset_sums({P.index}, g, P.s, P.truncation.coset_norm_bound)[0];
}

struct FourierValue {
    cplx value;
    double tail;
};

// Precomputed Fourier expansion of E^l_{km}(z + lambda j, s) for integer l.
class FourierExpansion {
public:
    FourierExpansion(const SpectralIndex &ix, cplx s, const TruncationConfig &cfg = {}) : ix_(ix), s_(s), cfg_(cfg) {
        cfg.validate();
        ix.validate();
        if (ix.two_l % 2 != 0 || detail::index_vanishes(ix)) {
            zero_ = true;
            return;
        }
        int l = ix.two_l / 2, k = ix.two_k / 2, m = ix.two_m / 2;
        const cplx I(0, 1);
        double B = b_coefficient(l, k, m);
        if (k == m) c1_ = double(cfg.index_gamma_inf) * B;
        if (k == -m) {
            int am = std::abs(m);
            cplx num = 1.0, den = 1.0;
            for (int j = am + 1; j <= l; ++j) num *= double(j) - s;
            for (int j = am; j <= l; ++j) den *= double(j) + s;
            if (m != 0 && s.real() <= 1)
                throw std::domain_error("eisenstein_fourier: L(s, chi_" + std::to_string(2 * m) + ") unavailable for Re(s) <= 1");
            c2_ = 4.0 * pi * num / den * l_value(s, 2 * m, cfg.l_truncation) / l_value(1.0 + s, 2 * m, cfg.l_truncation) * B;
        }
        pre_ = ((l + m) % 2 == 0 ? 1.0 : -1.0) * std::pow(I, double(-k - m)) * std::exp(s * std::log(2 * pi)) * B;
        cplx L1 = l_value(1.0 + s, 2 * m, cfg.l_truncation);
        int umax = l - (std::abs(k + m) + std::abs(k - m)) / 2;
        for (int u = 0; u <= umax; ++u) {
            Order o;
            o.u = u;
            o.nu = s + double(l - std::abs(k + m) - u);
            o.coef = (u % 2 == 0 ? 1.0 : -1.0) * xi_coefficient(l, -m, -k, u) * std::exp(-lgamma_complex(double(1 + l - u) + s));
            if (cfg.bessel_tables) {
                BesselKTable t(o.nu, 2 * pi * cfg.table_lambda_min, cutoff_, 56, cfg.bessel_tol);
                if (t.usable()) o.table = std::move(t);
            }
            orders_.push_back(std::move(o));
        }
        long long nmax = cfg.lattice_norm_bound;
        long long r = (long long)std::sqrt(double(nmax)) + 1;
        std::map<long long, Group> groups;
        for (long long a = -r; a <= r; ++a)
            for (long long b = -r; b <= r; ++b) {
                long long nw = a * a + b * b;
                if (nw == 0 || nw > nmax) continue;
                GaussInt W{a, b};
                double absw = 0.5 * std::sqrt(double(nw));
                cplx dval = 4.0 * sigma_twisted(W, m / 2, -s) / L1;
                cplx ph = std::pow(cplx(double(a), double(b)) / (2 * absw), double(-k - m));
                if (k + m == 0) ph = 1.0;
                Freq f{W, dval * std::exp((s - 1.0) * std::log(absw)) * ph};
                auto &grp = groups[nw];
                grp.absw = absw;
                grp.terms.push_back(f);
            }
        for (auto &[nw, grp] : groups) groups_.push_back(std::move(grp));
    }

    bool identically_zero() const { return zero_; }
    cplx constant_coefficient_plus() const { return c1_; }
    cplx constant_coefficient_minus() const { return c2_; }
    std::size_t frequency_count() const {
        std::size_t n = 0;
        for (auto &g : groups_) n += g.terms.size();
        return n;
    }

    cplx constant_term(double lambda) const {
        if (zero_) return 0.0;
        double ll = std::log(lambda);
        return c1_ * std::exp((1.0 + s_) * ll) + c2_ * std::exp((1.0 - s_) * ll);
    }

    FourierValue evaluate(const H3Point &p) const {
        if (zero_) return {0.0, 0.0};
        cplx tot = constant_term(p.lambda);
        cplx nonconst = 0, last = 0;
        bool truncated = true;
        for (auto &grp : groups_) {
            double x = 4 * pi * grp.absw * p.lambda;
            if (x > cutoff_) {
                truncated = false;
                break;
            }
            cplx rad = 0;
            for (auto &o : orders_) {
                cplx kv = (o.table && o.table->covers(x)) ? (*o.table)(x) : bessel_k_complex(o.nu, x, cfg_.bessel_tol);
                int e = ix_.two_l / 2 + 1 - o.u;
                rad += o.coef * std::pow(2 * pi * grp.absw * p.lambda, e) * kv;
            }
            cplx ang = 0;
            for (auto &f : grp.terms) {
                double arg = -2 * pi * (double(f.W.re) * p.x - double(f.W.im) * p.y);
                ang += f.a * std::polar(1.0, arg);
            }
            last = pre_ * rad * ang;
            nonconst += last;
        }
        tot += nonconst;
        double tail = truncated ? 10.0 * std::abs(last) : 0.0;
        return {tot, tail};
    }

    cplx operator()(const H3Point &p) const { return evaluate(p).value; }

private:
    struct Order {
        int u = 0;
        cplx nu, coef;
        std::optional<BesselKTable> table;
    };
    struct Freq {
        GaussInt W;
        cplx a;
    };
    struct Group {
        double absw = 0;
        std::vector<Freq> terms;
    };
    SpectralIndex ix_;
    cplx s_;
    TruncationConfig cfg_;
    bool zero_ = false;
    cplx c1_ = 0, c2_ = 0, pre_ = 0;
    double cutoff_ = 60.0;
    std::vector<Order> orders_;
    std::vector<Group> groups_;
};

inline FourierValue eisenstein_fourier(const SeriesParams &P, const H3Point &p) {
    return FourierExpansion(P.index, P.s, P.truncation).evaluate(p);
}

// E^l_{km}(g, s) for general g through the K-equivariance of the expansion.
inline cplx eisenstein_fourier_at(const SpectralIndex &ix, cplx s, const GroupElementSL2C &g, const TruncationConfig &cfg = {}) {
    IwasawaCoords iw = iwasawa_decompose(g);
    SU2Element Kinv = iw.k.inverse();
    cplx tot = 0;
    for (int ta = -ix.two_l; ta <= ix.two_l; ta += 2) {
        FourierExpansion fe(SpectralIndex(ix.l(), 0.5 * ta, ix.m()), s, cfg);
        if (fe.identically_zero()) continue;
        tot += std::conj(wigner_D_su2(ix.l(), ix.k(), 0.5 * ta, Kinv)) * fe(iw.point());
    }
    return tot;
}

// Test functions on (0, inf) in the height variable.
struct TestFunctionPsi {
    enum class Kind { log_gaussian, compact_bump };
    Kind kind = Kind::log_gaussian;
    double center = 0, width = 1;          // log-gaussian exp(-((ln x - center)/width)^2)
    double lo = 0.5, hi = 4, smooth = 1.0; // bump exp(-smooth / (1 - t^2)), t affine in ln x over [lo, hi]

    static TestFunctionPsi log_gaussian(double c = 0, double w = 1) {
        if (!(w > 0)) throw std::invalid_argument("TestFunctionPsi: width must be > 0");
        TestFunctionPsi p;
        p.center = c;
        p.width = w;
        return p;
    }
    static TestFunctionPsi bump(double lo, double hi, double smooth = 1.0) {
        if (!(lo > 0) || !(hi > lo) || !(smooth > 0)) throw std::invalid_argument("TestFunctionPsi: need 0 < lo < hi, smooth > 0");
        TestFunctionPsi p;
        p.kind = Kind::compact_bump;
        p.lo = lo;
        p.hi = hi;
        p.smooth = smooth;
        return p;
    }

    double operator()(double x) const {
        if (!(x > 0)) return 0.0;
        double u = std::log(x);
        if (kind == Kind::log_gaussian) {
            double v = (u - center) / width;
            return std::exp(-v * v);
        }
        double a = std::log(lo), b = std::log(hi);
        if (u <= a || u >= b) return 0.0;
        double t = (2 * u - a - b) / (b - a);
        return std::exp(-smooth / (1 - t * t));
    }

    // heights below this contribute less than 1e-18 of the peak
    double height_floor() const {
        if (kind == Kind::log_gaussian) return std::exp(center - width * std::sqrt(18 * std::log(10.0)));
        return lo;
    }
    double height_ceiling() const {
        if (kind == Kind::log_gaussian) return std::exp(center + width * std::sqrt(18 * std::log(10.0)));
        return hi;
    }
};

// H(s) = int_0^inf psi(x) x^{-s} dx / x, and optionally H'(s).
inline cplx mellin_of_psi(const TestFunctionPsi &psi, cplx s, cplx *deriv = nullptr) {
    if (psi.kind == TestFunctionPsi::Kind::log_gaussian) {
        double c = psi.center, w = psi.width;
        cplx H = w * std::sqrt(pi) * std::exp(-s * c + s * s * w * w / 4.0);
        if (deriv) *deriv = H * (-c + s * w * w / 2.0);
        return H;
    }
    double a = std::log(psi.lo), b = std::log(psi.hi);
    auto f = [&](double u) { return cplx(psi(std::exp(u))) * std::exp(-s * u); };
    cplx H = quad::adaptive_gl(f, a, b, 1e-14, 16).value;
    if (deriv) {
        auto g = [&](double u) { return -u * cplx(psi(std::exp(u))) * std::exp(-s * u); };
        *deriv = quad::adaptive_gl(g, a, b, 1e-14, 16).value;
    }
    return H;
}

// (1/2 pi i) int_{(sigma)} H(s) x^s ds, truncated at |Im s| <= T.
inline double mellin_inverse_psi(const TestFunctionPsi &psi, double x, double sigma = 0, double T = 40) {
    auto f = [&](double t) {
        cplx s(sigma, t);
        return mellin_of_psi(psi, s) * std::exp(s * std::log(x));
    };
    return quad::adaptive_gl(f, -T, T, 1e-12, 16).value.real() / (2 * pi);
}

struct IncompleteSeriesResult {
    cplx direct;
    cplx contour;
    double contour_tail;
    std::size_t cosets;
};

// F^l_{ab}(psi)(g) as a sum over cosets whose height lies in the support of psi.
inline cplx incomplete_series_direct(const SpectralIndex &ix, const TestFunctionPsi &psi, const GroupElementSL2C &g, std::size_t *count = nullptr) {
    detail::WignerEval ev(ix);
    cplx tot = 0;
    std::size_t n = 0;
    double hmax = psi.height_ceiling();
    detail::for_rows_above_height(g, psi.height_floor(), [&](const GaussInt &c, const GaussInt &d) {
        cplx C = c.to_complex() * g.a + d.to_complex() * g.c, D = c.to_complex() * g.b + d.to_complex() * g.d;
        double h = 1.0 / (std::norm(C) + std::norm(D));
        if (h > hmax) return;
        tot += std::conj(ev(k_from_bottom_row(C, D).inverse())) * psi(h);
        ++n;
    });
    if (count) *count = n;
    return tot;
}

// (1/2 pi) int H(3 + i tau) E^l_{ab}(p, 2 + i tau) dtau with |tau| <= T.
inline cplx incomplete_series_contour(const SpectralIndex &ix, const TestFunctionPsi &psi, const H3Point &p, const TruncationConfig &cfg, double tol, double *tail_out = nullptr) {
    if (ix.two_l % 2 != 0 || detail::index_vanishes(ix)) {
        if (tail_out) *tail_out = 0;
        return 0.0;
    }
    // |E^l_{ab}(p, 2 + i tau)| <= E(p, 2) bounds the truncated tail
    double e0 = std::abs(FourierExpansion(SpectralIndex(0, 0, 0), 2.0, cfg)(p));
    auto tail_of = [&](double T) {
        auto h = [&](double t) { return std::abs(mellin_of_psi(psi, cplx(3, t))) + std::abs(mellin_of_psi(psi, cplx(3, -t))); };
        return e0 / (2 * pi) * quad::adaptive_gl(h, T, T + 60, 1e-6, 16).value.real();
    };
    double T = 4;
    while (tail_of(T) > tol && T < 200) T += 2;
    double tail = tail_of(T);
    if (tail > tol) throw std::runtime_error("incomplete_series: contour tail " + std::to_string(tail) + " exceeds tolerance");
    auto f = [&](double t) {
        cplx s(2, t);
        return mellin_of_psi(psi, s + 1.0) * FourierExpansion(ix, s, cfg)(p);
    };
    cplx v = quad::adaptive_gl(f, -T, T, tol, 12, 64).value / (2 * pi);
    if (tail_out) *tail_out = tail;
    return v;
}

inline IncompleteSeriesResult incomplete_series(const SpectralIndex &ix, const TestFunctionPsi &psi, const H3Point &p, const TruncationConfig &cfg = {}, double tol = 1e-6) {
    IncompleteSeriesResult r;
    r.direct = incomplete_series_direct(ix, psi, GroupElementSL2C::at(p), &r.cosets);
    r.contour = incomplete_series_contour(ix, psi, p, cfg, tol, &r.contour_tail);
    return r;
}

} // namespace picard
