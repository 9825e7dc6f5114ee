#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "gaussian.hpp"
#include "parallel.hpp"
#include "special.hpp"

namespace picard {

inline void check_character(int n) {
    if (n % 4 != 0) throw std::invalid_argument("Hecke character index must be divisible by 4, got " + std::to_string(n));
}

// chi_n((w)) = (w/|w|)^n, evaluated on the canonical generator so that all
// associates give bit-identical values.
inline cplx hecke_character(int n, const GaussInt &w) {
    check_character(n);
    if (w.is_zero()) throw std::invalid_argument("hecke_character: w must be nonzero");
    if (n == 0) return 1.0;
    GaussInt g = canonical_associate(w);
    return std::polar(1.0, n * std::atan2(double(g.im), double(g.re)));
}

namespace detail {

// B_{2k}/(2k)!
inline constexpr double bern_over_fact[12] = {
    1.0 / 12, -1.0 / 720, 1.0 / 30240, -1.0 / 1209600, 1.0 / 47900160, -691.0 / 1307674368000.0,
    1.0 / 74724249600.0, -3617.0 / 10670622842880000.0, 43867.0 / 5109094217170944000.0,
    -174611.0 / 802857662698291200000.0, 77683.0 / 14101100039391805440000.0,
    -236364091.0 / 1693824136731743669452800000.0};

struct ValueDeriv {
    cplx value, deriv;
};

// Hurwitz zeta(s, a) and its s-derivative by Euler-Maclaurin summation.
inline ValueDeriv hurwitz_zeta(cplx s, double a) {
    if (std::abs(s - 1.0) < 1e-14) throw std::domain_error("hurwitz_zeta: pole at s = 1");
    int N = 30 + int(2 * std::abs(s));
    cplx val = 0, der = 0;
    for (int n = 0; n < N; ++n) {
        double x = n + a, lx = std::log(x);
        cplx p = std::exp(-s * lx);
        val += p;
        der -= lx * p;
    }
    double x = N + a, lx = std::log(x);
    cplx xs = std::exp(-s * lx);
    cplx t1 = x * xs / (s - 1.0);
    val += t1 + 0.5 * xs;
    der += -lx * t1 - x * xs / ((s - 1.0) * (s - 1.0)) - 0.5 * lx * xs;
    // (s)_{2k-1} x^{-s-2k+1}
    cplx poch = s, dpoch = 1.0;
    cplx xp = xs / x;
    for (int k = 1; k <= 12; ++k) {
        cplx term = bern_over_fact[k - 1] * poch * xp;
        val += term;
        der += bern_over_fact[k - 1] * (dpoch * xp - lx * poch * xp);
        // advance to (s)_{2k+1}
        cplx f1 = s + double(2 * k - 1), f2 = s + double(2 * k);
        dpoch = dpoch * f1 * f2 + poch * (f1 + f2);
        poch *= f1 * f2;
        xp /= x * x;
    }
    return {val, der};
}

} // namespace detail

// Dedekind zeta of Q(i), zeta(s) * L(s, chi_{-4}), valid for all s != 1.
inline detail::ValueDeriv dedekind_zeta_vd(cplx s) {
    auto z = detail::hurwitz_zeta(s, 1.0);
    auto q1 = detail::hurwitz_zeta(s, 0.25), q3 = detail::hurwitz_zeta(s, 0.75);
    cplx f = std::exp(-s * std::log(4.0));
    cplx beta = f * (q1.value - q3.value);
    cplx dbeta = f * (q1.deriv - q3.deriv) - std::log(4.0) * beta;
    return {z.value * beta, z.deriv * beta + z.value * dbeta};
}

inline cplx dedekind_zeta(cplx s) { return dedekind_zeta_vd(s).value; }
inline cplx dedekind_zeta_logderiv(cplx s) {
    auto v = dedekind_zeta_vd(s);
    return v.deriv / v.value;
}

enum class LMethod { direct_sum, euler_product, analytic };

struct LSeriesParams {
    cplx s;
    int n = 0;               // character index
    long long truncation = 1000000;
    LMethod method = LMethod::direct_sum;
};

struct LValue {
    cplx value;
    double tail_bound;
};

inline std::vector<int> primes_up_to(long long n) {
    std::vector<char> comp(n + 1, 0);
    std::vector<int> out;
    for (long long i = 2; i <= n; ++i) {
        if (comp[i]) continue;
        out.push_back(int(i));
        for (long long j = i * i; j <= n; j += i) comp[j] = 1;
    }
    return out;
}

// Prime ideals of Z[i] with norm <= bound, by canonical generator, in norm order.
inline std::vector<GaussInt> prime_ideals(long long bound) {
    std::vector<GaussInt> out;
    for (int p : primes_up_to(bound)) {
        if (p == 2) {
            out.push_back(canonical_associate({1, 1}));
        } else if (p % 4 == 1) {
            GaussInt pi = detail::split_prime(p);
            out.push_back(canonical_associate(pi));
            out.push_back(canonical_associate(pi.conj()));
        } else if ((long long)p * p <= bound) {
            out.push_back(GaussInt{p, 0});
        }
    }
    std::sort(out.begin(), out.end(), shell_less);
    return out;
}

// L(s, chi_n) = sum over ideals chi_n(a) N(a)^{-s}.
inline LValue l_function(const LSeriesParams &P) {
    check_character(P.n);
    const cplx s = P.s;
    if (P.method == LMethod::analytic) {
        if (P.n != 0) throw std::domain_error("l_function: analytic route only for the trivial character");
        return {dedekind_zeta(s), 0.0};
    }
    if (s.real() <= 1.0) {
        if (P.n == 0 && P.method == LMethod::direct_sum)
            throw std::domain_error("l_function: direct sum requires Re(s) > 1");
        throw std::domain_error("l_function: Re(s) <= 1 outside the region of absolute convergence (unavailable)");
    }
    double tail = (pi / 4) * std::pow(double(P.truncation), 1 - s.real()) / (s.real() - 1);
    if (P.method == LMethod::euler_product) {
        cplx prod = 1;
        for (auto &p : prime_ideals(P.truncation)) {
            double np = double(p.norm());
            prod *= 1.0 / (1.0 - hecke_character(P.n, p) * std::exp(-s * std::log(np)));
        }
        return {prod, tail};
    }
    long long N = P.truncation;
    long long R = (long long)std::sqrt(double(N));
    // sum over a > 0, b >= 0 covers each ideal once (first-quadrant generator)
    cplx total = parallel::ordered_sum<cplx>(std::size_t(R + 1), [&](std::size_t ai) {
        long long a = (long long)ai + 1;
        cplx acc = 0;
        for (long long b = 0; a * a + b * b <= N; ++b) {
            double n = double(a * a + b * b);
            cplx chi = P.n == 0 ? cplx(1) : std::polar(1.0, P.n * std::atan2(double(b), double(a)));
            acc += chi * std::exp(-s * std::log(n));
        }
        return acc;
    }, 16);
    return {total, tail};
}

inline cplx l_value(cplx s, int n, long long truncation = 1000000) {
    if (n == 0) return dedekind_zeta(s);
    return l_function({s, n, truncation, LMethod::direct_sum}).value;
}

// sigma_nu(w, p) = 1/4 sum_{d | w} chi_{4p}((d)) |d|^{2 nu}, i.e. a sum over ideal divisors.
inline cplx sigma_twisted(const GaussInt &w, int p, cplx nu) {
    if (w.is_zero()) throw std::invalid_argument("sigma_twisted: w must be nonzero");
    cplx tot = 0;
    for (auto &d : ideal_divisors(w)) tot += hecke_character(4 * p, d) * std::exp(nu * std::log(double(d.norm())));
    return tot;
}

// Half-lattice point w = twice / 2.
struct HalfLatticePoint {
    GaussInt twice;
    std::complex<double> value() const { return 0.5 * twice.to_complex(); }
};

struct DSumResult {
    cplx value;
    double tail_bound;
};

// Direct sum over c != 0 with N(c) <= cbound and d mod c coprime to c of
// N(c)^{-1-s} (c/|c|)^{2k} exp(4 pi i Re(w d / c)).
inline DSumResult d_sum_direct(int k, const HalfLatticePoint &w, cplx s, long long cbound) {
    if (!(s.real() > 0)) throw std::domain_error("d_sum_direct: requires Re(s) > 0");
    if (cbound < 1) throw std::invalid_argument("d_sum_direct: cbound must be >= 1");
    std::vector<GaussInt> cs = enumerate_shells(cbound);
    const GaussInt W = w.twice;
    cplx total = parallel::ordered_sum<cplx>(cs.size(), [&](std::size_t idx) {
        const GaussInt c = cs[idx];
        long long N = c.norm();
        std::vector<GaussInt> primes;
        for (auto &pe : factorize(c).primes) primes.push_back(pe.first);
        // exp(2 pi i Re(W d conj(c)) / N) with the integer Re(W d conj(c)) reduced mod N
        GaussInt Wc = W * c.conj();
        long long g = std::gcd(std::llabs(c.re), std::llabs(c.im));
        cplx inner = 0;
        for (long long x = 0; x < N / g; ++x)
            for (long long y = 0; y < g; ++y) {
                GaussInt d{x, y};
                bool cop = true;
                for (auto &p : primes)
                    if (divides(p, d)) {
                        cop = false;
                        break;
                    }
                if (!cop) continue;
                long long r = ((Wc.re * x - Wc.im * y) % N + N) % N;
                inner += std::polar(1.0, 2 * pi * double(r) / double(N));
            }
        double arg = std::atan2(double(c.im), double(c.re));
        return inner * std::exp((-1.0 - s) * std::log(double(N))) * std::polar(1.0, 2.0 * k * arg);
    }, 64);
    // crude tail: |inner| <= N(c) summed beyond the bound, only c | (stuff) survive on average
    double tail = pi * std::pow(double(cbound), -s.real()) / s.real();
    if (!W.is_zero()) tail = pi * std::pow(double(cbound), -s.real()) * std::max(1.0, double(W.norm()));
    return {total, tail};
}

// Closed form: 4 sigma_{-s}(2w, k/2) / L(1+s, chi_{2k}), or 4 L(s, chi_{2k}) / L(1+s, chi_{2k}) at w = 0.
inline cplx d_sum_closed(int k, const HalfLatticePoint &w, cplx s, long long truncation = 1000000) {
    if (k % 2 != 0) throw std::invalid_argument("d_sum_closed: k must be even");
    if (w.twice.is_zero()) {
        if (k != 0 && s.real() <= 1) throw std::domain_error("d_sum_closed: L(s, chi) unavailable for Re(s) <= 1");
        return 4.0 * l_value(s, 2 * k, truncation) / l_value(1.0 + s, 2 * k, truncation);
    }
    if (!(s.real() > 0)) throw std::domain_error("d_sum_closed: requires Re(s) > 0");
    return 4.0 * sigma_twisted(w.twice, k / 2, -s) / l_value(1.0 + s, 2 * k, truncation);
}

// Same as direct sum but through Ramanujan sums c_c(W) = sum_{delta | (c, W)} mu(c/delta) N(delta).
inline cplx d_sum_ramanujan(int k, const HalfLatticePoint &w, cplx s, long long cbound) {
    std::vector<GaussInt> cs = enumerate_shells(cbound);
    const GaussInt W = w.twice;
    return parallel::ordered_sum<cplx>(cs.size(), [&](std::size_t idx) {
        const GaussInt c = cs[idx];
        Factorization f = factorize(c);
        double cc = 0;
        if (W.is_zero()) {
            cc = double(euler_phi(c));
        } else {
            // sum over squarefree e | c with (c/e) | W of mu(e) N(c/e)
            std::size_t np = f.primes.size();
            for (std::size_t mask = 0; mask < (std::size_t(1) << np); ++mask) {
                GaussInt e{1};
                int mu = 1;
                for (std::size_t i = 0; i < np; ++i)
                    if (mask >> i & 1) {
                        e *= f.primes[i].first;
                        mu = -mu;
                    }
                GaussInt delta = exact_div(c, e);
                if (divides(delta, W)) cc += mu * double(delta.norm());
            }
        }
        double arg = std::atan2(double(c.im), double(c.re));
        return cc * std::exp((-1.0 - s) * std::log(double(c.norm()))) * std::polar(1.0, 2.0 * k * arg);
    }, 256);
}

struct IdentityReport {
    cplx lhs, rhs;
    double deviation; // relative
};

inline double rel_dev(cplx a, cplx b) {
    double sc = std::max(std::abs(a), std::abs(b));
    if (sc < 1e-10) return std::abs(a - b);
    return std::abs(a - b) / sc;
}

// sum_{w != 0} chi_{4 a1}(w) N(w)^{-s} sigma_mu(w, a2) sigma_nu(w, a3) against the L-function product.
inline IdentityReport ramanujan_identity_check(int a1, int a2, int a3, cplx mu, cplx nu, cplx s, long long truncation) {
    double r[5] = {s.real(), (s - mu).real(), (s - nu).real(), (s - mu - nu).real(), (2.0 * s - mu - nu).real()};
    for (double x : r)
        if (x <= 1.0) throw std::domain_error("ramanujan_identity_check: an L-argument has real part <= 1");
    // ideals via first-quadrant generators, times 4 for the element sum
    long long R = (long long)std::sqrt(double(truncation));
    cplx lhs = parallel::ordered_sum<cplx>(std::size_t(R + 1), [&](std::size_t ai) {
        long long a = (long long)ai + 1;
        cplx acc = 0;
        for (long long b = 0; a * a + b * b <= truncation; ++b) {
            GaussInt w{a, b};
            double n = double(w.norm());
            acc += hecke_character(4 * a1, w) * std::exp(-s * std::log(n)) * sigma_twisted(w, a2, mu) * sigma_twisted(w, a3, nu);
        }
        return acc;
    }, 8);
    lhs *= 4.0;
    const long long T = 2000000;
    cplx rhs = 4.0 * l_value(s, 4 * a1, T) * l_value(s - mu, 4 * a1 + 4 * a2, T) * l_value(s - nu, 4 * a1 + 4 * a3, T) *
               l_value(s - mu - nu, 4 * a1 + 4 * a2 + 4 * a3, T) / l_value(2.0 * s - mu - nu, 8 * a1 + 4 * a2 + 4 * a3, T);
    return {lhs, rhs, rel_dev(lhs, rhs)};
}

// Multiplicative coefficients c(w) constant on ideals, with
// c(p^{j+1}) = c(p) c(p^j) - c(p^{j-1}).
struct SyntheticCuspCoefficients {
    std::uint64_t seed = 1;
    double constant = 0.0;  // used when random is false
    bool random = true;
    double bound = 2.0;

    static std::uint64_t splitmix(std::uint64_t x) {
        x += 0x9e3779b97f4a7c15ULL;
        x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
        x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
        return x ^ (x >> 31);
    }

    double at_prime(const GaussInt &p) const {
        if (!random) return constant;
        GaussInt g = canonical_associate(p);
        std::uint64_t h = splitmix(seed ^ splitmix(std::uint64_t(g.re) * 1000003ULL + std::uint64_t(g.im)));
        double u = double(h >> 11) * (1.0 / 9007199254740992.0);
        return bound * (2 * u - 1);
    }

    double at_prime_power(const GaussInt &p, int j) const {
        double cp = at_prime(p), prev = 1, cur = cp;
        if (j == 0) return 1;
        for (int i = 1; i < j; ++i) {
            double nxt = cp * cur - prev;
            prev = cur;
            cur = nxt;
        }
        return cur;
    }

    double operator()(const GaussInt &w) const {
        double r = 1;
        for (auto &[p, e] : factorize(w).primes) r *= at_prime_power(p, e);
        return r;
    }
};

// L(s, F, chi_n) = prod_p (1 - c(p) chi(p) N(p)^{-s} + chi(p)^2 N(p)^{-2s})^{-1}
inline cplx cusp_l_euler(const SyntheticCuspCoefficients &c, cplx s, int n, long long truncation) {
    check_character(n);
    cplx prod = 1;
    for (auto &p : prime_ideals(truncation)) {
        cplx chi = hecke_character(n, p);
        cplx x = std::exp(-s * std::log(double(p.norm())));
        prod *= 1.0 / (1.0 - c.at_prime(p) * chi * x + chi * chi * x * x);
    }
    return prod;
}

// sum_{w != 0} c(w) |w|^s (w/|w|)^alpha sigma_nu(w, 0) against the Euler-product side.
inline IdentityReport lfc_identity_check(const SyntheticCuspCoefficients &c, cplx s, int alpha, cplx nu, long long truncation) {
    check_character(alpha);
    if ((-s - nu).real() <= 1.0 || (-0.5 * s).real() <= 1.0 || (-0.5 * s - nu).real() <= 1.0)
        throw std::domain_error("lfc_identity_check: parameters outside absolute convergence");
    long long R = (long long)std::sqrt(double(truncation));
    cplx lhs = parallel::ordered_sum<cplx>(std::size_t(R + 1), [&](std::size_t ai) {
        long long a = (long long)ai + 1;
        cplx acc = 0;
        for (long long b = 0; a * a + b * b <= truncation; ++b) {
            GaussInt w{a, b};
            double n = double(w.norm());
            acc += c(w) * std::exp(0.5 * s * std::log(n)) * hecke_character(alpha, w) * sigma_twisted(w, 0, nu);
        }
        return acc;
    }, 8);
    lhs *= 4.0;
    const long long T = 2000000;
    cplx rhs = 4.0 * cusp_l_euler(c, -0.5 * s, alpha, T) * cusp_l_euler(c, -0.5 * s - nu, alpha, T) /
               l_value(-s - nu, 2 * alpha, T);
    return {lhs, rhs, rel_dev(lhs, rhs)};
}

} // namespace picard
