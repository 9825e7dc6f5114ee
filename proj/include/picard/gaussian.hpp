#pragma once

#include <algorithm>
#include <array>
#include <numeric>
#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

namespace picard {

namespace detail {

inline long long checked_mul(long long a, long long b) {
    long long r;
    if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("Gaussian integer arithmetic overflow");
    return r;
}

inline long long checked_add(long long a, long long b) {
    long long r;
    if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("Gaussian integer arithmetic overflow");
    return r;
}

// floor(p/q) for q > 0
inline long long floor_div(long long p, long long q) {
    long long r = p / q;
    if ((p % q != 0) && ((p < 0) != (q < 0))) --r;
    return r;
}

// nearest integer to p/q, q > 0, ties rounded up
inline long long round_div(long long p, long long q) { return floor_div(2 * p + q, 2 * q); }

} // namespace detail

struct GaussInt {
    long long re = 0, im = 0;

    constexpr GaussInt() = default;
    constexpr GaussInt(long long r, long long i = 0) : re(r), im(i) {}

    long long norm() const { return detail::checked_add(detail::checked_mul(re, re), detail::checked_mul(im, im)); }
    bool is_zero() const { return re == 0 && im == 0; }
    bool is_unit() const { return (std::llabs(re) + std::llabs(im)) == 1; }
    GaussInt conj() const { return {re, -im}; }
    std::complex<double> to_complex() const { return {double(re), double(im)}; }

    GaussInt operator-() const { return {-re, -im}; }
    GaussInt operator+(const GaussInt &w) const { return {detail::checked_add(re, w.re), detail::checked_add(im, w.im)}; }
    GaussInt operator-(const GaussInt &w) const { return {detail::checked_add(re, -w.re), detail::checked_add(im, -w.im)}; }
    GaussInt operator*(const GaussInt &w) const {
        using detail::checked_add;
        using detail::checked_mul;
        return {checked_add(checked_mul(re, w.re), -checked_mul(im, w.im)),
                checked_add(checked_mul(re, w.im), checked_mul(im, w.re))};
    }
    GaussInt &operator+=(const GaussInt &w) { return *this = *this + w; }
    GaussInt &operator-=(const GaussInt &w) { return *this = *this - w; }
    GaussInt &operator*=(const GaussInt &w) { return *this = *this * w; }

    bool operator==(const GaussInt &w) const { return re == w.re && im == w.im; }
    bool operator!=(const GaussInt &w) const { return !(*this == w); }
};

// Shell order: (norm, re, im).
inline bool shell_less(const GaussInt &a, const GaussInt &b) {
    long long na = a.norm(), nb = b.norm();
    if (na != nb) return na < nb;
    if (a.re != b.re) return a.re < b.re;
    return a.im < b.im;
}

inline const std::array<GaussInt, 4> &units() {
    static const std::array<GaussInt, 4> u{GaussInt{1, 0}, GaussInt{0, 1}, GaussInt{-1, 0}, GaussInt{0, -1}};
    return u;
}

// Quotient rounded to the nearest lattice point, so that norm(remainder) <= norm(b)/2.
inline GaussInt div_round(const GaussInt &a, const GaussInt &b) {
    if (b.is_zero()) throw std::invalid_argument("division by zero Gaussian integer");
    long long n = b.norm();
    GaussInt num = a * b.conj();
    return {detail::round_div(num.re, n), detail::round_div(num.im, n)};
}

inline GaussInt mod_round(const GaussInt &a, const GaussInt &b) { return a - div_round(a, b) * b; }

inline bool divides(const GaussInt &d, const GaussInt &w) {
    if (d.is_zero()) return w.is_zero();
    long long n = d.norm();
    GaussInt num = w * d.conj();
    return num.re % n == 0 && num.im % n == 0;
}

inline GaussInt exact_div(const GaussInt &w, const GaussInt &d) {
    if (!divides(d, w)) throw std::invalid_argument("exact_div: not divisible");
    long long n = d.norm();
    GaussInt num = w * d.conj();
    return {num.re / n, num.im / n};
}

inline GaussInt gcd(GaussInt a, GaussInt b) {
    while (!b.is_zero()) {
        GaussInt r = mod_round(a, b);
        a = b;
        b = r;
    }
    return a;
}

inline bool coprime(const GaussInt &a, const GaussInt &b) { return gcd(a, b).norm() == 1; }

// x*a + y*b = g with g = gcd(a,b).
inline std::tuple<GaussInt, GaussInt, GaussInt> ext_gcd(GaussInt a, GaussInt b) {
    GaussInt x0{1}, y0{0}, x1{0}, y1{1};
    while (!b.is_zero()) {
        GaussInt q = div_round(a, b);
        GaussInt r = a - q * b;
        a = b;
        b = r;
        GaussInt x2 = x0 - q * x1, y2 = y0 - q * y1;
        x0 = x1;
        y0 = y1;
        x1 = x2;
        y1 = y2;
    }
    return {a, x0, y0};
}

// Representative of the ideal (w): the associate that is first in shell order.
inline GaussInt canonical_associate(const GaussInt &w) {
    GaussInt best = w;
    for (auto &u : units()) {
        GaussInt v = u * w;
        if (shell_less(v, best)) best = v;
    }
    return best;
}

inline std::vector<GaussInt> enumerate_shells(long long max_norm) {
    if (max_norm < 0) throw std::invalid_argument("enumerate_shells: max_norm must be >= 0");
    std::vector<GaussInt> out;
    long long r = (long long)std::sqrt((double)max_norm) + 1;
    for (long long a = -r; a <= r; ++a)
        for (long long b = -r; b <= r; ++b) {
            long long n = a * a + b * b;
            if (n > 0 && n <= max_norm) out.push_back({a, b});
        }
    std::sort(out.begin(), out.end(), shell_less);
    return out;
}

// Prime factorization w = unit * prod p^e, with p canonical (shell-first associate).
struct Factorization {
    GaussInt unit{1};
    std::vector<std::pair<GaussInt, int>> primes;
};

namespace detail {

// a + bi with a^2 + b^2 = p for a prime p = 1 mod 4.
inline GaussInt split_prime(long long p) {
    for (long long a = 1; a * a < p; ++a) {
        long long b2 = p - a * a;
        long long b = (long long)std::llround(std::sqrt((double)b2));
        for (long long bb = std::max(0LL, b - 1); bb <= b + 1; ++bb)
            if (bb * bb == b2) return {a, bb};
    }
    throw std::logic_error("split_prime: no representation");
}

inline std::vector<std::pair<long long, int>> factor_integer(long long n) {
    std::vector<std::pair<long long, int>> f;
    for (long long p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
        int e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        if (e) f.push_back({p, e});
    }
    if (n > 1) f.push_back({n, 1});
    return f;
}

} // namespace detail

inline Factorization factorize(GaussInt w) {
    if (w.is_zero()) throw std::invalid_argument("factorize: zero has no factorization");
    Factorization out;
    auto rational = detail::factor_integer(w.norm());
    auto take = [&](const GaussInt &p) {
        int e = 0;
        while (divides(p, w)) {
            w = exact_div(w, p);
            ++e;
        }
        if (e) out.primes.push_back({canonical_associate(p), e});
    };
    for (auto [p, e] : rational) {
        if (p == 2) {
            take(GaussInt{1, 1});
        } else if (p % 4 == 3) {
            take(GaussInt{p, 0});
        } else {
            GaussInt pi = detail::split_prime(p);
            take(pi);
            take(pi.conj());
        }
    }
    if (!w.is_unit()) throw std::logic_error("factorize: residual is not a unit");
    out.unit = w;
    std::sort(out.primes.begin(), out.primes.end(),
              [](auto &x, auto &y) { return shell_less(x.first, y.first); });
    return out;
}

// One generator per ideal divisor of (w), each the canonical associate.
inline std::vector<GaussInt> ideal_divisors(const GaussInt &w) {
    Factorization f = factorize(w);
    std::vector<GaussInt> out{GaussInt{1}};
    for (auto &[p, e] : f.primes) {
        std::size_t n = out.size();
        GaussInt pk{1};
        for (int k = 1; k <= e; ++k) {
            pk *= p;
            for (std::size_t i = 0; i < n; ++i) out.push_back(out[i] * pk);
        }
    }
    for (auto &d : out) d = canonical_associate(d);
    std::sort(out.begin(), out.end(), shell_less);
    return out;
}

// All divisors of w including all four associates of each; sorted in shell order.
inline std::vector<GaussInt> divisors(const GaussInt &w) {
    if (w.is_zero()) throw std::invalid_argument("divisors: w must be nonzero");
    std::vector<GaussInt> out;
    for (auto &d : ideal_divisors(w))
        for (auto &u : units()) out.push_back(u * d);
    std::sort(out.begin(), out.end(), shell_less);
    return out;
}

// |(Z[i]/c)^*|
inline long long euler_phi(const GaussInt &c) {
    Factorization f = factorize(c);
    long long r = c.norm();
    for (auto &[p, e] : f.primes) r = r / p.norm() * (p.norm() - 1);
    return r;
}

// Complete residue system modulo c: x + iy with 0 <= x < N/g, 0 <= y < g,
// where g is the content gcd(re c, im c) and N = norm(c).
inline std::vector<GaussInt> residues_mod(const GaussInt &c) {
    if (c.is_zero()) throw std::invalid_argument("residues_mod: modulus must be nonzero");
    long long g = std::gcd(std::llabs(c.re), std::llabs(c.im));
    long long n = c.norm();
    std::vector<GaussInt> out;
    out.reserve(n);
    for (long long x = 0; x < n / g; ++x)
        for (long long y = 0; y < g; ++y) out.push_back({x, y});
    return out;
}

// Bottom row (c, d) of an element of SL(2, Z[i]); indexes a coset of the
// translation subgroup.
struct CosetRep {
    GaussInt c, d;
    long long row_norm() const { return detail::checked_add(c.norm(), d.norm()); }
    bool operator==(const CosetRep &o) const { return c == o.c && d == o.d; }
};

inline bool coset_less(const CosetRep &a, const CosetRep &b) {
    long long na = a.row_norm(), nb = b.row_norm();
    if (na != nb) return na < nb;
    return std::tie(a.c.re, a.c.im, a.d.re, a.d.im) < std::tie(b.c.re, b.c.im, b.d.re, b.d.im);
}

// Associate rows (uc, ud) are different cosets in SL(2,Z[i]); this helper is
// used only to identify rows up to units when that is wanted explicitly.
inline CosetRep canonical_row(const CosetRep &r) {
    CosetRep best = r;
    for (auto &u : units()) {
        CosetRep v{u * r.c, u * r.d};
        if (coset_less(v, best)) best = v;
    }
    return best;
}

inline std::vector<CosetRep> enumerate_coset_reps(long long max_row_norm) {
    if (max_row_norm < 1) throw std::invalid_argument("enumerate_coset_reps: max_row_norm must be >= 1");
    std::vector<CosetRep> out;
    long long r = (long long)std::sqrt((double)max_row_norm) + 1;
    for (long long c1 = -r; c1 <= r; ++c1)
        for (long long c2 = -r; c2 <= r; ++c2) {
            long long nc = c1 * c1 + c2 * c2;
            if (nc > max_row_norm) continue;
            for (long long d1 = -r; d1 <= r; ++d1)
                for (long long d2 = -r; d2 <= r; ++d2) {
                    long long n = nc + d1 * d1 + d2 * d2;
                    if (n == 0 || n > max_row_norm) continue;
                    GaussInt c{c1, c2}, d{d1, d2};
                    if (coprime(c, d)) out.push_back({c, d});
                }
        }
    std::sort(out.begin(), out.end(), coset_less);
    return out;
}

struct IntMatrix2 {
    GaussInt a, b, c, d;
    GaussInt det() const { return a * d - b * c; }
};

// [[a,b],[c,d]] with ad - bc = 1; a is the shell-minimal choice in its class mod c.
inline IntMatrix2 complete_to_sl2(const CosetRep &rep) {
    auto [g, x, y] = ext_gcd(rep.c, rep.d);
    if (!g.is_unit()) throw std::invalid_argument("complete_to_sl2: row is not coprime");
    // x c + y d = g, so with a = y/g, b = -x/g we get a d - b c = 1.
    GaussInt ginv = g.conj();
    GaussInt a = y * ginv, b = -(x * ginv);
    if (rep.c.is_zero()) {
        // d is a unit; b is free modulo d, take b = 0
        return {rep.d.conj(), GaussInt{0}, rep.c, rep.d};
    }
    // move a within a + tc (and b within b + td) to the shell-minimal choice
    GaussInt t0 = -div_round(a, rep.c);
    GaussInt best_t = t0;
    GaussInt best_a = a + t0 * rep.c;
    for (long long u = -1; u <= 1; ++u)
        for (long long v = -1; v <= 1; ++v) {
            GaussInt t = t0 + GaussInt{u, v};
            GaussInt cand = a + t * rep.c;
            if (shell_less(cand, best_a)) {
                best_a = cand;
                best_t = t;
            }
        }
    return {best_a, b + best_t * rep.d, rep.c, rep.d};
}

inline std::string to_string(const GaussInt &w) {
    return "(" + std::to_string(w.re) + (w.im < 0 ? "" : "+") + std::to_string(w.im) + "i)";
}

} // namespace picard
