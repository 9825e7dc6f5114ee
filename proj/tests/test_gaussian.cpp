#include <doctest.h>

#include <algorithm>

#include "picard/gaussian.hpp"

using namespace picard;

namespace {
bool has(const std::vector<GaussInt> &v, GaussInt w) { return std::find(v.begin(), v.end(), w) != v.end(); }

// divisors by brute force over the norm disc
std::size_t grid_divisor_count(GaussInt w) {
    std::size_t n = 0;
    long long r = (long long)std::sqrt(double(w.norm())) + 1;
    for (long long a = -r; a <= r; ++a)
        for (long long b = -r; b <= r; ++b) {
            GaussInt d{a, b};
            if (!d.is_zero() && d.norm() <= w.norm() && divides(d, w)) ++n;
        }
    return n;
}
} // namespace

TEST_SUITE("gaussian") {
    TEST_CASE("norm shells") {
        auto s1 = enumerate_shells(1);
        CHECK(s1.size() == 4);
        for (auto &u : units()) CHECK(has(s1, u));
        auto s2 = enumerate_shells(2);
        CHECK(s2.size() == 8);
        for (auto &u : units()) CHECK(has(s2, u * GaussInt{1, 1}));
        CHECK(enumerate_shells(0).empty());
        CHECK_THROWS_AS(enumerate_shells(-1), std::invalid_argument);
        auto s = enumerate_shells(50);
        CHECK(std::is_sorted(s.begin(), s.end(), shell_less));
    }

    TEST_CASE("divisors") {
        auto d1 = divisors(GaussInt{1});
        CHECK(d1.size() == 4);
        CHECK(divisors(GaussInt{2}).size() == 12);
        CHECK(divisors(GaussInt{1, 1}).size() == 8);
        for (GaussInt w : {GaussInt{2}, GaussInt{1, 1}, GaussInt{3, 4}, GaussInt{12, -5}, GaussInt{0, 7}})
            CHECK(divisors(w).size() == grid_divisor_count(w));
        CHECK_THROWS_AS(divisors(GaussInt{0}), std::invalid_argument);
    }

    TEST_CASE("gcd and Bezout") {
        GaussInt a{7, 3}, b{-2, 5};
        auto [g, x, y] = ext_gcd(a, b);
        CHECK(x * a + y * b == g);
        CHECK(divides(g, a));
        CHECK(divides(g, b));
        CHECK(gcd(GaussInt{2}, GaussInt{1, 1}).norm() == 2);
        CHECK_THROWS_AS(div_round(a, GaussInt{0}), std::invalid_argument);
    }

    TEST_CASE("coset representatives") {
        // norm 1: the four rows (0, unit) of the identity coset and the four rows (unit, 0)
        auto r1 = enumerate_coset_reps(1);
        CHECK(r1.size() == 8);
        int identity_rows = 0;
        for (auto &r : r1) {
            CHECK((r.c.is_zero() ? r.d : r.c).is_unit());
            CHECK((r.c.is_zero() || r.d.is_zero()));
            if (r.c.is_zero()) ++identity_rows;
        }
        CHECK(identity_rows == 4);
        auto r2 = enumerate_coset_reps(2);
        for (auto &r : r2) CHECK(coprime(r.c, r.d));
        bool unit_c = false;
        for (auto &r : r2)
            if (r.c.is_unit() && r.d.norm() <= 1) unit_c = true;
        CHECK(unit_c);
        CHECK_THROWS_AS(enumerate_coset_reps(0), std::invalid_argument);
    }

    TEST_CASE("completion to SL(2, Z[i])") {
        auto m = complete_to_sl2({GaussInt{0}, GaussInt{1}});
        CHECK(m.a == GaussInt{1});
        CHECK(m.b == GaussInt{0});
        auto s = complete_to_sl2({GaussInt{1}, GaussInt{0}});
        CHECK(s.a == GaussInt{0});
        CHECK(s.b == GaussInt{-1});
        auto t = complete_to_sl2({GaussInt{1, 1}, GaussInt{1}});
        CHECK(t.det() == GaussInt{1});
        CHECK(t.a - t.b * GaussInt{1, 1} == GaussInt{1});
        for (auto &r : enumerate_coset_reps(20)) CHECK(complete_to_sl2(r).det() == GaussInt{1});
        CHECK_THROWS_AS(complete_to_sl2({GaussInt{2}, GaussInt{0}}), std::invalid_argument);
    }

    TEST_CASE("overflow is detected") {
        GaussInt big{3037000500LL, 0};
        CHECK_THROWS(big * big);
    }
}
