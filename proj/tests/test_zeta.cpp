#include <doctest.h>

#include <random>

#include "picard/zeta.hpp"

using namespace picard;

TEST_SUITE("zeta") {
    TEST_CASE("Hecke characters") {
        CHECK(hecke_character(0, GaussInt{3, 7}) == cplx(1.0));
        CHECK(std::abs(hecke_character(4, GaussInt{1, 1}) + 1.0) < 1e-15);
        std::mt19937_64 g(1);
        std::uniform_int_distribution<int> u(-50, 50);
        for (int i = 0; i < 20; ++i) {
            GaussInt w{u(g), u(g)};
            if (w.is_zero()) continue;
            for (int n : {4, 8, -12}) CHECK(hecke_character(n, GaussInt{0, 1} * w) == hecke_character(n, w));
        }
        CHECK_THROWS_AS(hecke_character(2, GaussInt{1}), std::invalid_argument);
        CHECK_THROWS_AS(hecke_character(4, GaussInt{0}), std::invalid_argument);
    }

    TEST_CASE("Dedekind zeta") {
        CHECK(std::abs(dedekind_zeta(2.0) - 1.5067030099229850) < 1e-12);
        CHECK(std::abs((0.001 * dedekind_zeta(1.001)).real() - pi / 4) < 1e-2);
        // |zeta_K(1+it)| stays within polylogarithmic envelopes
        for (double t : {10.0, 25.0, 60.0, 150.0}) {
            double a = std::abs(dedekind_zeta(cplx(1, t))), lt = std::log(t);
            CHECK(a < lt * lt);
            CHECK(a > 1 / (lt * lt));
        }
    }

    TEST_CASE("L-functions") {
        auto direct = l_function({2.0, 4, 200000, LMethod::direct_sum});
        auto euler = l_function({2.0, 4, 200000, LMethod::euler_product});
        CHECK(std::abs(direct.value - euler.value) < 1e-8);
        CHECK(direct.tail_bound > 0);
        CHECK_THROWS_AS(l_value(2.0, 6), std::invalid_argument);
    }

    TEST_CASE("twisted divisor sums") {
        CHECK(std::abs(sigma_twisted(GaussInt{1}, 0, 0.0) - 1.0) < 1e-15);
        CHECK(std::abs(sigma_twisted(GaussInt{2}, 0, 0.0) - 3.0) < 1e-15);
        std::mt19937_64 g(2);
        std::uniform_int_distribution<int> u(-30, 30);
        std::uniform_real_distribution<double> r(-1, 1);
        for (int i = 0; i < 10; ++i) {
            GaussInt w{u(g), u(g)};
            if (w.is_zero()) continue;
            cplx nu(r(g), r(g));
            CHECK(std::abs(sigma_twisted(-w, 1, nu) - sigma_twisted(w, 1, nu)) < 1e-12 * std::max(1.0, std::abs(sigma_twisted(w, 1, nu))));
        }
    }

    TEST_CASE("Kloosterman-type sums") {
        HalfLatticePoint w{GaussInt{1, 1}};
        cplx closed = d_sum_closed(0, w, 2.0);
        CHECK(rel_dev(d_sum_direct(0, w, 2.0, 2000).value, closed) < 1e-6);
        CHECK(rel_dev(d_sum_ramanujan(0, w, 2.0, 2000), closed) < 1e-6);
        HalfLatticePoint w2{GaussInt{2}};
        CHECK(rel_dev(d_sum_direct(2, w2, 2.0, 2000).value, d_sum_closed(2, w2, 2.0)) < 1e-4);
        auto small = d_sum_direct(0, w, 2.0, 500), big = d_sum_direct(0, w, 2.0, 1000);
        CHECK(std::abs(big.value - small.value) <= small.tail_bound);
        // w = 0: 4 L(s)/L(1+s); checked where the direct sum converges
        HalfLatticePoint w0{GaussInt{0}};
        CHECK(rel_dev(d_sum_direct(0, w0, 3.0, 2000).value, d_sum_closed(0, w0, 3.0)) < 1e-5);
        CHECK_THROWS_AS(d_sum_closed(2, w0, 0.5), std::domain_error);
        CHECK_THROWS_AS(d_sum_closed(1, w, 2.0), std::invalid_argument);
        CHECK_THROWS_AS(d_sum_direct(0, w, -0.5, 100), std::domain_error);
    }

    TEST_CASE("Ramanujan identity and cusp L-functions") {
        CHECK(ramanujan_identity_check(0, 0, 0, 0.0, 0.0, 3.0, 20000).deviation < 1e-4);
        SyntheticCuspCoefficients c;
        CHECK(lfc_identity_check(c, -6.0, 0, 0.0, 20000).deviation < 1e-5);
    }
}
