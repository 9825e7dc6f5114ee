#include <doctest.h>

#include "picard/eisenstein.hpp"

using namespace picard;

namespace {
double rel(cplx a, cplx b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }
} // namespace

TEST_SUITE("eisenstein") {
    TEST_CASE("seed function") {
        H3Point p(0.2, -0.4, 1.3);
        cplx s(2.0, 0.5);
        auto g = GroupElementSL2C::at(p);
        for (int tk = -2; tk <= 2; tk += 2)
            for (int tm = -2; tm <= 2; tm += 2) {
                cplx v = f_seed(SpectralIndex(1, 0.5 * tk, 0.5 * tm), g, s);
                cplx ref = tk == tm ? std::exp((1.0 + s) * std::log(1.3)) : cplx(0.0);
                CHECK(std::abs(v - ref) < 1e-13);
            }
        GroupElementSL2C M{cplx(1, 1), cplx(0.5, 0), cplx(2, -1), cplx(0, 0)};
        M.d = (1.0 + M.b * M.c) / M.a;
        double h = mobius_act(M, H3Point(0, 0, 1)).lambda;
        CHECK(std::abs(f_seed(SpectralIndex(0, 0, 0), M, s) - std::exp((1.0 + s) * std::log(h))) < 1e-13);
    }

    TEST_CASE("xi and B coefficients") {
        CHECK(xi_coefficient(1, 0, 0, 0) == doctest::Approx(2.0));
        CHECK(xi_coefficient(1, 0, 0, 1) == doctest::Approx(1.0));
        CHECK(xi_coefficient(0, 0, 0, 0) == doctest::Approx(1.0));
        CHECK_THROWS_AS(xi_coefficient(1, 0, 0, 2), std::invalid_argument);
        CHECK(b_coefficient(1, 0, 1) == doctest::Approx(std::sqrt(2.0)));
    }

    TEST_CASE("vanishing indices") {
        CHECK(FourierExpansion(SpectralIndex(1, 0, 1), 2.0).identically_zero());
        CHECK(FourierExpansion(SpectralIndex(1, 1, -1), 2.0).identically_zero());
        CHECK_FALSE(FourierExpansion(SpectralIndex(2, 1, 2), 2.0).identically_zero());
    }

    TEST_CASE("coset sum vs Fourier expansion") {
        H3Point j(0, 0, 1);
        auto cs = eisenstein_coset_sums({SpectralIndex(0, 0, 0), SpectralIndex(1, 0, 0)}, GroupElementSL2C::at(j), 2.0, 1000);
        CHECK(rel(cs[0].value, FourierExpansion(SpectralIndex(0, 0, 0), 2.0)(j)) < 1e-4);
        CHECK(rel(cs[1].value, FourierExpansion(SpectralIndex(1, 0, 0), 2.0)(j)) < 1e-4);
        CHECK(cs[0].tail > 0);
        CHECK_THROWS_AS(eisenstein_coset_sums({SpectralIndex(0, 0, 0)}, GroupElementSL2C::at(j), 1.0, 100), std::domain_error);
        CHECK_THROWS_AS(eisenstein_coset_sums({SpectralIndex(0, 0, 0)}, GroupElementSL2C::at(j), 2.0, 0), std::invalid_argument);
    }

    TEST_CASE("Gamma invariance") {
        H3Point p(0.1, 0.2, 0.9);
        GroupElementSL2C S{0.0, -1.0, 1.0, 0.0};
        auto a = eisenstein_coset_sums({SpectralIndex(0, 0, 0)}, GroupElementSL2C::at(p), 2.0, 1000)[0];
        auto b = eisenstein_coset_sums({SpectralIndex(0, 0, 0)}, GroupElementSL2C::at(mobius_act(S, p)), 2.0, 1000)[0];
        CHECK(std::abs(a.value - b.value) <= 2 * (a.tail + b.tail));
        FourierExpansion E(SpectralIndex(0, 0, 0), 2.0);
        CHECK(rel(E(p), E(mobius_act(S, p))) < 1e-8);
        // translation by Z[i] and rotation z -> i z
        CHECK(rel(E(p), E(H3Point(p.x + 1, p.y - 2, p.lambda))) < 1e-10);
        CHECK(rel(E(p), E(H3Point(-p.y, p.x, p.lambda))) < 1e-10);
    }

    TEST_CASE("K-equivariance") {
        H3Point p(-0.2, 0.3, 1.2);
        SU2Element K(cplx(0.6, 0.3), cplx(-0.2, 0.7));
        auto g = GroupElementSL2C::at(p) * GroupElementSL2C::from_su2(K);
        for (int tk = -2; tk <= 2; tk += 2) {
            SpectralIndex ix(1, 0.5 * tk, 0);
            cplx direct = eisenstein_coset_sums({ix}, g, 2.0, 1000)[0].value;
            CHECK(rel(direct, eisenstein_fourier_at(ix, 2.0, g)) < 1e-4);
        }
    }

    TEST_CASE("cusp limit") {
        FourierExpansion fe(SpectralIndex(1, 0, 0), 2.0);
        H3Point top(0.2, -0.1, 20.0);
        CHECK(rel(fe(top), fe.constant_term(20.0)) < 1e-10);
        FourierExpansion sc(SpectralIndex(0, 0, 0), 2.0);
        CHECK(std::abs(sc.constant_coefficient_plus() - 4.0) < 1e-15);
        TruncationConfig c;
        c.index_gamma_inf = 3;
        CHECK(std::abs(FourierExpansion(SpectralIndex(0, 0, 0), 2.0, c).constant_coefficient_plus() - 3.0) < 1e-15);
        c.index_gamma_inf = 0;
        CHECK_THROWS_AS(FourierExpansion(SpectralIndex(0, 0, 0), 2.0, c), std::invalid_argument);
    }

    TEST_CASE("test functions and their Mellin transforms") {
        auto psi = TestFunctionPsi::log_gaussian();
        CHECK(std::abs(mellin_of_psi(psi, 2.0) - std::sqrt(pi) * std::exp(1.0)) < 1e-13);
        cplx s(0.4, 1.1);
        CHECK(std::abs(mellin_of_psi(psi, s) - std::sqrt(pi) * std::exp(s * s / 4.0)) < 1e-13);
        CHECK(std::abs(mellin_inverse_psi(psi, 2.0) - psi(2.0)) < 1e-8);
        auto bump = TestFunctionPsi::bump(0.5, 4.0);
        CHECK(bump(0.4) == 0.0);
        CHECK(bump(1.5) > 0.0);
        CHECK(std::abs(mellin_inverse_psi(bump, 1.5, 0, 200) - bump(1.5)) < 1e-6);
        CHECK_THROWS_AS(TestFunctionPsi::bump(2, 1), std::invalid_argument);
        CHECK_THROWS_AS(TestFunctionPsi::log_gaussian(0, 0), std::invalid_argument);
    }

    TEST_CASE("incomplete series") {
        // support above every non-trivial coset height: only the rows (0, unit) contribute
        auto bump = TestFunctionPsi::bump(2.0, 4.0);
        std::size_t n = 0;
        cplx v = incomplete_series_direct(SpectralIndex(0, 0, 0), bump, GroupElementSL2C::at(H3Point(0.1, 0.1, 3.0)), &n);
        CHECK(n == 4);
        CHECK(std::abs(v - 4.0 * bump(3.0)) < 1e-14);
        auto psi = TestFunctionPsi::log_gaussian();
        auto r = incomplete_series(SpectralIndex(0, 0, 0), psi, H3Point(0.1, 0.2, 1.1));
        CHECK(rel(r.contour, r.direct) < 1e-3);
    }
}
