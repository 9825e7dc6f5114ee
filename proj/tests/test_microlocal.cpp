#include <doctest.h>

#include "picard/microlocal.hpp"

using namespace picard;

TEST_SUITE("microlocal") {
    TEST_CASE("fiber coefficients") {
        FiberFunction f;
        f.modes = {{1, 1, 0, cplx(0.5, -1)}};
        H3Point p(0.1, -0.3, 0.9);
        auto c = fiber_coefficients(f, p);
        for (auto &[key, v] : c) CHECK(std::get<0>(key) == 2);
        for (auto &[key, v] : c) CHECK(std::get<1>(key) == 2);
        for (auto &[key, v] : c) CHECK(std::abs(fiber_coefficient_quadrature(f, p, 2, 1, 0.5 * std::get<2>(key)) - v) < 1e-8);
        CHECK(std::abs(fiber_coefficient_quadrature(f, p, 2, 0, 0)) < 1e-10);
        FiberFunction bad;
        bad.modes = {{0.5, 0.5, 0.5, 1.0}};
        CHECK_THROWS_AS(fiber_coefficients(bad, p), std::invalid_argument);
    }

    TEST_CASE("fiber transport") {
        FiberFunction f;
        f.modes = {{1, 0, 0, 1.0}, {2, 1, 2, cplx(0, 0.3)}};
        GroupElementSL2C S{0.0, -1.0, 1.0, 0.0}, T{1.0, cplx(0, 1), 0.0, 1.0};
        CHECK(lemma_lp_deviation(f, S * T, H3Point(0.2, 0.1, 1.1)) < 1e-10);
    }

    TEST_CASE("direct Mellin transform") {
        FiberFunction zero;
        zero.modes.clear();
        CHECK(mellin_transform_direct(zero, 2.0).value == cplx(0.0));
        FiberFunction a, b, ab;
        a.modes = {{0, 0, 0, 1.0}};
        b.modes = {{2, 0, 0, 1.0}};
        ab.modes = {{0, 0, 0, cplx(0.3, 1)}, {2, 0, 0, -2.0}};
        cplx va = mellin_transform_direct(a, 2.0).value, vb = mellin_transform_direct(b, 2.0).value;
        CHECK(std::abs(mellin_transform_direct(ab, 2.0).value - (cplx(0.3, 1) * va - 2.0 * vb)) < 1e-10 * std::abs(va));
        // a null mode changes nothing
        FiberFunction an = a;
        an.modes.push_back({1, 0, 0, 0.0});
        CHECK(mellin_transform_direct(an, 2.0).value == va);
        CHECK_THROWS_AS(mellin_transform_direct(a, 1.0), std::domain_error);
    }

    TEST_CASE("Mellin transform assembled from Eisenstein series") {
        FiberFunction a;
        a.modes = {{0, 0, 0, 1.0}};
        auto d = mellin_transform_direct(a, 2.0);
        auto e = mellin_via_eisenstein(a, 2.0);
        CHECK(rel_dev(e.corrected, d.value) < 1e-3);
        CHECK(e.via_eisenstein == e.corrected * double(covering_multiplicity));
        FiberFunction an = a;
        an.modes.push_back({1, 0, 0, 0.0});
        CHECK(mellin_via_eisenstein(an, 2.0).via_eisenstein == e.via_eisenstein);
    }

    TEST_CASE("alternating sums and height integrals") {
        CHECK(suma_es0(0) == doctest::Approx(1.0));
        CHECK(std::abs(suma_es0(1)) < 1e-15);
        for (int l = 2; l <= 8; ++l) CHECK(verify_suma_es0(l) < 1e-12);
        CHECK_THROWS_AS(verify_suma_es0(0), std::invalid_argument);
        CHECK_THROWS_AS(suma_es0(-1), std::invalid_argument);
        auto psi = TestFunctionPsi::log_gaussian();
        auto r = verify_lemma_integral(psi);
        CHECK(r.deviation < 1e-8);
        CHECK(r.rhs == doctest::Approx(std::sqrt(pi) * std::exp(1.0)));
        auto r3 = verify_lemma_integral(psi, 3.0);
        CHECK(r3.lhs == doctest::Approx(3 * r.lhs).epsilon(1e-10));
        CHECK(verify_lemma_integral(TestFunctionPsi::log_gaussian(0.4, 0.7)).deviation < 1e-8);
    }

    TEST_CASE("cusp pairing") {
        CuspFormSpec c;
        double r = std::abs(cusp_gamma_block(c, 40)) / std::abs(cusp_gamma_block(c, 80));
        CHECK(r == doctest::Approx(2.0).epsilon(0.1));
        CHECK(std::isfinite(std::abs(cusp_pairing_formula(c, 10, LProvider::mock_unit()))));
        double a = std::abs(cusp_pairing_formula(c, 20, LProvider::mock_unit()));
        double b = std::abs(cusp_pairing_formula(c, 40, LProvider::mock_unit()));
        double d = std::abs(cusp_pairing_formula(c, 80, LProvider::mock_unit()));
        CHECK(b < a);
        CHECK(d < b);
        CHECK_THROWS_AS(cusp_pairing_formula(c, 0, LProvider::mock_unit()), std::invalid_argument);
        CHECK_THROWS_AS(cusp_pairing_formula(c, 10, LProvider{}), std::invalid_argument);
        CuspFormSpec bad;
        bad.l = 1, bad.p = 2;
        CHECK_THROWS_AS(cusp_gamma_block(bad, 10), std::invalid_argument);
    }

    TEST_CASE("incomplete series pairing") {
        auto psi = TestFunctionPsi::log_gaussian();
        double coef = (mellin_of_psi(psi, 2.0) / (4.0 * dedekind_zeta(2.0))).real();
        CHECK(coef == doctest::Approx(0.79943).epsilon(1e-4));
        auto p = incomplete_pairing(SpectralIndex(0, 0, 0), psi, 100);
        REQUIRE(p.F2);
        CHECK(p.main_term.real() == doctest::Approx(coef * std::log(100.0)).epsilon(1e-10));
        auto p200 = incomplete_pairing(SpectralIndex(0, 0, 0), psi, 200);
        CHECK(std::abs(p200.F2->real() / std::log(200.0) - coef) < 0.15 * coef);
        auto off = incomplete_pairing(SpectralIndex(2, 1, 0), psi, 100);
        CHECK(off.main_term == cplx(0.0));
        REQUIRE(off.residue);
        CHECK(*off.residue == cplx(0.0));
        // exact Laurent coefficient doubles the simple-pole coefficient, so the main term scales by 4
        PairingConfig ex;
        ex.exact_laurent = true;
        auto pe = incomplete_pairing(SpectralIndex(0, 0, 0), psi, 100, ex);
        CHECK(pe.main_term.real() == doctest::Approx(4 * p.main_term.real()).epsilon(1e-12));
        CHECK_THROWS_AS(incomplete_pairing(SpectralIndex(0, 0, 0), psi, 0), std::invalid_argument);
    }

    TEST_CASE("double-pole residue") {
        CHECK(double_pole_residue(1.0, 1.0, 3.0, -2.0) == cplx(-3.0));
        CHECK(double_pole_residue(2.0, 0.0, 1.0, 0.5) == cplx(2.0));
    }

    TEST_CASE("scans") {
        ScanConfig sc;
        CHECK(scan_t(sc, {}).empty());
        CHECK_THROWS_AS(scan_t(sc, {10.0, 0.0}), std::invalid_argument);
        sc.task = ScanTask::cusp;
        auto rows = scan_t(sc, {80.0, 20.0, 40.0});
        REQUIRE(rows.size() == 3);
        CHECK(rows[0].t == 20.0);
        CHECK(std::abs(rows[1].value) < std::abs(rows[0].value));
        CHECK(std::abs(rows[2].value) < std::abs(rows[1].value));
        for (auto &r : rows) CHECK(r.main_term == cplx(0.0));
    }
}
