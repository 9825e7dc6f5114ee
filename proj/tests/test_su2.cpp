#include <doctest.h>

#include <random>

#include "picard/su2.hpp"

using namespace picard;

namespace {
SU2Element random_su2(std::mt19937_64 &g) {
    std::normal_distribution<double> n;
    return SU2Element(cplx(n(g), n(g)), cplx(n(g), n(g)));
}
} // namespace

TEST_SUITE("su2") {
    TEST_CASE("spin cover") {
        CHECK(max_abs_diff(spin_cover(SU2Element::identity()), so3_identity()) < 1e-15);
        CHECK(max_abs_diff(spin_cover(-SU2Element::identity()), so3_identity()) < 1e-15);
        std::mt19937_64 g(7);
        for (int i = 0; i < 20; ++i) {
            auto A = random_su2(g), B = random_su2(g);
            CHECK(max_abs_diff(spin_cover(A * B), mat_mul(spin_cover(A), spin_cover(B))) < 1e-12);
        }
    }

    TEST_CASE("Euler angles") {
        auto e0 = euler_decompose(so3_identity());
        CHECK(e0.theta == doctest::Approx(0).epsilon(1e-15));
        CHECK(e0.chi == doctest::Approx(0).epsilon(1e-15));
        CHECK(e0.phi == doctest::Approx(0).epsilon(1e-15));
        auto e = euler_decompose(rot(0.3, 0.7, -1.1));
        CHECK(std::abs(e.theta - 0.3) < 1e-12);
        CHECK(std::abs(e.chi - 0.7) < 1e-12);
        CHECK(std::abs(e.phi + 1.1) < 1e-12);
        // rotation about z: the whole angle goes to phi
        auto ez = euler_decompose(rot_z(0.9));
        CHECK(ez.theta == 0.0);
        CHECK(ez.chi == 0.0);
        CHECK(std::abs(ez.phi - 0.9) < 1e-12);
        CHECK(max_abs_diff(spin_cover(lift_rot(0.3, 0.7, -1.1)), rot(0.3, 0.7, -1.1)) < 1e-14);
    }

    TEST_CASE("small d closed forms") {
        CHECK(std::abs(wigner_small_d(0.5, 0.5, 0.5, 0.8) - std::cos(0.4)) < 1e-13);
        CHECK(std::abs(wigner_small_d(1, 0, 0, 1.2) - std::cos(1.2)) < 1e-13);
        for (int tj = 0; tj <= 8; ++tj)
            for (int tk = -tj; tk <= tj; tk += 2)
                for (int tm = -tj; tm <= tj; tm += 2)
                    CHECK(wigner_small_d(0.5 * tj, 0.5 * tk, 0.5 * tm, 0.0) == doctest::Approx(tk == tm ? 1.0 : 0.0));
    }

    TEST_CASE("D on SU(2)") {
        std::mt19937_64 g(11);
        for (int tj = 0; tj <= 6; ++tj) {
            double j = 0.5 * tj;
            auto Id = wigner_D_matrix(j, SU2Element::identity());
            for (int a = 0; a <= tj; ++a)
                for (int b = 0; b <= tj; ++b) CHECK(std::abs(Id[a][b] - (a == b ? 1.0 : 0.0)) < 1e-15);
            auto A = random_su2(g), B = random_su2(g);
            auto DA = wigner_D_matrix(j, A), DB = wigner_D_matrix(j, B), DAB = wigner_D_matrix(j, A * B);
            double dev = 0;
            for (int a = 0; a <= tj; ++a)
                for (int b = 0; b <= tj; ++b) {
                    cplx s = 0;
                    for (int c = 0; c <= tj; ++c) s += DA[a][c] * DB[c][b];
                    dev = std::max(dev, std::abs(s - DAB[a][b]));
                }
            CHECK(dev < 1e-12);
        }
        // integer j against Euler angles of the rotation
        auto A = random_su2(g);
        auto e = euler_decompose(spin_cover(A));
        for (int k = -2; k <= 2; ++k)
            for (int m = -2; m <= 2; ++m) {
                cplx ref = std::polar(1.0, k * e.theta) * wigner_small_d(2, k, m, e.chi) * std::polar(1.0, m * e.phi);
                CHECK(std::abs(wigner_D_su2(2, k, m, A) - ref) < 1e-12);
            }
        CHECK_THROWS_AS(wigner_D_su2(1, 2, 0, A), std::invalid_argument);
        CHECK_THROWS_AS(wigner_D_su2(1, 0.5, 0, A), std::invalid_argument);
    }

    TEST_CASE("Phi coefficients") {
        std::mt19937_64 g(3);
        auto K = random_su2(g);
        CHECK(std::abs(phi_coeff(0.5, -0.5, -0.5, K) - K.alpha) < 1e-14);
        for (int tl = 0; tl <= 4; ++tl)
            for (int tk = -tl; tk <= tl; tk += 2)
                for (int tm = -tl; tm <= tl; tm += 2) {
                    CHECK(std::abs(phi_coeff(0.5 * tl, 0.5 * tk, 0.5 * tm, SU2Element::identity()) - (tk == tm ? 1.0 : 0.0)) < 1e-14);
                    auto r = wigner_symmetries_check(0.5 * tl, 0.5 * tk, 0.5 * tm, K);
                    CHECK(r.max() < 1e-12);
                }
        // diagonal element: the conjugation symmetry is an exact phase identity
        SU2Element D(std::polar(1.0, 0.37), 0.0);
        CHECK(wigner_symmetries_check(2, 1, -1, D).conj_I < 1e-14);
        CHECK(b_coefficient(1, 0, 1) == doctest::Approx(std::sqrt(2.0)));
        for (int k = -2; k <= 2; ++k) CHECK(b_coefficient(2, k, k) == doctest::Approx(1.0));
    }

    TEST_CASE("T basis") {
        for (int l = 0; l <= 4; ++l)
            for (int tk = -l; tk <= l; tk += 2)
                CHECK(t_basis(l, 0.5 * tk, 0.5 * tk, SU2Element::identity()).real() == doctest::Approx(std::sqrt((l + 1) / (2 * pi * pi))));
        // (R_{A^-1} T_{km})(X) = T_{km}(A^-1 X) = sum_a D^{l/2}_{ma}(A^-1) T_{ka}(X)
        std::mt19937_64 g(5);
        auto A = random_su2(g), X = random_su2(g);
        int l = 3;
        for (int tk = -l; tk <= l; tk += 2)
            for (int tm = -l; tm <= l; tm += 2) {
                cplx lhs = t_basis(l, 0.5 * tk, 0.5 * tm, A.inverse() * X), rhs = 0;
                for (int ta = -l; ta <= l; ta += 2)
                    rhs += wigner_D_su2(0.5 * l, 0.5 * tm, 0.5 * ta, A.inverse()) * t_basis(l, 0.5 * tk, 0.5 * ta, X);
                CHECK(std::abs(lhs - rhs) < 1e-12);
            }
        CHECK_THROWS_AS(t_basis(-1, 0, 0, X), std::invalid_argument);
    }

    TEST_CASE("Haar grid normalization") {
        auto G = haar_grid(8, 12, 16);
        double w = 0;
        for (double x : G.weights) w += x;
        CHECK(w == doctest::Approx(1.0).epsilon(1e-12));
    }
}
