#include <doctest.h>

#include <random>

#include "picard/hyperbolic.hpp"

using namespace picard;

namespace {
GroupElementSL2C random_sl2c(std::mt19937_64 &g) {
    std::uniform_real_distribution<double> u(-2, 2);
    cplx a(u(g), u(g)), b(u(g), u(g)), c(u(g), u(g));
    if (std::abs(a) < 0.1) a += 1.0;
    return {a, b, c, (1.0 + b * c) / a};
}
H3Point random_point(std::mt19937_64 &g) {
    std::uniform_real_distribution<double> u(-1, 1), l(0.2, 3);
    return {u(g), u(g), l(g)};
}
} // namespace

TEST_SUITE("hyperbolic") {
    TEST_CASE("Mobius action") {
        H3Point p(0.3, -0.2, 1.7);
        auto q = mobius_act(GroupElementSL2C::identity(), p);
        CHECK(q.x == doctest::Approx(p.x));
        CHECK(q.y == doctest::Approx(p.y));
        CHECK(q.lambda == doctest::Approx(p.lambda));
        CHECK(mobius_act(GroupElementSL2C::dilation(4), H3Point(0, 0, 1)).lambda == doctest::Approx(4.0));
        std::mt19937_64 g(4);
        for (int i = 0; i < 50; ++i) {
            auto M = random_sl2c(g);
            auto a = random_point(g), b = random_point(g);
            double d0 = hyperbolic_distance(a, b), d1 = hyperbolic_distance(mobius_act(M, a), mobius_act(M, b));
            CHECK(std::abs(d0 - d1) < 1e-10 * std::max(1.0, d0));
        }
        CHECK_THROWS_AS(H3Point(0, 0, 0), std::invalid_argument);
    }

    TEST_CASE("Iwasawa decomposition") {
        auto iw = iwasawa_decompose(GroupElementSL2C::identity());
        CHECK(std::abs(iw.z) < 1e-15);
        CHECK(iw.height == doctest::Approx(1.0));
        CHECK(std::abs(iw.k.alpha - 1.0) < 1e-15);
        std::mt19937_64 g(9);
        for (int i = 0; i < 100; ++i) {
            cplx z0(0.4, -1.3);
            SU2Element K(cplx(0.3, -0.8), cplx(0.5, 0.2));
            auto M = GroupElementSL2C::translation(z0) * GroupElementSL2C::dilation(2.5) * GroupElementSL2C::from_su2(K);
            auto r = iwasawa_decompose(M);
            CHECK(std::abs(r.z - z0) < 1e-12);
            CHECK(std::abs(r.height - 2.5) < 1e-12);
            CHECK(max_abs_diff(r.recompose(), M) < 1e-12);
            auto R = random_sl2c(g);
            CHECK(std::abs(iwasawa_decompose(R).height - mobius_act(R, H3Point(0, 0, 1)).lambda) < 1e-10);
        }
    }

    TEST_CASE("frame transport") {
        H3Point p(0.1, 0.4, 0.8);
        auto I = frame_transport(GroupElementSL2C::identity(), p);
        CHECK(std::abs(I.alpha - 1.0) < 1e-15);
        auto T = frame_transport(GroupElementSL2C::translation(cplx(3, -2)), p);
        CHECK(std::abs(T.alpha - 1.0) < 1e-15);
        CHECK(std::abs(T.beta) < 1e-15);
        std::mt19937_64 g(21);
        for (int i = 0; i < 20; ++i) {
            auto g1 = random_sl2c(g), g2 = random_sl2c(g);
            auto q = random_point(g);
            SU2Element lhs = frame_transport(g1 * g2, q);
            SU2Element rhs = frame_transport(g1, mobius_act(g2, q)) * frame_transport(g2, q);
            CHECK(std::abs(lhs.alpha - rhs.alpha) + std::abs(lhs.beta - rhs.beta) < 1e-12);
        }
    }

    TEST_CASE("fundamental domain") {
        CHECK(in_fundamental_domain(H3Point(0, 0, 2)));
        CHECK_FALSE(in_fundamental_domain(H3Point(0.25, 0.25, 0.5)));
        CHECK(in_fundamental_domain(H3Point(0.5, 0.5, std::sqrt(0.5))));
        CHECK_FALSE(in_fundamental_domain(H3Point(0.6, 0, 2)));
    }

    TEST_CASE("volume integrals") {
        QuadratureSpec q;
        q.n_xy = 4;
        q.lambda_lo = 1;
        auto r = integrate_dV([](const H3Point &) { return cplx(1.0); }, Domain::box, q);
        CHECK(std::abs(r.value - 0.5) < 1e-10);
        // lambda^{1+s} dV with s = 1 diverges at infinity
        QuadratureSpec qs;
        qs.n_xy = 2;
        CHECK_THROWS_AS(integrate_dV([](const H3Point &p) { return cplx(p.lambda * p.lambda); }, Domain::strip, qs), std::runtime_error);
        // log-gaussian height profile integrates to sqrt(pi) e
        auto lg = integrate_dV([](const H3Point &p) { double u = std::log(p.lambda); return cplx(std::exp(-u * u)); }, Domain::strip, qs);
        CHECK(std::abs(lg.value.real() - std::sqrt(pi) * std::exp(1.0)) < 1e-8);
    }
}
