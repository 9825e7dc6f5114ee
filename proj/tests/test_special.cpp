#include <doctest.h>

#include "picard/special.hpp"

using namespace picard;

TEST_SUITE("special") {
    TEST_CASE("gamma") {
        CHECK(std::abs(gamma_complex(1.0) - 1.0) < 1e-15);
        CHECK(std::abs(gamma_complex(0.5) - std::sqrt(pi)) < 1e-14);
        cplx z(0.3, 0.7);
        CHECK(std::abs(gamma_complex(z) * gamma_complex(1.0 - z) - pi / std::sin(pi * z)) < 1e-12);
        double t = 30;
        double stirling = std::sqrt(2 * pi) * std::exp(-pi * t / 2) * std::sqrt(t);
        CHECK(std::abs(gamma_complex(cplx(1, t))) / stirling == doctest::Approx(1.0).epsilon(0.01));
        CHECK_THROWS_AS(gamma_complex(-2.0), std::domain_error);
        CHECK_THROWS_AS(lgamma_complex(0.0), std::domain_error);
        // large imaginary part stays finite in log form
        CHECK(std::isfinite(lgamma_complex(cplx(0.5, 2000)).real()));
    }

    TEST_CASE("digamma") {
        CHECK(std::abs(digamma_shift(1.0, 1) - 1.0) < 1e-15);
        CHECK(std::abs(digamma_shift(0.5, 3) - (2.0 + 1 / 1.5 + 1 / 2.5)) < 1e-14);
        cplx s(0.3, 1.7);
        CHECK(std::abs(digamma(s + 4.0) - digamma(s) - digamma_shift(s, 4)) < 1e-12);
        CHECK(std::abs(digamma(1.0) + 0.57721566490153286) < 1e-14);
        CHECK(std::abs(digamma(cplx(1, -100)).real() - std::log(100.0)) < 1.0);
        CHECK_THROWS_AS(digamma_shift(0.5, 0), std::invalid_argument);
        CHECK_THROWS_AS(digamma_shift(-1.0, 3), std::domain_error);
        CHECK_THROWS_AS(digamma(-3.0), std::domain_error);
    }

    TEST_CASE("Bessel K") {
        double x = 2;
        CHECK(std::abs(bessel_k_complex(0.5, x) - std::sqrt(pi / (2 * x)) * std::exp(-x)) < 1e-12);
        CHECK(std::abs(bessel_k_complex(0.0, 1.0) - 0.421024438240708) < 1e-13);
        CHECK(std::abs(bessel_k_complex(cplx(0, 5), 1.0).imag()) < 1e-12);
        cplx nu(0.7, 2.3);
        CHECK(std::abs(bessel_k_complex(nu, 1.3) - bessel_k_complex(-nu, 1.3)) < 1e-13);
        // K_0' = -K_1
        double h = 1e-5;
        double d = (bessel_k_complex(0.0, 1.5 + h) - bessel_k_complex(0.0, 1.5 - h)).real() / (2 * h);
        CHECK(std::abs(d + bessel_k_complex(1.0, 1.5).real()) < 1e-8);
        // far in the tail the value underflows cleanly
        CHECK(std::abs(bessel_k_complex(0.0, 800.0)) < 1e-300);
        CHECK_THROWS_AS(bessel_k_complex(0.0, 0.0), std::domain_error);
        CHECK_THROWS_AS(bessel_k_complex(0.0, -1.0), std::domain_error);
    }

    TEST_CASE("Bessel table") {
        cplx nu(0.5, 3.0);
        BesselKTable t(nu, 0.5, 60);
        REQUIRE(t.usable());
        for (double x : {0.6, 2.0, 7.5, 33.0})
            CHECK(std::abs(t(x) - bessel_k_complex(nu, x)) <= 1e-9 * std::abs(bessel_k_complex(nu, x)));
        CHECK(t.covers(10.0));
        CHECK_FALSE(t.covers(100.0));
    }

    TEST_CASE("K-K Mellin integral") {
        CHECK(std::abs(kk_mellin_integral(-1.0, 0.0, 0.0) - 0.5) < 1e-14);
        // mu = nu = 2i, z = 0 by double-exponential quadrature
        cplx mu(0, 2);
        auto f = [&](double x) { return bessel_k_complex(mu, x) * bessel_k_complex(mu, x); };
        cplx q = quad::de_half_line(f, 1e-12).value;
        CHECK(std::abs(q - kk_mellin_integral(0.0, mu, mu)) < 1e-8 * std::abs(q));
        CHECK_THROWS_AS(kk_mellin_integral(0.9, 0.2, 0.0), std::domain_error);
    }
}
