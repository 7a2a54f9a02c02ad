#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "spdelab/quadrature.hpp"

using namespace spdelab;

TEST_CASE("Gauss-Legendre is exact on polynomials up to degree 2n-1") {
    const GaussLegendre g(5);
    // int_{-1}^{1} x^8 dx = 2/9
    const double v = g.integrate([](double x) { return std::pow(x, 8.0); }, -1.0, 1.0);
    CHECK(v == doctest::Approx(2.0 / 9.0).epsilon(1e-13));
    // degree 9 (odd) integrates to zero
    const double o = g.integrate([](double x) { return std::pow(x, 9.0); }, -1.0, 1.0);
    CHECK(std::abs(o) < 1e-15);
}

TEST_CASE("adaptive integration hits the requested tolerance") {
    const double s = adaptive_integrate([](double x) { return std::sin(x); }, 0.0, 3.14159, 1e-12);
    CHECK(s == doctest::Approx(1.0 - std::cos(3.14159)).epsilon(1e-11));

    const double e = adaptive_integrate([](double x) { return std::exp(-x * x); }, -6.0, 6.0, 1e-12);
    CHECK(e == doctest::Approx(std::sqrt(3.14159265358979323846)).epsilon(1e-10));

    CHECK(adaptive_integrate([](double) { return 1.0; }, 2.0, 2.0) == 0.0);
    CHECK_THROWS_AS(adaptive_integrate([](double) { return 1.0; }, 3.0, 2.0),
                    std::invalid_argument);
}

TEST_CASE("sharply peaked integrand forces refinement") {
    const double w = 1e-3;
    const double v = adaptive_integrate(
        [&](double x) { return std::exp(-x * x / (2 * w * w)); }, -1.0, 1.0, 1e-10);
    CHECK(v == doctest::Approx(std::sqrt(2.0 * 3.14159265358979323846) * w).epsilon(1e-9));
}
