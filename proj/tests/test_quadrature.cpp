#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "kapitsa/quadrature.hpp"

using namespace kapitsa;

TEST_CASE("adaptive rule reproduces elementary integrals") {
    CHECK(integrate([](double x) { return std::exp(-x); }, 0.0, 50.0) ==
          doctest::Approx(1.0).epsilon(1e-12));
    CHECK(integrate([](double x) { return std::sin(x); }, 0.0, M_PI) ==
          doctest::Approx(2.0).epsilon(1e-12));
    // Integrable endpoint singularity.
    CHECK(integrate([](double x) { return 1.0 / std::sqrt(x); }, 0.0, 1.0, 1e-10) ==
          doctest::Approx(2.0).epsilon(1e-8));
}

TEST_CASE("segmented integration matches single-interval result") {
    auto f = [](double x) { return x * std::exp(-x); };
    const double whole = integrate(f, 0.0, 40.0);
    const double split = integrate_segments(f, {0.0, 0.5, 3.0, 40.0});
    CHECK(split == doctest::Approx(whole).epsilon(1e-12));
}

TEST_CASE("gauss-legendre nodes integrate polynomials exactly") {
    std::vector<double> x, w;
    gauss_legendre(8, -1.0, 1.0, x, w);
    double acc = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) acc += w[i] * std::pow(x[i], 14);
    CHECK(acc == doctest::Approx(2.0 / 15.0).epsilon(1e-13)); // degree 15 rule
    gauss_legendre(8, 0.0, 3.0, x, w);
    acc = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) acc += w[i] * x[i] * x[i];
    CHECK(acc == doctest::Approx(9.0).epsilon(1e-13));
}
