#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "kapitsa/bose_moments.hpp"
#include "kapitsa/kernel_integrals.hpp"

using namespace kapitsa;

namespace {
constexpr double G = 3.0;
TIndex ix(double m, int l) { return TIndex{m, l, G}; }
} // namespace

TEST_CASE("frozen T values, gamma = 3, k = 1") {
    // References from 30-digit quadrature.
    CHECK(t_integral(ix(12, 2), 1.0) == doctest::Approx(244.0219167862610).epsilon(1e-9));
    CHECK(t_integral(ix(13, 1), 1.0) == doctest::Approx(2540.758974062666).epsilon(1e-9));
    CHECK(t_integral(ix(7, 2), 1.0) == doctest::Approx(0.3835873146516055).epsilon(1e-9));
    CHECK(t_integral(ix(6, 4), 1.0) == doctest::Approx(0.1404180900067452).epsilon(1e-9));
    CHECK(t_integral(ix(9, 2), 1.0) == doctest::Approx(2.249470337028365).epsilon(1e-9));
    CHECK(t_integral(ix(10, 2), 1.0) == doctest::Approx(8.541100834530954).epsilon(1e-9));
    CHECK(t_integral(ix(13, 0), 1.0) == doctest::Approx(5081.696770690239).epsilon(1e-9));
}

TEST_CASE("frozen J values, gamma = 3") {
    CHECK(j_integral(ix(16, 1), 0.7, 2.3) == doctest::Approx(12.62521388146523).epsilon(1e-8));
    CHECK(j_integral(ix(12, 3), 0.7, 2.3) == doctest::Approx(0.1071027428752867).epsilon(1e-8));
}

TEST_CASE("k = 0 limit and the split form") {
    const TIndex idx = ix(12, 2);
    CHECK(t_zero(idx) == doctest::Approx(moment(12 - 2 * G) / 3.0).epsilon(1e-12));
    CHECK(t_integral(idx, 0.0) == doctest::Approx(t_zero(idx)).epsilon(1e-9));
    for (double k : {1e-3, 0.3, 10.0})
        CHECK(t_zero(idx) + t_integral_delta(idx, k) ==
              doctest::Approx(t_integral(idx, k)).epsilon(1e-9));
    CHECK(t_integral_delta(idx, 0.0) == 0.0);
    // Delta form stays accurate where the naive difference loses all digits.
    const double d = t_integral_delta(idx, 1e-5);
    CHECK(d < 0.0);
    CHECK(std::abs(d) < 1e-6 * t_zero(idx));
}

TEST_CASE("even in k, symmetric in (k, k1)") {
    const TIndex idx = ix(9, 2);
    CHECK(t_integral(idx, -2.0) == t_integral(idx, 2.0));
    std::mt19937 rng(20260826);
    std::uniform_real_distribution<double> dist(-3.0, 3.0); // log10 k
    const TIndex j1 = ix(16, 1), j3 = ix(12, 3);
    for (int i = 0; i < 100; ++i) {
        const double k = std::pow(10.0, dist(rng));
        const double k1 = std::pow(10.0, dist(rng));
        CHECK(j_integral(j1, k, k1) ==
              doctest::Approx(j_integral(j1, k1, k)).epsilon(1e-10));
        CHECK(j_integral(j3, k, k1) ==
              doctest::Approx(j_integral(j3, k1, k)).epsilon(1e-10));
    }
}

TEST_CASE("diagonal identities, gamma in {3,4,5}") {
    // g_{g+3}/3 - T_{3g+3,2}(k) = k^2 T_{g+3,4}(k)  and
    // g_{g+4}   - T_{3g+4,0}(k) = k^2 T_{g+4,2}(k).
    for (double g : {3.0, 4.0, 5.0}) {
        for (int i = 0; i < 50; ++i) {
            const double k = std::pow(10.0, -3.0 + 6.0 * i / 49.0);
            const double k2 = k * k;
            const double lhs1 = moment(g + 3) / 3.0 - t_integral({3 * g + 3, 2, g}, k);
            const double rhs1 = k2 * t_integral({g + 3, 4, g}, k);
            CHECK(lhs1 == doctest::Approx(rhs1).epsilon(1e-8));
            const double lhs2 = moment(g + 4) - t_integral({3 * g + 4, 0, g}, k);
            const double rhs2 = k2 * t_integral({g + 4, 2, g}, k);
            CHECK(lhs2 == doctest::Approx(rhs2).epsilon(1e-8));
        }
    }
    // The same relation with T_{3g+4,2} in place of T_{3g+4,0} does not hold.
    const double k = 1.0;
    const double bad = moment(G + 4) - t_integral({3 * G + 4, 2, G}, k);
    CHECK(std::abs(bad - k * k * t_integral({G + 4, 2, G}, k)) >
          1e-3 * moment(G + 4));
}

TEST_CASE("divergent configurations are rejected up front") {
    CHECK_THROWS_AS(t_integral(ix(0.5, 2), 1.0), DivergentIntegral);
    CHECK_THROWS_AS(t_zero(ix(6, 2)), DivergentIntegral);          // m - 2g = 0
    CHECK_THROWS_AS(t_integral_delta(ix(6, 2), 1.0), DivergentIntegral);
    CHECK_THROWS_AS(j_integral(ix(5, 1), 0.0, 1.0), DivergentIntegral);
    CHECK_THROWS_AS(j_integral(ix(12, 2), 1.0, 2.0), std::invalid_argument);
}
