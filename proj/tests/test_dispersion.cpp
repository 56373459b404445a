#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>

#include "kapitsa/bose_moments.hpp"
#include "kapitsa/dispersion.hpp"
#include "kapitsa/params.hpp"

using namespace kapitsa;

namespace {
using cd = std::complex<double>;

cd det(const Mat2c& m) { return m[0] * m[3] - m[1] * m[2]; }

Mat2c mul(const Mat2c& a, const Mat2c& b) {
    return {a[0] * b[0] + a[1] * b[2], a[0] * b[1] + a[1] * b[3],
            a[2] * b[0] + a[3] * b[2], a[2] * b[1] + a[3] * b[3]};
}
} // namespace

TEST_CASE("adjugate inverts Lambda up to lambda = k^2 omega") {
    ModelParams p;
    for (double g : {3.0, 4.0, 5.0}) {
        p.gamma = g;
        for (int i = 0; i < 25; ++i) {
            const double k = std::pow(10.0, -3.0 + 6.0 * i / 24.0);
            const DispersionMatrix L = lambda_matrix(k, p);
            const Mat2c D = d_matrix(k, p);
            const Mat2c prod = mul(L.entries, D);
            const double scale = std::abs(L.lam);
            CHECK(std::abs(prod[0] - L.lam) <= 1e-10 * scale);
            CHECK(std::abs(prod[3] - L.lam) <= 1e-10 * scale);
            CHECK(std::abs(prod[1]) <= 1e-10 * scale);
            CHECK(std::abs(prod[2]) <= 1e-10 * scale);
            // det Lambda = k^2 omega(k), and lambda is that determinant.
            CHECK(std::abs(det(L.entries) - k * k * L.omega) <= 1e-10 * scale);
            CHECK(std::abs(L.lam - k * k * L.omega) <= 1e-12 * scale);
            CHECK(L.omega > 0.0);
        }
    }
}

TEST_CASE("matrix structure: real diagonal, imaginary off-diagonal") {
    ModelParams p;
    const DispersionMatrix L = lambda_matrix(0.7, p);
    CHECK(std::abs(L.entries[0].imag()) < 1e-14 * std::abs(L.entries[0]));
    CHECK(std::abs(L.entries[3].imag()) < 1e-14 * std::abs(L.entries[3]));
    CHECK(std::abs(L.entries[1].real()) < 1e-14 * std::abs(L.entries[1]));
    CHECK(std::abs(L.entries[2].real()) < 1e-14 * std::abs(L.entries[2]));
}

TEST_CASE("frozen omega value and small-k limit, gamma = 3") {
    ModelParams p;
    CHECK(omega(1.0, p) == doctest::Approx(1.552707829603758e-05).epsilon(1e-9));
    // omega(0) = g_3 g_4 / (3 g_{g+3} g_{g+4}): det Lambda vanishes only as k^2.
    const double w2 = moment(3) * moment(4) / (3.0 * moment(p.gamma + 3) * moment(p.gamma + 4));
    CHECK(omega(1e-4, p) == doctest::Approx(w2).epsilon(1e-4));
    CHECK(w2 == doctest::Approx(1.677e-5).epsilon(1e-3));
}
