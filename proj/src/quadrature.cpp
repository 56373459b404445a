#include "kapitsa/quadrature.hpp"

#include <cmath>

namespace kapitsa {

// Newton iteration on Legendre polynomials, seeded with the Chebyshev estimate.
void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights) {
    nodes.assign(n, 0.0);
    weights.assign(n, 0.0);
    const int m = (n + 1) / 2;
    for (int i = 0; i < m; ++i) {
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int j = 2; j <= n; ++j) {
                const double p2 = ((2 * j - 1) * x * p1 - (j - 1) * p0) / j;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
}

void gauss_legendre(int n, double a, double b,
                    std::vector<double>& nodes, std::vector<double>& weights) {
    gauss_legendre(n, nodes, weights);
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    for (int i = 0; i < n; ++i) {
        nodes[i] = mid + half * nodes[i];
        weights[i] *= half;
    }
}

} // namespace kapitsa
