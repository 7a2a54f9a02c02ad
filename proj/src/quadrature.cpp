#include "spdelab/quadrature.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace spdelab {

GaussLegendre::GaussLegendre(int order) {
    if (order < 1) throw std::invalid_argument("GaussLegendre: order must be >= 1");
    const int n = order;
    nodes.resize(n);
    weights.resize(n);
    const int m = (n + 1) / 2;
    for (int i = 0; i < m; ++i) {
        // Chebyshev initial guess for the i-th positive root of P_n
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            // recurrence for P_n(x) and derivative
            double p0 = 1.0, p1 = 0.0;
            for (int j = 0; j < n; ++j) {
                const double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
            }
            pp = n * (x * p0 - p1) / (x * x - 1.0);
            const double dx = p0 / pp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = 2.0 / ((1.0 - x * x) * pp * pp);
        weights[n - 1 - i] = weights[i];
    }
}

namespace {

const GaussLegendre& panel() {
    static const GaussLegendre g(15);
    return g;
}

double adapt(const std::function<double(double)>& f, double a, double b, double whole,
             double rel_tol, double abs_tol, int depth) {
    const double mid = 0.5 * (a + b);
    const double left = panel().integrate(f, a, mid);
    const double right = panel().integrate(f, mid, b);
    const double two = left + right;
    const double err = std::abs(two - whole);
    if (err <= rel_tol * std::abs(two) || err <= abs_tol || depth >= 48) return two;
    return adapt(f, a, mid, left, rel_tol, abs_tol, depth + 1) +
           adapt(f, mid, b, right, rel_tol, abs_tol, depth + 1);
}

}  // namespace

double adaptive_integrate(const std::function<double(double)>& f, double a, double b,
                          double rel_tol, double abs_tol) {
    if (!(a < b)) {
        if (a == b) return 0.0;
        throw std::invalid_argument("adaptive_integrate: requires a <= b");
    }
    const double whole = panel().integrate(f, a, b);
    return adapt(f, a, b, whole, rel_tol, abs_tol, 0);
}

}  // namespace spdelab
