#pragma once

#include <functional>
#include <vector>

namespace spdelab {

/// Gauss-Legendre rule on [-1,1]; nodes/weights found by Newton iteration.
struct GaussLegendre {
    explicit GaussLegendre(int order);
    std::vector<double> nodes;
    std::vector<double> weights;

    template <class F>
    double integrate(F&& f, double a, double b) const {
        const double c = 0.5 * (a + b), h = 0.5 * (b - a);
        double s = 0.0;
        for (std::size_t i = 0; i < nodes.size(); ++i) s += weights[i] * f(c + h * nodes[i]);
        return h * s;
    }
};

/// Adaptive bisection built on a fixed Gauss-Legendre panel.  Refines until
/// the two-panel estimate agrees with the one-panel estimate to rel_tol
/// (or abs_tol for integrals near zero).
double adaptive_integrate(const std::function<double(double)>& f, double a, double b,
                          double rel_tol = 1e-10, double abs_tol = 1e-14);

}  // namespace spdelab
