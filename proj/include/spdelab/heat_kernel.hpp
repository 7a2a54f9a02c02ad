#pragma once

#include <vector>

#include "spdelab/grid.hpp"

namespace spdelab {

/// Truncation controls for the Dirichlet heat kernel of (1/2) d^2/dx^2 on
/// [0,1].  Two representations are used: the sine eigenseries
///     p_t(x,y) = sum_{n>=1} 2 sin(n pi x) sin(n pi y) exp(-n^2 pi^2 t / 2)
/// for t >= method_switch_time, and the reflection (image) sum
///     p_t(x,y) = sum_{n in Z} g_t(x-y+2n) - g_t(x+y+2n),   g_t ~ N(0,t),
/// for smaller t, where each series converges fastest.
struct KernelParams {
    int series_terms = 64;
    int image_terms = 8;
    double method_switch_time = 0.05;

    void validate() const;
};

/// Dirichlet heat kernel value p_t(x,y).  Requires t > 0 and x,y in [0,1].
double kernel_value(double t, double x, double y, const KernelParams& params = {});

struct KernelIntegrals {
    double mass;  // int_0^1 p_t(x,y) dy, strictly below 1
    double l2;    // int_0^1 p_t(x,y)^2 dy
};

/// Both kernel integrals at (t,x) by adaptive quadrature (rel. tol 1e-10).
KernelIntegrals kernel_integrals(double t, double x, const KernelParams& params = {});

/// Kernel matrix p_t(x_i, x_j) on the grid's interior nodes, row-major nx*nx.
std::vector<double> kernel_matrix(const SpaceTimeGrid& grid, double t,
                                  const KernelParams& params = {});

/// Semigroup action (P_t u0)(x_i) = sum_j dx p_t(x_i,x_j) u0(x_j).
/// t = 0 is the identity.
std::vector<double> apply_semigroup(const std::vector<double>& u0, double t,
                                    const SpaceTimeGrid& grid, const KernelParams& params = {});

}  // namespace spdelab
