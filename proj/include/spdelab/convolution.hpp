#pragma once

#include "spdelab/field.hpp"
#include "spdelab/heat_kernel.hpp"
#include "spdelab/noise.hpp"

namespace spdelab {

/// Exponent and rule controls for the factorization operators.  The moment
/// order p fixes the admissible band 3/(2p) < alpha < 1/4 - 1/p, which is
/// nonempty exactly when p > 10.
struct FactorizationParams {
    double alpha = 0.0;
    double p = 12.0;
    int quadrature_subdiv = 1;

    /// Midpoint of the admissible band for the given order.
    static FactorizationParams for_order(double p);

    void validate() const;
};

/// Walsh convolution of an adapted field against the noise:
///   out(t_n, x_i) = sum_{m<n} sum_j p_{t_n - t_m}(x_i, x_j) sigma(t_m, x_j) dW(m, j).
/// Evaluated in the sine eigenbasis; the mode count is chosen so the
/// truncated kernel matches the exact one to ~1e-12 at every lag >= dt.
RandomField convolve_direct(const RandomField& sigma_field, const WhiteNoiseSample& W,
                            const SpaceTimeGrid& grid, const KernelParams& params = {});

/// First factorization stage: the convolution weighted by (s-r)^{-alpha};
/// the singular factor is integrated exactly over each cell (left-point
/// Ito evaluation of sigma dW, kernel frozen at the cell's start).
RandomField apply_j_alpha(const RandomField& sigma_field, const WhiteNoiseSample& W,
                          const FactorizationParams& fparams, const SpaceTimeGrid& grid,
                          const KernelParams& params = {});

/// Second stage: (sin(pi alpha)/pi) times the (t-s)^{alpha-1}-weighted
/// space-time integral of f.  This is a deterministic (Lebesgue) integral,
/// so a trapezoid-type product integration is used: f and the kernel are
/// interpolated linearly between step endpoints and the singular factor is
/// integrated exactly.  Left-point freezing is NOT used here: it would skip
/// the newest time step entirely and stall the factorization identity's
/// refinement convergence.
RandomField apply_j_alpha_minus_one(const RandomField& f_field,
                                    const FactorizationParams& fparams,
                                    const SpaceTimeGrid& grid, const KernelParams& params = {});

/// Sup over grid nodes of |convolve_direct - J^{alpha-1}(J_alpha sigma)|,
/// all evaluated on the same noise realization.
double factorization_residual(const RandomField& sigma_field, const WhiteNoiseSample& W,
                              const FactorizationParams& fparams, const SpaceTimeGrid& grid,
                              const KernelParams& params = {});

}  // namespace spdelab
