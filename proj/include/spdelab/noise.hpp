#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "spdelab/field.hpp"
#include "spdelab/grid.hpp"

namespace spdelab {

/// Discretized space-time white noise: cell increments of the Brownian
/// sheet, entry (n,i) ~ N(0, dt*dx) independent.  A sample is a pure
/// function of (seed, path_index, grid).
struct WhiteNoiseSample {
    SpaceTimeGrid grid;
    std::uint64_t seed = 0;
    std::uint64_t path_index = 0;
    std::vector<double> increments;  // nt * nx row-major

    double& at(int n, int i) { return increments[static_cast<std::size_t>(n) * grid.nx + i]; }
    double at(int n, int i) const {
        return increments[static_cast<std::size_t>(n) * grid.nx + i];
    }
    const double* row(int n) const { return &increments[static_cast<std::size_t>(n) * grid.nx]; }
};

WhiteNoiseSample sample_white_noise(const SpaceTimeGrid& grid, std::uint64_t seed,
                                    std::uint64_t path_index);

/// Drift field h(s,y) on the noise cells (nt x nx; row n is time t_n).
/// Adapted fields may only depend on noise increments at steps < n.
struct DriftField {
    enum class Kind { deterministic, adapted };
    SpaceTimeGrid grid;
    Kind kind = Kind::deterministic;
    std::vector<double> values;  // nt * nx row-major

    double& at(int n, int i) { return values[static_cast<std::size_t>(n) * grid.nx + i]; }
    double at(int n, int i) const { return values[static_cast<std::size_t>(n) * grid.nx + i]; }
    const double* row(int n) const { return &values[static_cast<std::size_t>(n) * grid.nx]; }
};

DriftField make_drift(const SpaceTimeGrid& grid,
                      const std::function<double(double, double)>& h);

/// Shifted sheet increments dW~(n,i) = dW(n,i) - h(t_n,x_i) dt dx.
WhiteNoiseSample girsanov_shift(const WhiteNoiseSample& W, const DriftField& h);

/// log M_T = sum h dW - (1/2) sum h^2 dt dx, accumulated time-major then
/// space so results are bit-stable.
double girsanov_log_density(const WhiteNoiseSample& W, const DriftField& h);

/// Relative entropy (1/2) E[ sum h^2 dt dx ].  The single-field overload is
/// exact for deterministic h; the span overload averages Q-distributed
/// realizations of an adapted drift.
double relative_entropy(const DriftField& h);
double relative_entropy(std::span<const DriftField> realizations);

// Flat binary persistence (little-endian header + row-major doubles); one
// layout shared by noise samples and fields.
void save_noise(const WhiteNoiseSample& W, const std::string& path);
WhiteNoiseSample load_noise(const std::string& path);
void save_field_binary(const RandomField& field, const std::string& path);
RandomField load_field_binary(const std::string& path);

/// Aggregates a fine sample onto a coarser grid whose cells are unions of
/// fine cells; requires nt_f = rt*nt_c and nx_f+1 = rx*(nx_c+1).  Coarse
/// node i keeps fine nodes rx*i (nodes nest), so refinement studies can
/// compare fields at common nodes.
WhiteNoiseSample coarsen_noise(const WhiteNoiseSample& fine, int rt, int rx);

}  // namespace spdelab
