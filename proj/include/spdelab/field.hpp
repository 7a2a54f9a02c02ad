#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "spdelab/grid.hpp"

namespace spdelab {

/// Real values on the grid nodes: (nt+1) x nx, row n holding the field at
/// time t_n (row 0 is the initial condition).  Boundary values are an
/// implicit zero at x = 0 and x = 1.
struct RandomField {
    SpaceTimeGrid grid;
    std::vector<double> values;  // (nt+1) * nx row-major

    RandomField() = default;
    explicit RandomField(const SpaceTimeGrid& g)
        : grid(g), values(static_cast<std::size_t>(g.nt + 1) * g.nx, 0.0) {}

    double& at(int n, int i) { return values[static_cast<std::size_t>(n) * grid.nx + i]; }
    double at(int n, int i) const { return values[static_cast<std::size_t>(n) * grid.nx + i]; }
    double* row(int n) { return &values[static_cast<std::size_t>(n) * grid.nx]; }
    const double* row(int n) const { return &values[static_cast<std::size_t>(n) * grid.nx]; }

    double sup_abs() const {
        double m = 0.0;
        for (double v : values) m = std::max(m, std::abs(v));
        return m;
    }

    bool all_finite() const {
        for (double v : values)
            if (!std::isfinite(v)) return false;
        return true;
    }
};

/// CSV with columns t,x,value, one row per node, time-major.
void save_field_csv(const RandomField& field, const std::string& path);

}  // namespace spdelab
