#pragma once

#include <stdexcept>

namespace spdelab {

/// Uniform discretization of [0,T] x [0,1].  Space nodes x_i = i/(nx+1),
/// i = 1..nx, lie strictly inside (0,1); the boundary values of every field
/// are pinned to zero and never stored.
struct SpaceTimeGrid {
    double T = 1.0;
    int nt = 1024;
    int nx = 64;

    double dt() const { return T / nt; }
    double dx() const { return 1.0 / (nx + 1); }
    double time(int n) const { return n * dt(); }
    double node(int i) const { return (i + 1) * dx(); }  // i in [0, nx)

    void validate() const {
        if (!(T > 0.0)) throw std::invalid_argument("SpaceTimeGrid: T must be positive");
        if (nt < 1) throw std::invalid_argument("SpaceTimeGrid: nt must be >= 1");
        if (nx < 1) throw std::invalid_argument("SpaceTimeGrid: nx must be >= 1");
    }

    bool operator==(const SpaceTimeGrid& o) const {
        return T == o.T && nt == o.nt && nx == o.nx;
    }
    bool operator!=(const SpaceTimeGrid& o) const { return !(*this == o); }
};

inline void require_same_grid(const SpaceTimeGrid& a, const SpaceTimeGrid& b, const char* what) {
    if (a != b) throw std::invalid_argument(std::string("grid mismatch in ") + what);
}

}  // namespace spdelab
