#include "spdelab/heat_kernel.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "spdelab/quadrature.hpp"

namespace spdelab {

namespace {

constexpr double kPi = 3.14159265358979323846264338327950288;
constexpr double kSeriesTol = 1e-12;

double gaussian_density(double z, double t) {
    return std::exp(-z * z / (2.0 * t)) / std::sqrt(2.0 * kPi * t);
}

double eigen_form(double t, double x, double y, int terms) {
    double s = 0.0;
    for (int n = terms; n >= 1; --n) {
        s += 2.0 * std::sin(n * kPi * x) * std::sin(n * kPi * y) *
             std::exp(-0.5 * n * n * kPi * kPi * t);
    }
    return s;
}

double image_form(double t, double x, double y, int terms) {
    // symmetric summation over n in [-terms, terms] so the boundary values
    // cancel exactly
    double s = gaussian_density(x - y, t) - gaussian_density(x + y, t);
    for (int n = 1; n <= terms; ++n) {
        s += gaussian_density(x - y + 2.0 * n, t) - gaussian_density(x + y + 2.0 * n, t);
        s += gaussian_density(x - y - 2.0 * n, t) - gaussian_density(x + y - 2.0 * n, t);
    }
    return s;
}

}  // namespace

void KernelParams::validate() const {
    if (series_terms < 1) throw std::invalid_argument("KernelParams: series_terms must be >= 1");
    if (image_terms < 1) throw std::invalid_argument("KernelParams: image_terms must be >= 1");
    if (!(method_switch_time > 0.0))
        throw std::invalid_argument("KernelParams: method_switch_time must be positive");
    // eigenseries truncation tail at the crossover must be resolvable
    const double tail =
        2.0 * std::exp(-0.5 * static_cast<double>(series_terms) * series_terms * kPi * kPi *
                       method_switch_time);
    if (!(tail < kSeriesTol))
        throw std::invalid_argument(
            "KernelParams: series truncation tail exceeds tolerance at method_switch_time");
}

double kernel_value(double t, double x, double y, const KernelParams& params) {
    params.validate();
    if (!(t > 0.0)) throw std::invalid_argument("kernel_value: t must be positive");
    if (!(x >= 0.0 && x <= 1.0 && y >= 0.0 && y <= 1.0))
        throw std::invalid_argument("kernel_value: coordinates must lie in [0,1]");
    if (x == 0.0 || x == 1.0 || y == 0.0 || y == 1.0) return 0.0;  // absorbing boundary
    if (t >= params.method_switch_time) return eigen_form(t, x, y, params.series_terms);
    return image_form(t, x, y, params.image_terms);
}

KernelIntegrals kernel_integrals(double t, double x, const KernelParams& params) {
    params.validate();
    if (!(t > 0.0)) throw std::invalid_argument("kernel_integrals: t must be positive");
    if (!(x > 0.0 && x < 1.0))
        throw std::invalid_argument("kernel_integrals: x must lie in (0,1)");
    KernelIntegrals out{};
    out.mass = adaptive_integrate([&](double y) { return kernel_value(t, x, y, params); }, 0.0,
                                  1.0, 1e-10, 1e-14);
    out.l2 = adaptive_integrate(
        [&](double y) {
            const double v = kernel_value(t, x, y, params);
            return v * v;
        },
        0.0, 1.0, 1e-10, 1e-14);
    return out;
}

std::vector<double> kernel_matrix(const SpaceTimeGrid& grid, double t, const KernelParams& params) {
    grid.validate();
    params.validate();
    if (!(t > 0.0)) throw std::invalid_argument("kernel_matrix: t must be positive");
    const int nx = grid.nx;
    std::vector<double> P(static_cast<std::size_t>(nx) * nx);
    for (int i = 0; i < nx; ++i) {
        const double xi = grid.node(i);
        P[static_cast<std::size_t>(i) * nx + i] = kernel_value(t, xi, xi, params);
        for (int j = i + 1; j < nx; ++j) {
            const double v = kernel_value(t, xi, grid.node(j), params);
            P[static_cast<std::size_t>(i) * nx + j] = v;
            P[static_cast<std::size_t>(j) * nx + i] = v;  // p_t is symmetric
        }
    }
    return P;
}

std::vector<double> apply_semigroup(const std::vector<double>& u0, double t,
                                    const SpaceTimeGrid& grid, const KernelParams& params) {
    grid.validate();
    if (static_cast<int>(u0.size()) != grid.nx)
        throw std::invalid_argument("apply_semigroup: u0 size does not match grid");
    if (t == 0.0) return u0;
    if (t < 0.0) throw std::invalid_argument("apply_semigroup: t must be >= 0");
    const auto P = kernel_matrix(grid, t, params);
    const int nx = grid.nx;
    const double dx = grid.dx();
    std::vector<double> out(nx, 0.0);
    for (int i = 0; i < nx; ++i) {
        double s = 0.0;
        const double* row = &P[static_cast<std::size_t>(i) * nx];
        for (int j = 0; j < nx; ++j) s += row[j] * u0[j];
        out[i] = dx * s;
    }
    return out;
}

}  // namespace spdelab
