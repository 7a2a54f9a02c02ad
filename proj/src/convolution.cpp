#include "spdelab/convolution.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace spdelab {

namespace {

constexpr double kPi = 3.14159265358979323846264338327950288;
constexpr double kModeTol = 1e-12;
constexpr int kMaxModes = 4096;

/// Sine eigenbasis of the Dirichlet half-Laplacian on the grid nodes.
/// sin_kx is K x nx row-major; decay[k] = exp(-lambda_k dt).
struct SpectralBasis {
    int K = 0;
    int nx = 0;
    double dt = 0.0;
    std::vector<double> sin_kx;
    std::vector<double> lambda;

    SpectralBasis(const SpaceTimeGrid& grid, int min_modes) {
        dt = grid.dt();
        nx = grid.nx;
        // truncation tail 2 exp(-K^2 pi^2 dt / 2) below kModeTol at lag dt
        const int needed =
            static_cast<int>(std::ceil(std::sqrt(2.0 * std::log(2.0 / kModeTol) / (kPi * kPi * dt))));
        K = std::min(kMaxModes, std::max(min_modes, needed));
        sin_kx.resize(static_cast<std::size_t>(K) * nx);
        lambda.resize(K);
        for (int k = 0; k < K; ++k) {
            const double kpi = (k + 1) * kPi;
            lambda[k] = 0.5 * kpi * kpi;
            for (int i = 0; i < nx; ++i)
                sin_kx[static_cast<std::size_t>(k) * nx + i] = std::sin(kpi * grid.node(i));
        }
    }

    const double* mode_row(int k) const { return &sin_kx[static_cast<std::size_t>(k) * nx]; }
};

/// Per-step source coefficients c_k(m) = sum_j sin(k pi x_j) w(m,j),
/// rows m = 0..nt-1.
std::vector<double> forward_coeffs(const SpectralBasis& basis, const SpaceTimeGrid& grid,
                                   const std::function<double(int, int)>& source) {
    const int nt = grid.nt, nx = grid.nx, K = basis.K;
    std::vector<double> c(static_cast<std::size_t>(nt) * K, 0.0);
    std::vector<double> srow(nx);
    for (int m = 0; m < nt; ++m) {
        for (int j = 0; j < nx; ++j) srow[j] = source(m, j);
        double* cm = &c[static_cast<std::size_t>(m) * K];
        for (int k = 0; k < K; ++k) {
            const double* s = basis.mode_row(k);
            double acc = 0.0;
            for (int j = 0; j < nx; ++j) acc += s[j] * srow[j];
            cm[k] = acc;
        }
    }
    return c;
}

/// out(n, x_i) += scale * sum_k 2 sin(k pi x_i) g(n, k)
void back_transform(const SpectralBasis& basis, const std::vector<double>& g, int rows,
                    double scale, RandomField& out) {
    const int nx = basis.nx, K = basis.K;
    for (int n = 0; n < rows; ++n) {
        const double* gn = &g[static_cast<std::size_t>(n) * K];
        double* row = out.row(n);
        for (int k = 0; k < K; ++k) {
            const double w = 2.0 * scale * gn[k];
            if (w == 0.0) continue;
            const double* s = basis.mode_row(k);
            for (int i = 0; i < nx; ++i) row[i] += w * s[i];
        }
    }
}

void check_inputs(const RandomField& field, const WhiteNoiseSample& W,
                  const SpaceTimeGrid& grid, const char* what) {
    require_same_grid(field.grid, grid, what);
    require_same_grid(W.grid, grid, what);
}

/// Composite exact integral of tau^{e-1} over [a, b] split into `subdiv`
/// panels.  The closed form is exact on any subdivision; the knob exists to
/// cross-check the weights.
double power_moment(double a, double b, double e, int subdiv) {
    double total = 0.0;
    for (int s = 0; s < subdiv; ++s) {
        const double lo = a + (b - a) * s / subdiv;
        const double hi = a + (b - a) * (s + 1) / subdiv;
        total += (std::pow(hi, e) - std::pow(lo, e)) / e;
    }
    return total;
}

}  // namespace

FactorizationParams FactorizationParams::for_order(double p) {
    FactorizationParams fp;
    fp.p = p;
    fp.alpha = 0.5 * (3.0 / (2.0 * p) + 0.25 - 1.0 / p);
    fp.validate();
    return fp;
}

void FactorizationParams::validate() const {
    const double lo = 3.0 / (2.0 * p), hi = 0.25 - 1.0 / p;
    if (!(lo < hi))
        throw std::domain_error("FactorizationParams: admissible interval empty (needs p > 10)");
    if (!(alpha > lo && alpha < hi))
        throw std::domain_error("FactorizationParams: alpha outside (3/(2p), 1/4 - 1/p)");
    if (quadrature_subdiv < 1 || quadrature_subdiv > 64)
        throw std::invalid_argument("FactorizationParams: quadrature_subdiv must be in [1,64]");
}

RandomField convolve_direct(const RandomField& sigma_field, const WhiteNoiseSample& W,
                            const SpaceTimeGrid& grid, const KernelParams& params) {
    check_inputs(sigma_field, W, grid, "convolve_direct");
    params.validate();
    const SpectralBasis basis(grid, params.series_terms);
    const int nt = grid.nt, K = basis.K;

    const auto c = forward_coeffs(basis, grid, [&](int m, int j) {
        return sigma_field.at(m, j) * W.at(m, j);
    });

    // G_k(n+1) = e_k (G_k(n) + c_k(n)) realizes the exact lag kernels
    std::vector<double> decay(K);
    for (int k = 0; k < K; ++k) decay[k] = std::exp(-basis.lambda[k] * basis.dt);
    std::vector<double> g(static_cast<std::size_t>(nt + 1) * K, 0.0);
    for (int n = 0; n < nt; ++n) {
        const double* gn = &g[static_cast<std::size_t>(n) * K];
        const double* cn = &c[static_cast<std::size_t>(n) * K];
        double* gn1 = &g[static_cast<std::size_t>(n + 1) * K];
        for (int k = 0; k < K; ++k) gn1[k] = decay[k] * (gn[k] + cn[k]);
    }

    RandomField out(grid);
    back_transform(basis, g, nt + 1, 1.0, out);
    return out;
}

RandomField apply_j_alpha(const RandomField& sigma_field, const WhiteNoiseSample& W,
                          const FactorizationParams& fparams, const SpaceTimeGrid& grid,
                          const KernelParams& params) {
    check_inputs(sigma_field, W, grid, "apply_j_alpha");
    params.validate();
    fparams.validate();
    const SpectralBasis basis(grid, params.series_terms);
    const int nt = grid.nt, K = basis.K;
    const double dt = basis.dt;
    const double alpha = fparams.alpha;

    const auto c = forward_coeffs(basis, grid, [&](int m, int j) {
        return sigma_field.at(m, j) * W.at(m, j);
    });

    // cell average of (s-r)^{-alpha}: w_a(e) = int over the cell / dt
    std::vector<double> w_a(nt + 1, 0.0);
    for (int e = 1; e <= nt; ++e)
        w_a[e] = power_moment((e - 1) * dt, e * dt, 1.0 - alpha, fparams.quadrature_subdiv) / dt;

    std::vector<double> g(static_cast<std::size_t>(nt + 1) * K, 0.0);
    std::vector<double> wk(K);
    for (int e = 1; e <= nt; ++e) {
        for (int k = 0; k < K; ++k) wk[k] = w_a[e] * std::exp(-basis.lambda[k] * (e * dt));
        for (int n = e; n <= nt; ++n) {
            const double* cm = &c[static_cast<std::size_t>(n - e) * K];
            double* gn = &g[static_cast<std::size_t>(n) * K];
            for (int k = 0; k < K; ++k) gn[k] += wk[k] * cm[k];
        }
    }

    RandomField out(grid);
    back_transform(basis, g, nt + 1, 1.0, out);
    return out;
}

RandomField apply_j_alpha_minus_one(const RandomField& f_field,
                                    const FactorizationParams& fparams,
                                    const SpaceTimeGrid& grid, const KernelParams& params) {
    require_same_grid(f_field.grid, grid, "apply_j_alpha_minus_one");
    params.validate();
    fparams.validate();
    const SpectralBasis basis(grid, params.series_terms);
    const int nt = grid.nt, nx = grid.nx, K = basis.K;
    const double dt = basis.dt;
    const double dx = grid.dx();
    const double alpha = fparams.alpha;
    const double scale = std::sin(kPi * alpha) / kPi;

    // Product-trapezoid weights: on the cell at lag d (s in
    // [t_{n-d}, t_{n-d+1}]) the integrand is interpolated linearly between
    // the grid lags d and d-1 while the singular factor (t-s)^{alpha-1} is
    // integrated exactly:
    //   I0(d) = int tau^{alpha-1}, I1(d) = int tau^alpha over the cell,
    //   A(d) -> grid lag d, B(d) -> grid lag d-1.
    // Output at t_n integrates the cells d = 1..n only.
    const int sub = fparams.quadrature_subdiv;
    std::vector<double> A(nt + 1, 0.0), B(nt + 1, 0.0);
    for (int d = 1; d <= nt; ++d) {
        const double lo = (d - 1) * dt, hi = d * dt;
        const double I0 = power_moment(lo, hi, alpha, sub);
        const double I1 = power_moment(lo, hi, alpha + 1.0, sub);
        A[d] = (I1 - lo * I0) / dt;
        B[d] = I0 - A[d];
    }

    // mode coefficients of f scaled by the dx space quadrature
    const auto fhat = [&] {
        std::vector<double> fh(static_cast<std::size_t>(nt + 1) * K, 0.0);
        for (int m = 0; m <= nt; ++m) {
            const double* frow = f_field.row(m);
            double* fm = &fh[static_cast<std::size_t>(m) * K];
            for (int k = 0; k < K; ++k) {
                const double* s = basis.mode_row(k);
                double acc = 0.0;
                for (int j = 0; j < nx; ++j) acc += s[j] * frow[j];
                fm[k] = dx * acc;
            }
        }
        return fh;
    }();

    RandomField out(grid);
    // lag 0 (cell d=1, right endpoint) pairs B(1) with the identity in node
    // space; there is no cell for n = 0, whose row stays zero
    for (int n = 1; n <= nt; ++n) {
        const double* frow = f_field.row(n);
        double* row = out.row(n);
        for (int i = 0; i < nx; ++i) row[i] = scale * B[1] * frow[i];
    }
    std::vector<double> g(static_cast<std::size_t>(nt + 1) * K, 0.0);
    std::vector<double> wk(K);
    // B(l+1) reaches lag l only when the cell l+1 exists (n >= l+1)
    for (int l = 1; l <= nt - 1; ++l) {
        for (int k = 0; k < K; ++k) wk[k] = B[l + 1] * std::exp(-basis.lambda[k] * (l * dt));
        for (int n = l + 1; n <= nt; ++n) {
            const double* fm = &fhat[static_cast<std::size_t>(n - l) * K];
            double* gn = &g[static_cast<std::size_t>(n) * K];
            for (int k = 0; k < K; ++k) gn[k] += wk[k] * fm[k];
        }
    }
    for (int l = 1; l <= nt; ++l) {
        for (int k = 0; k < K; ++k) wk[k] = A[l] * std::exp(-basis.lambda[k] * (l * dt));
        for (int n = l; n <= nt; ++n) {
            const double* fm = &fhat[static_cast<std::size_t>(n - l) * K];
            double* gn = &g[static_cast<std::size_t>(n) * K];
            for (int k = 0; k < K; ++k) gn[k] += wk[k] * fm[k];
        }
    }
    back_transform(basis, g, nt + 1, scale, out);
    return out;
}

double factorization_residual(const RandomField& sigma_field, const WhiteNoiseSample& W,
                              const FactorizationParams& fparams, const SpaceTimeGrid& grid,
                              const KernelParams& params) {
    const RandomField direct = convolve_direct(sigma_field, W, grid, params);
    const RandomField inner = apply_j_alpha(sigma_field, W, fparams, grid, params);
    const RandomField composed = apply_j_alpha_minus_one(inner, fparams, grid, params);
    double sup = 0.0;
    for (std::size_t c = 0; c < direct.values.size(); ++c)
        sup = std::max(sup, std::abs(direct.values[c] - composed.values[c]));
    return sup;
}

}  // namespace spdelab
