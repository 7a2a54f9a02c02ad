#include "spdelab/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "spdelab/constants.hpp"
#include "spdelab/quadrature.hpp"

namespace spdelab {

namespace {

constexpr double kPi = 3.14159265358979323846264338327950288;

double mean_of(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x;
    return s / static_cast<double>(v.size());
}

double std_error_of(const std::vector<double>& v, double mean) {
    if (v.size() < 2) return 0.0;
    double s = 0.0;
    for (double x : v) s += (x - mean) * (x - mean);
    return std::sqrt(s / (static_cast<double>(v.size() - 1) * static_cast<double>(v.size())));
}

double binomial_se(double freq, long n) {
    return n > 0 ? std::sqrt(std::max(0.0, freq * (1.0 - freq)) / static_cast<double>(n)) : 0.0;
}

VerificationReport base_report(const Scenario& scn, const std::string& name) {
    VerificationReport r;
    r.check_name = name;
    r.seed = scn.seed;
    r.grid = scn.grid;
    r.scenario_id = scn.id;
    r.n_paths = scn.n_paths;
    return r;
}

/// Shared per-scenario context: kernel matrix for the solver plus the
/// closed-form ingredients, all read-only across worker threads.
struct ScenarioContext {
    const Scenario& scn;
    Coefficients coeffs;
    std::vector<double> u0;
    std::vector<double> kernel_dt;
    bool needs_solve;

    explicit ScenarioContext(const Scenario& s)
        : scn(s),
          coeffs(s.coefficients()),
          u0(s.initial_row()),
          kernel_dt(kernel_matrix(s.grid, s.grid.dt(), s.kernel)),
          needs_solve(coeffs.sigma_state_dependent) {}

    WhiteNoiseSample noise(long path) const {
        return sample_white_noise(scn.grid, scn.seed, static_cast<std::uint64_t>(path));
    }

    /// sigma(s,y) rows for one path: sigma(u) from the solved field, or the
    /// state-free value replicated.
    RandomField sigma_field(const WhiteNoiseSample& W) const {
        RandomField sf(scn.grid);
        if (needs_solve) {
            const RandomField u = solve_mild(u0, coeffs, W, scn.grid, kernel_dt);
            for (std::size_t c = 0; c < sf.values.size(); ++c)
                sf.values[c] = coeffs.sigma(u.values[c]);
        } else {
            const double v = coeffs.sigma(0.0);
            std::fill(sf.values.begin(), sf.values.end(), v);
        }
        return sf;
    }
};

/// int_0^T sup_y |sigma|^p ds with the left-endpoint rule the convolution
/// itself uses.
double sigma_time_integral(const RandomField& sf, double p) {
    const int nt = sf.grid.nt, nx = sf.grid.nx;
    const double dt = sf.grid.dt();
    double acc = 0.0;
    for (int m = 0; m < nt; ++m) {
        const double* row = sf.row(m);
        double mx = 0.0;
        for (int i = 0; i < nx; ++i) mx = std::max(mx, std::abs(row[i]));
        acc += dt * std::pow(mx, p);
    }
    return acc;
}

}  // namespace

Coefficients Scenario::coefficients() const { return make_coefficients(b, sigma); }

std::vector<double> Scenario::initial_row() const {
    std::vector<double> row(grid.nx);
    for (int i = 0; i < grid.nx; ++i) row[i] = initial_condition_value(u0, grid.node(i));
    return row;
}

double Scenario::h_value(double t, double x) const {
    (void)t;
    const auto colon = h.find(':');
    const std::string name = h.substr(0, colon);
    const double c = colon == std::string::npos ? 1.0 : std::stod(h.substr(colon + 1));
    if (name == "zero") return 0.0;
    if (name == "constant") return c;
    if (name == "sine-x") return c * std::sin(kPi * x);
    throw std::invalid_argument("unknown drift form for h: " + h);
}

DriftField Scenario::drift() const {
    return make_drift(grid, [this](double t, double x) { return h_value(t, x); });
}

MomentEstimate sup_norm_moment(const std::vector<RandomField>& ensemble, double p) {
    if (ensemble.empty()) throw std::invalid_argument("sup_norm_moment: empty ensemble");
    if (!(p > 0.0)) throw std::invalid_argument("sup_norm_moment: p must be positive");
    for (const auto& f : ensemble) require_same_grid(f.grid, ensemble.front().grid, "sup_norm_moment");
    std::vector<double> vals;
    vals.reserve(ensemble.size());
    for (const auto& f : ensemble) vals.push_back(std::pow(f.sup_abs(), p));
    MomentEstimate out;
    out.estimate = mean_of(vals);
    out.std_error = std_error_of(vals, out.estimate);
    return out;
}

VerificationReport verify_moment_bound(const Scenario& scn, double p) {
    const ScenarioContext ctx(scn);
    const int nt = scn.grid.nt, nx = scn.grid.nx;
    const double dt = scn.grid.dt();

    struct Block {
        std::vector<double> node_pow;  // sum over paths of |sigma(t_m, x_i)|^p
        std::vector<double> lhs;       // per-path sup^p, in path order
    };
    std::vector<double> lhs_all;
    std::vector<double> node_pow(static_cast<std::size_t>(nt) * nx, 0.0);
    run_blocked<Block>(
        scn.n_paths, scn.parallel,
        [&](long path, Block& blk) {
            if (blk.node_pow.empty()) blk.node_pow.assign(node_pow.size(), 0.0);
            const WhiteNoiseSample W = ctx.noise(path);
            const RandomField sf = ctx.sigma_field(W);
            const RandomField conv = convolve_direct(sf, W, scn.grid, scn.kernel);
            blk.lhs.push_back(std::pow(conv.sup_abs(), p));
            for (int m = 0; m < nt; ++m) {
                const double* row = sf.row(m);
                double* acc = &blk.node_pow[static_cast<std::size_t>(m) * nx];
                for (int i = 0; i < nx; ++i) acc[i] += std::pow(std::abs(row[i]), p);
            }
        },
        [&](Block& blk) {
            if (!blk.node_pow.empty())
                for (std::size_t c = 0; c < node_pow.size(); ++c) node_pow[c] += blk.node_pow[c];
            lhs_all.insert(lhs_all.end(), blk.lhs.begin(), blk.lhs.end());
        });

    double rhs_integral = 0.0;
    for (int m = 0; m < nt; ++m) {
        double mx = 0.0;
        const double* acc = &node_pow[static_cast<std::size_t>(m) * nx];
        for (int i = 0; i < nx; ++i) mx = std::max(mx, acc[i] / static_cast<double>(scn.n_paths));
        rhs_integral += dt * mx;
    }
    const auto mbc = constants::c_moment(scn.grid.T, p);
    const double rhs = mbc.c_moment() * rhs_integral;

    VerificationReport r = base_report(scn, "moment_bound");
    r.empirical_estimate = mean_of(lhs_all);
    r.std_error = std_error_of(lhs_all, r.empirical_estimate);
    r.theoretical_bound = rhs;
    r.passed = one_sided_pass(r.empirical_estimate, r.std_error, r.theoretical_bound);
    char buf[160];
    std::snprintf(buf, sizeof(buf), "p=%g C_Tp=%.6e alpha*=%.6f int=%.6e", p, mbc.c_moment(),
                  mbc.alpha_star, rhs_integral);
    r.details = buf;
    return r;
}

std::vector<VerificationReport> verify_tail_bound(const Scenario& scn, double p,
                                                  const std::vector<double>& lambdas) {
    if (lambdas.empty()) throw std::invalid_argument("verify_tail_bound: empty lambda list");
    const ScenarioContext ctx(scn);
    std::vector<double> sups(static_cast<std::size_t>(scn.n_paths));
    std::vector<double> integrals(static_cast<std::size_t>(scn.n_paths));
    run_blocked<char>(
        scn.n_paths, scn.parallel,
        [&](long path, char&) {
            const WhiteNoiseSample W = ctx.noise(path);
            const RandomField sf = ctx.sigma_field(W);
            const RandomField conv = convolve_direct(sf, W, scn.grid, scn.kernel);
            sups[static_cast<std::size_t>(path)] = conv.sup_abs();
            integrals[static_cast<std::size_t>(path)] = sigma_time_integral(sf, p);
        },
        [](char&) {});

    const double c_tp = constants::c_moment(scn.grid.T, p).c_moment();
    const double n = static_cast<double>(scn.n_paths);
    std::vector<VerificationReport> out;
    for (double lambda : lambdas) {
        if (!(lambda > 0.0)) throw std::invalid_argument("verify_tail_bound: lambda must be > 0");
        const double lp = std::pow(lambda, p);
        long exceed = 0, over = 0;
        double emin = 0.0;
        for (long k = 0; k < scn.n_paths; ++k) {
            if (sups[static_cast<std::size_t>(k)] > lambda) ++exceed;
            if (integrals[static_cast<std::size_t>(k)] > lp) ++over;
            emin += std::min(lp, integrals[static_cast<std::size_t>(k)]);
        }
        emin /= n;
        VerificationReport r = base_report(scn, "tail_bound");
        r.empirical_estimate = static_cast<double>(exceed) / n;
        r.std_error = binomial_se(r.empirical_estimate, scn.n_paths);
        r.theoretical_bound = static_cast<double>(over) / n + c_tp / lp * emin;
        r.passed = one_sided_pass(r.empirical_estimate, r.std_error, r.theoretical_bound);
        char buf[160];
        std::snprintf(buf, sizeof(buf), "lambda=%g p=%g P(X>l^p)=%g Emin=%.6e", lambda, p,
                      static_cast<double>(over) / n, emin);
        r.details = buf;
        out.push_back(std::move(r));
    }
    return out;
}

RandomField truncate_sigma_field(const RandomField& sigma_field, double lambda, double p) {
    if (!(lambda > 0.0) || !(p > 0.0))
        throw std::invalid_argument("truncate_sigma_field: lambda and p must be positive");
    const int nt = sigma_field.grid.nt, nx = sigma_field.grid.nx;
    const double dt = sigma_field.grid.dt();
    const double lp = std::pow(lambda, p);
    RandomField out = sigma_field;
    double prefix = 0.0;  // int_0^{t_m} sup_y |sigma|^p dr
    for (int m = 0; m <= nt; ++m) {
        if (prefix > lp) {
            double* row = out.row(m);
            for (int i = 0; i < nx; ++i) row[i] = 0.0;
        }
        if (m < nt) {
            const double* row = sigma_field.row(m);
            double mx = 0.0;
            for (int i = 0; i < nx; ++i) mx = std::max(mx, std::abs(row[i]));
            prefix += dt * std::pow(mx, p);
        }
    }
    return out;
}

VerificationReport verify_small_p(const Scenario& scn, double p, const SmallPMode& mode) {
    if (!(p > 0.0) || p > 10.0)
        throw std::invalid_argument("verify_small_p: requires 0 < p <= 10");
    const ScenarioContext ctx(scn);
    const bool via_q = mode.kind == SmallPMode::Kind::via_q;
    if (via_q && !(mode.value > 10.0))
        throw std::invalid_argument("verify_small_p: q must exceed 10");
    if (!via_q && !(mode.value > 0.0))
        throw std::invalid_argument("verify_small_p: eps must be positive");

    std::vector<double> lhs(static_cast<std::size_t>(scn.n_paths));
    std::vector<double> rhs_term(static_cast<std::size_t>(scn.n_paths));
    std::vector<double> sup_pow(static_cast<std::size_t>(scn.n_paths), 0.0);
    run_blocked<char>(
        scn.n_paths, scn.parallel,
        [&](long path, char&) {
            const WhiteNoiseSample W = ctx.noise(path);
            const RandomField sf = ctx.sigma_field(W);
            const RandomField conv = convolve_direct(sf, W, scn.grid, scn.kernel);
            lhs[static_cast<std::size_t>(path)] = std::pow(conv.sup_abs(), p);
            if (via_q) {
                rhs_term[static_cast<std::size_t>(path)] =
                    std::pow(sigma_time_integral(sf, mode.value), p / mode.value);
            } else {
                rhs_term[static_cast<std::size_t>(path)] = sigma_time_integral(sf, p);
                sup_pow[static_cast<std::size_t>(path)] = std::pow(sf.sup_abs(), p);
            }
        },
        [](char&) {});

    VerificationReport r = base_report(scn, via_q ? "small_p_q" : "small_p_eps");
    r.empirical_estimate = mean_of(lhs);
    r.std_error = std_error_of(lhs, r.empirical_estimate);
    char buf[200];
    if (via_q) {
        const double c = constants::c_small_p(scn.grid.T, p, mode.value);
        r.theoretical_bound = c * mean_of(rhs_term);
        std::snprintf(buf, sizeof(buf), "p=%g q=%g C_Tpq=%.6e", p, mode.value, c);
    } else {
        const auto c = constants::c_small_p_eps(scn.grid.T, p, mode.value);
        r.theoretical_bound = mode.value * mean_of(sup_pow) + c.value() * mean_of(rhs_term);
        std::snprintf(buf, sizeof(buf), "p=%g eps=%g log C_Tpe=%.6e q*=%g", p, mode.value,
                      c.log_value, c.q_star);
    }
    r.details = buf;
    r.passed = one_sided_pass(r.empirical_estimate, r.std_error, r.theoretical_bound);
    return r;
}

W2EntropyResult estimate_w2_and_entropy(const Scenario& scn) {
    const Coefficients coeffs = scn.coefficients();
    if (!std::isfinite(coeffs.K_sigma))
        throw std::invalid_argument("estimate_w2_and_entropy: sigma must be bounded");
    const std::vector<double> u0 = scn.initial_row();
    const DriftField h = scn.drift();
    const std::vector<double> P = kernel_matrix(scn.grid, scn.grid.dt(), scn.kernel);

    std::vector<double> sup_sq(static_cast<std::size_t>(scn.n_paths));
    run_blocked<char>(
        scn.n_paths, scn.parallel,
        [&](long path, char&) {
            const WhiteNoiseSample W =
                sample_white_noise(scn.grid, scn.seed, static_cast<std::uint64_t>(path));
            // both legs driven by the same shifted sheet; u recombines to the
            // unshifted scheme exactly
            const RandomField v = solve_mild(u0, coeffs, girsanov_shift(W, h), scn.grid, P);
            const RandomField u = solve_mild(u0, coeffs, W, scn.grid, P);
            double sup = 0.0;
            for (std::size_t c = 0; c < u.values.size(); ++c)
                sup = std::max(sup, std::abs(u.values[c] - v.values[c]));
            sup_sq[static_cast<std::size_t>(path)] = sup * sup;
        },
        [](char&) {});

    W2EntropyResult out;
    out.entropy = relative_entropy(h);
    const double mean_sq = mean_of(sup_sq);
    const double se_sq = std_error_of(sup_sq, mean_sq);
    out.w2_upper = std::sqrt(mean_sq);
    const double se_w2 = out.w2_upper > 0.0 ? se_sq / (2.0 * out.w2_upper) : 0.0;

    const auto tci = constants::c_tci(scn.grid.T, coeffs.L_b, coeffs.L_sigma, coeffs.K_sigma);
    VerificationReport r = base_report(scn, "tci");
    r.empirical_estimate = out.w2_upper;
    r.std_error = se_w2;
    char buf[220];
    if (out.entropy > 0.0) {
        const double log_bound = 0.5 * (std::log(2.0) + tci.log_value + std::log(out.entropy));
        r.theoretical_bound = std::exp(log_bound);  // inf when not representable
        r.passed = one_sided_pass(r.empirical_estimate, r.std_error, r.theoretical_bound);
        std::snprintf(buf, sizeof(buf),
                      "entropy=%.6e log_c_tci=%.6e log_bound=%.6e (bound=sqrt(2 C H))",
                      out.entropy, tci.log_value, log_bound);
    } else {
        // h == 0: the coupling is degenerate and both legs coincide
        r.theoretical_bound = 0.0;
        r.passed = out.w2_upper == 0.0;
        std::snprintf(buf, sizeof(buf), "entropy=0: coupled paths must coincide; w2=%.3e",
                      out.w2_upper);
    }
    r.details = buf;
    out.report = std::move(r);
    return out;
}

std::vector<double> functional_samples(const Scenario& scn, FieldFunctional fn) {
    const ScenarioContext ctx(scn);
    std::vector<double> samples(static_cast<std::size_t>(scn.n_paths));
    const int mid = scn.grid.nx / 2;
    run_blocked<char>(
        scn.n_paths, scn.parallel,
        [&](long path, char&) {
            const WhiteNoiseSample W = ctx.noise(path);
            const RandomField u = solve_mild(ctx.u0, ctx.coeffs, W, scn.grid, ctx.kernel_dt);
            samples[static_cast<std::size_t>(path)] =
                fn == FieldFunctional::sup_norm ? u.sup_abs() : u.at(scn.grid.nt, mid);
        },
        [](char&) {});
    return samples;
}

ConcentrationProfile concentration_profile(const std::vector<double>& samples,
                                           const std::vector<double>& radii) {
    if (samples.size() < 100)
        throw std::invalid_argument("concentration_profile: need at least 100 samples");
    if (radii.empty()) throw std::invalid_argument("concentration_profile: empty radii");
    std::vector<double> sorted = samples;
    std::sort(sorted.begin(), sorted.end());
    ConcentrationProfile out;
    const std::size_t n = sorted.size();
    out.median = n % 2 == 1 ? sorted[n / 2] : 0.5 * (sorted[n / 2 - 1] + sorted[n / 2]);

    for (double r : radii) {
        const double level = out.median + r;
        const long count = static_cast<long>(sorted.end() -
                                             std::upper_bound(sorted.begin(), sorted.end(), level));
        out.radii.push_back(r);
        out.exceedances.push_back(count);
        out.tail.push_back(static_cast<double>(count) / static_cast<double>(n));
    }
    // a degenerate ensemble leaves every tail empty; the profile is the zero
    // curve and no fit is attempted

    // least squares of log tail against -c r^2 over usable radii
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int m = 0;
    for (std::size_t i = 0; i < out.radii.size(); ++i) {
        if (out.exceedances[i] < 5 || !(out.radii[i] > 0.0)) continue;
        const double x = out.radii[i] * out.radii[i];
        const double y = std::log(out.tail[i]);
        sx += x; sy += y; sxx += x * x; sxy += x * y;
        ++m;
    }
    out.fit_points = m;
    if (m >= 2 && sxx * m - sx * sx > 0.0) {
        const double slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
        out.c_fit = -slope;
        out.log_C_fit = (sy - slope * sx) / m;
    }
    return out;
}

ConcentrationProfile concentration_profile(FieldFunctional fn,
                                           const std::vector<RandomField>& ensemble,
                                           const std::vector<double>& radii) {
    std::vector<double> samples;
    samples.reserve(ensemble.size());
    for (const auto& f : ensemble) {
        samples.push_back(fn == FieldFunctional::sup_norm ? f.sup_abs()
                                                          : f.at(f.grid.nt, f.grid.nx / 2));
    }
    return concentration_profile(samples, radii);
}

VerificationReport layer_cake_checks(const std::vector<double>& samples, double p, double q) {
    if (samples.empty()) throw std::invalid_argument("layer_cake_checks: empty samples");
    if (!(p > 0.0) || !(q > p)) throw std::invalid_argument("layer_cake_checks: needs q > p > 0");
    for (double v : samples)
        if (!(v >= 0.0) || !std::isfinite(v))
            throw std::invalid_argument("layer_cake_checks: samples must be finite nonnegative");

    std::vector<double> sorted = samples;
    std::sort(sorted.begin(), sorted.end());
    const double n = static_cast<double>(sorted.size());

    // E X^p as the exact integral of p x^{p-1} tail(x) over the empirical tail
    double lhs1 = 0.0;
    {
        double prev = 0.0;
        std::size_t i = 0;
        while (i < sorted.size()) {
            const double v = sorted[i];
            if (v > prev)
                lhs1 += (n - static_cast<double>(i)) / n * (std::pow(v, p) - std::pow(prev, p));
            while (i < sorted.size() && sorted[i] == v) ++i;
            prev = v;
        }
    }
    double rhs1 = 0.0;
    for (double v : sorted) rhs1 += std::pow(v, p);
    rhs1 /= n;

    // int p x^{p-1-q} E min{x^q, X} dx, segment-exact over the breakpoints
    // X_i^{1/q}, against (q/(q-p)) E X^{p/q}
    double lhs2 = 0.0;
    {
        double prevx = 0.0, sum_below = 0.0;
        std::size_t i = 0;
        while (i < sorted.size()) {
            const double v = sorted[i];
            const double x1 = std::pow(v, 1.0 / q);
            if (x1 > prevx) {
                const double m = n - static_cast<double>(i);
                if (sum_below > 0.0)
                    lhs2 += sum_below / n * (p / (p - q)) *
                            (std::pow(x1, p - q) - std::pow(prevx, p - q));
                lhs2 += m / n * (std::pow(x1, p) - std::pow(prevx, p));
            }
            while (i < sorted.size() && sorted[i] == v) {
                sum_below += sorted[i];
                ++i;
            }
            prevx = x1;
        }
        if (sum_below > 0.0) lhs2 += sum_below / n * (p / (q - p)) * std::pow(prevx, p - q);
    }
    double rhs2 = 0.0;
    for (double v : sorted) rhs2 += std::pow(v, p / q);
    rhs2 *= (q / (q - p)) / n;

    auto rel = [](double a, double b) {
        const double scale = std::max(std::abs(a), std::abs(b));
        return scale > 0.0 ? std::abs(a - b) / scale : 0.0;
    };
    const double err = std::max(rel(lhs1, rhs1), rel(lhs2, rhs2));

    VerificationReport r;
    r.check_name = "layer_cake";
    r.n_paths = static_cast<long>(sorted.size());
    r.empirical_estimate = err;
    r.theoretical_bound = 1e-6;
    r.std_error = 0.0;
    r.passed = err <= 1e-6;
    char buf[200];
    std::snprintf(buf, sizeof(buf), "p=%g q=%g EX^p: %.12e vs %.12e; min-identity: %.12e vs %.12e",
                  p, q, lhs1, rhs1, lhs2, rhs2);
    r.details = buf;
    return r;
}

VerificationReport local_property_check(const Scenario& scn) {
    const ScenarioContext ctx(scn);
    const int nt = scn.grid.nt, nx = scn.grid.nx;
    std::vector<double> sups(static_cast<std::size_t>(scn.n_paths));
    std::vector<char> gated(static_cast<std::size_t>(scn.n_paths));
    run_blocked<char>(
        scn.n_paths, scn.parallel,
        [&](long path, char&) {
            const WhiteNoiseSample W = ctx.noise(path);
            // F_{t_1}-measurable gate: the sign of the first row's mass
            double first = 0.0;
            for (int i = 0; i < nx; ++i) first += W.at(0, i);
            const bool vanish = first <= 0.0;
            RandomField sf(scn.grid);
            if (!vanish) {
                const RandomField base = ctx.sigma_field(W);
                for (int m = 1; m <= nt; ++m) {
                    const double* src = base.row(m);
                    double* dst = sf.row(m);
                    for (int i = 0; i < nx; ++i) dst[i] = src[i];
                }
            }
            const RandomField conv = convolve_direct(sf, W, scn.grid, scn.kernel);
            sups[static_cast<std::size_t>(path)] = conv.sup_abs();
            gated[static_cast<std::size_t>(path)] = vanish ? 1 : 0;
        },
        [](char&) {});

    long in_event = 0, nonzero_complement = 0;
    double worst = 0.0;
    for (long k = 0; k < scn.n_paths; ++k) {
        if (gated[static_cast<std::size_t>(k)]) {
            ++in_event;
            worst = std::max(worst, sups[static_cast<std::size_t>(k)]);
        } else if (sups[static_cast<std::size_t>(k)] > 0.0) {
            ++nonzero_complement;
        }
    }
    VerificationReport r = base_report(scn, "local_property");
    r.empirical_estimate = worst;
    r.theoretical_bound = 0.0;
    r.std_error = 0.0;
    r.passed = in_event > 0 && worst == 0.0 && nonzero_complement > 0;
    char buf[160];
    std::snprintf(buf, sizeof(buf),
                  "event paths=%ld/%ld, max |integral| on event=%.3e, nonzero complement=%ld",
                  in_event, scn.n_paths, worst, nonzero_complement);
    r.details = buf;
    return r;
}

VerificationReport verify_martingale_mean(const Scenario& scn) {
    const DriftField h = scn.drift();
    std::vector<double> m_T(static_cast<std::size_t>(scn.n_paths));
    run_blocked<char>(
        scn.n_paths, scn.parallel,
        [&](long path, char&) {
            const WhiteNoiseSample W =
                sample_white_noise(scn.grid, scn.seed, static_cast<std::uint64_t>(path));
            m_T[static_cast<std::size_t>(path)] = std::exp(girsanov_log_density(W, h));
        },
        [](char&) {});
    VerificationReport r = base_report(scn, "girsanov_martingale");
    r.empirical_estimate = mean_of(m_T);
    r.std_error = std_error_of(m_T, r.empirical_estimate);
    r.theoretical_bound = 1.0;
    r.passed = std::abs(r.empirical_estimate - 1.0) <= 2.0 * r.std_error;
    r.details = "two-sided: E[M_T] = 1 within 2 standard errors";
    return r;
}

VerificationReport verify_entropy_formula(const Scenario& scn) {
    const DriftField h = scn.drift();
    const double est = relative_entropy(h);
    const double theory =
        0.5 * adaptive_integrate(
                  [&](double t) {
                      return adaptive_integrate(
                          [&](double y) {
                              const double v = scn.h_value(t, y);
                              return v * v;
                          },
                          0.0, 1.0, 1e-11, 1e-15);
                  },
                  0.0, scn.grid.T, 1e-11, 1e-15);
    VerificationReport r = base_report(scn, "girsanov_entropy");
    r.n_paths = 1;
    r.empirical_estimate = est;
    r.theoretical_bound = theory;
    r.std_error = 0.0;
    const double rel = theory > 0.0 ? std::abs(est - theory) / theory : std::abs(est);
    r.passed = rel <= 1e-3;
    char buf[120];
    std::snprintf(buf, sizeof(buf), "discrete=%.9e continuum=%.9e rel=%.3e", est, theory, rel);
    r.details = buf;
    return r;
}

}  // namespace spdelab
