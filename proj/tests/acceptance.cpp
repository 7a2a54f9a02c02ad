// Acceptance suite: every verification target runs at its stated tolerance
// and prints one line.  Exit status is the number of failing criteria.

#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "spdelab/constants.hpp"
#include "spdelab/convolution.hpp"
#include "spdelab/estimators.hpp"
#include "spdelab/quadrature.hpp"
#include "spdelab/rng.hpp"
#include "spdelab/runner.hpp"

using namespace spdelab;

namespace {

int g_failures = 0;

void criterion(int number, const std::string& label, bool ok, const std::string& detail = "") {
    std::printf("[%s] %d. %s%s%s\n", ok ? "PASS" : "FAIL", number, label.c_str(),
                detail.empty() ? "" : " -- ", detail.c_str());
    if (!ok) ++g_failures;
}

bool approx(double a, double b, double tol) { return std::abs(a - b) <= tol; }

// ---------------------------------------------------------------- criterion 1
void kernel_suite() {
    bool sym = true, ck = true, mass_ok = true, l2_bound = true, l2_id = true, cross = true;
    char why[160] = "";

    for (int k = 0; k < 200 && sym; ++k) {
        const double t = 0.01 + 0.99 * rng::uniform01(rng::key(101, 0, 3 * k));
        const double x = rng::uniform01(rng::key(101, 0, 3 * k + 1));
        const double y = rng::uniform01(rng::key(101, 0, 3 * k + 2));
        sym = std::abs(kernel_value(t, x, y) - kernel_value(t, y, x)) < 1e-12;
    }

    for (auto [s, t, x, y] : {std::tuple{0.1, 0.2, 0.3, 0.6}, std::tuple{0.05, 0.05, 0.5, 0.5},
                              std::tuple{0.25, 0.1, 0.75, 0.4}}) {
        const double composed = adaptive_integrate(
            [&, s = s, x = x](double z) { return kernel_value(s, x, z) * kernel_value(t, z, y); },
            0.0, 1.0, 1e-12, 1e-15);
        ck = ck && std::abs(composed - kernel_value(s + t, x, y)) < 1e-8;
    }

    for (double t : {0.05, 0.1, 0.2, 0.5, 1.0}) {
        for (double x : {0.1, 0.3, 0.5, 0.7, 0.9}) {
            const auto v = kernel_integrals(t, x);
            mass_ok = mass_ok && v.mass > 0.0 && v.mass < 1.0;
            l2_bound = l2_bound && v.l2 <= constants::c2() / std::sqrt(t) + 1e-12;
        }
    }
    for (double t : {0.05, 0.2, 0.6})
        for (double x : {0.25, 0.5, 0.75})
            l2_id = l2_id && std::abs(kernel_integrals(t, x).l2 - kernel_value(2 * t, x, x)) < 1e-8;

    KernelParams image_side;
    image_side.method_switch_time = 0.06;
    for (double x : {0.15, 0.5, 0.85})
        for (double y : {0.1, 0.45, 0.9})
            cross = cross &&
                    std::abs(kernel_value(0.05, x, y) - kernel_value(0.05, x, y, image_side)) <
                        1e-10;

    const bool ok = sym && ck && mass_ok && l2_bound && l2_id && cross;
    if (!ok)
        std::snprintf(why, sizeof(why), "sym=%d ck=%d mass=%d l2<=C2/sqrt(t)=%d l2=p_2t=%d xover=%d",
                      sym, ck, mass_ok, l2_bound, l2_id, cross);
    criterion(1, "kernel suite: symmetry, Chapman-Kolmogorov, mass, L2, crossover", ok, why);
}

// ---------------------------------------------------------------- criterion 2
void factorization_suite() {
    const auto fp = FactorizationParams::for_order(12.0);
    const int paths = 10;
    std::vector<double> rels;
    for (auto [nt, nx] : {std::pair{256, 32}, std::pair{512, 48}, std::pair{1024, 64}}) {
        const SpaceTimeGrid grid{1.0, nt, nx};
        RandomField ones(grid);
        std::fill(ones.values.begin(), ones.values.end(), 1.0);
        double res = 0.0, sup = 0.0;
        for (int path = 0; path < paths; ++path) {
            const auto W = sample_white_noise(grid, 20240802, static_cast<std::uint64_t>(path));
            res += factorization_residual(ones, W, fp, grid);
            sup += convolve_direct(ones, W, grid).sup_abs();
        }
        rels.push_back(res / sup);
    }
    const bool mono = rels[0] > rels[1] && rels[1] > rels[2];
    const bool small = rels[2] <= 0.05;
    char detail[160];
    std::snprintf(detail, sizeof(detail), "relative residuals %.5f > %.5f > %.5f, finest <= 0.05",
                  rels[0], rels[1], rels[2]);
    criterion(2, "factorization identity residual decreases under refinement", mono && small,
              detail);
}

// ---------------------------------------------------------------- criterion 3
void constants_suite() {
    bool dominated = true, consistent = true, rejected = true;
    for (double T : {0.5, 1.0, 2.0}) {
        for (double p : {10.5, 12.0, 16.0, 20.0}) {
            const auto m = constants::c_moment(T, p);
            dominated = dominated && m.log_c_moment < m.log_c_closed_form;
            const auto r = constants::alpha_range(p);
            for (double frac : {0.3, 0.5, 0.7}) {
                const double a = r.lo + frac * (r.hi - r.lo);
                const auto c = constants::c_components(T, p, a);
                const double d1 = constants::c_prime_direct(T, p, a);
                const double d2 = constants::c_double_prime_direct(T, p, a);
                if (std::isfinite(d1))
                    consistent = consistent && approx(c.c_prime() / d1, 1.0, 1e-10);
                if (std::isfinite(d2))
                    consistent = consistent && approx(c.c_double_prime() / d2, 1.0, 1e-10);
            }
        }
    }
    for (double p : {10.0, 9.5, 2.0, 10.0005}) {
        try {
            constants::c_moment(1.0, p);
            rejected = false;
        } catch (const std::domain_error&) {
        }
    }
    char detail[120];
    std::snprintf(detail, sizeof(detail), "dominated=%d log/direct 1e-10=%d p<=10 rejected=%d",
                  dominated, consistent, rejected);
    criterion(3, "constants: closed-form domination, log-space consistency, rejection",
              dominated && consistent && rejected, detail);
}

// ---------------------------------------------------------------- criterion 4
void moment_bound_suite() {
    bool ok = true;
    char detail[200];
    std::string parts;
    for (const char* sigma : {"constant:1", "bounded-rational:1"}) {
        Scenario scn;
        scn.id = std::string("moment-") + sigma;
        scn.grid = SpaceTimeGrid{1.0, 1024, 64};
        scn.sigma = sigma;
        scn.n_paths = 2000;
        scn.seed = 20240804;
        const auto r = verify_moment_bound(scn, 12.0);
        const bool control_fails =
            !one_sided_pass(r.empirical_estimate, r.std_error, r.theoretical_bound * 1e-30);
        ok = ok && r.passed && control_fails;
        char piece[96];
        std::snprintf(piece, sizeof(piece), "%s: lhs=%.3e rhs=%.3e ctrl=%d; ", sigma,
                      r.empirical_estimate, r.theoretical_bound, control_fails);
        parts += piece;
    }
    std::snprintf(detail, sizeof(detail), "%s", parts.c_str());
    criterion(4, "moment bound at p=12 (2000 paths) with falsification control", ok, detail);
}

// ---------------------------------------------------------------- criterion 5
void tail_suite() {
    Scenario scn;
    scn.id = "tail";
    scn.grid = SpaceTimeGrid{1.0, 1024, 64};
    scn.sigma = "constant:1";
    scn.n_paths = 1000;
    scn.seed = 20240805;
    bool ok = true;
    for (const auto& r : verify_tail_bound(scn, 12.0, {0.5, 1.0, 2.0})) ok = ok && r.passed;
    ok = ok && verify_small_p(scn, 2.0, SmallPMode::via_q(12.0)).passed;
    ok = ok && verify_small_p(scn, 2.0, SmallPMode::via_eps(0.1)).passed;
    ok = ok && verify_small_p(scn, 2.0, SmallPMode::via_eps(0.5)).passed;
    criterion(5, "tail bound at lambda in {0.5,1,2} and small-order bounds (q=12, eps=0.1,0.5)",
              ok);
}

// ---------------------------------------------------------------- criterion 6
void girsanov_suite() {
    // bitwise coincidence under the zero shift
    const SpaceTimeGrid grid{1.0, 256, 32};
    const auto coeffs = make_coefficients("affine:0.5,0", "bounded-rational:1");
    const auto W = sample_white_noise(grid, 20240806, 0);
    const auto h0 = make_drift(grid, [](double, double) { return 0.0; });
    std::vector<double> u0(grid.nx, 0.0);
    const auto pair = solve_coupled_pair(u0, coeffs, W, h0, grid);
    const bool bitwise = pair.u.values == pair.v.values;

    Scenario mart;
    mart.grid = grid;
    mart.h = "constant:1";
    mart.n_paths = 10000;
    mart.seed = 20240806;
    const auto mr = verify_martingale_mean(mart);

    Scenario ent = mart;
    ent.grid = SpaceTimeGrid{1.0, 256, 2047};
    const auto er = verify_entropy_formula(ent);
    const double rel = std::abs(er.empirical_estimate - 0.5) / 0.5;

    char detail[160];
    std::snprintf(detail, sizeof(detail), "bitwise=%d E[M_T]=%.4f+-%.4f entropy rel err=%.2e",
                  bitwise, mr.empirical_estimate, mr.std_error, rel);
    criterion(6, "Girsanov: zero-shift degeneracy, E[M_T]=1 (10^4 paths), entropy T/2 to 1e-3",
              bitwise && mr.passed && er.passed && rel <= 1e-3, detail);
}

// ---------------------------------------------------------------- criterion 7
void tci_suite() {
    bool ok = true;
    std::string parts;
    const struct {
        const char* name;
        const char* b;
        const char* sigma;
    } cases[] = {{"additive", "zero", "constant:1"},
                 {"multiplicative", "zero", "bounded-rational:1"},
                 {"drifted", "affine:0.5,0", "constant:1"}};
    for (const auto& c : cases) {
        Scenario scn;
        scn.id = std::string("tci-") + c.name;
        scn.grid = SpaceTimeGrid{1.0, 1024, 64};
        scn.b = c.b;
        scn.sigma = c.sigma;
        scn.h = "constant:1";
        scn.n_paths = 1000;
        scn.seed = 20240807;
        const auto r = estimate_w2_and_entropy(scn);
        ok = ok && r.report.passed;
        char piece[120];
        std::snprintf(piece, sizeof(piece), "%s: w2=%.4f bound=%.4g H=%.4f; ", c.name,
                      r.w2_upper, r.report.theoretical_bound, r.entropy);
        parts += piece;
    }
    criterion(7, "transport inequality w2 <= sqrt(2 C H) on three scenarios (1000 paths)", ok,
              parts);
}

// ---------------------------------------------------------------- criterion 8
void appendix_suite() {
    std::vector<double> uniform;
    for (int i = 0; i < 10000; ++i) uniform.push_back((i + 0.5) / 10000.0);
    bool ok = layer_cake_checks(uniform, 2.0, 3.0).passed;
    ok = ok && layer_cake_checks(std::vector<double>(200, 1.0), 1.0, 2.0).passed;

    Scenario samp;
    samp.grid = SpaceTimeGrid{1.0, 64, 15};
    samp.sigma = "bounded-rational:1";
    samp.n_paths = 200;
    samp.seed = 20240808;
    const auto samples = functional_samples(samp, FieldFunctional::sup_norm);
    ok = ok && layer_cake_checks(samples, 2.0, 12.0).passed;

    Scenario local;
    local.grid = SpaceTimeGrid{1.0, 32, 7};
    local.sigma = "bounded-rational:1";
    local.n_paths = 400;
    local.seed = 20240809;
    const auto lr = local_property_check(local);
    ok = ok && lr.passed;
    criterion(8, "layer-cake identities to 1e-6 and exact localization of the integral",
              ok, lr.details);
}

// ---------------------------------------------------------------- criterion 9
void determinism_suite() {
    RunConfig cfg;
    cfg.scenario.id = "det";
    cfg.scenario.grid = SpaceTimeGrid{1.0, 128, 16};
    cfg.scenario.sigma = "bounded-rational:1";
    cfg.scenario.h = "constant:1";
    cfg.scenario.n_paths = 200;
    cfg.scenario.seed = 20240809;
    cfg.checks = {"moment_bound", "tci", "local_property", "tail_bound"};

    std::vector<std::string> renders;
    for (unsigned workers : {1u, 4u, 8u, 1u}) {  // the second workers=1 run checks reruns
        cfg.workers = workers;
        std::string all;
        for (const auto& r : run_checks(cfg)) all += report_to_json(r) + "\n";
        renders.push_back(std::move(all));
    }
    const bool identical = renders[0] == renders[1] && renders[0] == renders[2] &&
                           renders[0] == renders[3];
    criterion(9, "bit-identical reports for worker counts {1,4,8} and reruns", identical);
}

}  // namespace

int main() {
    kernel_suite();
    factorization_suite();
    constants_suite();
    moment_bound_suite();
    tail_suite();
    girsanov_suite();
    tci_suite();
    appendix_suite();
    determinism_suite();
    if (g_failures == 0) std::printf("all acceptance criteria passed\n");
    else std::printf("%d criteria FAILED\n", g_failures);
    return g_failures;
}
