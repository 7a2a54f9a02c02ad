#pragma once

#include <map>
#include <string>
#include <vector>

#include "spdelab/estimators.hpp"

namespace spdelab {

/// Batch configuration: one scenario, a list of named checks, output
/// controls.  Parsed from flat key=value text or assembled from CLI flags.
struct RunConfig {
    Scenario scenario;
    std::vector<std::string> checks;
    std::string output_dir = ".";
    bool write_csv = true;
    bool write_json = true;
    unsigned workers = 1;

    // per-check knobs
    double p_large = 12.0;
    double p_small = 2.0;
    double q = 12.0;
    std::vector<double> eps_list{0.1, 0.5};
    std::vector<double> lambdas{0.5, 1.0, 2.0};
    std::vector<double> radii{0.1, 0.2, 0.3, 0.4, 0.6, 0.8};
    double probe_lo = -8.0, probe_hi = 8.0;
    int n_probe = 201;
};

/// Check identifiers accepted by run(): hypotheses, moment_bound,
/// tail_bound, small_p_q, small_p_eps, tci, girsanov_martingale,
/// girsanov_entropy, concentration, layer_cake, local_property.
const std::vector<std::string>& known_checks();

/// Executes every configured check against the scenario and writes one
/// report per check plus a run manifest under output_dir.  Exit status:
/// 0 all checks passed, 1 some check failed, 2 configuration error
/// (unknown check id or hypothesis violation; the witness goes into the
/// manifest).
int run(const RunConfig& config);

/// Runs the checks without touching the filesystem; reports in check order.
std::vector<VerificationReport> run_checks(const RunConfig& config);

/// Flat key=value config (# comments, blank lines ignored).  Keys mirror
/// the CLI flags: scenario.id, grid.T, grid.nt, grid.nx, u0, b, sigma, h,
/// paths, seed, workers, checks (comma list), out, formats, p, p_small, q,
/// eps (comma list), lambdas (comma list), radii (comma list).
RunConfig parse_config_file(const std::string& path);
RunConfig parse_config_text(const std::string& text);

}  // namespace spdelab
