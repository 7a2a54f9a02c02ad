#include "spdelab/runner.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace spdelab {

namespace {

std::vector<double> parse_double_list(const std::string& s) {
    std::vector<double> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) out.push_back(std::stod(item));
    }
    return out;
}

std::vector<std::string> parse_string_list(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        // trim spaces
        const auto a = item.find_first_not_of(" \t");
        const auto b = item.find_last_not_of(" \t");
        if (a != std::string::npos) out.push_back(item.substr(a, b - a + 1));
    }
    return out;
}

std::string sanitize_filename(std::string name) {
    for (char& c : name)
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '-' && c != '_') c = '_';
    return name;
}

}  // namespace

const std::vector<std::string>& known_checks() {
    static const std::vector<std::string> ids = {
        "hypotheses",          "moment_bound",     "tail_bound",    "small_p_q",
        "small_p_eps",         "tci",              "girsanov_martingale",
        "girsanov_entropy",    "concentration",    "layer_cake",    "local_property"};
    return ids;
}

std::vector<VerificationReport> run_checks(const RunConfig& config) {
    Scenario scn = config.scenario;
    scn.parallel.workers = config.workers;
    std::vector<VerificationReport> reports;
    for (const std::string& id : config.checks) {
        if (id == "hypotheses") {
            reports.push_back(check_hypotheses(scn.coefficients(), config.probe_lo,
                                               config.probe_hi, config.n_probe));
            reports.back().seed = scn.seed;
            reports.back().grid = scn.grid;
            reports.back().scenario_id = scn.id;
        } else if (id == "moment_bound") {
            reports.push_back(verify_moment_bound(scn, config.p_large));
        } else if (id == "tail_bound") {
            auto rs = verify_tail_bound(scn, config.p_large, config.lambdas);
            reports.insert(reports.end(), rs.begin(), rs.end());
        } else if (id == "small_p_q") {
            reports.push_back(verify_small_p(scn, config.p_small, SmallPMode::via_q(config.q)));
        } else if (id == "small_p_eps") {
            for (double eps : config.eps_list)
                reports.push_back(verify_small_p(scn, config.p_small, SmallPMode::via_eps(eps)));
        } else if (id == "tci") {
            reports.push_back(estimate_w2_and_entropy(scn).report);
        } else if (id == "girsanov_martingale") {
            reports.push_back(verify_martingale_mean(scn));
        } else if (id == "girsanov_entropy") {
            reports.push_back(verify_entropy_formula(scn));
        } else if (id == "concentration") {
            const auto samples = functional_samples(scn, FieldFunctional::sup_norm);
            const auto prof = concentration_profile(samples, config.radii);
            VerificationReport r;
            r.check_name = "concentration";
            r.seed = scn.seed;
            r.grid = scn.grid;
            r.scenario_id = scn.id;
            r.n_paths = scn.n_paths;
            r.empirical_estimate = prof.c_fit;
            r.theoretical_bound = 0.0;
            r.std_error = 0.0;
            r.passed = prof.c_fit > 0.0 && prof.fit_points >= 2;
            char buf[160];
            std::snprintf(buf, sizeof(buf),
                          "Gaussian-tail fit: c=%.4f logC=%.4f points=%d median=%.4f", prof.c_fit,
                          prof.log_C_fit, prof.fit_points, prof.median);
            r.details = buf;
            reports.push_back(std::move(r));
        } else if (id == "layer_cake") {
            const auto samples = functional_samples(scn, FieldFunctional::sup_norm);
            auto r = layer_cake_checks(samples, config.p_small, config.q);
            r.seed = scn.seed;
            r.grid = scn.grid;
            r.scenario_id = scn.id;
            reports.push_back(std::move(r));
        } else if (id == "local_property") {
            reports.push_back(local_property_check(scn));
        } else {
            throw std::invalid_argument("unknown check id: " + id);
        }
    }
    return reports;
}

int run(const RunConfig& config) {
    namespace fs = std::filesystem;
    const auto t0 = std::chrono::steady_clock::now();
    fs::create_directories(config.output_dir);
    std::ofstream manifest(fs::path(config.output_dir) / "manifest.txt");
    manifest << "spdelab run manifest\n";
    manifest << "version = 1.0\n";
    manifest << "scenario.id = " << config.scenario.id << "\n";
    manifest << "grid.T = " << config.scenario.grid.T << "\n";
    manifest << "grid.nt = " << config.scenario.grid.nt << "\n";
    manifest << "grid.nx = " << config.scenario.grid.nx << "\n";
    manifest << "u0 = " << config.scenario.u0 << "\n";
    manifest << "b = " << config.scenario.b << "\n";
    manifest << "sigma = " << config.scenario.sigma << "\n";
    manifest << "h = " << config.scenario.h << "\n";
    manifest << "paths = " << config.scenario.n_paths << "\n";
    manifest << "seed = " << config.scenario.seed << "\n";
    manifest << "workers = " << config.workers << "\n";
    manifest << "checks =";
    for (const auto& c : config.checks) manifest << " " << c;
    manifest << "\n";
    manifest << "out = " << config.output_dir << "\n";
    manifest << "formats =" << (config.write_csv ? " csv" : "")
             << (config.write_json ? " json" : "") << "\n";
    manifest << "p = " << config.p_large << "\n";
    manifest << "p_small = " << config.p_small << "\n";
    manifest << "q = " << config.q << "\n";
    manifest << "eps =";
    for (double e : config.eps_list) manifest << " " << e;
    manifest << "\n";
    manifest << "lambdas =";
    for (double l : config.lambdas) manifest << " " << l;
    manifest << "\n";

    // unknown ids are a configuration error
    for (const std::string& id : config.checks) {
        if (std::find(known_checks().begin(), known_checks().end(), id) == known_checks().end()) {
            manifest << "error = unknown check id: " << id << "\n";
            return 2;
        }
    }

    // scenario coefficients must satisfy the declared hypotheses
    const VerificationReport hyp = check_hypotheses(config.scenario.coefficients(),
                                                    config.probe_lo, config.probe_hi,
                                                    config.n_probe);
    if (!hyp.passed) {
        manifest << "error = hypothesis violation: " << hyp.details << "\n";
        return 2;
    }

    std::vector<VerificationReport> reports;
    try {
        reports = run_checks(config);
    } catch (const std::invalid_argument& e) {
        manifest << "error = " << e.what() << "\n";
        return 2;
    }

    bool all_passed = true;
    std::map<std::string, int> counts;
    for (const auto& r : reports) {
        all_passed = all_passed && r.passed;
        const int k = counts[r.check_name]++;
        std::string stem = sanitize_filename(r.check_name);
        if (k > 0) stem += "_" + std::to_string(k);
        if (config.write_json) {
            std::ofstream out(fs::path(config.output_dir) / (stem + ".json"));
            out << report_to_json(r) << "\n";
        }
        if (config.write_csv) {
            std::ofstream out(fs::path(config.output_dir) / (stem + ".csv"));
            out << report_csv_header() << "\n" << report_to_csv_row(r) << "\n";
        }
        manifest << "report " << stem << " passed=" << (r.passed ? "true" : "false") << "\n";
    }
    const auto dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0);
    manifest << "wall_time_seconds = " << dt.count() << "\n";
    return all_passed ? 0 : 1;
}

RunConfig parse_config_text(const std::string& text) {
    RunConfig cfg;
    std::stringstream ss(text);
    std::string line;
    while (std::getline(ss, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        const auto eq = line.find('=');
        if (eq == std::string::npos) continue;
        auto trim = [](std::string s) {
            const auto a = s.find_first_not_of(" \t\r");
            const auto b = s.find_last_not_of(" \t\r");
            return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
        };
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        if (key.empty()) continue;
        if (key == "scenario.id") cfg.scenario.id = val;
        else if (key == "grid.T") cfg.scenario.grid.T = std::stod(val);
        else if (key == "grid.nt") cfg.scenario.grid.nt = std::stoi(val);
        else if (key == "grid.nx") cfg.scenario.grid.nx = std::stoi(val);
        else if (key == "u0") cfg.scenario.u0 = val;
        else if (key == "b") cfg.scenario.b = val;
        else if (key == "sigma") cfg.scenario.sigma = val;
        else if (key == "h") cfg.scenario.h = val;
        else if (key == "paths") cfg.scenario.n_paths = std::stol(val);
        else if (key == "seed") cfg.scenario.seed = std::stoull(val);
        else if (key == "workers") cfg.workers = static_cast<unsigned>(std::stoul(val));
        else if (key == "checks") cfg.checks = parse_string_list(val);
        else if (key == "out") cfg.output_dir = val;
        else if (key == "formats") {
            cfg.write_csv = val.find("csv") != std::string::npos;
            cfg.write_json = val.find("json") != std::string::npos;
        } else if (key == "p") cfg.p_large = std::stod(val);
        else if (key == "p_small") cfg.p_small = std::stod(val);
        else if (key == "q") cfg.q = std::stod(val);
        else if (key == "eps") cfg.eps_list = parse_double_list(val);
        else if (key == "lambdas") cfg.lambdas = parse_double_list(val);
        else if (key == "radii") cfg.radii = parse_double_list(val);
        else if (key == "probe_lo") cfg.probe_lo = std::stod(val);
        else if (key == "probe_hi") cfg.probe_hi = std::stod(val);
        else if (key == "n_probe") cfg.n_probe = std::stoi(val);
        else throw std::invalid_argument("unknown config key: " + key);
    }
    return cfg;
}

RunConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config_text(ss.str());
}

}  // namespace spdelab
