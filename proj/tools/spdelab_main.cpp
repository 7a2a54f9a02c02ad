// Command-line front end: kernel tables, constant tables, path simulation,
// verification batches and refinement studies.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "spdelab/constants.hpp"
#include "spdelab/convolution.hpp"
#include "spdelab/estimators.hpp"
#include "spdelab/runner.hpp"

namespace {

using namespace spdelab;

std::string default_out_dir() {
    const char* env = std::getenv("SPDELAB_OUT_DIR");
    return env ? env : ".";
}

std::ostream& open_or_stdout(std::ofstream& file, const std::string& path) {
    if (path.empty() || path == "-") return std::cout;
    file.open(path);
    if (!file) throw std::runtime_error("cannot open " + path);
    return file;
}

int cmd_kernel_table(const std::vector<double>& ts, double step, const std::string& out_path) {
    std::ofstream file;
    std::ostream& out = open_or_stdout(file, out_path);
    out << "t,x,y,value\n";
    char buf[120];
    const KernelParams params;
    for (double t : ts) {
        for (double x = 0.0; x <= 1.0 + 1e-12; x += step) {
            for (double y = 0.0; y <= 1.0 + 1e-12; y += step) {
                const double xv = std::min(x, 1.0), yv = std::min(y, 1.0);
                std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g,%.17g\n", t, xv, yv,
                              kernel_value(t, xv, yv, params));
                out << buf;
            }
        }
    }
    return 0;
}

int cmd_constants(double T, double p, double p_small, double q, std::vector<double> eps_list,
                  double L_b, double L_sigma, double K_sigma, const std::string& format,
                  const std::string& out_path) {
    const auto mbc = constants::c_moment(T, p);
    nlohmann::json j;
    j["T"] = T;
    j["p"] = p;
    j["alpha_star"] = mbc.alpha_star;
    j["c_prime"] = mbc.c_prime;
    j["c_double_prime"] = mbc.c_double_prime;
    j["c_moment"] = mbc.c_moment();
    j["log_c_moment"] = mbc.log_c_moment;
    j["c_closed_form"] = mbc.c_closed_form();
    j["log_c_closed_form"] = mbc.log_c_closed_form;
    j["c_small_p"] = constants::c_small_p(T, p_small, q);
    j["p_small"] = p_small;
    j["q"] = q;
    for (double eps : eps_list) {
        const auto c = constants::c_small_p_eps(T, p_small, eps);
        j["c_small_p_eps"].push_back(
            {{"eps", eps}, {"log_value", c.log_value}, {"q_star", c.q_star}});
    }
    const auto tci = constants::c_tci(T, L_b, L_sigma, K_sigma);
    j["L_b"] = L_b;
    j["L_sigma"] = L_sigma;
    j["K_sigma"] = K_sigma;
    j["log_c_tci"] = tci.log_value;
    if (std::isfinite(tci.value())) j["c_tci"] = tci.value();

    std::ofstream file;
    std::ostream& out = open_or_stdout(file, out_path);
    if (format == "json") {
        out << j.dump(2) << "\n";
        return 0;
    }
    out << "key,value\n";
    for (auto it = j.begin(); it != j.end(); ++it) {
        if (it.value().is_array()) {
            for (const auto& e : it.value())
                out << it.key() << "[eps=" << e["eps"].dump() << "],log=" << e["log_value"].dump()
                    << "\n";
        } else {
            out << it.key() << "," << it.value().dump() << "\n";
        }
    }
    return 0;
}

int cmd_simulate(Scenario scn, long paths, const std::string& out_dir, bool save_noise_files) {
    namespace fs = std::filesystem;
    fs::create_directories(out_dir);
    const Coefficients coeffs = scn.coefficients();
    const auto u0 = scn.initial_row();
    const auto P = kernel_matrix(scn.grid, scn.grid.dt(), scn.kernel);
    for (long path = 0; path < paths; ++path) {
        const WhiteNoiseSample W =
            sample_white_noise(scn.grid, scn.seed, static_cast<std::uint64_t>(path));
        const RandomField u = solve_mild(u0, coeffs, W, scn.grid, P);
        const std::string stem = "path_" + std::to_string(path);
        save_field_csv(u, (fs::path(out_dir) / (stem + ".csv")).string());
        save_field_binary(u, (fs::path(out_dir) / (stem + ".bin")).string());
        if (save_noise_files) save_noise(W, (fs::path(out_dir) / (stem + "_noise.bin")).string());
    }
    return 0;
}

int cmd_convergence_factorization(std::uint64_t seed, int paths, const std::string& out_path) {
    std::ofstream file;
    std::ostream& out = open_or_stdout(file, out_path);
    out << "nt,nx,residual,relative_residual\n";
    const std::vector<std::pair<int, int>> grids = {{256, 32}, {512, 48}, {1024, 64}};
    const auto fp = FactorizationParams::for_order(12.0);
    char buf[120];
    for (auto [nt, nx] : grids) {
        const SpaceTimeGrid grid{1.0, nt, nx};
        double res_acc = 0.0, sup_acc = 0.0;
        for (int path = 0; path < paths; ++path) {
            const auto W = sample_white_noise(grid, seed, static_cast<std::uint64_t>(path));
            RandomField ones(grid);
            std::fill(ones.values.begin(), ones.values.end(), 1.0);
            const RandomField direct = convolve_direct(ones, W, grid);
            const RandomField composed =
                apply_j_alpha_minus_one(apply_j_alpha(ones, W, fp, grid), fp, grid);
            double sup = 0.0;
            for (std::size_t c = 0; c < direct.values.size(); ++c)
                sup = std::max(sup, std::abs(direct.values[c] - composed.values[c]));
            res_acc += sup;
            sup_acc += direct.sup_abs();
        }
        std::snprintf(buf, sizeof(buf), "%d,%d,%.10g,%.10g\n", nt, nx, res_acc / paths,
                      res_acc / sup_acc);
        out << buf;
    }
    return 0;
}

int cmd_convergence_solver(std::uint64_t seed, int paths, const std::string& out_path) {
    std::ofstream file;
    std::ostream& out = open_or_stdout(file, out_path);
    out << "level,nt,nx,mean_sup_diff\n";
    // nested refinement: nt x4, (nx+1) x2 per level; cells aggregate exactly
    const std::vector<std::pair<int, int>> levels = {{64, 10}, {256, 21}, {1024, 43}};
    const Coefficients coeffs = make_coefficients("zero", "bounded-rational:1");
    char buf[120];
    std::vector<double> diff(levels.size() - 1, 0.0);
    for (int path = 0; path < paths; ++path) {
        const SpaceTimeGrid fine_grid{1.0, levels.back().first, levels.back().second};
        std::vector<WhiteNoiseSample> noises(levels.size());
        noises.back() = sample_white_noise(fine_grid, seed, static_cast<std::uint64_t>(path));
        for (int L = static_cast<int>(levels.size()) - 2; L >= 0; --L)
            noises[L] = coarsen_noise(noises[L + 1], 4, 2);
        std::vector<RandomField> sols(levels.size());
        for (std::size_t L = 0; L < levels.size(); ++L) {
            const SpaceTimeGrid g{1.0, levels[L].first, levels[L].second};
            std::vector<double> u0(g.nx);
            for (int i = 0; i < g.nx; ++i) u0[i] = initial_condition_value("sine", g.node(i));
            sols[L] = solve_mild(u0, coeffs, noises[L], g);
        }
        for (std::size_t L = 0; L + 1 < levels.size(); ++L) {
            const auto& coarse = sols[L];
            const auto& fine = sols[L + 1];
            double sup = 0.0;
            for (int n = 0; n <= coarse.grid.nt; ++n)
                for (int i = 0; i < coarse.grid.nx; ++i)
                    sup = std::max(sup, std::abs(coarse.at(n, i) - fine.at(4 * n, 2 * i + 1)));
            diff[L] += sup;
        }
    }
    for (std::size_t L = 0; L + 1 < levels.size(); ++L) {
        std::snprintf(buf, sizeof(buf), "%zu,%d,%d,%.10g\n", L, levels[L].first, levels[L].second,
                      diff[L] / paths);
        out << buf;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"stochastic reaction-diffusion verification laboratory"};
    app.require_subcommand(1);

    // kernel-table
    auto* kt = app.add_subcommand("kernel-table", "dump heat kernel values as CSV");
    std::vector<double> kt_t{0.5};
    double kt_step = 0.1;
    std::string kt_out;
    kt->add_option("--t", kt_t, "kernel times");
    kt->add_option("--step", kt_step, "x/y step");
    kt->add_option("--out", kt_out, "output file (default stdout)");

    // constants
    auto* ct = app.add_subcommand("constants", "print the explicit constants");
    double ct_T = 1.0, ct_p = 12.0, ct_ps = 2.0, ct_q = 12.0, ct_lb = 0.0, ct_ls = 0.0,
           ct_ks = 1.0;
    std::vector<double> ct_eps{0.1, 0.5};
    std::string ct_format = "csv", ct_out;
    ct->add_option("--T", ct_T, "horizon");
    ct->add_option("--p", ct_p, "moment order (> 10)");
    ct->add_option("--p-small", ct_ps, "small order (<= 10)");
    ct->add_option("--q", ct_q, "auxiliary order (> 10)");
    ct->add_option("--eps", ct_eps, "epsilon values");
    ct->add_option("--Lb", ct_lb, "drift constant");
    ct->add_option("--Lsigma", ct_ls, "diffusion Lipschitz constant");
    ct->add_option("--Ksigma", ct_ks, "diffusion bound");
    ct->add_option("--format", ct_format, "csv or json");
    ct->add_option("--out", ct_out, "output file (default stdout)");

    // scenario flags shared by simulate and verify
    auto add_scenario_flags = [](CLI::App* cmd, Scenario& scn) {
        cmd->add_option("--T", scn.grid.T, "horizon");
        cmd->add_option("--nt", scn.grid.nt, "time steps");
        cmd->add_option("--nx", scn.grid.nx, "interior space nodes");
        cmd->add_option("--u0", scn.u0, "initial condition form");
        cmd->add_option("--b", scn.b, "drift form");
        cmd->add_option("--sigma", scn.sigma, "diffusion form");
        cmd->add_option("--h-drift", scn.h, "Girsanov drift form");
        cmd->add_option("--seed", scn.seed, "master seed");
        cmd->add_option("--scenario", scn.id, "scenario id");
    };

    // simulate
    auto* sim = app.add_subcommand("simulate", "solve sample paths and write fields");
    Scenario sim_scn;
    long sim_paths = 1;
    bool sim_noise = false;
    std::string sim_out = default_out_dir();
    add_scenario_flags(sim, sim_scn);
    sim->add_option("--paths", sim_paths, "number of paths");
    sim->add_flag("--save-noise", sim_noise, "persist noise samples");
    sim->add_option("--out", sim_out, "output directory");

    // verify
    auto* ver = app.add_subcommand("verify", "run verification checks");
    Scenario ver_scn;
    ver_scn.sigma = "constant:1";
    std::vector<std::string> ver_checks;
    std::string ver_config, ver_out = default_out_dir(), ver_format = "csv,json";
    unsigned ver_workers = 1;
    long ver_paths = 1000;
    double ver_p = 12.0, ver_ps = 2.0, ver_q = 12.0;
    std::vector<double> ver_eps{0.1, 0.5}, ver_lambdas{0.5, 1.0, 2.0};
    add_scenario_flags(ver, ver_scn);
    ver->add_option("checks", ver_checks, "check identifiers");
    ver->add_option("--config", ver_config, "flat key=value config file");
    ver->add_option("--paths", ver_paths, "ensemble size");
    ver->add_option("--workers", ver_workers, "worker threads");
    ver->add_option("--out", ver_out, "output directory");
    ver->add_option("--format", ver_format, "subset of csv,json");
    ver->add_option("--p", ver_p, "moment order");
    ver->add_option("--p-small", ver_ps, "small order");
    ver->add_option("--q", ver_q, "auxiliary order");
    ver->add_option("--eps", ver_eps, "epsilon list");
    ver->add_option("--lambdas", ver_lambdas, "tail levels");

    // convergence
    auto* cv = app.add_subcommand("convergence", "refinement studies");
    std::string cv_kind = "factorization", cv_out;
    std::uint64_t cv_seed = 1;
    int cv_paths = 4;
    cv->add_option("kind", cv_kind, "factorization or solver")->required();
    cv->add_option("--seed", cv_seed, "master seed");
    cv->add_option("--paths", cv_paths, "paths per grid");
    cv->add_option("--out", cv_out, "output file (default stdout)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (kt->parsed()) return cmd_kernel_table(kt_t, kt_step, kt_out);
        if (ct->parsed())
            return cmd_constants(ct_T, ct_p, ct_ps, ct_q, ct_eps, ct_lb, ct_ls, ct_ks, ct_format,
                                 ct_out);
        if (sim->parsed()) return cmd_simulate(sim_scn, sim_paths, sim_out, sim_noise);
        if (ver->parsed()) {
            RunConfig cfg;
            if (!ver_config.empty()) cfg = parse_config_file(ver_config);
            else {
                cfg.scenario = ver_scn;
                cfg.scenario.n_paths = ver_paths;
                cfg.checks = ver_checks;
                cfg.workers = ver_workers;
                cfg.output_dir = ver_out;
                cfg.p_large = ver_p;
                cfg.p_small = ver_ps;
                cfg.q = ver_q;
                cfg.eps_list = ver_eps;
                cfg.lambdas = ver_lambdas;
                cfg.write_csv = ver_format.find("csv") != std::string::npos;
                cfg.write_json = ver_format.find("json") != std::string::npos;
            }
            if (cfg.checks.empty()) {
                std::cerr << "verify: no checks given\n";
                return 2;
            }
            return spdelab::run(cfg);
        }
        if (cv->parsed()) {
            if (cv_kind == "factorization")
                return cmd_convergence_factorization(cv_seed, cv_paths, cv_out);
            if (cv_kind == "solver") return cmd_convergence_solver(cv_seed, cv_paths, cv_out);
            std::cerr << "convergence: unknown kind " << cv_kind << "\n";
            return 2;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
