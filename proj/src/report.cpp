#include "spdelab/report.hpp"

#include <cmath>
#include <cstdio>

#include "json.hpp"

namespace spdelab {

namespace {

nlohmann::json number_or_string(double v) {
    if (std::isfinite(v)) return v;
    if (std::isnan(v)) return "nan";
    return v > 0 ? "inf" : "-inf";
}

std::string format_double(double v) {
    if (!std::isfinite(v)) return std::isnan(v) ? "nan" : (v > 0 ? "inf" : "-inf");
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string quote_csv(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += "\"\"";
        else out += c;
    }
    out += '"';
    return out;
}

}  // namespace

std::string report_to_json(const VerificationReport& r) {
    nlohmann::json j;
    j["check_name"] = r.check_name;
    j["theoretical_bound"] = number_or_string(r.theoretical_bound);
    j["empirical_estimate"] = number_or_string(r.empirical_estimate);
    j["std_error"] = number_or_string(r.std_error);
    j["n_paths"] = r.n_paths;
    j["passed"] = r.passed;
    j["seed"] = r.seed;
    j["grid"] = {{"T", r.grid.T}, {"nt", r.grid.nt}, {"nx", r.grid.nx}};
    j["scenario_id"] = r.scenario_id;
    j["details"] = r.details;
    return j.dump(2);
}

std::string report_csv_header() {
    return "check_name,theoretical_bound,empirical_estimate,std_error,n_paths,passed,seed,T,nt,"
           "nx,scenario_id,details";
}

std::string report_to_csv_row(const VerificationReport& r) {
    std::string row;
    row += r.check_name;
    row += ',' + format_double(r.theoretical_bound);
    row += ',' + format_double(r.empirical_estimate);
    row += ',' + format_double(r.std_error);
    row += ',' + std::to_string(r.n_paths);
    row += ',';
    row += r.passed ? "true" : "false";
    row += ',' + std::to_string(r.seed);
    row += ',' + format_double(r.grid.T);
    row += ',' + std::to_string(r.grid.nt);
    row += ',' + std::to_string(r.grid.nx);
    row += ',' + quote_csv(r.scenario_id);
    row += ',' + quote_csv(r.details);
    return row;
}

}  // namespace spdelab
