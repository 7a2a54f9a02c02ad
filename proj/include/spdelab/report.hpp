#pragma once

#include <cstdint>
#include <string>

#include "spdelab/grid.hpp"

namespace spdelab {

/// Outcome of one verification check.  For one-sided inequality checks the
/// pass rule is  empirical_estimate - 2 std_error <= theoretical_bound.
struct VerificationReport {
    std::string check_name;
    double theoretical_bound = 0.0;
    double empirical_estimate = 0.0;
    double std_error = 0.0;
    long n_paths = 0;
    bool passed = false;
    std::string details;
    std::uint64_t seed = 0;
    SpaceTimeGrid grid{};
    std::string scenario_id;
};

inline bool one_sided_pass(double estimate, double std_error, double bound,
                           double margin = 2.0) {
    return estimate - margin * std_error <= bound;
}

/// JSON object per report.  Non-finite numbers are emitted as the strings
/// "inf" / "-inf" / "nan" since JSON has no literal for them.
std::string report_to_json(const VerificationReport& r);

std::string report_csv_header();
std::string report_to_csv_row(const VerificationReport& r);

}  // namespace spdelab
