#pragma once

#include <functional>
#include <string>

namespace spdelab {

/// Reaction and diffusion coefficients with their declared constants:
/// |b(x)| <= L_b (1+|x|), |b(x)-b(y)| <= L_b |x-y|,
/// |sigma(x)| <= K_sigma,  |sigma(x)-sigma(y)| <= L_sigma |x-y|.
struct Coefficients {
    std::function<double(double)> b;
    std::function<double(double)> sigma;
    double L_b = 0.0;
    double K_sigma = 0.0;
    double L_sigma = 0.0;
    bool sigma_state_dependent = true;  // false when sigma(u) does not read u
    std::string b_name = "zero";
    std::string sigma_name = "zero";
};

/// Named closed forms: "zero", "constant:c", "affine:a,c", "sine",
/// "bounded-rational:c" (c/(1+x^2)), "clipped-linear:K".
/// Returns the function together with its tightest constants; an unbounded
/// sigma gets K_sigma = +infinity so hypothesis checking can reject it.
std::function<double(double)> make_named_function(const std::string& spec);

Coefficients make_coefficients(const std::string& b_spec, const std::string& sigma_spec);

/// Initial conditions on the grid nodes: "zero", "sine" (sin(pi x)),
/// "sine:a" (a sin(pi x)), "bump" (x(1-x) scaled to peak 1).
double initial_condition_value(const std::string& spec, double x);

}  // namespace spdelab
