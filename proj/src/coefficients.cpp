#include "spdelab/coefficients.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace spdelab {

namespace {

constexpr double kPi = 3.14159265358979323846264338327950288;

struct ParsedSpec {
    std::string name;
    std::vector<double> args;
};

ParsedSpec parse_spec(const std::string& spec) {
    ParsedSpec out;
    const auto colon = spec.find(':');
    out.name = spec.substr(0, colon);
    if (colon != std::string::npos) {
        std::string rest = spec.substr(colon + 1);
        std::size_t pos = 0;
        while (pos < rest.size()) {
            std::size_t used = 0;
            out.args.push_back(std::stod(rest.substr(pos), &used));
            pos += used;
            if (pos < rest.size() && rest[pos] == ',') ++pos;
        }
    }
    return out;
}

double arg_or(const ParsedSpec& s, std::size_t i, double def) {
    return i < s.args.size() ? s.args[i] : def;
}

}  // namespace

std::function<double(double)> make_named_function(const std::string& spec) {
    const ParsedSpec s = parse_spec(spec);
    if (s.name == "zero") return [](double) { return 0.0; };
    if (s.name == "constant") {
        const double c = arg_or(s, 0, 1.0);
        return [c](double) { return c; };
    }
    if (s.name == "affine") {
        const double a = arg_or(s, 0, 1.0), c = arg_or(s, 1, 0.0);
        return [a, c](double x) { return a * x + c; };
    }
    if (s.name == "sine") return [](double x) { return std::sin(x); };
    if (s.name == "bounded-rational") {
        const double c = arg_or(s, 0, 1.0);
        return [c](double x) { return c / (1.0 + x * x); };
    }
    if (s.name == "clipped-linear") {
        const double K = arg_or(s, 0, 1.0);
        return [K](double x) { return std::clamp(x, -K, K); };
    }
    throw std::invalid_argument("unknown coefficient form: " + spec);
}

Coefficients make_coefficients(const std::string& b_spec, const std::string& sigma_spec) {
    Coefficients c;
    c.b_name = b_spec;
    c.sigma_name = sigma_spec;
    c.b = make_named_function(b_spec);
    c.sigma = make_named_function(sigma_spec);

    const ParsedSpec bs = parse_spec(b_spec);
    if (bs.name == "zero") {
        c.L_b = 0.0;
    } else if (bs.name == "constant") {
        c.L_b = std::abs(arg_or(bs, 0, 1.0));
    } else if (bs.name == "affine") {
        c.L_b = std::max(std::abs(arg_or(bs, 0, 1.0)), std::abs(arg_or(bs, 1, 0.0)));
    } else if (bs.name == "sine") {
        c.L_b = 1.0;
    } else if (bs.name == "bounded-rational") {
        const double a = std::abs(arg_or(bs, 0, 1.0));
        c.L_b = a;  // bounded by a and Lipschitz with 3 sqrt(3)/8 a < a
    } else if (bs.name == "clipped-linear") {
        c.L_b = std::max(1.0, std::abs(arg_or(bs, 0, 1.0)));
    } else {
        throw std::invalid_argument("unknown drift form: " + b_spec);
    }

    const ParsedSpec ss = parse_spec(sigma_spec);
    if (ss.name == "zero") {
        c.K_sigma = 0.0;
        c.L_sigma = 0.0;
        c.sigma_state_dependent = false;
    } else if (ss.name == "constant") {
        c.K_sigma = std::abs(arg_or(ss, 0, 1.0));
        c.L_sigma = 0.0;
        c.sigma_state_dependent = false;
    } else if (ss.name == "sine") {
        c.K_sigma = 1.0;
        c.L_sigma = 1.0;
    } else if (ss.name == "bounded-rational") {
        const double a = std::abs(arg_or(ss, 0, 1.0));
        c.K_sigma = a;
        c.L_sigma = a * 3.0 * std::sqrt(3.0) / 8.0;  // max |d/dx (1+x^2)^{-1}|
    } else if (ss.name == "clipped-linear") {
        c.K_sigma = std::abs(arg_or(ss, 0, 1.0));
        c.L_sigma = 1.0;
    } else if (ss.name == "affine") {
        // unbounded: carries an infinite bound so H.2 validation can reject it
        c.K_sigma = std::numeric_limits<double>::infinity();
        c.L_sigma = std::abs(arg_or(ss, 0, 1.0));
    } else {
        throw std::invalid_argument("unknown diffusion form: " + sigma_spec);
    }
    return c;
}

double initial_condition_value(const std::string& spec, double x) {
    const ParsedSpec s = parse_spec(spec);
    if (s.name == "zero") return 0.0;
    if (s.name == "sine") return arg_or(s, 0, 1.0) * std::sin(kPi * x);
    if (s.name == "bump") return 4.0 * x * (1.0 - x);
    throw std::invalid_argument("unknown initial condition: " + spec);
}

}  // namespace spdelab
