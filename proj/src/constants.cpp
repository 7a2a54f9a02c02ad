#include "spdelab/constants.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace spdelab::constants {

namespace {

constexpr double kPi = 3.14159265358979323846264338327950288;
constexpr double kAlphaMargin = 1e-4;  // band shrink for the minimization
constexpr double kDeltaP = 1e-3;       // rejection margin around p = 10
constexpr double kLogDblMax = 709.0;

double log_objective(double T, double p, double a) {
    const ComponentValues c = c_components(T, p, a);
    return c.log_c_prime + c.log_c_double_prime;
}

}  // namespace

double c2() { return 1.0 / std::sqrt(2.0 * kPi); }

AlphaRange alpha_range(double p) {
    const AlphaRange r{3.0 / (2.0 * p), 0.25 - 1.0 / p};
    if (!(r.lo < r.hi))
        throw std::domain_error("alpha_range: empty admissible interval (needs p > 10)");
    return r;
}

ComponentValues c_components(double T, double p, double alpha) {
    if (!(T > 0.0)) throw std::invalid_argument("c_components: T must be positive");
    const AlphaRange r = alpha_range(p);
    if (!(alpha > r.lo && alpha < r.hi))
        throw std::domain_error("c_components: alpha outside the open admissible interval");
    ComponentValues out;
    out.log_c_prime = p * std::log(std::sin(kPi * alpha) / kPi) + std::log(c2()) +
                      (p - 1.0) * std::log((p - 1.0) / (alpha * p - 1.5)) +
                      (alpha * p - 0.5) * std::log(T);
    out.log_c_double_prime = 0.5 * p * std::log(4.0 * c2() * p) +
                             0.5 * (p - 2.0) * std::log((p - 2.0) / (0.5 * p - 2.0 - 2.0 * alpha * p)) +
                             (0.25 * p - 1.0 - alpha * p) * std::log(T);
    return out;
}

double ComponentValues::c_prime() const { return std::exp(log_c_prime); }
double ComponentValues::c_double_prime() const { return std::exp(log_c_double_prime); }

double c_prime_direct(double T, double p, double alpha) {
    return std::pow(std::sin(kPi * alpha) / kPi, p) * c2() *
           std::pow((p - 1.0) / (alpha * p - 1.5), p - 1.0) * std::pow(T, alpha * p - 0.5);
}

double c_double_prime_direct(double T, double p, double alpha) {
    return std::pow(4.0 * c2() * p, 0.5 * p) *
           std::pow((p - 2.0) / (0.5 * p - 2.0 - 2.0 * alpha * p), 0.5 * (p - 2.0)) *
           std::pow(T, 0.25 * p - 1.0 - alpha * p);
}

double MomentBoundConstants::c_moment() const { return std::exp(log_c_moment); }
double MomentBoundConstants::c_closed_form() const { return std::exp(log_c_closed_form); }

MomentBoundConstants c_moment(double T, double p) {
    if (!(T > 0.0)) throw std::invalid_argument("c_moment: T must be positive");
    if (!(p >= 10.0 + kDeltaP))
        throw std::domain_error("c_moment: order must satisfy p >= 10.001");
    const AlphaRange r = alpha_range(p);
    double lo = r.lo + kAlphaMargin;
    double hi = r.hi - kAlphaMargin;
    if (!(lo < hi)) {  // extremely thin band close to p = 10
        lo = r.lo + 0.01 * (r.hi - r.lo);
        hi = r.hi - 0.01 * (r.hi - r.lo);
    }

    // golden-section search; the log objective is empirically unimodal
    const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
    double a = lo, b = hi;
    double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
    double f1 = log_objective(T, p, x1), f2 = log_objective(T, p, x2);
    while (b - a > 1e-12) {
        if (f1 < f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - gr * (b - a);
            f1 = log_objective(T, p, x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + gr * (b - a);
            f2 = log_objective(T, p, x2);
        }
    }

    MomentBoundConstants out;
    out.T = T;
    out.p = p;
    out.alpha_star = 0.5 * (a + b);
    const ComponentValues comp = c_components(T, p, out.alpha_star);
    out.log_c_moment = comp.log_c_prime + comp.log_c_double_prime;
    out.c_prime = comp.c_prime();
    out.c_double_prime = comp.c_double_prime();
    out.log_c_closed_form = 0.5 * p * std::log(p) + (0.25 * p - 1.5) * std::log(T) +
                            p * std::log(2.0 / kPi) +
                            (0.5 * p + 1.0) * std::log(1.0 / std::sqrt(2.0 * kPi)) +
                            (1.5 * p - 2.0) * std::log((6.0 * p - 8.0) / (p - 10.0));
    return out;
}

double log_c_small_p(double T, double p, double q, SmallPReading reading) {
    if (!(p > 0.0)) throw std::invalid_argument("c_small_p: p must be positive");
    if (!(q > 10.0) || !(q > p))
        throw std::domain_error("c_small_p: requires q > 10 and q > p");
    double log_c;
    if (reading == SmallPReading::exponent_q) {
        log_c = c_moment(T, q).log_c_moment;
    } else {
        if (!(p >= 10.0 + kDeltaP))
            throw std::domain_error(
                "c_small_p: the literal reading needs p > 10, which never holds on this "
                "operation's domain p <= 10; use exponent_q");
        log_c = c_moment(T, p).log_c_moment;
    }
    // log(1 + e^x) without overflow
    const double x = log_c + std::log(q / (q - p));
    return x > 0 ? x + std::log1p(std::exp(-x)) : std::log1p(std::exp(x));
}

double c_small_p(double T, double p, double q, SmallPReading reading) {
    const double lv = log_c_small_p(T, p, q, reading);
    if (lv > kLogDblMax)
        throw std::overflow_error("c_small_p: value exceeds double range; use log_c_small_p");
    return std::exp(lv);
}

double SmallPEpsConstant::value() const { return std::exp(log_value); }

SmallPEpsConstant c_small_p_eps(double T, double p, double eps) {
    if (!(eps > 0.0)) throw std::invalid_argument("c_small_p_eps: eps must be positive");
    if (!(p > 0.0) || p > 10.0)
        throw std::invalid_argument("c_small_p_eps: requires 0 < p <= 10");
    SmallPEpsConstant best;
    bool first = true;
    for (int k = 0; k <= 24; ++k) {
        const double q = 10.0 + std::ldexp(0.5, k);  // 10 + 2^k * 0.5
        const double lcq = log_c_small_p(T, p, q, SmallPReading::exponent_q);
        // Young constant: p ((q-p) C / eps)^{(q-p)/p} q^{-q/p}
        const double lyoung = std::log(p) +
                              ((q - p) / p) * (std::log(q - p) + lcq - std::log(eps)) -
                              (q / p) * std::log(q);
        const double total = lcq + lyoung;
        if (first || total < best.log_value) {
            best.log_value = total;
            best.q_star = q;
            first = false;
        }
    }
    return best;
}

double TciConstant::value() const { return std::exp(log_value); }

TciConstant c_tci(double T, double L_b, double L_sigma, double K_sigma) {
    if (!(T > 0.0)) throw std::invalid_argument("c_tci: T must be positive");
    if (L_b < 0.0 || L_sigma < 0.0 || K_sigma < 0.0)
        throw std::invalid_argument("c_tci: constants must be nonnegative");
    const double root = std::sqrt(2.0 * T / kPi);
    TciConstant out;
    const double logK2 =
        K_sigma > 0.0 ? 2.0 * std::log(K_sigma) : -std::numeric_limits<double>::infinity();
    if (L_sigma == 0.0) {
        out.log_value = logK2 + std::log(3.0 * root) + 3.0 * L_b * L_b * T * root;
        return out;
    }
    const double eps_max = 1.0 / (3.0 * L_sigma * L_sigma);
    double best = std::numeric_limits<double>::infinity();
    for (int i = 0; i < 64; ++i) {
        // log-spaced over (0, eps_max), away from the degenerate endpoint
        const double eps = eps_max * std::exp(-12.0 * (1.0 - (i + 0.5) / 64.0));
        const double den = 1.0 - 3.0 * eps * L_sigma * L_sigma;
        const double lce = c_small_p_eps(T, 2.0, eps).log_value;
        // the entropy-rate exponent: astronomically large once L_sigma > 0
        const double arg = 3.0 * L_b * L_b * T * root / den +
                           3.0 * std::exp(lce) * L_sigma * L_sigma * T / den;
        const double v = std::log(3.0 * root / den) + arg;
        if (v < best) best = v;
    }
    out.log_value = logK2 + best;
    return out;
}

}  // namespace spdelab::constants
