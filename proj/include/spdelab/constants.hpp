#pragma once

namespace spdelab::constants {

/// C_2 = 1/sqrt(2 pi): the kernel square-integral satisfies
/// int_0^1 p_t(x,y)^2 dy <= C_2 t^{-1/2}.
double c2();

struct AlphaRange {
    double lo;  // 3/(2p)
    double hi;  // 1/4 - 1/p
};

/// Admissible exponent band; nonempty exactly when p > 10 (throws otherwise).
AlphaRange alpha_range(double p);

struct ComponentValues {
    double log_c_prime;
    double log_c_double_prime;
    double c_prime() const;
    double c_double_prime() const;
};

/// The two factors of the moment-bound constant at a given admissible alpha,
/// evaluated in log space:
///   C' = |sin(pi a)/pi|^p C2 ((p-1)/(a p - 3/2))^{p-1} T^{a p - 1/2}
///   C'' = (4 C2 p)^{p/2} ((p-2)/(p/2 - 2 - 2 a p))^{(p-2)/2} T^{p/4 - 1 - a p}
ComponentValues c_components(double T, double p, double alpha);

/// Naive products of the same formulas; may overflow to inf.  Used to
/// cross-check the log-space path.
double c_prime_direct(double T, double p, double alpha);
double c_double_prime_direct(double T, double p, double alpha);

struct MomentBoundConstants {
    double T = 0.0;
    double p = 0.0;
    double alpha_star = 0.0;
    double log_c_moment = 0.0;       // min over alpha of log(C' C'')
    double log_c_closed_form = 0.0;  // closed-form upper bound
    double c_prime = 0.0;            // components at alpha_star
    double c_double_prime = 0.0;
    double c_moment() const;
    double c_closed_form() const;
};

/// Minimizes C' C'' over the admissible band (shrunk by 1e-4 at each end)
/// by golden-section search on the log objective, and evaluates the
/// closed-form bound
///   p^{p/2} T^{p/4-3/2} (2/pi)^p (2 pi)^{-(p/2+1)/2} ((6p-8)/(p-10))^{3p/2-2}.
/// Requires p >= 10 + 1e-3; orders at or below the blow-up are rejected.
MomentBoundConstants c_moment(double T, double p);

/// The constant of the small-order bound reads "1 + C q/(q-p)" where C comes
/// from applying the large-order estimate at exponent q; `exponent_q`
/// evaluates it as C_{T,q} (the computable reading), `literal_p` as C_{T,p}
/// (which requires p > 10 and exists only to expose the alternative).
enum class SmallPReading { exponent_q, literal_p };

double log_c_small_p(double T, double p, double q,
                     SmallPReading reading = SmallPReading::exponent_q);
/// Natural-scale value; throws std::overflow_error rather than returning inf.
double c_small_p(double T, double p, double q,
                 SmallPReading reading = SmallPReading::exponent_q);

struct SmallPEpsConstant {
    double log_value = 0.0;
    double q_star = 0.0;  // the probed order attaining the grid minimum
    double value() const; // may overflow to inf; log_value is always finite
};

/// Grid minimum over q in {10 + 2^k/2 : k = 0..24} of C_{T,p,q} x the Young
/// constant p ((q-p) C_{T,p,q} / eps)^{(q-p)/p} q^{-q/p}.  An upper bound
/// for the infimum over q > 10, which is the safe direction for one-sided
/// verification.
SmallPEpsConstant c_small_p_eps(double T, double p, double eps);

struct TciConstant {
    double log_value = 0.0;
    double value() const;  // exp(log_value); inf when not representable
};

/// Transportation-cost constant
///   K^2 min_eps { 3/(1-3 e L^2) sqrt(2T/pi)
///                 exp( 3 Lb^2 T sqrt(2T/pi)/(1-3 e L^2)
///                      + 3 C_{T,2,eps} L^2 T/(1-3 e L^2) ) }
/// over 64 log-spaced eps in (0, 1/(3 L^2)); for L = 0 the eps dependence
/// vanishes.  The natural-scale value can overflow for L > 0 (C_{T,2,eps}
/// is astronomically large), so the log is the primary representation.
TciConstant c_tci(double T, double L_b, double L_sigma, double K_sigma);

}  // namespace spdelab::constants
