#pragma once

#include <string>
#include <vector>

#include "entropy_grid/classes.hpp"

namespace entropy_grid {

// Two-sided entropy estimate in natural-log domain.
//
// Unit convention, per operation: the shell-sum evaluators (abstract_bounds,
// ball_bounds) produce the entropy itself in nats, while the closed-form
// class evaluators (analytic/entire/functional) produce ln(bound) because
// those bound values overflow double range long before eps gets interesting.
// Cross-checks between the two families must exponentiate the latter.
struct EntropyEstimate {
    double eps = 0.0;          // 0 when only ln_eps is representable
    long double ln_eps = 0.0L;
    bool lower_available = true;
    bool lower_valid = true;
    bool upper_valid = true;
    long double lower_ln = 0.0L;
    long double upper_ln = 0.0L;
    std::string lower_condition;  // violated inequality when lower_valid is false
    std::string upper_condition;
    bool extended_precision_used = false;
    std::vector<std::string> warnings;
};

// Shell-sum entropy bounds for a product of coefficient balls. N picks how
// many shells feed the separation lower bound (any N >= 1 is sound; terms
// go negative when N overshoots and a warning is emitted). M must be at
// least the tail index for eps/2.
EntropyEstimate abstract_bounds(const ShellSpec& spec, double eps, long long N,
                                long long M);

// Euclidean ball of radius r in dimension d.
EntropyEstimate ball_bounds(int d, double r, double eps);

// Closed-form bounds for the analytic class; ln-of-bound semantics.
// Out-of-range eps sets the validity flag and leaves the value NaN.
EntropyEstimate analytic_bounds(const AnalyticClassParams& params, double eps);
EntropyEstimate analytic_bounds_ln(const AnalyticClassParams& params,
                                   long double ln_eps);

// Asymptotic envelope of the analytic entropy: H / pivot lies in [lo, hi]
// as eps -> 0, with pivot = (ln(1/rho)/(q+1)!) * (ln(1/eps)/ln(1/rho))^{q+1}.
struct AnalyticEnvelope {
    long double lo = 0.0L;
    long double hi = 0.0L;
    long double pivot_ln = 0.0L;
};

AnalyticEnvelope analytic_envelope(const AnalyticClassParams& params, double eps);

// Closed-form bounds for the entire class; ln-of-bound semantics.
EntropyEstimate entire_bounds(const EntireClassParams& params, double eps);
EntropyEstimate entire_bounds_ln(const EntireClassParams& params,
                                 long double ln_eps);

// Asymptotic envelope of the entire entropy, both sides as ln values:
// lo_ln = ln( (1/(2 Q!)) * L^{Q+1} / (2 LL)^Q ),
// hi_ln = ln( (1/Q!) * (2 L)^{Q+1} / LL^Q ),  L = ln(1/eps), LL = ln L.
// The gap hi_ln - lo_ln is exactly (2Q+2) ln 2.
struct EntireEnvelope {
    long double lo_ln = 0.0L;
    long double hi_ln = 0.0L;
};

EntireEnvelope entire_envelope(const EntireClassParams& params, double eps);
EntireEnvelope entire_envelope_ln(const EntireClassParams& params,
                                  long double ln_eps);

// Upper bound for the functional class; no lower bound is available.
// Violating the eps validity cap is an error here, not a flag.
EntropyEstimate functional_upper(const FunctionalClassParams& params, double eps);

// Scale parameter gamma = 2e ln(1/eps) / (q ln(1/rho)) driving the
// functional bound; exposed for anchor checks.
long double functional_gamma(const FunctionalClassParams& params, double eps);

// ln of the largest eps accepted by the analytic upper bound.
long double analytic_upper_threshold_ln(const AnalyticClassParams& params);

// ln of the largest eps accepted by the entire upper/lower bounds.
long double entire_upper_threshold_ln(const EntireClassParams& params);
long double entire_lower_threshold_ln(const EntireClassParams& params);

// ln of the functional-class validity cap min(analytic threshold, 4 rho^q / sqrt(1-rho^2)).
long double functional_threshold_ln(const FunctionalClassParams& params);

}  // namespace entropy_grid
