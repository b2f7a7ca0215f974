#pragma once

#include <functional>
#include <string>
#include <vector>

#include "entropy_grid/chebyshev.hpp"
#include "entropy_grid/combinatorics.hpp"

namespace entropy_grid {

// Unit ball of functions analytic on a neighborhood of the cube, with
// coefficient shells decaying like rho^j. q is the ambient dimension.
struct AnalyticClassParams {
    double rho = 0.5;
    int q = 1;
};

void validate(const AnalyticClassParams& params);

// Entire functions of exponential type tau on C^Q, bounded by 1 on R^Q,
// restricted to the box with the given radii (defaults to the unit box).
// c0 is the leading constant of the shell envelope; the class definition
// uses 1, membership validation of generated samples uses 2.
struct EntireClassParams {
    int Q = 1;
    double tau = 1.0;
    std::vector<double> radii;
    int c0 = 1;
};

void validate(const EntireClassParams& params);

// True iff tau lies in the range where the closed-form bounds are sharpest.
// Outside it the formulas still evaluate; callers should warn, not reject.
bool tau_in_stated_range(const EntireClassParams& params);

// Class of functionals on the analytic class: parameterized by the same
// (q, rho) pair; the coordinate weights follow a layered schedule.
struct FunctionalClassParams {
    int q = 1;
    double rho = 0.5;
};

void validate(const FunctionalClassParams& params);

enum class TruncationKind {
    kUpperNet,        // smallest degree whose tail is below eps/2
    kLowerSeparated,  // largest degree whose shells stay 2*eps-separated
};

// ln of the shell envelope Delta_j for each class. The entire-class
// envelope at j = 0 is defined as c0 * (2*pi/Q)^{Q/2}.
long double shell_radius_ln(const AnalyticClassParams& params, long long j);
long double shell_radius_ln(const EntireClassParams& params, long long j);
double shell_radius(const AnalyticClassParams& params, long long j);
double shell_radius(const EntireClassParams& params, long long j);

// Truncation degrees used by the closed-form entropy bounds. Throws
// validation_error when eps is outside the regime where the degree is
// well defined. The _ln variants take ln(eps) directly so callers can
// probe scales far below the double floor.
long long truncation_index(const AnalyticClassParams& params, double eps,
                           TruncationKind kind);
long long truncation_index_ln(const AnalyticClassParams& params,
                              long double ln_eps, TruncationKind kind);
long long truncation_index(const EntireClassParams& params, double eps,
                           TruncationKind kind);
long long truncation_index_ln(const EntireClassParams& params,
                              long double ln_eps, TruncationKind kind);

// Helper scale used by the entire-class lower truncation: grows like
// 16*a*ln(a)/e + 2 with a = max(3*e^2*tau, 128).
long double entire_xi(double tau);

// Layered coordinate schedule for the functional class: coordinate j in
// layer ell gets radius rho^ell and weight 1/(2 e^{3/2} pi rho^ell).
struct ScheduleEntry {
    double r = 0.0;
    double v = 0.0;
    long long ell = 0;
};

ScheduleEntry schedule_rv(const FunctionalClassParams& params, long long j);

// Per-shell membership audit of a concrete series against a class envelope.
struct ShellCheck {
    int j = 0;
    double measured = 0.0;
    double allowed = 0.0;
    bool pass = false;
};

struct MembershipReport {
    std::vector<ShellCheck> shells;
    bool pass = true;
    int first_failing = -1;
};

// L2 shell norms against rho^j, with a tiny relative tolerance for
// quadrature noise.
MembershipReport membership_check(const ChebSeries& series,
                                  const AnalyticClassParams& params,
                                  int grid = 64);

// Sup shell norms against Lambda(j); the envelope is loose by design, so
// the tolerance is a flat 5 percent.
MembershipReport membership_check(const ChebSeries& series,
                                  const EntireClassParams& params,
                                  int grid = 64);

// Least-squares slope of ln(shell norm) over the trailing all-positive run;
// exp(slope) recovers rho for geometric decay. Needs at least five usable
// entries.
double estimate_rho(const std::vector<double>& shell_norms);

// ln of sum_{n > N} rho^n (l1) and ln of sqrt(sum_{n > N} rho^{2n}) (l2).
long double analytic_tail_l1_ln(const AnalyticClassParams& params, long long N);
long double analytic_tail_l2_ln(const AnalyticClassParams& params, long long N);

// Abstract shell description consumed by the generic entropy bounds:
// per-shell radii Delta_j, shell dimensions b_j, the product-norm exponents
// p and r, and the norm-equivalence constants A(M), B(N) (as ln values).
// tail_index, when set, must return the smallest m with
// sum_{n >= m} Delta_n <= target; otherwise a generic summation with a
// geometric-tail certificate is used.
struct ShellSpec {
    std::function<long double(long long)> ln_delta;
    std::function<BigInt(long long)> bdim;
    double p = 2.0;
    double r = 2.0;
    std::function<long double(long long)> ln_A;
    std::function<long double(long long)> ln_B;
    std::function<long long(long double)> tail_index;
};

// Smallest m with sum_{n >= m} Delta_n <= exp(ln_target). Uses the spec's
// override when present; otherwise sums ln_delta directly, certifying the
// far tail once eight consecutive ratios stay below 0.97. Throws
// validation_error if no certificate emerges within 200000 shells.
long long shell_tail_index(const ShellSpec& spec, long double ln_target);

ShellSpec make_analytic_shell_spec(const AnalyticClassParams& params);
ShellSpec make_entire_shell_spec(const EntireClassParams& params);

}  // namespace entropy_grid
