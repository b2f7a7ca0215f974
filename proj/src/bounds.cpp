#include "entropy_grid/bounds.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "entropy_grid/errors.hpp"

namespace entropy_grid {

namespace {

constexpr long double kPi = std::numbers::pi_v<long double>;
constexpr long double kE = std::numbers::e_v<long double>;
constexpr long double kLn2 = std::numbers::ln2_v<long double>;
const long double kNegInf = -std::numeric_limits<long double>::infinity();
const long double kNaN = std::numeric_limits<long double>::quiet_NaN();

// Flags any intermediate whose exponential would overflow double range.
struct XpTracker {
    bool used = false;
    long double track(long double v) {
        if (std::isfinite(static_cast<double>(v)) == false || std::fabs(v) > 700.0L) {
            used = true;
        }
        return v;
    }
};

long double lse(long double a, long double b) {
    if (a == kNegInf) return b;
    if (b == kNegInf) return a;
    const long double hi = std::max(a, b);
    return hi + std::log1p(std::exp(-std::fabs(a - b)));
}

double eps_from_ln(long double ln_eps) {
    return static_cast<double>(std::exp(ln_eps));
}

}  // namespace

EntropyEstimate abstract_bounds(const ShellSpec& spec, double eps, long long N,
                                long long M) {
    if (!(eps > 0.0)) throw validation_error("abstract bounds: eps must be positive");
    if (N < 1) throw validation_error("abstract bounds: N must be at least 1");
    if (M < 0) throw validation_error("abstract bounds: M must be nonnegative");
    const long double ln_eps = std::log(static_cast<long double>(eps));
    const long long required = shell_tail_index(spec, ln_eps - kLn2);
    if (M < required) {
        throw validation_error(
            "abstract bounds: M is below the tail index for eps/2");
    }

    EntropyEstimate est;
    est.eps = eps;
    est.ln_eps = ln_eps;
    XpTracker xp;

    const long double ln_B = spec.ln_B(N);
    long double lower = 0.0L;
    bool warned = false;
    for (long long j = 0; j < N; ++j) {
        const long double term =
            xp.track(spec.ln_delta(j)) - kLn2 - ln_B - ln_eps;
        if (term < 0.0L && !warned) {
            est.warnings.push_back(
                "abstract lower: negative term at shell " + std::to_string(j) +
                "; N overshoots this eps");
            warned = true;
        }
        lower += spec.bdim(j).convert_to<long double>() * term;
    }

    const long double ln_A = spec.ln_A(M);
    const long double ln_m_factor =
        M > 0 ? std::log(static_cast<long double>(M)) / spec.p : 0.0L;
    long double upper = 0.0L;
    for (long long j = 0; j < M; ++j) {
        const long double t = xp.track(std::log(6.0L) + ln_m_factor +
                                       spec.ln_delta(j) - ln_A - ln_eps);
        if (t > 0.0L) upper += spec.bdim(j).convert_to<long double>() * t;
    }

    est.lower_ln = xp.track(lower);
    est.upper_ln = xp.track(upper);
    est.extended_precision_used = xp.used;
    return est;
}

EntropyEstimate ball_bounds(int d, double r, double eps) {
    if (d < 1) throw validation_error("ball bounds: dimension must be positive");
    if (!(r > 0.0)) throw validation_error("ball bounds: radius must be positive");
    if (!(eps > 0.0)) throw validation_error("ball bounds: eps must be positive");
    EntropyEstimate est;
    est.eps = eps;
    est.ln_eps = std::log(static_cast<long double>(eps));
    XpTracker xp;
    const long double lr = std::log(static_cast<long double>(r));
    est.lower_ln = xp.track(d * (lr - kLn2 - est.ln_eps));
    const long double arg = std::log(3.0L) + lr - est.ln_eps;
    est.upper_ln = xp.track(d * std::max(arg, 0.0L));
    est.extended_precision_used = xp.used;
    return est;
}

long double analytic_upper_threshold_ln(const AnalyticClassParams& params) {
    validate(params);
    const long double rho = params.rho;
    const long double q1 = params.q + 1;
    const long double ln_inv_rho = -std::log(rho);
    return kLn2 - 0.5L * std::log1p(-rho * rho) +
           q1 * ln_inv_rho *
               std::log(4.5L * (1.0L / (rho * rho) - 1.0L) * q1);
}

EntropyEstimate analytic_bounds_ln(const AnalyticClassParams& params,
                                   long double ln_eps) {
    validate(params);
    EntropyEstimate est;
    est.eps = eps_from_ln(ln_eps);
    est.ln_eps = ln_eps;
    XpTracker xp;
    xp.track(ln_eps);
    const long double rho = params.rho;
    const long double q1 = params.q + 1;
    const long double ln_inv_rho = -std::log(rho);
    const long double ln_sqrt_1mr2 = 0.5L * std::log1p(-rho * rho);

    est.upper_ln = kNaN;
    if (!(ln_eps < analytic_upper_threshold_ln(params))) {
        est.upper_valid = false;
        est.upper_condition =
            "eps < (2/sqrt(1-rho^2)) * ((9/2)(rho^-2-1)(q+1))^((q+1)ln(1/rho))";
    } else {
        const long double num = kLn2 + std::log(rho) - ln_sqrt_1mr2 - ln_eps;
        const long double base = 1.0L + num / (q1 * ln_inv_rho);
        if (!(base > 0.0L)) {
            est.upper_valid = false;
            est.upper_condition =
                "positive log argument: eps < 2*rho^(-q)/sqrt(1-rho^2)";
        } else {
            est.upper_ln = xp.track(2.0L * kLn2 + q1 - 0.5L * std::log(2.0L * kPi) +
                                    q1 * std::log(base));
        }
    }

    est.lower_ln = kNaN;
    if (!(ln_eps < -kLn2)) {
        est.lower_valid = false;
        est.lower_condition = "eps < 1/2";
    } else {
        const long double num = 2.0L * std::log(rho) - 2.0L * kLn2 - ln_eps;
        const long double base = 1.0L + num / (q1 * ln_inv_rho);
        if (!(base > 0.0L)) {
            est.lower_valid = false;
            est.lower_condition =
                "positive log argument: eps < rho^(1-q)/4";
        } else {
            est.lower_ln = xp.track(
                q1 * kLn2 - std::log(8.0L) - 0.5L * std::log(2.0L * kPi * q1) +
                q1 * std::log(base));
        }
    }

    est.extended_precision_used = xp.used;
    return est;
}

EntropyEstimate analytic_bounds(const AnalyticClassParams& params, double eps) {
    if (!(eps > 0.0)) throw validation_error("analytic bounds: eps must be positive");
    return analytic_bounds_ln(params, std::log(static_cast<long double>(eps)));
}

AnalyticEnvelope analytic_envelope(const AnalyticClassParams& params, double eps) {
    validate(params);
    if (!(eps > 0.0)) throw validation_error("analytic envelope: eps must be positive");
    const long double ln_eps = std::log(static_cast<long double>(eps));
    const long double big_l = -ln_eps;
    if (eps > 1e-6 || !(std::log(big_l) > 1.0L)) {
        throw validation_error(
            "analytic envelope: requires eps <= 1e-6 and ln(ln(1/eps)) > 1");
    }
    const long double rho = params.rho;
    const long double q1 = params.q + 1;
    const long double ln_inv_rho = -std::log(rho);
    AnalyticEnvelope env;
    env.lo = 1.0L - 2.0L * q1 * (kLn2 + ln_inv_rho) / big_l;
    env.hi = 1.0L + (2.0L * q1 * ln_inv_rho / big_l) *
                        (std::log(big_l) +
                         std::log(18.0L) + 0.5L * std::log1p(-rho * rho) +
                         params.q * ln_inv_rho);
    env.pivot_ln = std::log(ln_inv_rho) - ln_factorial(params.q + 1) +
                   q1 * (std::log(big_l) - std::log(ln_inv_rho));
    return env;
}

long double entire_upper_threshold_ln(const EntireClassParams& params) {
    validate(params);
    const long double tau = params.tau;
    return params.Q * 0.5L * std::log(2.0L * kPi * kE * tau / params.Q) +
           2.0L * kLn2 - 0.5L * (1.0L + std::log(tau)) - kE * kE * tau;
}

long double entire_lower_threshold_ln(const EntireClassParams& params) {
    validate(params);
    const long double tau = params.tau;
    const long double xi = entire_xi(params.tau);
    return params.Q * 0.5L * std::log(2.0L * kPi / params.Q) - 2.0L * kLn2 -
           0.5L * std::log(2.0L * kPi * kE * tau) - 2.0L * xi * std::log(xi);
}

EntropyEstimate entire_bounds_ln(const EntireClassParams& params,
                                 long double ln_eps) {
    validate(params);
    EntropyEstimate est;
    est.eps = eps_from_ln(ln_eps);
    est.ln_eps = ln_eps;
    XpTracker xp;
    xp.track(ln_eps);
    const long double tau = params.tau;
    const long double ln_etau = 1.0L + std::log(tau);
    const long double big_q = params.Q;

    est.upper_ln = kNaN;
    if (!(ln_eps <= entire_upper_threshold_ln(params))) {
        est.upper_valid = false;
        est.upper_condition =
            "eps <= (2*pi*e*tau/Q)^(Q/2) * 4/(sqrt(e*tau)*exp(e^2*tau))";
    } else {
        const long double big_b = xp.track(
            2.0L * kLn2 - ln_eps + big_q * 0.5L * std::log(2.0L * kE * kPi * tau / big_q));
        const long double denom = big_b > 0.0L ? std::log(big_b) - ln_etau : kNegInf;
        const long double t = big_b / denom;
        const long double tail_factor =
            ln_eps < -1.0L ? 5.0L * std::log(-ln_eps) +
                                 2.0L * std::log(big_q + 1.0L) + 6.0L * ln_etau
                           : kNegInf;
        if (!(denom > 0.0L) || !(t + 0.75L * big_q > 0.0L) || !(tail_factor > 0.0L)) {
            est.upper_valid = false;
            est.upper_condition =
                "positive log arguments: ln(4/eps) + (Q/2)ln(2*e*pi*tau/Q) > e*tau "
                "and 5*lnln(1/eps) + ln((Q+1)^2 (e*tau)^6) > 0";
        } else {
            est.upper_ln = xp.track(kLn2 - std::log(3.0L) - 0.5L * std::log(2.0L * kPi) +
                                    big_q * std::log(2.0L * kE / big_q) +
                                    (big_q + 1.0L) * std::log(t + 0.75L * big_q) +
                                    std::log(tail_factor));
        }
    }

    est.lower_ln = kNaN;
    if (!(ln_eps <= entire_lower_threshold_ln(params))) {
        est.lower_valid = false;
        est.lower_condition =
            "eps <= (2*pi/Q)^(Q/2) / (4*sqrt(2*pi*e*tau)) * xi^(-2*xi)";
    } else {
        const long double big_b = xp.track(
            big_q * 0.5L * std::log(2.0L * kPi / big_q) - 2.0L * kLn2 -
            0.5L * std::log(2.0L * kPi * kE * tau) - ln_eps);
        const long double denom = big_b > 0.0L ? std::log(big_b) - ln_etau : kNegInf;
        const long double w = big_b / denom;
        if (!(denom > 0.0L) || !(w - 1.5L > 0.0L) || !(w - 2.5L + big_q > 0.0L)) {
            est.lower_valid = false;
            est.lower_condition =
                "positive log arguments: ln(C/(4*sqrt(2*pi*e*tau)*eps)) large "
                "enough that W > 3/2";
        } else {
            est.lower_ln = xp.track(-std::log(16.0L) - 0.5L * std::log(kPi * big_q) -
                                    big_q * std::log(big_q) +
                                    big_q * std::log(w - 2.5L + big_q) +
                                    std::log(w - 1.5L));
        }
    }

    est.extended_precision_used = xp.used;
    return est;
}

EntropyEstimate entire_bounds(const EntireClassParams& params, double eps) {
    if (!(eps > 0.0)) throw validation_error("entire bounds: eps must be positive");
    return entire_bounds_ln(params, std::log(static_cast<long double>(eps)));
}

EntireEnvelope entire_envelope_ln(const EntireClassParams& params,
                                  long double ln_eps) {
    validate(params);
    const long double big_l = -ln_eps;
    if (!(big_l >= std::log(1e6L))) {
        throw validation_error("entire envelope: requires eps <= 1e-6");
    }
    const long double big_ll = std::log(big_l);
    const long double ln_big_ll = std::log(big_ll);
    const long double lf = ln_factorial(params.Q);
    EntireEnvelope env;
    env.lo_ln = -kLn2 - lf + (params.Q + 1.0L) * std::log(big_l) -
                params.Q * (kLn2 + ln_big_ll);
    env.hi_ln = -lf + (params.Q + 1.0L) * (kLn2 + std::log(big_l)) -
                params.Q * ln_big_ll;
    return env;
}

EntireEnvelope entire_envelope(const EntireClassParams& params, double eps) {
    if (!(eps > 0.0)) throw validation_error("entire envelope: eps must be positive");
    return entire_envelope_ln(params, std::log(static_cast<long double>(eps)));
}

long double functional_threshold_ln(const FunctionalClassParams& params) {
    validate(params);
    AnalyticClassParams ap;
    ap.rho = params.rho;
    ap.q = params.q;
    const long double rho = params.rho;
    const long double cap = 2.0L * kLn2 + params.q * std::log(rho) -
                            0.5L * std::log1p(-rho * rho);
    return std::min(analytic_upper_threshold_ln(ap), cap);
}

long double functional_gamma(const FunctionalClassParams& params, double eps) {
    validate(params);
    if (!(eps > 0.0)) throw validation_error("functional bound: eps must be positive");
    const long double ln_eps = std::log(static_cast<long double>(eps));
    return 2.0L * kE * (-ln_eps) /
           (params.q * -std::log(static_cast<long double>(params.rho)));
}

EntropyEstimate functional_upper(const FunctionalClassParams& params, double eps) {
    validate(params);
    if (!(eps > 0.0)) throw validation_error("functional bound: eps must be positive");
    const long double ln_eps = std::log(static_cast<long double>(eps));
    if (!(ln_eps < functional_threshold_ln(params))) {
        throw validation_error(
            "functional bound: requires eps < min(analytic upper threshold, "
            "4*rho^q/sqrt(1-rho^2))");
    }
    const long double gamma = functional_gamma(params, eps);
    if (!(gamma > 1.0L)) {
        throw validation_error(
            "functional bound: requires gamma = 2e*ln(1/eps)/(q*ln(1/rho)) > 1");
    }
    EntropyEstimate est;
    est.eps = eps;
    est.ln_eps = ln_eps;
    XpTracker xp;
    const long double ln_gamma = std::log(gamma);
    const long double gamma_q = std::pow(gamma, static_cast<long double>(params.q));
    const long double head =
        std::log(26.0L * params.q / 3.0L) - 0.5L * std::log(2.0L * kPi) +
        gamma_q * std::log(std::exp(1.5L) / kPi + 2.0L * kE) +
        params.q * ln_gamma + std::log(ln_gamma);
    const long double tail = (params.q + 1.0L) * ln_gamma;
    est.upper_ln = xp.track(lse(xp.track(head), tail));
    est.lower_available = false;
    est.lower_ln = kNaN;
    est.extended_precision_used = xp.used;
    return est;
}

}  // namespace entropy_grid
