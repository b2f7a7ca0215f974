#include "entropy_grid/classes.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "entropy_grid/errors.hpp"

namespace entropy_grid {

namespace {

constexpr long double kPi = std::numbers::pi_v<long double>;
constexpr long double kE = std::numbers::e_v<long double>;
constexpr long double kLn2 = std::numbers::ln2_v<long double>;
const long double kNegInf = -std::numeric_limits<long double>::infinity();

long double lse(long double a, long double b) {
    if (a == kNegInf) return b;
    if (b == kNegInf) return a;
    const long double hi = std::max(a, b);
    return hi + std::log1p(std::exp(-std::fabs(a - b)));
}

}  // namespace

void validate(const AnalyticClassParams& params) {
    if (!(params.rho > 0.0 && params.rho < 1.0)) {
        throw validation_error("analytic class: rho must lie in (0, 1)");
    }
    if (params.q < 1) {
        throw validation_error("analytic class: q must be a positive integer");
    }
}

void validate(const EntireClassParams& params) {
    if (params.Q < 1) {
        throw validation_error("entire class: Q must be a positive integer");
    }
    if (!(params.tau > 0.0)) {
        throw validation_error("entire class: tau must be positive");
    }
    if (params.c0 != 1 && params.c0 != 2) {
        throw validation_error("entire class: constant factor must be 1 or 2");
    }
    if (!params.radii.empty()) {
        if (static_cast<int>(params.radii.size()) != params.Q) {
            throw validation_error("entire class: radii length must equal Q");
        }
        for (double r : params.radii) {
            if (!(r > 0.0) || !std::isfinite(r)) {
                throw validation_error("entire class: radii must be positive finite");
            }
        }
    }
}

bool tau_in_stated_range(const EntireClassParams& params) {
    const long double hi =
        params.Q / (2.0L * std::exp(1.5L) * kPi);
    return params.tau >= 1.0 && static_cast<long double>(params.tau) <= hi;
}

void validate(const FunctionalClassParams& params) {
    AnalyticClassParams a;
    a.rho = params.rho;
    a.q = params.q;
    validate(a);
}

long double shell_radius_ln(const AnalyticClassParams& params, long long j) {
    validate(params);
    if (j < 0) throw validation_error("shell_radius: j must be nonnegative");
    return static_cast<long double>(j) * std::log(static_cast<long double>(params.rho));
}

long double shell_radius_ln(const EntireClassParams& params, long long j) {
    validate(params);
    if (j < 0) throw validation_error("shell_radius: j must be nonnegative");
    const long double half_q = params.Q * 0.5L;
    long double out = std::log(static_cast<long double>(params.c0)) +
                      half_q * std::log(2.0L * kPi / params.Q);
    if (j == 0) return out;  // envelope pinned to c0 * (2*pi/Q)^{Q/2} at the constant shell
    out += half_q * std::log(static_cast<long double>(j));
    out += j * std::log(static_cast<long double>(params.tau));
    out -= ln_factorial(j);
    return out;
}

double shell_radius(const AnalyticClassParams& params, long long j) {
    return static_cast<double>(std::exp(shell_radius_ln(params, j)));
}

double shell_radius(const EntireClassParams& params, long long j) {
    return static_cast<double>(std::exp(shell_radius_ln(params, j)));
}

long long truncation_index_ln(const AnalyticClassParams& params,
                              long double ln_eps, TruncationKind kind) {
    validate(params);
    const long double rho = params.rho;
    const long double ln_inv_rho = -std::log(rho);
    if (kind == TruncationKind::kUpperNet) {
        // floor((ln(2/eps) + ln(1/sqrt(1-rho^2))) / ln(1/rho))
        const long double num = kLn2 - ln_eps - 0.5L * std::log1p(-rho * rho);
        if (num < 0.0L) {
            throw validation_error(
                "upper truncation degree: requires eps <= 2/sqrt(1-rho^2)");
        }
        return static_cast<long long>(std::floor(num / ln_inv_rho));
    }
    // floor(ln(1/(2*eps)) / ln(1/rho)) - 1
    if (!(ln_eps < -kLn2)) {
        throw validation_error("lower truncation degree: requires eps < 1/2");
    }
    return static_cast<long long>(std::floor((-kLn2 - ln_eps) / ln_inv_rho)) - 1;
}

long long truncation_index(const AnalyticClassParams& params, double eps,
                           TruncationKind kind) {
    if (!(eps > 0.0)) throw validation_error("truncation_index: eps must be positive");
    return truncation_index_ln(params, std::log(static_cast<long double>(eps)), kind);
}

long double entire_xi(double tau) {
    const long double a = std::max(3.0L * kE * kE * static_cast<long double>(tau), 128.0L);
    return 16.0L * a * std::log(a) / kE + 2.0L;
}

long long truncation_index_ln(const EntireClassParams& params,
                              long double ln_eps, TruncationKind kind) {
    validate(params);
    const long double tau = params.tau;
    const long double ln_tau = std::log(tau);
    const long double half_q = params.Q * 0.5L;
    if (kind == TruncationKind::kUpperNet) {
        const long double thr = half_q * std::log(2.0L * kPi * kE * tau / params.Q) +
                                2.0L * kLn2 - 0.5L * (1.0L + ln_tau) - kE * kE * tau;
        if (!(ln_eps <= thr)) {
            throw validation_error(
                "upper truncation degree: requires eps <= "
                "4*(2*e*pi*tau/Q)^(Q/2) / (sqrt(e*tau)*exp(e^2*tau))");
        }
        const long double big = 2.0L * kLn2 - ln_eps +
                                half_q * std::log(2.0L * kE * kPi * tau / params.Q);
        const long double denom = std::log(big) - (1.0L + ln_tau);
        if (!(big > 0.0L) || !(denom > 0.0L)) {
            throw validation_error("upper truncation degree: eps outside usable range");
        }
        return static_cast<long long>(
            std::floor(2.0L * big / denom + (params.Q - 1) * 0.5L));
    }
    const long double xi = entire_xi(params.tau);
    // ln of C/(4*sqrt(2*pi*e*tau)), C = (2*pi/Q)^{Q/2}
    const long double base = half_q * std::log(2.0L * kPi / params.Q) -
                             2.0L * kLn2 - 0.5L * std::log(2.0L * kPi * kE * tau);
    const long double thr = base - 2.0L * xi * std::log(xi);
    if (!(ln_eps <= thr)) {
        throw validation_error(
            "lower truncation degree: requires eps <= "
            "C/(4*sqrt(2*pi*e*tau)) * xi^(-2*xi)");
    }
    const long double big = base - ln_eps;
    const long double denom = std::log(big) - (1.0L + ln_tau);
    if (!(big > 0.0L) || !(denom > 0.0L)) {
        throw validation_error("lower truncation degree: eps outside usable range");
    }
    return static_cast<long long>(std::floor(big / denom - 0.5L));
}

long long truncation_index(const EntireClassParams& params, double eps,
                           TruncationKind kind) {
    if (!(eps > 0.0)) throw validation_error("truncation_index: eps must be positive");
    return truncation_index_ln(params, std::log(static_cast<long double>(eps)), kind);
}

ScheduleEntry schedule_rv(const FunctionalClassParams& params, long long j) {
    validate(params);
    if (j < 1) throw validation_error("schedule_rv: coordinate index starts at 1");
    // Layer ell is the unique solution of C(q+ell-1, q) < j <= C(q+ell, q),
    // i.e. the smallest ell with cum_dim(ell, q) >= j.
    const BigInt target(j);
    long long lo = 0, hi = 1;
    while (cum_dim(hi, params.q) < target) {
        lo = hi + 1;
        hi *= 2;
        if (hi > (1LL << 40)) {
            throw validation_error("schedule_rv: coordinate index too large");
        }
    }
    while (lo < hi) {
        const long long mid = lo + (hi - lo) / 2;
        if (cum_dim(mid, params.q) < target) {
            lo = mid + 1;
        } else {
            hi = mid;
        }
    }
    ScheduleEntry out;
    out.ell = lo;
    out.r = std::pow(params.rho, static_cast<double>(lo));
    out.v = 1.0 / (2.0 * std::exp(1.5) * static_cast<double>(kPi) * out.r);
    return out;
}

namespace {

MembershipReport run_membership(const ChebSeries& series,
                                const std::function<double(int)>& allowed_at,
                                NormKind norm, int grid, double tolerance) {
    MembershipReport rep;
    const int top = series.max_order();
    for (int j = 0; j <= top; ++j) {
        ShellCheck chk;
        chk.j = j;
        chk.measured = shell_norm(series, j, norm, grid);
        chk.allowed = allowed_at(j);
        chk.pass = chk.measured <= chk.allowed * tolerance;
        if (!chk.pass && rep.first_failing < 0) rep.first_failing = j;
        rep.pass = rep.pass && chk.pass;
        rep.shells.push_back(chk);
    }
    return rep;
}

}  // namespace

MembershipReport membership_check(const ChebSeries& series,
                                  const AnalyticClassParams& params, int grid) {
    validate(params);
    if (series.dim != params.q) {
        throw validation_error("membership_check: series dimension != class dimension");
    }
    return run_membership(
        series, [&](int j) { return std::pow(params.rho, j); }, NormKind::kL2,
        grid, 1.0 + 1e-12);
}

MembershipReport membership_check(const ChebSeries& series,
                                  const EntireClassParams& params, int grid) {
    validate(params);
    if (series.dim != params.Q) {
        throw validation_error("membership_check: series dimension != class dimension");
    }
    // The sup-norm envelope is loose; the grid estimate can slightly exceed
    // the true sup, so allow a flat 5 percent.
    return run_membership(
        series, [&](int j) { return shell_radius(params, j); }, NormKind::kSup,
        grid, 1.05);
}

double estimate_rho(const std::vector<double>& shell_norms) {
    const int n = static_cast<int>(shell_norms.size());
    int start = 0;
    for (int i = n - 1; i >= 0; --i) {
        if (!(shell_norms[i] > 0.0)) {
            start = i + 1;
            break;
        }
    }
    const int count = n - start;
    if (count < 5) {
        throw validation_error(
            "estimate_rho: needs at least five trailing nonzero shell norms");
    }
    long double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (int i = start; i < n; ++i) {
        const long double x = i;
        const long double y = std::log(static_cast<long double>(shell_norms[i]));
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const long double m = count;
    const long double slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
    return static_cast<double>(std::exp(slope));
}

long double analytic_tail_l1_ln(const AnalyticClassParams& params, long long N) {
    validate(params);
    const long double rho = params.rho;
    return (N + 1) * std::log(rho) - std::log1p(-rho);
}

long double analytic_tail_l2_ln(const AnalyticClassParams& params, long long N) {
    validate(params);
    const long double rho = params.rho;
    return (N + 1) * std::log(rho) - 0.5L * std::log1p(-rho * rho);
}

long long shell_tail_index(const ShellSpec& spec, long double ln_target) {
    if (spec.tail_index) return spec.tail_index(ln_target);
    constexpr long long kShellLimit = 200000;
    constexpr int kWindow = 8;
    const long double ln_ratio_cap = std::log(0.97L);
    // ln(r/(1-r)) with r = 0.97: certified bound on the tail past the window.
    const long double ln_cert_factor = std::log(0.97L / 0.03L);

    std::vector<long double> ld;
    ld.reserve(256);
    long long certified = -1;
    for (long long j = 0; j < kShellLimit; ++j) {
        ld.push_back(spec.ln_delta(j));
        if (j < kWindow) continue;
        bool window_ok = true;
        for (int t = 0; t < kWindow; ++t) {
            // -inf entries satisfy the ratio test; a rebound from zero fails it
            if (!(ld[j - t] <= ld[j - t - 1] + ln_ratio_cap)) {
                window_ok = false;
                break;
            }
        }
        if (window_ok && ld[j] + ln_cert_factor <= ln_target) {
            certified = j;
            break;
        }
    }
    if (certified < 0) {
        throw validation_error(
            "shell tail: no geometric-tail certificate within 200000 shells "
            "(spec may not be summable at this target)");
    }
    // Suffix sums: tail(m) = sum_{n >= m} Delta_n, with the certified
    // geometric bound standing in for everything past the window.
    std::vector<long double> tail(certified + 2);
    tail[certified + 1] = ld[certified] + ln_cert_factor;
    for (long long m = certified; m >= 0; --m) {
        tail[m] = lse(tail[m + 1], ld[m]);
    }
    for (long long m = 0; m <= certified + 1; ++m) {
        if (tail[m] <= ln_target) return m;
    }
    return certified + 1;  // unreachable: tail(certified+1) <= target by construction
}

ShellSpec make_analytic_shell_spec(const AnalyticClassParams& params) {
    validate(params);
    const double rho = params.rho;
    const int q = params.q;
    const long double ln_rho = std::log(static_cast<long double>(rho));
    ShellSpec spec;
    spec.ln_delta = [ln_rho](long long j) { return j * ln_rho; };
    spec.bdim = [q](long long j) { return shell_dim(j, q); };
    spec.p = 2.0;
    spec.r = 2.0;
    spec.ln_A = [](long long) -> long double { return 0.0L; };
    spec.ln_B = [](long long) -> long double { return 0.0L; };
    // For the product L2 norm the relevant tail is the l2 one:
    // smallest m with rho^m / sqrt(1-rho^2) <= target.
    spec.tail_index = [rho, ln_rho](long double ln_target) -> long long {
        const long double num =
            ln_target + 0.5L * std::log1p(-static_cast<long double>(rho) * rho);
        const long double m = std::ceil(num / ln_rho);
        return m <= 0.0L ? 0 : static_cast<long long>(m);
    };
    return spec;
}

ShellSpec make_entire_shell_spec(const EntireClassParams& params) {
    validate(params);
    EntireClassParams frozen = params;
    const int Q = params.Q;
    ShellSpec spec;
    spec.ln_delta = [frozen](long long j) { return shell_radius_ln(frozen, j); };
    spec.bdim = [Q](long long j) { return shell_dim(j, Q); };
    spec.p = 1.0;
    spec.r = 1.0;
    spec.ln_A = [](long long) -> long double { return 0.0L; };
    // Sup-norm equivalence degrades with degree: B(N) = N*(ln(N)+1)^Q.
    spec.ln_B = [Q](long long n) -> long double {
        const long double nn = std::max<long long>(n, 1);
        return std::log(nn) + Q * std::log(std::log(nn) + 1.0L);
    };
    return spec;
}

}  // namespace entropy_grid
