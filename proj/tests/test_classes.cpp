#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "entropy_grid/classes.hpp"
#include "entropy_grid/combinatorics.hpp"
#include "entropy_grid/errors.hpp"

using namespace entropy_grid;

namespace {

AnalyticClassParams analytic(double rho, int q) {
    AnalyticClassParams p;
    p.rho = rho;
    p.q = q;
    return p;
}

EntireClassParams entire(int Q, double tau, int c0 = 1) {
    EntireClassParams p;
    p.Q = Q;
    p.tau = tau;
    p.c0 = c0;
    return p;
}

}  // namespace

TEST_CASE("parameter validation") {
    CHECK_THROWS_AS(validate(analytic(0.0, 1)), validation_error);
    CHECK_THROWS_AS(validate(analytic(1.0, 1)), validation_error);
    CHECK_THROWS_AS(validate(analytic(0.5, 0)), validation_error);
    CHECK_NOTHROW(validate(analytic(0.999, 8)));

    CHECK_THROWS_AS(validate(entire(0, 1.0)), validation_error);
    CHECK_THROWS_AS(validate(entire(1, 0.0)), validation_error);
    CHECK_THROWS_AS(validate(entire(1, 1.0, 3)), validation_error);
    EntireClassParams bad = entire(2, 1.0);
    bad.radii = {1.0};
    CHECK_THROWS_AS(validate(bad), validation_error);
    bad.radii = {1.0, -1.0};
    CHECK_THROWS_AS(validate(bad), validation_error);
    bad.radii = {1.0, 2.0};
    CHECK_NOTHROW(validate(bad));

    FunctionalClassParams f;
    f.rho = 1.5;
    CHECK_THROWS_AS(validate(f), validation_error);
}

TEST_CASE("stated sharpness range for the entire class") {
    CHECK(tau_in_stated_range(entire(30, 1.0)));
    // The edge sits at Q / (2 e^{3/2} pi) ~ 1.06536803821527 for Q = 30;
    // probe both sides rather than the exact boundary double.
    CHECK(tau_in_stated_range(entire(30, 1.06536803)));
    CHECK_FALSE(tau_in_stated_range(entire(30, 1.06536804)));
    CHECK_FALSE(tau_in_stated_range(entire(30, 1.07)));
    CHECK_FALSE(tau_in_stated_range(entire(1, 1.0)));
    CHECK_FALSE(tau_in_stated_range(entire(30, 0.5)));
}

TEST_CASE("shell envelopes") {
    const AnalyticClassParams a = analytic(0.5, 3);
    for (int j = 0; j < 20; ++j) {
        CHECK(shell_radius(a, j) == doctest::Approx(std::pow(0.5, j)).epsilon(1e-15));
    }
    CHECK_THROWS_AS(shell_radius(a, -1), validation_error);

    // Lambda(0) is pinned to c0 (2 pi / Q)^{Q/2}; Lambda(3) at Q=2, tau=1
    // equals pi/2.
    const EntireClassParams e2 = entire(2, 1.0);
    CHECK(shell_radius(e2, 0) == doctest::Approx(std::numbers::pi).epsilon(1e-15));
    CHECK(shell_radius(e2, 3) ==
          doctest::Approx(1.5707963267948966192).epsilon(1e-14));
    const EntireClassParams e2x2 = entire(2, 1.0, 2);
    CHECK(shell_radius_ln(e2x2, 5) - shell_radius_ln(e2, 5) ==
          doctest::Approx(std::numbers::ln2).epsilon(1e-15));

    // The envelope ratio falls below 1/2 by the time the closed-form
    // truncation machinery relies on tail halving.
    for (long long n = 12; n < 60; ++n) {
        CHECK(shell_radius_ln(entire(30, 1.0), n + 1) -
                  shell_radius_ln(entire(30, 1.0), n) <=
              -std::numbers::ln2 + 1e-12);
    }
    for (long long n = 15; n < 60; ++n) {
        CHECK(shell_radius_ln(entire(40, 1.2), n + 1) -
                  shell_radius_ln(entire(40, 1.2), n) <=
              -std::numbers::ln2 + 1e-12);
    }
}

TEST_CASE("analytic truncation degrees") {
    CHECK(truncation_index(analytic(0.5, 1), 0.01, TruncationKind::kUpperNet) == 7);
    CHECK(truncation_index(analytic(0.5, 1), 0.01, TruncationKind::kLowerSeparated) == 4);
    CHECK(truncation_index(analytic(0.3, 2), 0.5, TruncationKind::kUpperNet) == 1);
    CHECK(truncation_index(analytic(0.5, 1), 0.49, TruncationKind::kLowerSeparated) == -1);

    // Upper degree exists only while eps <= 2/sqrt(1-rho^2).
    CHECK_THROWS_AS(truncation_index(analytic(0.5, 1), 4.0, TruncationKind::kUpperNet),
                    validation_error);
    // Lower degree requires eps < 1/2.
    CHECK_THROWS_AS(truncation_index(analytic(0.5, 1), 0.5, TruncationKind::kLowerSeparated),
                    validation_error);
    CHECK_THROWS_AS(truncation_index(analytic(0.5, 1), 0.0, TruncationKind::kUpperNet),
                    validation_error);

    // The upper degree leaves an l2 tail below eps/2 and is minimal at it.
    for (double rho : {0.3, 0.5, 0.8}) {
        for (double eps : {0.07, 0.01, 1e-4}) {
            const AnalyticClassParams p = analytic(rho, 1);
            const long long n1 = truncation_index(p, eps, TruncationKind::kUpperNet);
            const long double target = std::log(static_cast<long double>(eps)) -
                                       std::numbers::ln2_v<long double>;
            CHECK(analytic_tail_l2_ln(p, n1) <= target + 1e-12L);
            if (n1 >= 1) {
                CHECK(analytic_tail_l2_ln(p, n1 - 1) > target - 1e-9L);
            }
        }
    }
}

TEST_CASE("entire truncation degrees") {
    const EntireClassParams p = entire(30, 1.0);
    CHECK(truncation_index(p, 1e-9, TruncationKind::kUpperNet) == 31);

    // Admission thresholds are inclusive; values just above them throw.
    const long double upper_thr_ln =
        std::log(3.2076198564034957804e-7L);
    CHECK_NOTHROW(truncation_index_ln(p, upper_thr_ln - 1e-9L, TruncationKind::kUpperNet));
    CHECK_THROWS_AS(truncation_index_ln(p, upper_thr_ln + 1e-6L, TruncationKind::kUpperNet),
                    validation_error);

    const long double lower_thr_ln = -60044.31736592709207L;
    CHECK_NOTHROW(truncation_index_ln(p, lower_thr_ln - 1.0L, TruncationKind::kLowerSeparated));
    CHECK_THROWS_AS(truncation_index_ln(p, -60044.0L, TruncationKind::kLowerSeparated),
                    validation_error);

    // Degrees grow as eps shrinks.
    const long long n_a = truncation_index_ln(p, -61000.0L, TruncationKind::kUpperNet);
    const long long n_b = truncation_index_ln(p, -100000.0L, TruncationKind::kUpperNet);
    CHECK(n_a > 31);
    CHECK(n_b > n_a);
    const long long m_a = truncation_index_ln(p, -61000.0L, TruncationKind::kLowerSeparated);
    const long long m_b = truncation_index_ln(p, -100000.0L, TruncationKind::kLowerSeparated);
    CHECK(m_a > 0);
    CHECK(m_b > m_a);
}

TEST_CASE("scale helper for the entire lower truncation") {
    CHECK(static_cast<double>(entire_xi(1.0)) ==
          doctest::Approx(3657.6025488131575088).epsilon(1e-15));
    // Below the clamp at a = 128 the value is flat in tau.
    CHECK(static_cast<double>(entire_xi(0.1)) ==
          doctest::Approx(static_cast<double>(entire_xi(0.2))).epsilon(1e-15));
}

TEST_CASE("layered coordinate schedule") {
    FunctionalClassParams f;
    f.q = 2;
    f.rho = 0.5;

    CHECK(schedule_rv(f, 1).ell == 0);
    CHECK(schedule_rv(f, 3).ell == 1);
    CHECK(schedule_rv(f, 5).ell == 2);
    CHECK_THROWS_AS(schedule_rv(f, 0), validation_error);

    // Layer ell holds exactly shell_dim(ell, q) consecutive coordinates,
    // and v r is the constant 1 / (2 e^{3/2} pi).
    const double vr = 1.0 / (2.0 * std::exp(1.5) * std::numbers::pi);
    long long j = 1;
    for (long long ell = 0; ell <= 6; ++ell) {
        const long long width = static_cast<long long>(shell_dim(ell, f.q));
        for (long long t = 0; t < width; ++t, ++j) {
            const ScheduleEntry s = schedule_rv(f, j);
            CHECK(s.ell == ell);
            CHECK(s.r == doctest::Approx(std::pow(0.5, static_cast<double>(ell))).epsilon(1e-15));
            CHECK(s.v * s.r == doctest::Approx(vr).epsilon(1e-12));
        }
    }
}

TEST_CASE("membership audit against the analytic envelope") {
    const AnalyticClassParams p = analytic(0.5, 1);
    ChebSeries s = make_series(1, unit_box(1));
    s.coeffs[{0}] = 1.0;
    s.coeffs[{1}] = 0.5;   // exactly on the envelope
    s.coeffs[{2}] = 0.25;
    const MembershipReport ok = membership_check(s, p);
    CHECK(ok.pass);
    CHECK(ok.first_failing == -1);
    REQUIRE(ok.shells.size() == 3);
    CHECK(ok.shells[1].measured == doctest::Approx(0.5));
    CHECK(ok.shells[1].allowed == doctest::Approx(0.5));

    s.coeffs[{1}] = 5.0;
    const MembershipReport bad = membership_check(s, p);
    CHECK_FALSE(bad.pass);
    CHECK(bad.first_failing == 1);
    CHECK_FALSE(bad.shells[1].pass);

    ChebSeries wrong_dim = make_series(2, unit_box(2));
    wrong_dim.coeffs[{0, 0}] = 1.0;
    CHECK_THROWS_AS(membership_check(wrong_dim, p), validation_error);
}

TEST_CASE("membership audit against the entire envelope") {
    const EntireClassParams p = entire(1, 1.0, 2);
    ChebSeries s = make_series(1, unit_box(1));
    s.coeffs[{0}] = 1.0;
    CHECK(membership_check(s, p).pass);

    s.coeffs[{3}] = 10.0;
    const MembershipReport bad = membership_check(s, p);
    CHECK_FALSE(bad.pass);
    CHECK(bad.first_failing == 3);
}

TEST_CASE("decay rate recovery") {
    std::vector<double> norms;
    for (int n = 0; n < 12; ++n) norms.push_back(3.7 * std::pow(0.3, n));
    CHECK(estimate_rho(norms) == doctest::Approx(0.3).epsilon(1e-9));

    // Only the trailing all-positive run is used.
    std::vector<double> gapped{1.0, 0.0, 1.0, 0.5, 0.25, 0.125, 0.0625, 0.03125};
    CHECK(estimate_rho(gapped) == doctest::Approx(0.5).epsilon(1e-9));

    CHECK_THROWS_AS(estimate_rho({1.0, 0.5, 0.25, 0.125}), validation_error);
    CHECK_THROWS_AS(estimate_rho({1.0, 0.0, 1.0, 0.5, 0.25, 0.125}), validation_error);
}

TEST_CASE("geometric tails match direct summation") {
    const AnalyticClassParams p = analytic(0.4, 2);
    for (long long n : {0LL, 3LL, 10LL}) {
        long double l1 = 0.0L, l2 = 0.0L;
        for (long long k = n + 1; k < n + 400; ++k) {
            l1 += std::pow(0.4L, static_cast<long double>(k));
            l2 += std::pow(0.4L, 2.0L * static_cast<long double>(k));
        }
        CHECK(static_cast<double>(analytic_tail_l1_ln(p, n)) ==
              doctest::Approx(static_cast<double>(std::log(l1))).epsilon(1e-12));
        CHECK(static_cast<double>(analytic_tail_l2_ln(p, n)) ==
              doctest::Approx(static_cast<double>(0.5L * std::log(l2))).epsilon(1e-12));
    }
}

TEST_CASE("shell specs expose the class data") {
    const ShellSpec sa = make_analytic_shell_spec(analytic(0.5, 2));
    CHECK(sa.p == 2.0);
    CHECK(sa.r == 2.0);
    CHECK(sa.ln_A(7) == 0.0L);
    CHECK(sa.ln_B(7) == 0.0L);
    CHECK(sa.bdim(3) == shell_dim(3, 2));
    // ln Delta is additive in j up to long double rounding (not bit-exact).
    for (long long j = 1; j < 40; ++j) {
        CHECK(std::abs(static_cast<double>(sa.ln_delta(j) + sa.ln_delta(1) -
                                           sa.ln_delta(j + 1))) < 1e-15);
    }

    const ShellSpec se = make_entire_shell_spec(entire(2, 1.0));
    CHECK(se.p == 1.0);
    CHECK(se.r == 1.0);
    CHECK(se.ln_B(1) == 0.0L);
    CHECK(se.ln_B(8) > 0.0L);
    CHECK(se.bdim(4) == shell_dim(4, 2));
    CHECK(static_cast<double>(se.ln_delta(3)) ==
          doctest::Approx(std::log(1.5707963267948966192)).epsilon(1e-14));
    CHECK_FALSE(se.tail_index);  // entire tails are summed generically
}

TEST_CASE("tail index selection") {
    // A single unit shell: the tail drops to zero after j = 0, so the
    // smallest index with tail <= 1/4 is 1.
    ShellSpec one;
    one.ln_delta = [](long long j) -> long double {
        return j == 0 ? 0.0L : -std::numeric_limits<long double>::infinity();
    };
    one.bdim = [](long long) { return BigInt(1); };
    CHECK(shell_tail_index(one, std::log(0.25L)) == 1);

    // The analytic override is the closed-form l2 index.
    const ShellSpec sa = make_analytic_shell_spec(analytic(0.5, 1));
    REQUIRE(static_cast<bool>(sa.tail_index));
    CHECK(shell_tail_index(sa, std::log(0.01L)) == 7);
    CHECK(shell_tail_index(sa, std::log(0.005L)) == 8);
    CHECK(shell_tail_index(sa, 10.0L) == 0);

    // The generic certificated summation returns a correct (possibly
    // slightly conservative) index for the entire class.
    const EntireClassParams ep = entire(2, 1.0);
    const ShellSpec se = make_entire_shell_spec(ep);
    for (double target : {1e-3, 1e-6, 1e-10}) {
        const long long m = shell_tail_index(se, std::log(static_cast<long double>(target)));
        long double true_tail = 0.0L;
        for (long long k = m; k < m + 400; ++k) {
            true_tail += std::exp(shell_radius_ln(ep, k));
        }
        CHECK(static_cast<double>(true_tail) <= target);
        long long exact = 0;
        while (true) {
            long double t = 0.0L;
            for (long long k = exact; k < exact + 400; ++k) {
                t += std::exp(shell_radius_ln(ep, k));
            }
            if (t <= static_cast<long double>(target)) break;
            ++exact;
        }
        CHECK(m >= exact);
        CHECK(m <= exact + 3);
    }

    // A spec that never decays cannot be certified.
    ShellSpec flat;
    flat.ln_delta = [](long long) -> long double { return 0.0L; };
    flat.bdim = [](long long) { return BigInt(1); };
    CHECK_THROWS_AS(shell_tail_index(flat, std::log(0.5L)), validation_error);
}
