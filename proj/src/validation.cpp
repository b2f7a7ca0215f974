#include "entropy_grid/validation.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "entropy_grid/errors.hpp"
#include "entropy_grid/generators.hpp"
#include "entropy_grid/netgen.hpp"
#include "entropy_grid/rng.hpp"

namespace entropy_grid {

namespace {

std::string format_double(double v) {
    std::ostringstream os;
    os.precision(6);
    os << v;
    return os.str();
}

}  // namespace

VerifyReport verify_decay(const DecayConfig& cfg) {
    if (cfg.dim < 1 || cfg.trials < 1) {
        throw validation_error("verify decay: dim and trials must be positive");
    }
    VerifyReport rep;
    rep.suite = "decay";
    rep.trials = cfg.trials;
    for (int t = 0; t < cfg.trials; ++t) {
        const std::uint64_t trial_seed = derive_seed(cfg.seed, "decay", t);
        TrialOutcome out;
        out.seed = trial_seed;
        const PoleSumSpec spec =
            gen_analytic(cfg.dim, cfg.rho, cfg.terms, trial_seed);
        const ChebSeries series = compute_coeffs(
            pole_sum_evaluator(spec), cfg.order, cfg.quad_m, unit_box(cfg.dim));
        std::vector<double> norms;
        for (int j = 0; j <= cfg.order; ++j) {
            norms.push_back(shell_norm(series, j, NormKind::kL2));
        }
        out.value = estimate_rho(norms);
        out.pass = std::fabs(out.value - cfg.rho) <= 0.05;
        out.note = "estimate " + format_double(out.value);
        rep.passes += out.pass ? 1 : 0;
        rep.outcomes.push_back(std::move(out));
    }
    rep.pass = 10 * rep.passes >= 9 * rep.trials;
    return rep;
}

VerifyReport verify_entire(const EntireCheckConfig& cfg) {
    if (cfg.Q < 1 || cfg.trials < 1) {
        throw validation_error("verify entire: Q and trials must be positive");
    }
    VerifyReport rep;
    rep.suite = "entire";
    rep.trials = cfg.trials;
    EntireClassParams params;
    params.Q = cfg.Q;
    params.tau = cfg.Q * cfg.vmax;  // v.r on the unit box with v_m = vmax
    params.c0 = 2;
    for (int t = 0; t < cfg.trials; ++t) {
        const std::uint64_t trial_seed = derive_seed(cfg.seed, "entire", t);
        TrialOutcome out;
        out.seed = trial_seed;
        const BandlimitedSpec spec =
            gen_bandlimited(cfg.Q, cfg.vmax, cfg.terms, trial_seed);
        const ChebSeries series =
            compute_coeffs(bandlimited_evaluator(spec), cfg.order, cfg.quad_m,
                           unit_box(cfg.Q));
        const MembershipReport mem = membership_check(series, params, cfg.grid);
        out.pass = mem.pass;
        double worst = 0.0;
        for (const auto& chk : mem.shells) {
            if (chk.allowed > 0.0) {
                worst = std::max(worst, chk.measured / chk.allowed);
            }
        }
        out.value = worst;
        out.note = mem.pass ? "max norm ratio " + format_double(worst)
                            : "first failing shell " +
                                  std::to_string(mem.first_failing);
        rep.passes += out.pass ? 1 : 0;
        rep.outcomes.push_back(std::move(out));
    }
    rep.pass = rep.passes == rep.trials;
    return rep;
}

VerifyReport verify_sandwich(const SandwichConfig& cfg) {
    if (cfg.dim < 1 || cfg.trials < 1) {
        throw validation_error("verify sandwich: dim and trials must be positive");
    }
    if (cfg.max_points < 2 || cfg.max_points > 512) {
        throw validation_error("verify sandwich: max_points must lie in [2, 512]");
    }
    VerifyReport rep;
    rep.suite = "sandwich";
    rep.trials = cfg.trials;
    for (int t = 0; t < cfg.trials; ++t) {
        const std::uint64_t trial_seed = derive_seed(cfg.seed, "sandwich", t);
        SplitMix64 rng(trial_seed);
        const int span = std::max(1, cfg.max_points - 7);
        const int count = 8 + static_cast<int>(rng.next() % span);
        const double eps = 0.3 + 0.4 * rng.next_unit();
        const auto points = sample_ball(
            cfg.dim, static_cast<std::size_t>(std::min(count, cfg.max_points)),
            derive_seed(cfg.seed, "sandwich_pts", t));
        const int cap2 = brute_capacity(points, 2.0 * eps);
        const int cover = brute_covering(points, eps);
        const int cap1 = brute_capacity(points, eps);
        TrialOutcome out;
        out.seed = trial_seed;
        out.pass = cap2 <= cover && cover <= cap1;
        out.value = cover;
        out.note = "capacity(2e)=" + std::to_string(cap2) +
                   " covering(e)=" + std::to_string(cover) +
                   " capacity(e)=" + std::to_string(cap1) +
                   " eps=" + format_double(eps) +
                   " n=" + std::to_string(points.size());
        rep.passes += out.pass ? 1 : 0;
        rep.outcomes.push_back(std::move(out));
    }
    rep.pass = rep.passes == rep.trials;
    return rep;
}

ChebSeries make_class_member(const AnalyticClassParams& params, std::uint64_t seed,
                             int gen_order, int terms, int quad_m) {
    validate(params);
    const PoleSumSpec spec = gen_analytic(params.q, params.rho, terms, seed);
    ChebSeries series = compute_coeffs(pole_sum_evaluator(spec), gen_order,
                                       quad_m, unit_box(params.q));
    double scale = -1.0;
    for (int j = 0; j <= series.max_order(); ++j) {
        const double h = shell_norm(series, j, NormKind::kL2);
        if (h > 0.0) {
            const double c = std::pow(params.rho, j) / h;
            if (scale < 0.0 || c < scale) scale = c;
        }
    }
    if (scale < 0.0) return series;  // identically zero sample: already a member
    scale *= 0.999;
    for (auto& [k, v] : series.coeffs) v *= scale;
    return series;
}

VerifyReport verify_roundtrip(const RoundtripConfig& cfg) {
    if (cfg.trials < 1) {
        throw validation_error("verify roundtrip: trials must be positive");
    }
    VerifyReport rep;
    rep.suite = "roundtrip";
    rep.trials = cfg.trials;
    const Codebook cb = build_codebook(cfg.klass, cfg.eps, cfg.delta,
                                       derive_seed(cfg.seed, "codebook"));
    for (int t = 0; t < cfg.trials; ++t) {
        const std::uint64_t trial_seed = derive_seed(cfg.seed, "member", t);
        const ChebSeries member = make_class_member(
            cfg.klass, trial_seed, cfg.gen_order, cfg.gen_terms, cfg.quad_m);
        TrialOutcome out;
        out.seed = trial_seed;
        out.value = roundtrip_error(member, cb);
        out.pass = out.value <= cfg.eps;
        out.note = "roundtrip error " + format_double(out.value);
        rep.passes += out.pass ? 1 : 0;
        rep.outcomes.push_back(std::move(out));
    }
    rep.pass = rep.passes == rep.trials;
    return rep;
}

}  // namespace entropy_grid
