// Acceptance gate. Each criterion prints exactly one PASS/FAIL line with its
// wall time; the process exits nonzero when any criterion fails. argv[1] must
// be the path to the entropy-grid CLI binary (used by the determinism check).

#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "entropy_grid/bounds.hpp"
#include "entropy_grid/classes.hpp"
#include "entropy_grid/netgen.hpp"
#include "entropy_grid/validation.hpp"

namespace fs = std::filesystem;
using namespace entropy_grid;

namespace {

std::string g_cli_path;

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

AnalyticClassParams analytic(double rho, int q) {
    AnalyticClassParams p;
    p.rho = rho;
    p.q = q;
    return p;
}

bool roundtrip_guarantee(std::string& detail) {
    int pass = 0;
    int total = 0;
    for (double rho : {0.3, 0.5}) {
        for (int q : {1, 2}) {
            for (double eps : {0.5, 0.25}) {
                RoundtripConfig cfg;
                cfg.klass = analytic(rho, q);
                cfg.eps = eps;
                cfg.trials = 20;
                cfg.seed = 1;
                const VerifyReport rep = verify_roundtrip(cfg);
                pass += rep.passes;
                total += rep.trials;
            }
        }
    }
    std::ostringstream os;
    os << pass << "/" << total << " members within eps over 8 configurations";
    detail = os.str();
    return pass == total;
}

bool coefficient_decay(std::string& detail) {
    std::ostringstream os;
    bool ok = true;
    for (int dim : {1, 2}) {
        DecayConfig cfg;
        cfg.dim = dim;
        cfg.rho = 0.5;
        cfg.trials = 20;
        cfg.seed = 1;
        const VerifyReport rep = verify_decay(cfg);
        ok = ok && rep.pass;
        os << "d=" << dim << ": " << rep.passes << "/" << rep.trials << " in band  ";
    }
    detail = os.str();
    return ok;
}

bool entire_shell_bound(std::string& detail) {
    std::ostringstream os;
    bool ok = true;
    for (int Q : {1, 2}) {
        EntireCheckConfig cfg;
        cfg.Q = Q;
        cfg.vmax = 1.0;
        cfg.trials = 20;
        cfg.seed = 1;
        const VerifyReport rep = verify_entire(cfg);
        ok = ok && rep.passes == rep.trials;
        os << "Q=" << Q << ": " << rep.passes << "/" << rep.trials
           << " below envelope  ";
    }
    detail = os.str();
    return ok;
}

bool packing_covering_sandwich(std::string& detail) {
    // 50 exact instances split across dimensions 1..3.
    const int trials[3] = {17, 17, 16};
    int pass = 0;
    int total = 0;
    for (int d = 1; d <= 3; ++d) {
        SandwichConfig cfg;
        cfg.dim = d;
        cfg.trials = trials[d - 1];
        cfg.seed = 7 + static_cast<std::uint64_t>(d);
        cfg.max_points = 64;
        const VerifyReport rep = verify_sandwich(cfg);
        pass += rep.passes;
        total += rep.trials;
    }
    std::ostringstream os;
    os << pass << "/" << total << " instances integer-exact";
    detail = os.str();
    return pass == total;
}

bool ball_net_bracket(std::string& detail) {
    int pass = 0;
    int total = 0;
    const double slack = 1e-9;
    for (int d : {1, 2, 3}) {
        for (double eps : {0.5, 0.25}) {
            for (std::uint64_t s = 1; s <= 10; ++s) {
                const EpsNet net = net_ball(d, eps, 1e-4, 100 * d + s);
                ++total;
                if (net.guarantee_void || net.points.empty()) continue;
                const double lnc = std::log(static_cast<double>(net.points.size()));
                const double lo = d * std::log(1.0 / (2.0 * eps));
                const double hi = d * std::log(12.0 / eps);
                if (lo - slack <= lnc && lnc <= hi + slack) ++pass;
            }
        }
    }
    std::ostringstream os;
    os << pass << "/" << total << " net sizes inside the bracket";
    detail = os.str();
    return pass == total;
}

bool bound_consistency(std::string& detail) {
    const long double slack = 1e-9L;
    int checked = 0;
    bool ok = true;

    // 13-point log sweep for the analytic class; every point is in-range.
    const AnalyticClassParams ap = analytic(0.5, 1);
    for (int i = 0; i < 13; ++i) {
        const double eps = std::pow(10.0, -1.0 - 7.0 * i / 12.0);
        const EntropyEstimate est = analytic_bounds(ap, eps);
        if (!(est.lower_available && est.lower_valid && est.upper_valid)) continue;
        ++checked;
        ok = ok && est.lower_ln <= est.upper_ln + slack * std::fabs(est.upper_ln);
    }
    ok = ok && checked == 13;

    // 13-point sweep for the entire class, below its lower-validity knee.
    EntireClassParams ep;
    ep.Q = 30;
    ep.tau = 1.0;
    int entire_checked = 0;
    for (int i = 0; i < 13; ++i) {
        const long double ln_eps = -60100.0L - (100000.0L - 60100.0L) * i / 12.0L;
        const EntropyEstimate est = entire_bounds_ln(ep, ln_eps);
        if (!(est.lower_available && est.lower_valid && est.upper_valid)) continue;
        ++entire_checked;
        ok = ok && est.lower_ln <= est.upper_ln + slack * std::fabs(est.upper_ln);
    }
    ok = ok && entire_checked == 13;

    // Asymptotic envelope: its interval and the closed-form interval both
    // contain the true entropy, so they must intersect; widths shrink.
    long double prev_width = 1e30L;
    bool envelope_ok = true;
    for (double eps : {1e-8, 1e-10, 1e-12}) {
        const AnalyticEnvelope env = analytic_envelope(ap, eps);
        const EntropyEstimate est = analytic_bounds(ap, eps);
        envelope_ok = envelope_ok && est.lower_valid && est.upper_valid;
        const long double env_lo_ln = env.pivot_ln + std::log(env.lo);
        const long double env_hi_ln = env.pivot_ln + std::log(env.hi);
        envelope_ok = envelope_ok && est.lower_ln <= env_hi_ln + slack * env_hi_ln;
        envelope_ok = envelope_ok && env_lo_ln <= est.upper_ln + slack * est.upper_ln;
        const long double width = env.hi - env.lo;
        envelope_ok = envelope_ok && width < prev_width;
        prev_width = width;
    }
    ok = ok && envelope_ok;

    std::ostringstream os;
    os << "analytic sweep " << checked << "/13, entire sweep " << entire_checked
       << "/13, envelope " << (envelope_ok ? "overlaps and shrinks" : "violated");
    detail = os.str();
    return ok;
}

bool numeric_anchors(std::string& detail) {
    bool ok = true;
    std::ostringstream os;

    const long long n1 =
        truncation_index(analytic(0.5, 1), 0.01, TruncationKind::kUpperNet);
    ok = ok && n1 == 7;
    os << "N1=" << n1;

    FunctionalClassParams fp;
    fp.q = 1;
    fp.rho = 0.5;
    const long double gamma = functional_gamma(fp, 1e-3);
    ok = ok && std::fabs(gamma - 54.18L) <= 0.01L;
    os << " gamma=" << static_cast<double>(gamma);

    const EntropyEstimate fest = functional_upper(fp, 1e-3);
    ok = ok && std::fabs(fest.upper_ln - 111.0L) <= 0.2L;
    os << " upper_ln=" << static_cast<double>(fest.upper_ln);

    EntireClassParams ep;
    ep.Q = 30;
    ep.tau = 1.0;
    const long double thr = std::exp(entire_upper_threshold_ln(ep));
    ok = ok && thr >= 3.2e-7L * 0.95L && thr <= 3.2e-7L * 1.05L;
    os << " entire_threshold=" << static_cast<double>(thr);

    detail = os.str();
    return ok;
}

std::string read_bytes(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return {};
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

bool run_cli(const std::string& args) {
    const std::string cmd = "\"" + g_cli_path + "\" " + args + " > /dev/null 2>&1";
    return std::system(cmd.c_str()) == 0;
}

bool cli_determinism(std::string& detail) {
    const fs::path dir = "acceptance_tmp";
    fs::remove_all(dir);
    fs::create_directories(dir);
    const std::string d = dir.string();

    const std::vector<std::pair<std::string, std::string>> jobs = {
        {"gen analytic --dim 2 --rho 0.5 --terms 4 --seed 42 --out " + d + "/spec.json",
         d + "/spec.json"},
        {"gen bandlimited --Q 2 --vmax 1 --terms 4 --seed 3 --out " + d + "/band.json",
         d + "/band.json"},
        {"coeffs --spec " + d + "/spec.json --order 10 --nodes 24 --out " + d + "/series.json",
         d + "/series.json"},
        {"bounds analytic --rho 0.5 --q 1 --eps 1e-4 --out " + d + "/bounds.json",
         d + "/bounds.json"},
        {"net ball --dim 2 --eps 0.4 --delta 1e-3 --seed 9 --out " + d + "/net.json",
         d + "/net.json"},
        {"codebook build --rho 0.3 --q 1 --eps 0.5 --delta 1e-3 --seed 5 --out " + d + "/cb.json",
         d + "/cb.json"},
        {"curve --class analytic --rho 0.5 --q 1 --eps-min 1e-6 --eps-max 1e-1 "
         "--points 13 --out " + d + "/curve.csv",
         d + "/curve.csv"},
    };

    int identical = 0;
    for (const auto& [args, artifact] : jobs) {
        if (!run_cli(args)) break;
        const std::string first = read_bytes(artifact);
        const std::string first_manifest = read_bytes(artifact + ".manifest.json");
        if (first.empty() || first_manifest.empty()) break;
        if (!run_cli(args)) break;
        if (read_bytes(artifact) != first) break;
        if (read_bytes(artifact + ".manifest.json") != first_manifest) break;
        ++identical;
    }
    fs::remove_all(dir);

    std::ostringstream os;
    os << identical << "/" << jobs.size()
       << " commands byte-identical across reruns (artifact and manifest)";
    detail = os.str();
    return identical == static_cast<int>(jobs.size());
}

struct Criterion {
    const char* name;
    double budget_s;
    std::function<bool(std::string&)> fn;
};

}  // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        std::fprintf(stderr, "usage: acceptance <entropy-grid-cli-path>\n");
        return 2;
    }
    g_cli_path = argv[1];

    const std::vector<Criterion> criteria = {
        {"1 codec-roundtrip-guarantee", 60.0, roundtrip_guarantee},
        {"2 coefficient-decay-law", 120.0, coefficient_decay},
        {"3 entire-shell-envelope", 120.0, entire_shell_bound},
        {"4 packing-covering-sandwich", 60.0, packing_covering_sandwich},
        {"5 ball-net-size-bracket", 120.0, ball_net_bracket},
        {"6 bound-internal-consistency", 5.0, bound_consistency},
        {"7 worked-numeric-anchors", 1.0, numeric_anchors},
        {"8 cli-determinism", 30.0, cli_determinism},
    };

    int failures = 0;
    for (const auto& c : criteria) {
        const auto t0 = std::chrono::steady_clock::now();
        bool ok = false;
        std::string detail;
        try {
            ok = c.fn(detail);
        } catch (const std::exception& e) {
            ok = false;
            detail = std::string("exception: ") + e.what();
        }
        const double dt = seconds_since(t0);
        if (dt > c.budget_s) {
            ok = false;
            detail += " [over time budget]";
        }
        std::printf("%-34s %s  (%.2f s / %.0f s)  %s\n", c.name,
                    ok ? "PASS" : "FAIL", dt, c.budget_s, detail.c_str());
        if (!ok) ++failures;
    }

    if (failures == 0) {
        std::printf("acceptance: all 8 criteria passed\n");
        return 0;
    }
    std::printf("acceptance: %d criteria failed\n", failures);
    return 1;
}
