// entropy-grid: metric-entropy bounds, eps-nets, and codebooks for compact
// classes of analytic and entire functions.

#include <clocale>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <numbers>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "entropy_grid/bounds.hpp"
#include "entropy_grid/chebyshev.hpp"
#include "entropy_grid/classes.hpp"
#include "entropy_grid/codec.hpp"
#include "entropy_grid/combinatorics.hpp"
#include "entropy_grid/errors.hpp"
#include "entropy_grid/generators.hpp"
#include "entropy_grid/netgen.hpp"
#include "entropy_grid/rng.hpp"
#include "entropy_grid/serialization.hpp"
#include "entropy_grid/validation.hpp"

namespace eg = entropy_grid;

namespace {

constexpr const char* kVersion = "0.1.0";

std::string fmt_sci(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.5e", v);
    return buf;
}

std::string fmt_g(long double v) {
    if (std::isnan(static_cast<double>(v))) return "nan";
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.12Lg", v);
    return buf;
}

const char* fmt_bool(bool b) { return b ? "1" : "0"; }

eg::NetgenConfig netgen_config_from_env() {
    eg::NetgenConfig cfg;
    if (const char* env = std::getenv("ENTROPY_GRID_MAX_SAMPLES")) {
        char* end = nullptr;
        const unsigned long long v = std::strtoull(env, &end, 10);
        if (end == env || *end != '\0' || v == 0) {
            throw eg::validation_error(
                "ENTROPY_GRID_MAX_SAMPLES must be a positive integer");
        }
        cfg.max_samples = static_cast<std::size_t>(v);
    }
    return cfg;
}

// Every artifact gets a sibling <out>.manifest.json recording the exact
// command line; rerunning that command reproduces the artifact bytes.
void write_manifest(const std::string& artifact_path,
                    const std::vector<std::string>& argv,
                    const eg::Json& extras = eg::Json::object()) {
    eg::Json manifest{{"command", argv},
                      {"outputs", eg::Json::array({artifact_path})},
                      {"tool", "entropy-grid"},
                      {"version", kVersion}};
    for (const auto& item : extras.items()) manifest[item.key()] = item.value();
    eg::write_json_file(artifact_path + ".manifest.json", manifest);
}

eg::Json estimate_to_json(const eg::EntropyEstimate& est) {
    return eg::Json{{"eps", est.eps},
                    {"extended_precision_used", est.extended_precision_used},
                    {"ln_eps", static_cast<double>(est.ln_eps)},
                    {"lower_available", est.lower_available},
                    {"lower_condition", est.lower_condition},
                    {"lower_ln", static_cast<double>(est.lower_ln)},
                    {"lower_valid", est.lower_valid},
                    {"upper_condition", est.upper_condition},
                    {"upper_ln", static_cast<double>(est.upper_ln)},
                    {"upper_valid", est.upper_valid},
                    {"warnings", est.warnings}};
}

eg::Json report_to_json(const eg::VerifyReport& rep) {
    eg::Json outcomes = eg::Json::array();
    for (const auto& out : rep.outcomes) {
        outcomes.push_back(eg::Json{{"note", out.note},
                                    {"pass", out.pass},
                                    {"seed", out.seed},
                                    {"value", out.value}});
    }
    return eg::Json{{"outcomes", std::move(outcomes)},
                    {"pass", rep.pass},
                    {"passes", rep.passes},
                    {"suite", rep.suite},
                    {"trials", rep.trials}};
}

int finish_verify(const eg::VerifyReport& rep, const std::string& out,
                  const std::vector<std::string>& argv, std::uint64_t seed) {
    eg::write_json_file(out, report_to_json(rep));
    write_manifest(out, argv, eg::Json{{"seed", seed}});
    std::printf("%s: %d/%d trials passed\n", rep.suite.c_str(), rep.passes,
                rep.trials);
    if (!rep.pass) {
        std::fprintf(stderr, "verification failed: %s\n", rep.suite.c_str());
        return 2;
    }
    return 0;
}

struct CurveRow {
    double eps = 0.0;
    eg::EntropyEstimate est;
    bool have_empirical = false;
    long double empirical_ln = 0.0L;
};

std::string render_csv(const std::vector<CurveRow>& rows, bool empirical) {
    std::string csv = "eps,lower_ln,upper_ln,valid_lower,valid_upper,xp_used";
    if (empirical) csv += ",empirical_ln";
    csv += '\n';
    for (const auto& row : rows) {
        csv += fmt_sci(row.eps);
        csv += ',';
        csv += (row.est.lower_available && row.est.lower_valid)
                   ? fmt_g(row.est.lower_ln)
                   : "nan";
        csv += ',';
        csv += row.est.upper_valid ? fmt_g(row.est.upper_ln) : "nan";
        csv += ',';
        csv += fmt_bool(row.est.lower_available && row.est.lower_valid);
        csv += ',';
        csv += fmt_bool(row.est.upper_valid);
        csv += ',';
        csv += fmt_bool(row.est.extended_precision_used);
        if (empirical) {
            csv += ',';
            csv += row.have_empirical ? fmt_g(row.empirical_ln) : "nan";
        }
        csv += '\n';
    }
    return csv;
}

int run(int argc, char** argv) {
    const std::vector<std::string> raw_args(argv, argv + argc);

    CLI::App app{"metric-entropy bounds, eps-nets, and codebooks for compact "
                 "function classes"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);

    // ---- gen ----------------------------------------------------------
    auto* gen = app.add_subcommand("gen", "generate a random function spec");
    gen->require_subcommand(1);

    int gen_dim = 1, gen_terms = 6;
    double gen_rho = 0.5;
    std::uint64_t gen_seed = 1;
    std::string gen_out;
    auto* gen_analytic_cmd =
        gen->add_subcommand("analytic", "pole-sum sample analytic on the rho-ellipse");
    gen_analytic_cmd->add_option("--dim", gen_dim, "ambient dimension")->default_val(1);
    gen_analytic_cmd->add_option("--rho", gen_rho, "ellipse parameter in (0, 0.95]")
        ->default_val(0.5);
    gen_analytic_cmd->add_option("--terms", gen_terms, "number of pole terms")
        ->default_val(6);
    gen_analytic_cmd->add_option("--seed", gen_seed, "RNG seed")->default_val(1);
    gen_analytic_cmd->add_option("--out", gen_out, "output spec JSON")->required();

    int band_q = 1, band_terms = 4;
    double band_vmax = 1.0;
    std::uint64_t band_seed = 1;
    std::string band_out;
    auto* gen_band_cmd =
        gen->add_subcommand("bandlimited", "entire sample of bounded exponential type");
    gen_band_cmd->add_option("--Q", band_q, "ambient dimension")->default_val(1);
    gen_band_cmd->add_option("--vmax", band_vmax, "per-axis type bound")->default_val(1.0);
    gen_band_cmd->add_option("--terms", band_terms, "number of frequency terms")
        ->default_val(4);
    gen_band_cmd->add_option("--seed", band_seed, "RNG seed")->default_val(1);
    gen_band_cmd->add_option("--out", band_out, "output spec JSON")->required();

    // ---- coeffs -------------------------------------------------------
    std::string coeffs_spec, coeffs_out;
    int coeffs_order = 16, coeffs_nodes = 32;
    bool coeffs_density = false;
    auto* coeffs_cmd =
        app.add_subcommand("coeffs", "expand a generated spec in the Chebyshev basis");
    coeffs_cmd->add_option("--spec", coeffs_spec, "generator spec JSON")->required();
    coeffs_cmd->add_option("--order", coeffs_order, "max total order")->default_val(16);
    coeffs_cmd->add_option("--nodes", coeffs_nodes, "quadrature nodes per axis")
        ->default_val(32);
    coeffs_cmd->add_flag("--density", coeffs_density,
                         "expand the normalized density f^2/z instead of f "
                         "(pole-sum specs only)");
    coeffs_cmd->add_option("--out", coeffs_out, "output series JSON")->required();

    // ---- bounds -------------------------------------------------------
    auto* bounds = app.add_subcommand("bounds", "closed-form entropy bounds");
    bounds->require_subcommand(1);

    double ba_rho = 0.5, ba_eps = 1e-2;
    int ba_q = 1;
    std::string ba_out;
    auto* bounds_analytic = bounds->add_subcommand("analytic", "analytic class");
    bounds_analytic->add_option("--rho", ba_rho)->required();
    bounds_analytic->add_option("--q", ba_q)->required();
    bounds_analytic->add_option("--eps", ba_eps)->required();
    bounds_analytic->add_option("--out", ba_out, "output JSON")->required();

    int be_q = 1, be_c0 = 1;
    double be_tau = 1.0, be_eps = 1e-9;
    std::string be_out;
    auto* bounds_entire = bounds->add_subcommand("entire", "entire class");
    bounds_entire->add_option("--Q", be_q)->required();
    bounds_entire->add_option("--tau", be_tau)->required();
    bounds_entire->add_option("--eps", be_eps)->required();
    bounds_entire->add_option("--c0", be_c0, "envelope constant factor (1 or 2)")
        ->default_val(1);
    bounds_entire->add_option("--out", be_out, "output JSON")->required();

    double bf_rho = 0.5, bf_eps = 1e-3;
    int bf_q = 1;
    std::string bf_out;
    auto* bounds_functional = bounds->add_subcommand("functional", "functional class");
    bounds_functional->add_option("--rho", bf_rho)->required();
    bounds_functional->add_option("--q", bf_q)->required();
    bounds_functional->add_option("--eps", bf_eps)->required();
    bounds_functional->add_option("--out", bf_out, "output JSON")->required();

    int bb_dim = 1;
    double bb_radius = 1.0, bb_eps = 0.25;
    std::string bb_out;
    auto* bounds_ball = bounds->add_subcommand("ball", "Euclidean ball");
    bounds_ball->add_option("--dim", bb_dim)->required();
    bounds_ball->add_option("--radius", bb_radius)->default_val(1.0);
    bounds_ball->add_option("--eps", bb_eps)->required();
    bounds_ball->add_option("--out", bb_out, "output JSON")->required();

    std::string babs_class = "analytic", babs_out;
    double babs_rho = 0.5, babs_tau = 1.0, babs_eps = 1e-2;
    int babs_q = 1, babs_c0 = 1;
    long long babs_n = 1, babs_m = -1;
    auto* bounds_abstract =
        bounds->add_subcommand("abstract", "shell-sum bounds from a class spec");
    bounds_abstract->add_option("--class", babs_class, "analytic or entire")
        ->check(CLI::IsMember({"analytic", "entire"}))
        ->required();
    bounds_abstract->add_option("--rho", babs_rho, "analytic: shell decay base");
    bounds_abstract->add_option("--q", babs_q, "analytic: dimension");
    bounds_abstract->add_option("--Q", babs_q, "entire: dimension");
    bounds_abstract->add_option("--tau", babs_tau, "entire: type parameter");
    bounds_abstract->add_option("--c0", babs_c0, "entire: envelope constant factor");
    bounds_abstract->add_option("--eps", babs_eps)->required();
    bounds_abstract->add_option("--N", babs_n, "lower-bound shell count")->required();
    bounds_abstract->add_option("--M", babs_m,
                                "upper-bound shell count (-1 = minimal legal)")
        ->default_val(-1);
    bounds_abstract->add_option("--out", babs_out, "output JSON")->required();

    // ---- curve --------------------------------------------------------
    std::string curve_class = "analytic", curve_out;
    double curve_rho = 0.5, curve_tau = 1.0, curve_radius = 1.0;
    double curve_eps_min = 1e-8, curve_eps_max = 1e-2;
    int curve_q = 1, curve_c0 = 1, curve_dim = 1, curve_points = 13;
    bool curve_empirical = false;
    std::uint64_t curve_seed = 1;
    auto* curve_cmd = app.add_subcommand("curve", "entropy-bound sweep to CSV");
    curve_cmd->add_option("--class", curve_class, "analytic|entire|functional|ball")
        ->check(CLI::IsMember({"analytic", "entire", "functional", "ball"}))
        ->required();
    curve_cmd->add_option("--rho", curve_rho, "analytic/functional decay base");
    curve_cmd->add_option("--q", curve_q, "analytic/functional dimension");
    curve_cmd->add_option("--Q", curve_q, "entire dimension");
    curve_cmd->add_option("--tau", curve_tau, "entire type parameter");
    curve_cmd->add_option("--c0", curve_c0, "entire envelope constant factor");
    curve_cmd->add_option("--dim", curve_dim, "ball dimension");
    curve_cmd->add_option("--radius", curve_radius, "ball radius");
    curve_cmd->add_option("--eps-min", curve_eps_min)->required();
    curve_cmd->add_option("--eps-max", curve_eps_max)->required();
    curve_cmd->add_option("--points", curve_points, "grid size (>= 2)")->default_val(13);
    curve_cmd->add_flag("--empirical", curve_empirical,
                        "append greedy-net ln-sizes (ball, dim <= 3 only)");
    curve_cmd->add_option("--seed", curve_seed, "seed for --empirical nets")
        ->default_val(1);
    curve_cmd->add_option("--out", curve_out, "output CSV")->required();

    // ---- net ----------------------------------------------------------
    auto* net = app.add_subcommand("net", "construct eps-nets");
    net->require_subcommand(1);

    int nb_dim = 2;
    double nb_eps = 0.5, nb_delta = 1e-3;
    std::uint64_t nb_seed = 1;
    std::string nb_out;
    auto* net_ball_cmd = net->add_subcommand("ball", "net of the unit ball");
    net_ball_cmd->add_option("--dim", nb_dim)->required();
    net_ball_cmd->add_option("--eps", nb_eps)->required();
    net_ball_cmd->add_option("--delta", nb_delta, "failure probability")
        ->default_val(1e-3);
    net_ball_cmd->add_option("--seed", nb_seed)->default_val(1);
    net_ball_cmd->add_option("--out", nb_out, "output net JSON")->required();

    std::vector<double> ne_center, ne_radii;
    double ne_eps = 0.5, ne_delta = 1e-3;
    std::uint64_t ne_seed = 1;
    std::string ne_out;
    auto* net_ell_cmd = net->add_subcommand("ellipsoid", "net of an axis ellipsoid");
    net_ell_cmd->add_option("--center", ne_center, "center (defaults to origin)");
    net_ell_cmd->add_option("--radii", ne_radii, "semi-axes")->required();
    net_ell_cmd->add_option("--eps", ne_eps)->required();
    net_ell_cmd->add_option("--delta", ne_delta, "failure probability")
        ->default_val(1e-3);
    net_ell_cmd->add_option("--seed", ne_seed)->default_val(1);
    net_ell_cmd->add_option("--out", ne_out, "output net JSON")->required();

    // ---- codebook / encode / decode ------------------------------------
    auto* codebook = app.add_subcommand("codebook", "product-net codebooks");
    codebook->require_subcommand(1);
    double cb_rho = 0.5, cb_eps = 0.5, cb_delta = 1e-4;
    int cb_q = 1;
    std::uint64_t cb_seed = 1;
    std::string cb_out;
    auto* cb_build = codebook->add_subcommand("build", "build an analytic-class codebook");
    cb_build->add_option("--rho", cb_rho)->required();
    cb_build->add_option("--q", cb_q)->required();
    cb_build->add_option("--eps", cb_eps)->required();
    cb_build->add_option("--delta", cb_delta, "net failure probability")
        ->default_val(1e-4);
    cb_build->add_option("--seed", cb_seed)->default_val(1);
    cb_build->add_option("--out", cb_out, "output codebook JSON")->required();

    std::string enc_series, enc_codebook, enc_out;
    auto* encode_cmd = app.add_subcommand("encode", "quantize a series to codewords");
    encode_cmd->add_option("--series", enc_series, "input series JSON")->required();
    encode_cmd->add_option("--codebook", enc_codebook, "codebook JSON")->required();
    encode_cmd->add_option("--out", enc_out, "output code JSON")->required();

    std::string dec_code, dec_codebook, dec_out;
    auto* decode_cmd = app.add_subcommand("decode", "reconstruct a series from a code");
    decode_cmd->add_option("--code", dec_code, "input code JSON")->required();
    decode_cmd->add_option("--codebook", dec_codebook, "codebook JSON")->required();
    decode_cmd->add_option("--out", dec_out, "output series JSON")->required();

    // ---- verify ---------------------------------------------------------
    auto* verify = app.add_subcommand("verify", "seeded verification suites");
    verify->require_subcommand(1);

    eg::DecayConfig decay_cfg;
    std::string vdecay_out;
    auto* vdecay = verify->add_subcommand("decay", "coefficient-decay law");
    vdecay->add_option("--dim", decay_cfg.dim)->default_val(1);
    vdecay->add_option("--rho", decay_cfg.rho)->default_val(0.5);
    vdecay->add_option("--trials", decay_cfg.trials)->default_val(20);
    vdecay->add_option("--seed", decay_cfg.seed)->default_val(1);
    vdecay->add_option("--order", decay_cfg.order)->default_val(30);
    vdecay->add_option("--terms", decay_cfg.terms)->default_val(6);
    vdecay->add_option("--nodes", decay_cfg.quad_m)->default_val(64);
    vdecay->add_option("--out", vdecay_out, "report JSON")->required();

    eg::EntireCheckConfig entire_cfg;
    std::string ventire_out;
    auto* ventire = verify->add_subcommand("entire", "entire shell bound");
    ventire->add_option("--Q", entire_cfg.Q)->default_val(1);
    ventire->add_option("--vmax", entire_cfg.vmax)->default_val(1.0);
    ventire->add_option("--trials", entire_cfg.trials)->default_val(20);
    ventire->add_option("--seed", entire_cfg.seed)->default_val(1);
    ventire->add_option("--order", entire_cfg.order)->default_val(15);
    ventire->add_option("--terms", entire_cfg.terms)->default_val(4);
    ventire->add_option("--nodes", entire_cfg.quad_m)->default_val(48);
    ventire->add_option("--grid", entire_cfg.grid)->default_val(64);
    ventire->add_option("--out", ventire_out, "report JSON")->required();

    eg::SandwichConfig sandwich_cfg;
    std::string vsand_out;
    auto* vsand = verify->add_subcommand("sandwich", "packing-covering sandwich");
    vsand->add_option("--dim", sandwich_cfg.dim)->default_val(2);
    vsand->add_option("--trials", sandwich_cfg.trials)->default_val(50);
    vsand->add_option("--seed", sandwich_cfg.seed)->default_val(7);
    vsand->add_option("--max-points", sandwich_cfg.max_points)->default_val(64);
    vsand->add_option("--out", vsand_out, "report JSON")->required();

    eg::RoundtripConfig rt_cfg;
    std::string vrt_out;
    auto* vrt = verify->add_subcommand("roundtrip", "codebook roundtrip guarantee");
    vrt->add_option("--rho", rt_cfg.klass.rho)->default_val(0.5);
    vrt->add_option("--q", rt_cfg.klass.q)->default_val(1);
    vrt->add_option("--eps", rt_cfg.eps)->default_val(0.5);
    vrt->add_option("--delta", rt_cfg.delta)->default_val(1e-4);
    vrt->add_option("--trials", rt_cfg.trials)->default_val(20);
    vrt->add_option("--seed", rt_cfg.seed)->default_val(1);
    vrt->add_option("--out", vrt_out, "report JSON")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::fprintf(stderr, "usage error: %s\n", e.what());
        return 1;
    }

    // ---- dispatch -------------------------------------------------------
    if (gen_analytic_cmd->parsed()) {
        const eg::PoleSumSpec spec =
            eg::gen_analytic(gen_dim, gen_rho, gen_terms, gen_seed);
        eg::write_json_file(gen_out, eg::to_json(spec));
        write_manifest(gen_out, raw_args, eg::Json{{"seed", gen_seed}});
        return 0;
    }
    if (gen_band_cmd->parsed()) {
        const eg::BandlimitedSpec spec =
            eg::gen_bandlimited(band_q, band_vmax, band_terms, band_seed);
        eg::write_json_file(band_out, eg::to_json(spec));
        write_manifest(band_out, raw_args, eg::Json{{"seed", band_seed}});
        return 0;
    }
    if (coeffs_cmd->parsed()) {
        const eg::Json spec_json = eg::read_json_file(coeffs_spec);
        if (!spec_json.contains("kind")) {
            throw eg::validation_error("spec file: missing \"kind\"");
        }
        const std::string kind = spec_json.at("kind").get<std::string>();
        eg::RealEvaluator f;
        int dim = 0;
        if (kind == "pole_sum") {
            const eg::PoleSumSpec spec = eg::pole_spec_from_json(spec_json);
            dim = spec.dim;
            f = coeffs_density ? eg::gen_density(spec, coeffs_nodes).g
                               : eg::pole_sum_evaluator(spec);
        } else if (kind == "bandlimited") {
            if (coeffs_density) {
                throw eg::validation_error(
                    "--density applies to pole-sum specs only");
            }
            const eg::BandlimitedSpec spec = eg::band_spec_from_json(spec_json);
            dim = spec.Q;
            f = eg::bandlimited_evaluator(spec);
        } else {
            throw eg::validation_error("spec file: unknown kind \"" + kind + "\"");
        }
        const eg::ChebSeries series =
            eg::compute_coeffs(f, coeffs_order, coeffs_nodes, eg::unit_box(dim));
        eg::write_json_file(coeffs_out, eg::to_json(series));
        write_manifest(coeffs_out, raw_args);
        return 0;
    }
    if (bounds_analytic->parsed()) {
        eg::AnalyticClassParams p;
        p.rho = ba_rho;
        p.q = ba_q;
        const eg::EntropyEstimate est = eg::analytic_bounds(p, ba_eps);
        eg::write_json_file(ba_out, estimate_to_json(est));
        write_manifest(ba_out, raw_args);
        std::printf("lower_ln=%s upper_ln=%s\n", fmt_g(est.lower_ln).c_str(),
                    fmt_g(est.upper_ln).c_str());
        return 0;
    }
    if (bounds_entire->parsed()) {
        eg::EntireClassParams p;
        p.Q = be_q;
        p.tau = be_tau;
        p.c0 = be_c0;
        const eg::EntropyEstimate est = eg::entire_bounds(p, be_eps);
        eg::Json j = estimate_to_json(est);
        if (!eg::tau_in_stated_range(p)) {
            j["warnings"].push_back(
                "tau outside the stated range [1, Q/(2 e^{3/2} pi)]");
        }
        eg::write_json_file(be_out, j);
        write_manifest(be_out, raw_args);
        std::printf("lower_ln=%s upper_ln=%s\n", fmt_g(est.lower_ln).c_str(),
                    fmt_g(est.upper_ln).c_str());
        return 0;
    }
    if (bounds_functional->parsed()) {
        eg::FunctionalClassParams p;
        p.q = bf_q;
        p.rho = bf_rho;
        const eg::EntropyEstimate est = eg::functional_upper(p, bf_eps);
        eg::write_json_file(bf_out, estimate_to_json(est));
        write_manifest(bf_out, raw_args);
        std::printf("upper_ln=%s\n", fmt_g(est.upper_ln).c_str());
        return 0;
    }
    if (bounds_ball->parsed()) {
        const eg::EntropyEstimate est = eg::ball_bounds(bb_dim, bb_radius, bb_eps);
        eg::write_json_file(bb_out, estimate_to_json(est));
        write_manifest(bb_out, raw_args);
        std::printf("lower_ln=%s upper_ln=%s\n", fmt_g(est.lower_ln).c_str(),
                    fmt_g(est.upper_ln).c_str());
        return 0;
    }
    if (bounds_abstract->parsed()) {
        eg::ShellSpec spec;
        if (babs_class == "analytic") {
            eg::AnalyticClassParams p;
            p.rho = babs_rho;
            p.q = babs_q;
            spec = eg::make_analytic_shell_spec(p);
        } else {
            eg::EntireClassParams p;
            p.Q = babs_q;
            p.tau = babs_tau;
            p.c0 = babs_c0;
            spec = eg::make_entire_shell_spec(p);
        }
        long long m = babs_m;
        if (m < 0) {
            m = eg::shell_tail_index(
                spec, std::log(static_cast<long double>(babs_eps)) -
                          std::numbers::ln2_v<long double>);
        }
        const eg::EntropyEstimate est = eg::abstract_bounds(spec, babs_eps, babs_n, m);
        eg::Json j = estimate_to_json(est);
        j["M"] = m;
        j["N"] = babs_n;
        eg::write_json_file(babs_out, j);
        write_manifest(babs_out, raw_args);
        std::printf("lower=%s upper=%s (nats)\n", fmt_g(est.lower_ln).c_str(),
                    fmt_g(est.upper_ln).c_str());
        return 0;
    }
    if (curve_cmd->parsed()) {
        if (!(curve_eps_min > 0.0) || !(curve_eps_max > 0.0) ||
            !(curve_eps_min <= curve_eps_max)) {
            throw eg::validation_error("curve: need 0 < eps-min <= eps-max");
        }
        if (curve_points < 2) {
            throw eg::validation_error("curve: need at least 2 grid points");
        }
        if (curve_empirical &&
            (curve_class != "ball" || curve_dim > 3 || curve_dim < 1)) {
            throw eg::validation_error(
                "curve: --empirical requires --class ball with dim <= 3");
        }
        if (curve_empirical && curve_eps_min / curve_radius < 0.05) {
            throw eg::validation_error(
                "curve: --empirical needs eps-min/radius >= 0.05 (greedy nets "
                "explode below that)");
        }
        const eg::NetgenConfig cfg = netgen_config_from_env();
        const long double ln_min = std::log(static_cast<long double>(curve_eps_min));
        const long double ln_max = std::log(static_cast<long double>(curve_eps_max));
        std::vector<CurveRow> rows;
        for (int i = 0; i < curve_points; ++i) {
            // descending grid: eps-max first
            const long double t =
                static_cast<long double>(i) / (curve_points - 1);
            CurveRow row;
            row.eps = static_cast<double>(std::exp(ln_max + t * (ln_min - ln_max)));
            if (curve_class == "analytic") {
                eg::AnalyticClassParams p;
                p.rho = curve_rho;
                p.q = curve_q;
                row.est = eg::analytic_bounds(p, row.eps);
            } else if (curve_class == "entire") {
                eg::EntireClassParams p;
                p.Q = curve_q;
                p.tau = curve_tau;
                p.c0 = curve_c0;
                row.est = eg::entire_bounds(p, row.eps);
            } else if (curve_class == "functional") {
                eg::FunctionalClassParams p;
                p.q = curve_q;
                p.rho = curve_rho;
                try {
                    row.est = eg::functional_upper(p, row.eps);
                } catch (const eg::validation_error&) {
                    row.est = eg::EntropyEstimate{};
                    row.est.eps = row.eps;
                    row.est.lower_available = false;
                    row.est.lower_valid = false;
                    row.est.upper_valid = false;
                }
            } else {
                row.est = eg::ball_bounds(curve_dim, curve_radius, row.eps);
            }
            if (curve_empirical) {
                const eg::EpsNet net =
                    eg::net_ball(curve_dim, row.eps / curve_radius, 1e-3,
                                 eg::derive_seed(curve_seed, "empirical", i), cfg);
                row.have_empirical = true;
                row.empirical_ln =
                    std::log(static_cast<long double>(net.points.size()));
            }
            rows.push_back(std::move(row));
        }
        eg::write_text_file(curve_out, render_csv(rows, curve_empirical));
        eg::Json extras;
        if (curve_empirical) extras["seed"] = curve_seed;
        write_manifest(curve_out, raw_args, extras);
        return 0;
    }
    if (net_ball_cmd->parsed()) {
        const eg::NetgenConfig cfg = netgen_config_from_env();
        const eg::EpsNet result = eg::net_ball(nb_dim, nb_eps, nb_delta, nb_seed, cfg);
        eg::write_json_file(nb_out, eg::to_json(result));
        write_manifest(nb_out, raw_args,
                       eg::Json{{"guarantee_void", result.guarantee_void},
                                {"norm", result.norm_id},
                                {"sample_count", result.sample_count},
                                {"seed", nb_seed}});
        std::printf("net size %zu\n", result.points.size());
        return 0;
    }
    if (net_ell_cmd->parsed()) {
        if (ne_center.empty()) ne_center.assign(ne_radii.size(), 0.0);
        const eg::NetgenConfig cfg = netgen_config_from_env();
        const eg::EpsNet result =
            eg::net_ellipsoid(ne_center, ne_radii, ne_eps, ne_delta, ne_seed, cfg);
        eg::write_json_file(ne_out, eg::to_json(result));
        write_manifest(ne_out, raw_args,
                       eg::Json{{"guarantee_void", result.guarantee_void},
                                {"norm", result.norm_id},
                                {"sample_count", result.sample_count},
                                {"seed", ne_seed}});
        std::printf("net size %zu\n", result.points.size());
        return 0;
    }
    if (cb_build->parsed()) {
        eg::AnalyticClassParams p;
        p.rho = cb_rho;
        p.q = cb_q;
        const eg::NetgenConfig cfg = netgen_config_from_env();
        const eg::Codebook cb = eg::build_codebook(p, cb_eps, cb_delta, cb_seed, cfg);
        eg::write_json_file(cb_out, eg::to_json(cb));
        eg::Json sizes = eg::Json::array();
        for (const auto& shell : cb.shells) sizes.push_back(shell.points.size());
        write_manifest(
            cb_out, raw_args,
            eg::Json{{"log_codebook_size",
                      static_cast<double>(eg::codebook_log_size(cb))},
                     {"seed", cb_seed},
                     {"shell_sizes", std::move(sizes)}});
        std::printf("codebook shells %lld hash %s\n",
                    static_cast<long long>(cb.shell_count()), cb.hash.c_str());
        return 0;
    }
    if (encode_cmd->parsed()) {
        const eg::ChebSeries series =
            eg::series_from_json(eg::read_json_file(enc_series));
        const eg::Codebook cb =
            eg::codebook_from_json(eg::read_json_file(enc_codebook));
        const eg::Code code = eg::encode(series, cb);
        eg::write_json_file(enc_out, eg::to_json(code));
        write_manifest(enc_out, raw_args);
        return 0;
    }
    if (decode_cmd->parsed()) {
        const eg::Code code = eg::code_from_json(eg::read_json_file(dec_code));
        const eg::Codebook cb =
            eg::codebook_from_json(eg::read_json_file(dec_codebook));
        const eg::ChebSeries series = eg::decode(code, cb);
        eg::write_json_file(dec_out, eg::to_json(series));
        write_manifest(dec_out, raw_args);
        return 0;
    }
    if (vdecay->parsed()) {
        return finish_verify(eg::verify_decay(decay_cfg), vdecay_out, raw_args,
                             decay_cfg.seed);
    }
    if (ventire->parsed()) {
        return finish_verify(eg::verify_entire(entire_cfg), ventire_out, raw_args,
                             entire_cfg.seed);
    }
    if (vsand->parsed()) {
        return finish_verify(eg::verify_sandwich(sandwich_cfg), vsand_out, raw_args,
                             sandwich_cfg.seed);
    }
    if (vrt->parsed()) {
        return finish_verify(eg::verify_roundtrip(rt_cfg), vrt_out, raw_args,
                             rt_cfg.seed);
    }
    std::fprintf(stderr, "usage error: no subcommand dispatched\n");
    return 1;
}

}  // namespace

int main(int argc, char** argv) {
    std::setlocale(LC_NUMERIC, "C");
    try {
        return run(argc, argv);
    } catch (const entropy_grid::io_error& e) {
        std::fprintf(stderr, "io error: %s\n", e.what());
        return 3;
    } catch (const entropy_grid::validation_error& e) {
        std::fprintf(stderr, "validation error: %s\n", e.what());
        return 2;
    } catch (const nlohmann::json::exception& e) {
        std::fprintf(stderr, "validation error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
}
