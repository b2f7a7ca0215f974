#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "entropy_grid/chebyshev.hpp"
#include "entropy_grid/classes.hpp"
#include "entropy_grid/codec.hpp"

namespace entropy_grid {

// One seeded experiment inside a verification suite.
struct TrialOutcome {
    std::uint64_t seed = 0;
    bool pass = false;
    double value = 0.0;  // suite-specific scalar (estimate, error, ...)
    std::string note;
};

struct VerifyReport {
    std::string suite;
    int trials = 0;
    int passes = 0;
    bool pass = false;
    std::vector<TrialOutcome> outcomes;
};

// Coefficient-decay law: pole-sum generators on the rho-ellipse, shell
// norms through `order`, least-squares decay estimate within +-0.05 of
// rho. Suite passes when at least 90 percent of trials do.
struct DecayConfig {
    int dim = 1;
    double rho = 0.5;
    int trials = 20;
    std::uint64_t seed = 1;
    int order = 30;
    int terms = 6;
    int quad_m = 64;
};

VerifyReport verify_decay(const DecayConfig& cfg);

// Entire-class shell bound: band-limited generators of type vmax per axis,
// sup shell norms against 2 (2 pi/Q)^{Q/2} N^{Q/2} (Q vmax)^N / N! with 5
// percent sup-estimation slack. All trials must pass.
struct EntireCheckConfig {
    int Q = 1;
    double vmax = 1.0;
    int trials = 20;
    std::uint64_t seed = 1;
    int order = 15;
    int terms = 4;
    int quad_m = 48;
    int grid = 64;
};

VerifyReport verify_entire(const EntireCheckConfig& cfg);

// Packing-covering sandwich on random finite instances, exact brute force:
// capacity(2 eps) <= covering(eps) <= capacity(eps), integer-exact.
struct SandwichConfig {
    int dim = 2;
    int trials = 50;
    std::uint64_t seed = 7;
    int max_points = 64;
};

VerifyReport verify_sandwich(const SandwichConfig& cfg);

// Constructive net guarantee: seeded class members round-trip through a
// codebook with L2 error <= eps in every trial.
struct RoundtripConfig {
    AnalyticClassParams klass;
    double eps = 0.5;
    double delta = 1e-4;
    int trials = 20;
    std::uint64_t seed = 1;
    int gen_order = 24;
    int gen_terms = 5;
    int quad_m = 32;
};

VerifyReport verify_roundtrip(const RoundtripConfig& cfg);

// Exact member of the analytic class: a pole-sum sample, expanded to
// gen_order and rescaled so every shell norm sits strictly inside rho^j.
ChebSeries make_class_member(const AnalyticClassParams& params, std::uint64_t seed,
                             int gen_order = 24, int terms = 5, int quad_m = 32);

}  // namespace entropy_grid
