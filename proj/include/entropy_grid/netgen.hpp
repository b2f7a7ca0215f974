#pragma once

// Randomized-greedy eps-net construction on balls and ellipsoids, plus
// exact brute-force covering/packing estimators for small instances.

#include <cstdint>
#include <string>
#include <vector>

namespace entropy_grid {

struct NetgenConfig {
    // Beyond this many samples the probabilistic net guarantee is void
    // (flagged, not fatal). CLI overrides via ENTROPY_GRID_MAX_SAMPLES.
    std::size_t max_samples = 2'000'000;
    std::size_t brute_point_cap = 512;
    // Maximum free branch-and-bound decisions in brute_covering; forced
    // selections (points coverable only one way) do not count.
    int brute_branch_cap = 24;
};

struct EpsNet {
    int dim = 0;
    double eps = 0.0;          // covering radius
    double separation = 0.0;   // guaranteed pairwise minimum distance
    std::string norm_id = "EUCLIDEAN";
    std::uint64_t seed = 0;
    std::size_t sample_count = 0;
    bool guarantee_void = false;
    std::vector<std::vector<double>> points;
};

struct SampleBudget {
    std::size_t count = 0;
    bool capped = false;   // probabilistic guarantee void
};

// ceil((4/eps)^d ln((12/eps)^d / delta)), natural log; clamped to cap
// with the capped flag set when the formula exceeds it.
SampleBudget required_samples(int d, double eps, double delta,
                              std::size_t cap = NetgenConfig{}.max_samples);

// i.i.d. uniform points in the Euclidean unit ball: normalized Gaussian
// direction times U^(1/d) radius. Deterministic in seed.
std::vector<std::vector<double>> sample_ball(int d, std::size_t count, std::uint64_t seed);

// Scans points in order; keeps one iff its distance to every kept point
// is >= sep. Output is sep-separated and a sep-net of the input set.
EpsNet greedy_net(const std::vector<std::vector<double>>& points, double sep);

// required_samples + sample_ball + greedy_net at separation eps/2; an
// eps-net of the unit ball with probability >= 1 - delta (unless capped).
EpsNet net_ball(int d, double eps, double delta, std::uint64_t seed,
                const NetgenConfig& cfg = {});

// Unit-ball net at eps' = eps / max_j r_j, mapped by x = center + r.y.
// Separation after anisotropic scaling is (min_j r_j) eps'/2. When
// eps' >= 1 the singleton {center} already covers and is returned.
EpsNet net_ellipsoid(const std::vector<double>& center, const std::vector<double>& radii,
                     double eps, double delta, std::uint64_t seed,
                     const NetgenConfig& cfg = {});

struct NetReport {
    double coverage_max = 0.0;    // max over test points of distance to net
    double min_pairwise = 0.0;    // min pairwise net distance (inf if < 2 points)
    bool coverage_ok = false;
    bool separation_ok = false;
};

NetReport verify_net(const EpsNet& net, const std::vector<std::vector<double>>& test_points);

// Exact maximal size of an eps-separated subset (pairwise distance
// >= eps), by branch and bound. Requires |points| within the cap.
int brute_capacity(const std::vector<std::vector<double>>& points, double eps,
                   const NetgenConfig& cfg = {});

// Exact minimal size of an eps-net chosen from the point set itself
// (every point within <= eps of a chosen one), by branch and bound with
// forced-selection propagation.
int brute_covering(const std::vector<std::vector<double>>& points, double eps,
                   const NetgenConfig& cfg = {});

} // namespace entropy_grid
