#include "entropy_grid/netgen.hpp"

#include <algorithm>
#include <bitset>
#include <cmath>
#include <limits>

#include "entropy_grid/errors.hpp"
#include "entropy_grid/rng.hpp"

namespace entropy_grid {

namespace {

constexpr std::size_t kBruteMax = 512;
using Mask = std::bitset<kBruteMax>;

double dist2(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j) {
        const double d = a[j] - b[j];
        s += d * d;
    }
    return s;
}

void check_point_dims(const std::vector<std::vector<double>>& pts, const char* where) {
    if (pts.empty()) throw validation_error(std::string(where) + ": empty point set");
    const std::size_t d = pts.front().size();
    if (d == 0) throw validation_error(std::string(where) + ": zero-dimensional points");
    for (const auto& p : pts) {
        if (p.size() != d) throw validation_error(std::string(where) + ": ragged point dimensions");
    }
}

std::vector<double> pairwise_dist2(const std::vector<std::vector<double>>& pts) {
    const std::size_t n = pts.size();
    std::vector<double> d2(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const double v = dist2(pts[i], pts[j]);
            d2[i * n + j] = v;
            d2[j * n + i] = v;
        }
    }
    return d2;
}

struct CapacitySearch {
    const std::vector<Mask>& conflict;
    std::size_t n;
    int best = 0;

    void run(Mask cand, int size) {
        for (;;) {
            if (size + static_cast<int>(cand.count()) <= best) return;
            if (cand.none()) {
                best = std::max(best, size);
                return;
            }
            // Conflict-free points are always taken; only contested ones
            // branch.
            std::size_t branch_v = kBruteMax;
            std::size_t branch_deg = 0;
            bool advanced = false;
            for (std::size_t v = 0; v < n; ++v) {
                if (!cand.test(v)) continue;
                const auto deg = (conflict[v] & cand).count();
                if (deg == 0) {
                    cand.reset(v);
                    ++size;
                    advanced = true;
                    break;
                }
                if (branch_v == kBruteMax || deg > branch_deg) {
                    branch_v = v;
                    branch_deg = deg;
                }
            }
            if (advanced) continue;
            Mask with = cand & ~conflict[branch_v];
            with.reset(branch_v);
            run(with, size + 1);
            // Exclude branch continues iteratively with the same size.
            cand.reset(branch_v);
        }
    }
};

struct CoverSearch {
    const std::vector<Mask>& cover;
    std::size_t n;
    Mask full;
    int branch_cap;
    int best;

    void run(Mask covered, int chosen, int free_used) {
        // Forced-selection propagation: an uncovered point with a single
        // candidate coverer decides itself.
        for (;;) {
            if (chosen >= best) return;
            if (covered == full) {
                best = chosen;
                return;
            }
            std::size_t pick = kBruteMax;
            std::size_t pick_cnt = 0;
            std::size_t forced = kBruteMax;
            std::size_t max_gain = 0;
            std::size_t uncovered = 0;
            for (std::size_t p = 0; p < n; ++p) {
                if (covered.test(p)) continue;
                ++uncovered;
                const auto cnt = cover[p].count();
                if (cnt == 1) {
                    forced = p;
                    break;
                }
                if (pick == kBruteMax || cnt < pick_cnt) {
                    pick = p;
                    pick_cnt = cnt;
                }
                const auto gain = (cover[p] & ~covered).count();
                max_gain = std::max(max_gain, gain);
            }
            if (forced != kBruteMax) {
                covered |= cover[forced];
                ++chosen;
                continue;
            }
            // Admissible lower bound: every chosen set covers at most
            // max_gain new points.
            if (max_gain == 0) return;
            const int lb = chosen + static_cast<int>((uncovered + max_gain - 1) / max_gain);
            if (lb >= best) return;
            if (free_used >= branch_cap) {
                throw validation_error("brute_covering: branch cap exceeded");
            }
            for (std::size_t c = 0; c < n; ++c) {
                if (!cover[pick].test(c)) continue;
                run(covered | cover[c], chosen + 1, free_used + 1);
            }
            return;
        }
    }
};

} // namespace

SampleBudget required_samples(int d, double eps, double delta, std::size_t cap) {
    if (d < 1) throw validation_error("required_samples: d must be positive");
    if (!(eps > 0.0)) throw validation_error("required_samples: eps must be positive");
    if (!(delta > 0.0 && delta < 1.0)) {
        throw validation_error("required_samples: delta must lie in (0, 1)");
    }
    const long double base = std::pow(4.0L / eps, static_cast<long double>(d));
    const long double lg = d * std::log(12.0L / eps) - std::log(static_cast<long double>(delta));
    const long double value = base * std::max(lg, 0.0L);
    SampleBudget out;
    if (!(value < static_cast<long double>(cap))) {
        out.count = cap;
        out.capped = true;
        return out;
    }
    out.count = static_cast<std::size_t>(std::ceil(value));
    if (out.count < 1) out.count = 1;
    return out;
}

std::vector<std::vector<double>> sample_ball(int d, std::size_t count, std::uint64_t seed) {
    if (d < 1) throw validation_error("sample_ball: d must be positive");
    if (count < 1) throw validation_error("sample_ball: count must be positive");
    SplitMix64 rng(derive_seed(seed, "ball_samples"));
    std::vector<std::vector<double>> out;
    out.reserve(count);
    std::vector<double> g(static_cast<std::size_t>(d));
    for (std::size_t i = 0; i < count; ++i) {
        double norm2 = 0.0;
        do {
            for (int j = 0; j < d; ++j) {
                g[static_cast<std::size_t>(j)] = rng.gaussian();
            }
            norm2 = 0.0;
            for (double v : g) norm2 += v * v;
        } while (norm2 == 0.0);
        const double r = std::pow(rng.next_unit(), 1.0 / d) / std::sqrt(norm2);
        std::vector<double> p(static_cast<std::size_t>(d));
        for (int j = 0; j < d; ++j) p[static_cast<std::size_t>(j)] = r * g[static_cast<std::size_t>(j)];
        out.push_back(std::move(p));
    }
    return out;
}

EpsNet greedy_net(const std::vector<std::vector<double>>& points, double sep) {
    check_point_dims(points, "greedy_net");
    if (!(sep > 0.0)) throw validation_error("greedy_net: sep must be positive");
    EpsNet net;
    net.dim = static_cast<int>(points.front().size());
    net.eps = sep;
    net.separation = sep;
    net.sample_count = points.size();
    const double sep2 = sep * sep;
    for (const auto& p : points) {
        bool keep = true;
        for (const auto& q : net.points) {
            if (dist2(p, q) < sep2) {
                keep = false;
                break;
            }
        }
        if (keep) net.points.push_back(p);
    }
    return net;
}

EpsNet net_ball(int d, double eps, double delta, std::uint64_t seed, const NetgenConfig& cfg) {
    if (!(eps > 0.0)) throw validation_error("net_ball: eps must be positive");
    const SampleBudget budget = required_samples(d, eps, delta, cfg.max_samples);
    auto samples = sample_ball(d, budget.count, seed);
    EpsNet net = greedy_net(samples, eps / 2.0);
    net.eps = eps;
    net.separation = eps / 2.0;
    net.seed = seed;
    net.sample_count = budget.count;
    net.guarantee_void = budget.capped;
    return net;
}

EpsNet net_ellipsoid(const std::vector<double>& center, const std::vector<double>& radii,
                     double eps, double delta, std::uint64_t seed, const NetgenConfig& cfg) {
    if (center.size() != radii.size() || center.empty()) {
        throw validation_error("net_ellipsoid: center/radii dimension mismatch");
    }
    if (!(eps > 0.0)) throw validation_error("net_ellipsoid: eps must be positive");
    double rmax = 0.0, rmin = std::numeric_limits<double>::infinity();
    for (double r : radii) {
        if (!(r > 0.0)) throw validation_error("net_ellipsoid: radii must be positive");
        rmax = std::max(rmax, r);
        rmin = std::min(rmin, r);
    }
    const int d = static_cast<int>(radii.size());
    const double eps_unit = eps / rmax;
    EpsNet net;
    if (eps_unit >= 1.0) {
        // The center alone covers: every ellipsoid point is within rmax <= eps.
        net.dim = d;
        net.eps = eps;
        net.separation = rmin * eps_unit / 2.0;
        net.seed = seed;
        net.points.push_back(center);
        return net;
    }
    net = net_ball(d, eps_unit, delta, seed, cfg);
    for (auto& p : net.points) {
        for (int j = 0; j < d; ++j) {
            const auto ju = static_cast<std::size_t>(j);
            p[ju] = center[ju] + radii[ju] * p[ju];
        }
    }
    net.eps = eps;
    net.separation = rmin * eps_unit / 2.0;
    return net;
}

NetReport verify_net(const EpsNet& net, const std::vector<std::vector<double>>& test_points) {
    if (net.points.empty()) throw validation_error("verify_net: empty net");
    NetReport rep;
    rep.coverage_max = 0.0;
    for (const auto& t : test_points) {
        if (t.size() != static_cast<std::size_t>(net.dim)) {
            throw validation_error("verify_net: test point dimension mismatch");
        }
        double best = std::numeric_limits<double>::infinity();
        for (const auto& p : net.points) best = std::min(best, dist2(t, p));
        rep.coverage_max = std::max(rep.coverage_max, std::sqrt(best));
    }
    rep.min_pairwise = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < net.points.size(); ++i) {
        for (std::size_t j = i + 1; j < net.points.size(); ++j) {
            rep.min_pairwise = std::min(rep.min_pairwise, std::sqrt(dist2(net.points[i], net.points[j])));
        }
    }
    rep.coverage_ok = rep.coverage_max <= net.eps * (1.0 + 1e-12);
    rep.separation_ok = rep.min_pairwise >= net.separation * (1.0 - 1e-12);
    return rep;
}

int brute_capacity(const std::vector<std::vector<double>>& points, double eps,
                   const NetgenConfig& cfg) {
    check_point_dims(points, "brute_capacity");
    const std::size_t n = points.size();
    if (n > std::min(cfg.brute_point_cap, kBruteMax)) {
        throw validation_error("brute_capacity: point count exceeds brute-force cap");
    }
    if (!(eps > 0.0)) throw validation_error("brute_capacity: eps must be positive");
    const auto d2 = pairwise_dist2(points);
    const double eps2 = eps * eps;
    std::vector<Mask> conflict(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            // Separated means distance >= eps, so strictly closer pairs conflict.
            if (i != j && d2[i * n + j] < eps2) conflict[i].set(j);
        }
    }
    Mask all;
    for (std::size_t i = 0; i < n; ++i) all.set(i);
    CapacitySearch search{conflict, n};
    search.run(all, 0);
    return search.best;
}

int brute_covering(const std::vector<std::vector<double>>& points, double eps,
                   const NetgenConfig& cfg) {
    check_point_dims(points, "brute_covering");
    const std::size_t n = points.size();
    if (n > std::min(cfg.brute_point_cap, kBruteMax)) {
        throw validation_error("brute_covering: point count exceeds brute-force cap");
    }
    if (!(eps > 0.0)) throw validation_error("brute_covering: eps must be positive");
    const auto d2 = pairwise_dist2(points);
    const double eps2 = eps * eps;
    std::vector<Mask> cover(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (d2[i * n + j] <= eps2) cover[i].set(j);
        }
    }
    Mask full;
    for (std::size_t i = 0; i < n; ++i) full.set(i);

    // Greedy cover as the initial upper bound.
    Mask covered;
    int greedy = 0;
    while (covered != full) {
        std::size_t pick = 0, gain = 0;
        for (std::size_t i = 0; i < n; ++i) {
            const auto g = (cover[i] & ~covered).count();
            if (g > gain) {
                gain = g;
                pick = i;
            }
        }
        covered |= cover[pick];
        ++greedy;
    }

    CoverSearch search{cover, n, full, cfg.brute_branch_cap, greedy + 1};
    search.best = greedy + 1;
    search.run(Mask{}, 0, 0);
    // The greedy solution itself is feasible, so the search can only improve it.
    return std::min(search.best, greedy);
}

} // namespace entropy_grid
