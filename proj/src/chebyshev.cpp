#include "entropy_grid/chebyshev.hpp"

#include <cmath>
#include <string>

#include "entropy_grid/errors.hpp"

namespace entropy_grid {

namespace {

constexpr double kPi = 3.141592653589793238462643383279503;
constexpr double kSqrt2 = 1.414213562373095048801688724209698;

// T_k on a scaled argument t = x/r, |t| <= 1 expected; tiny excursions
// from roundoff are clamped before acos.
double cheb_t_real(int k, double t) {
    if (k == 0) return 1.0;
    if (t > 1.0 && t <= 1.0 + 1e-12) t = 1.0;
    if (t < -1.0 && t >= -1.0 - 1e-12) t = -1.0;
    if (t >= -1.0 && t <= 1.0) return std::cos(static_cast<double>(k) * std::acos(t));
    // Off-interval real arguments fall back to the recurrence.
    double tm1 = 1.0, tc = t;
    for (int i = 2; i <= k; ++i) {
        double tn = 2.0 * t * tc - tm1;
        tm1 = tc;
        tc = tn;
    }
    return k == 0 ? 1.0 : tc;
}

std::complex<double> cheb_t_complex(int k, std::complex<double> t) {
    if (k == 0) return {1.0, 0.0};
    std::complex<double> tm1 = 1.0, tc = t;
    for (int i = 2; i <= k; ++i) {
        std::complex<double> tn = 2.0 * t * tc - tm1;
        tm1 = tc;
        tc = tn;
    }
    return tc;
}

void check_dims(std::size_t kd, std::size_t zd, std::size_t bd, const char* where) {
    if (kd != zd || kd != bd) {
        throw validation_error(std::string(where) + ": dimension mismatch");
    }
}

} // namespace

Box unit_box(int d) {
    if (d < 1) throw validation_error("unit_box: d must be positive");
    return Box{std::vector<double>(static_cast<std::size_t>(d), 1.0)};
}

void validate_box(const Box& box) {
    if (box.radii.empty()) throw validation_error("box: dimension must be positive");
    for (double r : box.radii) {
        if (!(r > 0.0) || !std::isfinite(r)) {
            throw validation_error("box: all radii must be positive and finite");
        }
    }
}

int ChebSeries::max_order() const {
    if (coeffs.empty()) return -1;
    // Map is ordered by (order, lex); the last key has the max order.
    return static_cast<int>(order_of(coeffs.rbegin()->first));
}

double ChebSeries::l2_norm() const {
    long double s = 0.0L;
    for (const auto& [k, v] : coeffs) s += static_cast<long double>(v) * v;
    return static_cast<double>(std::sqrt(s));
}

ChebSeries make_series(int dim, Box box) {
    if (dim < 1) throw validation_error("series: dimension must be positive");
    validate_box(box);
    if (box.dim() != dim) throw validation_error("series: box dimension mismatch");
    ChebSeries s;
    s.dim = dim;
    s.box = std::move(box);
    return s;
}

std::complex<double> eval_poly(const MultiIndex& k, const std::vector<std::complex<double>>& z,
                               const Box& box) {
    check_dims(k.size(), z.size(), box.radii.size(), "eval_poly");
    std::complex<double> prod = 1.0;
    for (std::size_t j = 0; j < k.size(); ++j) {
        if (k[j] < 0) throw validation_error("eval_poly: negative index entry");
        if (k[j] == 0) continue;
        prod *= kSqrt2 * cheb_t_complex(k[j], z[j] / box.radii[j]);
    }
    return prod;
}

double eval_poly_real(const MultiIndex& k, const std::vector<double>& x, const Box& box) {
    check_dims(k.size(), x.size(), box.radii.size(), "eval_poly");
    double prod = 1.0;
    for (std::size_t j = 0; j < k.size(); ++j) {
        if (k[j] < 0) throw validation_error("eval_poly: negative index entry");
        if (k[j] == 0) continue;
        prod *= kSqrt2 * cheb_t_real(k[j], x[j] / box.radii[j]);
    }
    return prod;
}

ChebSeries compute_coeffs(const RealEvaluator& f, int n_max, int m, const Box& box,
                          std::uint64_t node_cap) {
    validate_box(box);
    if (n_max < 1) throw validation_error("compute_coeffs: n_max must be positive");
    if (m < n_max + 1) throw validation_error("compute_coeffs: need m >= n_max + 1");
    const int d = box.dim();
    std::uint64_t nodes = 1;
    for (int j = 0; j < d; ++j) {
        nodes *= static_cast<std::uint64_t>(m);
        if (nodes > node_cap) {
            throw validation_error("compute_coeffs: node budget m^d exceeds cap " +
                                   std::to_string(node_cap));
        }
    }

    // Per-axis tables at the shared angular nodes theta_i = (2i+1)pi/(2m):
    // basis[k][i] = p_k(cos theta_i). Radii scale out because the physical
    // node on axis j is r_j cos theta_i.
    std::vector<double> node_t(static_cast<std::size_t>(m));
    std::vector<std::vector<double>> basis(static_cast<std::size_t>(n_max) + 1,
                                           std::vector<double>(static_cast<std::size_t>(m)));
    for (int i = 0; i < m; ++i) {
        double theta = (2.0 * i + 1.0) * kPi / (2.0 * m);
        node_t[static_cast<std::size_t>(i)] = std::cos(theta);
        basis[0][static_cast<std::size_t>(i)] = 1.0;
        for (int k = 1; k <= n_max; ++k) {
            basis[static_cast<std::size_t>(k)][static_cast<std::size_t>(i)] =
                kSqrt2 * std::cos(k * theta);
        }
    }

    std::vector<MultiIndex> indices;
    for (int n = 0; n <= n_max; ++n) {
        auto shell = enumerate_shell(n, d);
        indices.insert(indices.end(), shell.begin(), shell.end());
    }
    std::vector<long double> acc(indices.size(), 0.0L);

    std::vector<int> counter(static_cast<std::size_t>(d), 0);
    std::vector<double> x(static_cast<std::size_t>(d));
    for (std::uint64_t step = 0; step < nodes; ++step) {
        for (int j = 0; j < d; ++j) {
            x[static_cast<std::size_t>(j)] =
                box.radii[static_cast<std::size_t>(j)] *
                node_t[static_cast<std::size_t>(counter[static_cast<std::size_t>(j)])];
        }
        const double fx = f(x);
        for (std::size_t idx = 0; idx < indices.size(); ++idx) {
            double prod = fx;
            const MultiIndex& k = indices[idx];
            for (int j = 0; j < d; ++j) {
                prod *= basis[static_cast<std::size_t>(k[static_cast<std::size_t>(j)])]
                             [static_cast<std::size_t>(counter[static_cast<std::size_t>(j)])];
            }
            acc[idx] += prod;
        }
        for (int j = d - 1; j >= 0; --j) {
            if (++counter[static_cast<std::size_t>(j)] < m) break;
            counter[static_cast<std::size_t>(j)] = 0;
        }
    }

    ChebSeries out = make_series(d, box);
    const long double scale = std::pow(static_cast<long double>(m), -d);
    for (std::size_t idx = 0; idx < indices.size(); ++idx) {
        out.coeffs[indices[idx]] = static_cast<double>(acc[idx] * scale);
    }
    return out;
}

ChebSeries shell_project(const ChebSeries& s, int j) {
    ChebSeries out = s;
    out.coeffs.clear();
    for (const auto& [k, v] : s.coeffs) {
        if (order_of(k) == j) out.coeffs[k] = v;
    }
    return out;
}

ChebSeries partial_sum(const ChebSeries& s, int n) {
    if (n < 1) throw validation_error("partial_sum: n must be positive");
    ChebSeries out = s;
    out.coeffs.clear();
    for (const auto& [k, v] : s.coeffs) {
        if (order_of(k) < n) out.coeffs[k] = v;
    }
    return out;
}

double eval_series(const ChebSeries& s, const std::vector<double>& x) {
    if (x.size() != static_cast<std::size_t>(s.dim)) {
        throw validation_error("eval_series: point dimension mismatch");
    }
    for (std::size_t j = 0; j < x.size(); ++j) {
        if (std::abs(x[j]) > s.box.radii[j] * (1.0 + 1e-12)) {
            throw validation_error("eval_series: point outside box");
        }
    }
    long double sum = 0.0L;
    for (const auto& [k, v] : s.coeffs) {
        sum += static_cast<long double>(v) * eval_poly_real(k, x, s.box);
    }
    return static_cast<double>(sum);
}

double shell_norm(const ChebSeries& s, int j, NormKind norm, int grid) {
    if (j < 0) throw validation_error("shell_norm: j must be non-negative");
    if (norm == NormKind::kL2) {
        long double sq = 0.0L;
        for (const auto& [k, v] : s.coeffs) {
            if (order_of(k) == j) sq += static_cast<long double>(v) * v;
        }
        return static_cast<double>(std::sqrt(sq));
    }
    if (grid < 2) throw validation_error("shell_norm: SUP needs grid >= 2");
    ChebSeries shell = shell_project(s, j);
    if (shell.coeffs.empty()) return 0.0;
    const int d = s.dim;
    std::vector<double> nodes(static_cast<std::size_t>(grid));
    for (int i = 0; i < grid; ++i) {
        nodes[static_cast<std::size_t>(i)] = std::cos(i * kPi / (grid - 1));
    }
    std::vector<int> counter(static_cast<std::size_t>(d), 0);
    std::vector<double> x(static_cast<std::size_t>(d));
    std::uint64_t total = 1;
    for (int j2 = 0; j2 < d; ++j2) total *= static_cast<std::uint64_t>(grid);
    double best = 0.0;
    for (std::uint64_t step = 0; step < total; ++step) {
        for (int a = 0; a < d; ++a) {
            x[static_cast<std::size_t>(a)] =
                s.box.radii[static_cast<std::size_t>(a)] *
                nodes[static_cast<std::size_t>(counter[static_cast<std::size_t>(a)])];
        }
        best = std::max(best, std::abs(eval_series(shell, x)));
        for (int a = d - 1; a >= 0; --a) {
            if (++counter[static_cast<std::size_t>(a)] < grid) break;
            counter[static_cast<std::size_t>(a)] = 0;
        }
    }
    return best;
}

std::vector<double> shell_coefficients(const ChebSeries& s, int j) {
    auto idx = enumerate_shell(j, s.dim);
    std::vector<double> out(idx.size(), 0.0);
    for (std::size_t t = 0; t < idx.size(); ++t) {
        auto it = s.coeffs.find(idx[t]);
        if (it != s.coeffs.end()) out[t] = it->second;
    }
    return out;
}

} // namespace entropy_grid
