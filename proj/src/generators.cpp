#include "entropy_grid/generators.hpp"

#include <cmath>
#include <string>

#include "entropy_grid/errors.hpp"
#include "entropy_grid/rng.hpp"

namespace entropy_grid {

namespace {

constexpr double kPi = 3.141592653589793238462643383279503;

std::complex<double> draw_disc(SplitMix64& rng, double radius) {
    // Rejection from the bounding square keeps the distribution exactly
    // uniform on the disc; acceptance probability pi/4 per attempt.
    for (;;) {
        double re = rng.uniform(-1.0, 1.0);
        double im = rng.uniform(-1.0, 1.0);
        if (re * re + im * im <= 1.0) return {radius * re, radius * im};
    }
}

} // namespace

std::vector<std::complex<double>> pole_locations(const PoleSumSpec& spec, const PoleTerm& term) {
    const double a = 0.5 * (spec.rho + 1.0 / spec.rho);
    const double b = 0.5 * (spec.rho - 1.0 / spec.rho);
    std::vector<std::complex<double>> w(term.theta.size());
    for (std::size_t m = 0; m < term.theta.size(); ++m) {
        w[m] = {a * std::cos(term.theta[m]), b * std::sin(term.theta[m])};
    }
    return w;
}

PoleSumSpec gen_analytic(int d, double rho, int terms, std::uint64_t seed) {
    if (d < 1) throw validation_error("gen_analytic: dimension must be positive");
    if (!(rho > 0.0 && rho <= 0.95)) throw validation_error("gen_analytic: need rho in (0, 0.95]");
    if (terms < 1) throw validation_error("gen_analytic: need at least one term");
    PoleSumSpec spec;
    spec.dim = d;
    spec.rho = rho;
    spec.seed = seed;
    SplitMix64 rng(derive_seed(seed, "pole_sum"));
    for (int j = 0; j < terms; ++j) {
        PoleTerm t;
        t.theta.resize(static_cast<std::size_t>(d));
        for (int m = 0; m < d; ++m) {
            // (-pi, pi]: the open-at-zero uniform maps to an interval
            // open at -pi.
            t.theta[static_cast<std::size_t>(m)] = -kPi + 2.0 * kPi * rng.next_unit_open();
        }
        t.amplitude = draw_disc(rng, 1.0);
        spec.terms.push_back(std::move(t));
    }
    return spec;
}

std::complex<double> eval_pole_sum(const PoleSumSpec& spec,
                                   const std::vector<std::complex<double>>& z) {
    if (z.size() != static_cast<std::size_t>(spec.dim)) {
        throw validation_error("eval_pole_sum: point dimension mismatch");
    }
    std::complex<double> sum = 0.0;
    for (const auto& term : spec.terms) {
        auto w = pole_locations(spec, term);
        std::complex<double> p = 1.0, pc = 1.0;
        for (std::size_t m = 0; m < w.size(); ++m) {
            p *= w[m] - z[m];
            pc *= std::conj(w[m]) - z[m];
        }
        sum += term.amplitude / p + std::conj(term.amplitude) / pc;
    }
    return sum;
}

RealEvaluator pole_sum_evaluator(const PoleSumSpec& spec) {
    return [spec](const std::vector<double>& x) {
        std::vector<std::complex<double>> z(x.begin(), x.end());
        return eval_pole_sum(spec, z).real();
    };
}

Density gen_density(const PoleSumSpec& spec, int m, std::uint64_t node_cap) {
    if (m < 2) throw validation_error("gen_density: need m >= 2 quadrature nodes");
    const int d = spec.dim;
    std::uint64_t nodes = 1;
    for (int j = 0; j < d; ++j) {
        nodes *= static_cast<std::uint64_t>(m);
        if (nodes > node_cap) {
            throw validation_error("gen_density: node budget m^d exceeds cap");
        }
    }
    std::vector<double> gl_x, gl_w;
    gauss_legendre(m, gl_x, gl_w);
    RealEvaluator f = pole_sum_evaluator(spec);

    std::vector<int> counter(static_cast<std::size_t>(d), 0);
    std::vector<double> x(static_cast<std::size_t>(d));
    long double z = 0.0L;
    for (std::uint64_t step = 0; step < nodes; ++step) {
        long double wt = 1.0L;
        for (int j = 0; j < d; ++j) {
            const auto i = static_cast<std::size_t>(counter[static_cast<std::size_t>(j)]);
            x[static_cast<std::size_t>(j)] = gl_x[i];
            wt *= gl_w[i];
        }
        const double fx = f(x);
        z += wt * fx * fx;
        for (int j = d - 1; j >= 0; --j) {
            if (++counter[static_cast<std::size_t>(j)] < m) break;
            counter[static_cast<std::size_t>(j)] = 0;
        }
    }
    if (!(z > 1e-12)) {
        throw validation_error("gen_density: normalization integral below 1e-12, spec degenerate");
    }
    const double zd = static_cast<double>(z);
    Density out;
    out.z = zd;
    out.g = [f, zd](const std::vector<double>& pt) {
        const double v = f(pt);
        return v * v / zd;
    };
    return out;
}

BandlimitedSpec gen_bandlimited(int Q, double vmax, int terms, std::uint64_t seed) {
    if (Q < 1) throw validation_error("gen_bandlimited: dimension must be positive");
    if (!(vmax > 0.0)) throw validation_error("gen_bandlimited: vmax must be positive");
    if (terms < 1) throw validation_error("gen_bandlimited: need at least one term");
    BandlimitedSpec spec;
    spec.Q = Q;
    spec.vmax = vmax;
    spec.seed = seed;
    SplitMix64 rng(derive_seed(seed, "bandlimited"));
    const double wcap = vmax / (2.0 * terms);
    const double acap = 1.0 / (2.0 * terms);
    for (int j = 0; j < terms; ++j) {
        BandTerm t;
        t.w.resize(static_cast<std::size_t>(Q));
        for (int m = 0; m < Q; ++m) t.w[static_cast<std::size_t>(m)] = draw_disc(rng, wcap);
        t.amplitude = draw_disc(rng, acap);
        spec.terms.push_back(std::move(t));
    }
    return spec;
}

std::complex<double> eval_bandlimited(const BandlimitedSpec& spec,
                                      const std::vector<std::complex<double>>& z) {
    if (z.size() != static_cast<std::size_t>(spec.Q)) {
        throw validation_error("eval_bandlimited: point dimension mismatch");
    }
    const std::complex<double> i_unit(0.0, 1.0);
    std::complex<double> sum = 0.0;
    for (const auto& term : spec.terms) {
        std::complex<double> dot = 0.0, dotc = 0.0;
        for (std::size_t m = 0; m < term.w.size(); ++m) {
            dot += z[m] * term.w[m];
            dotc += z[m] * std::conj(term.w[m]);
        }
        sum += term.amplitude * std::exp(i_unit * dot) +
               std::conj(term.amplitude) * std::exp(-i_unit * dotc);
    }
    return sum;
}

RealEvaluator bandlimited_evaluator(const BandlimitedSpec& spec) {
    return [spec](const std::vector<double>& x) {
        std::vector<std::complex<double>> z(x.begin(), x.end());
        return eval_bandlimited(spec, z).real();
    };
}

void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights) {
    if (n < 1) throw validation_error("gauss_legendre: n must be positive");
    nodes.assign(static_cast<std::size_t>(n), 0.0);
    weights.assign(static_cast<std::size_t>(n), 0.0);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double t = std::cos(kPi * (i + 0.75) / (n + 0.5));
        double deriv = 0.0;
        for (int iter = 0; iter < 64; ++iter) {
            // Legendre recurrence: p0 carries P_n(t), p1 carries P_{n-1}(t).
            double p0 = 1.0, p1 = 0.0;
            for (int j = 0; j < n; ++j) {
                double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j + 1.0) * t * p1 - j * p2) / (j + 1.0);
            }
            deriv = n * (t * p0 - p1) / (t * t - 1.0);
            double step = p0 / deriv;
            t -= step;
            if (std::abs(step) < 1e-15) break;
        }
        const auto hi = static_cast<std::size_t>(n - 1 - i);
        const auto lo = static_cast<std::size_t>(i);
        nodes[lo] = -t;
        nodes[hi] = t;
        weights[lo] = weights[hi] = 2.0 / ((1.0 - t * t) * deriv * deriv);
    }
}

} // namespace entropy_grid
