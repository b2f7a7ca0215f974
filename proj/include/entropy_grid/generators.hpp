#pragma once

// Seeded generation of test objects: analytic functions via pole sums on
// poly-ellipse boundaries, densities normalized from them, and entire
// band-limited functions built from complex exponentials.

#include <complex>
#include <cstdint>
#include <vector>

#include "entropy_grid/chebyshev.hpp"

namespace entropy_grid {

struct PoleTerm {
    std::vector<double> theta;        // angle per axis, in (-pi, pi]
    std::complex<double> amplitude;   // |amplitude| <= 1
};

// Sum of poles placed on the boundary of the product Bernstein ellipse
// with parameter rho. The induced function is analytic inside and real on
// real points by conjugate pairing.
struct PoleSumSpec {
    int dim = 1;
    double rho = 0.5;                 // in (0, 0.95]
    std::uint64_t seed = 0;
    std::vector<PoleTerm> terms;
};

// Per-axis pole location: w(theta) = ((rho+1/rho)/2) cos(theta)
//                                  + i ((rho-1/rho)/2) sin(theta),
// the Joukowski image of rho e^{i theta}.
std::vector<std::complex<double>> pole_locations(const PoleSumSpec& spec, const PoleTerm& term);

PoleSumSpec gen_analytic(int d, double rho, int terms, std::uint64_t seed);

// f(z) = sum_j a_j prod_m (w_{j,m} - z_m)^{-1} + conjugate partner terms.
std::complex<double> eval_pole_sum(const PoleSumSpec& spec, const std::vector<std::complex<double>>& z);

// Real-point evaluator of the same function (imaginary part is zero by
// construction and discarded).
RealEvaluator pole_sum_evaluator(const PoleSumSpec& spec);

struct Density {
    RealEvaluator g;   // f^2 / z, integrates to ~1 over I^d
    double z = 0.0;    // Lebesgue integral of f^2 over I^d
};

// Normalizes f^2 to unit Lebesgue integral over I^d; the integral is
// approximated by the m-point-per-axis tensor Gauss-Legendre rule.
// Throws validation_error when the integral is degenerate (< 1e-12).
Density gen_density(const PoleSumSpec& spec, int m, std::uint64_t node_cap = 1u << 24);

struct BandTerm {
    std::vector<std::complex<double>> w;   // frequency per axis
    std::complex<double> amplitude;
};

// F(z) = sum_j a_j exp(i z.w_j) + conj(a_j) exp(-i z.conj(w_j)); entire,
// real on real vectors, of exponential type <= vmax per axis by
// construction (|w_{j,m}| <= vmax/(2 terms), |a_j| <= 1/(2 terms)).
struct BandlimitedSpec {
    int Q = 1;
    double vmax = 1.0;
    std::uint64_t seed = 0;
    std::vector<BandTerm> terms;
};

BandlimitedSpec gen_bandlimited(int Q, double vmax, int terms, std::uint64_t seed);

std::complex<double> eval_bandlimited(const BandlimitedSpec& spec,
                                      const std::vector<std::complex<double>>& z);

RealEvaluator bandlimited_evaluator(const BandlimitedSpec& spec);

// Gauss-Legendre nodes and weights on [-1, 1].
void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights);

} // namespace entropy_grid
