#pragma once

// Multivariate anisotropic Chebyshev analysis: orthonormal basis
// evaluation (real and complex), coefficient computation by tensor
// Gauss-Chebyshev quadrature, shell projections, partial sums, and
// L2 / sup norm estimation.

#include <complex>
#include <cstdint>
#include <functional>
#include <map>
#include <vector>

#include "entropy_grid/combinatorics.hpp"

namespace entropy_grid {

// The box I_r = prod_j [-r_j, r_j].
struct Box {
    std::vector<double> radii;

    int dim() const { return static_cast<int>(radii.size()); }
};

Box unit_box(int d);

// Throws validation_error unless every radius is positive.
void validate_box(const Box& box);

// Finitely supported coefficient table over a box. The map order
// (order, then lexicographic) is the canonical layout for shells,
// serialization, and codebook indices.
struct ChebSeries {
    int dim = 0;
    Box box;
    std::map<MultiIndex, double, ShellLexLess> coeffs;

    // Largest shell order present; -1 for the empty series.
    int max_order() const;

    // Euclidean norm of all coefficients (the L2(v_d) norm of the series).
    double l2_norm() const;
};

ChebSeries make_series(int dim, Box box);

enum class NormKind { kL2, kSup };

// prod_j p_{k_j}(z_j / r_j) with p_0 = 1 and p_m = sqrt(2) T_m, where T_m
// is evaluated by the three-term recurrence (branch-safe off the real
// interval).
std::complex<double> eval_poly(const MultiIndex& k, const std::vector<std::complex<double>>& z,
                               const Box& box);

// Real-argument version; arguments must satisfy |x_j| <= r_j up to
// roundoff tolerance.
double eval_poly_real(const MultiIndex& k, const std::vector<double>& x, const Box& box);

using RealEvaluator = std::function<double(const std::vector<double>&)>;

// All coefficients of order <= n_max by the m-point-per-axis tensor
// Gauss-Chebyshev rule (nodes r cos((2i+1)pi/(2m)), weight 1/m per axis).
// Exact to roundoff for polynomials of coordinatewise degree
// <= 2m - 1 - n_max. Requires m >= n_max + 1 and m^d within node_cap.
ChebSeries compute_coeffs(const RealEvaluator& f, int n_max, int m, const Box& box,
                          std::uint64_t node_cap = 1u << 24);

// Sub-series with exactly the order-j indices.
ChebSeries shell_project(const ChebSeries& s, int j);

// Sub-series with the indices of order < n. Requires n >= 1.
ChebSeries partial_sum(const ChebSeries& s, int n);

// Series value at a point inside the box (componentwise |x_j| <= r_j).
double eval_series(const ChebSeries& s, const std::vector<double>& x);

// L2: Euclidean norm of the order-j coefficients (exact by Parseval).
// SUP: max |shell value| over the tensor Chebyshev-extrema grid
// x_i = r cos(i pi / (grid-1)); a lower estimate of the true sup.
double shell_norm(const ChebSeries& s, int j, NormKind norm, int grid = 64);

// Order-j coefficient subvector in enumerate_shell order (missing
// indices contribute zeros). This is the vector the codec quantizes.
std::vector<double> shell_coefficients(const ChebSeries& s, int j);

} // namespace entropy_grid
