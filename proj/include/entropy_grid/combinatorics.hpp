#pragma once

// Exact integer combinatorics underlying every entropy bound: shell
// dimensions, cumulative dimensions, multi-index enumeration, and the
// Stirling factorial sandwich. Binomials are kept in arbitrary precision
// and converted to natural logs only at the evaluation boundary.

#include <cstdint>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace entropy_grid {

using BigInt = boost::multiprecision::cpp_int;

// Multi-index k in Z_+^d; order() is |k|_1.
using MultiIndex = std::vector<int>;

inline long long order_of(const MultiIndex& k) {
    long long s = 0;
    for (int v : k) s += v;
    return s;
}

// Total order (order, then lexicographic) used for coefficient maps and
// serialization. Codebook shell layouts depend on it; do not change.
struct ShellLexLess {
    bool operator()(const MultiIndex& a, const MultiIndex& b) const {
        long long oa = order_of(a), ob = order_of(b);
        if (oa != ob) return oa < ob;
        return a < b;
    }
};

// C(n, k), exact; 0 when k < 0 or k > n.
BigInt binomial(long long n, long long k);

BigInt factorial_big(long long k);

// Number of multi-indices of order n in dimension d: C(n+d-1, d-1).
BigInt shell_dim(long long n, int d);

// Number of multi-indices of order <= n in dimension d: C(n+d, d).
BigInt cum_dim(long long n, int d);

// All multi-indices of order n in dimension d, lexicographic ascending.
// Throws validation_error when shell_dim(n, d) exceeds cap.
std::vector<MultiIndex> enumerate_shell(int n, int d, std::uint64_t cap = 10'000'000);

// Natural log of a positive big integer; relative error ~1e-18 (long
// double mantissa), independent of magnitude.
long double ln_big(const BigInt& v);

// ln(k!), exact up to long double rounding.
long double ln_factorial(long long k);

long double ln_binomial(long long n, long long k);

// sqrt(2 pi k) (k/e)^k <= k! <= 2 sqrt(2 pi k) (k/e)^k.
// When the direct values overflow double range only the log forms are
// meaningful; log_form flags that case.
struct StirlingBounds {
    double lower = 0.0;
    double upper = 0.0;
    long double lower_ln = 0.0L;
    long double upper_ln = 0.0L;
    bool log_form = false;
};

StirlingBounds stirling_bounds(long long k);

} // namespace entropy_grid
