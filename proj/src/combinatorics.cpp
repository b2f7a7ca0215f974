#include "entropy_grid/combinatorics.hpp"

#include <cmath>
#include <string>

#include "entropy_grid/errors.hpp"

namespace entropy_grid {

BigInt binomial(long long n, long long k) {
    if (k < 0 || k > n) return 0;
    if (n < 0) throw validation_error("binomial: n must be non-negative");
    k = std::min(k, n - k);
    BigInt result = 1;
    // result stays integral after each division: C(n,i) divides the
    // running product of i consecutive factors.
    for (long long i = 1; i <= k; ++i) {
        result *= (n - k + i);
        result /= i;
    }
    return result;
}

BigInt factorial_big(long long k) {
    if (k < 0) throw validation_error("factorial: k must be non-negative");
    BigInt result = 1;
    for (long long i = 2; i <= k; ++i) result *= i;
    return result;
}

BigInt shell_dim(long long n, int d) {
    if (n < 0) throw validation_error("shell_dim: n must be non-negative");
    if (d < 1) throw validation_error("shell_dim: d must be positive");
    return binomial(n + d - 1, d - 1);
}

BigInt cum_dim(long long n, int d) {
    if (n < 0) throw validation_error("cum_dim: n must be non-negative");
    if (d < 1) throw validation_error("cum_dim: d must be positive");
    return binomial(n + d, d);
}

std::vector<MultiIndex> enumerate_shell(int n, int d, std::uint64_t cap) {
    if (n < 0) throw validation_error("enumerate_shell: n must be non-negative");
    if (d < 1) throw validation_error("enumerate_shell: d must be positive");
    BigInt count = shell_dim(n, d);
    if (count > cap) {
        throw validation_error("enumerate_shell: shell_dim(" + std::to_string(n) + ", " +
                               std::to_string(d) + ") = " + count.str() +
                               " exceeds cap " + std::to_string(cap));
    }
    std::vector<MultiIndex> out;
    out.reserve(static_cast<std::size_t>(count));
    MultiIndex current(static_cast<std::size_t>(d), 0);
    // Fill positions left to right; ascending first entries give
    // lexicographic order.
    auto rec = [&](auto&& self, int pos, int remaining) -> void {
        if (pos == d - 1) {
            current[static_cast<std::size_t>(pos)] = remaining;
            out.push_back(current);
            return;
        }
        for (int v = 0; v <= remaining; ++v) {
            current[static_cast<std::size_t>(pos)] = v;
            self(self, pos + 1, remaining - v);
        }
    };
    rec(rec, 0, n);
    return out;
}

long double ln_big(const BigInt& v) {
    if (v <= 0) throw validation_error("ln_big: argument must be positive");
    const unsigned bits = boost::multiprecision::msb(v);
    if (bits <= 62) {
        return std::log(static_cast<long double>(v.convert_to<std::uint64_t>()));
    }
    const unsigned shift = bits - 62;
    const BigInt top = v >> shift;
    return std::log(static_cast<long double>(top.convert_to<std::uint64_t>())) +
           static_cast<long double>(shift) * 0.6931471805599453094172321214581766L;
}

long double ln_factorial(long long k) {
    if (k < 0) throw validation_error("ln_factorial: k must be non-negative");
    if (k <= 1) return 0.0L;
    // Exact product up to a size where it is still cheap; Stirling series
    // beyond that (absolute error < 1e-18 for k > 4096).
    if (k <= 4096) return ln_big(factorial_big(k));
    const long double x = static_cast<long double>(k);
    const long double ln2pi = 1.8378770664093454835606594728112353L;
    long double s = (x + 0.5L) * std::log(x) - x + 0.5L * ln2pi;
    s += 1.0L / (12.0L * x) - 1.0L / (360.0L * x * x * x);
    return s;
}

long double ln_binomial(long long n, long long k) {
    if (k < 0 || k > n) throw validation_error("ln_binomial: k out of range");
    return ln_factorial(n) - ln_factorial(k) - ln_factorial(n - k);
}

StirlingBounds stirling_bounds(long long k) {
    if (k < 1) throw validation_error("stirling_bounds: k must be positive");
    const long double x = static_cast<long double>(k);
    const long double two_pi = 6.2831853071795864769252867665590058L;
    StirlingBounds b;
    b.lower_ln = 0.5L * std::log(two_pi * x) + x * (std::log(x) - 1.0L);
    b.upper_ln = b.lower_ln + 0.6931471805599453094172321214581766L;
    // 709.78 is ln(DBL_MAX); beyond it the direct values have no double
    // representation.
    b.log_form = b.upper_ln > 709.0L;
    if (!b.log_form) {
        b.lower = static_cast<double>(std::exp(b.lower_ln));
        b.upper = static_cast<double>(std::exp(b.upper_ln));
    }
    return b;
}

} // namespace entropy_grid
