#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "entropy_grid/chebyshev.hpp"
#include "entropy_grid/classes.hpp"
#include "entropy_grid/netgen.hpp"

namespace entropy_grid {

// Product-of-shells codebook for the analytic class: shell j carries an
// eta1-net of the Euclidean ball of radius Delta_j in dimension b_j, with
// the origin prepended. Quantizing every shell to its net and dropping
// orders >= M reconstructs any member to within eps (whp over net draws).
struct Codebook {
    AnalyticClassParams klass;
    double eps = 0.0;
    double delta = 0.0;
    std::uint64_t seed = 0;
    double eta1 = 0.0;  // = eps / (2 sqrt(M)); L2 coefficient isometry, A = 1
    std::vector<EpsNet> shells;
    std::string hash;  // canonical-JSON digest of everything above

    long long shell_count() const { return static_cast<long long>(shells.size()); }
};

struct Code {
    std::string codebook_hash;
    std::vector<long long> indices;  // one per shell, into its point list
};

// Throws validation_error when eps is outside the upper-truncation validity
// range or the projected codeword storage exceeds the cap (the offending
// shell and its dimension are reported).
Codebook build_codebook(const AnalyticClassParams& klass, double eps,
                        double delta, std::uint64_t seed,
                        const NetgenConfig& cfg = NetgenConfig{});

// Nearest-codeword quantization per shell; ties resolve to the lowest
// index. The input must be a class member on the unit box through shell
// M-1; orders >= M are discarded by design.
Code encode(const ChebSeries& s, const Codebook& cb);

// Reassembles the selected codewords into a coefficient series on the unit
// box; exact zeros are dropped so decode(encode(0)) is the empty series.
ChebSeries decode(const Code& code, const Codebook& cb);

// || s - decode(encode(s)) ||_L2, computed exactly in coefficient space:
// sqrt( sum_{j<M} d_j^2 + sum_{j>=M} ||S_j||^2 ).
double roundtrip_error(const ChebSeries& s, const Codebook& cb);

// ln of the total codeword count, sum_j ln|net_j|.
long double codebook_log_size(const Codebook& cb);

}  // namespace entropy_grid
