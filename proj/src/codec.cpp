#include "entropy_grid/codec.hpp"

#include <cmath>
#include <string>

#include "entropy_grid/errors.hpp"
#include "entropy_grid/rng.hpp"
#include "entropy_grid/serialization.hpp"

namespace entropy_grid {

namespace {

// Total stored doubles across all shell nets, projected from the greedy
// packing bound before any sampling happens.
constexpr long double kStorageCap = 5e7L;

bool is_origin(const std::vector<double>& p) {
    for (double v : p) {
        if (v != 0.0) return false;
    }
    return true;
}

void require_unit_box(const ChebSeries& s) {
    for (double r : s.box.radii) {
        if (r != 1.0) {
            throw validation_error("codec: series must live on the unit box");
        }
    }
}

long long require_shell_dim(const Codebook& cb, long long j) {
    const BigInt bj = shell_dim(j, cb.klass.q);
    const long long dim = cb.shells[j].dim;
    if (BigInt(dim) != bj) {
        throw validation_error("codec: codebook shell " + std::to_string(j) +
                               " has inconsistent dimension");
    }
    return dim;
}

}  // namespace

Codebook build_codebook(const AnalyticClassParams& klass, double eps,
                        double delta, std::uint64_t seed,
                        const NetgenConfig& cfg) {
    validate(klass);
    if (!(eps > 0.0)) throw validation_error("codebook: eps must be positive");
    if (!(delta > 0.0 && delta < 1.0)) {
        throw validation_error("codebook: delta must lie in (0, 1)");
    }
    const long long m_shells =
        truncation_index(klass, eps, TruncationKind::kUpperNet) + 1;

    Codebook cb;
    cb.klass = klass;
    cb.eps = eps;
    cb.delta = delta;
    cb.seed = seed;
    cb.eta1 = eps / (2.0 * std::sqrt(static_cast<double>(m_shells)));

    // Storage audit before any sampling: greedy nets at separation s inside
    // a unit ball hold at most (1 + 4/s)^b points.
    long double projected = 0.0L;
    for (long long j = 0; j < m_shells; ++j) {
        const BigInt bj_big = shell_dim(j, klass.q);
        const long double bj = bj_big.convert_to<long double>();
        const double delta_j = shell_radius(klass, j);
        const double eps_prime = cb.eta1 / delta_j;
        const long double ln_count =
            eps_prime >= 1.0 ? 0.0L
                             : bj * std::log(1.0L + 8.0L / eps_prime);
        projected += (std::exp(std::min(ln_count, 60.0L)) + 1.0L) * bj;
        if (!(projected <= kStorageCap)) {
            throw validation_error(
                "codebook: projected codeword storage exceeds cap at shell " +
                std::to_string(j) + " (dimension " + bj_big.str() + ")");
        }
    }

    const double per_shell_delta = delta / static_cast<double>(m_shells);
    for (long long j = 0; j < m_shells; ++j) {
        const long long bj = shell_dim(j, klass.q).convert_to<long long>();
        const double delta_j = shell_radius(klass, j);
        const std::vector<double> origin(bj, 0.0);
        const std::vector<double> radii(bj, delta_j);
        EpsNet net = net_ellipsoid(origin, radii, cb.eta1, per_shell_delta,
                                   derive_seed(seed, "shell", j), cfg);
        if (net.points.empty() || !is_origin(net.points.front())) {
            net.points.insert(net.points.begin(), origin);
        }
        cb.shells.push_back(std::move(net));
    }
    cb.hash = codebook_digest(cb);
    return cb;
}

Code encode(const ChebSeries& s, const Codebook& cb) {
    validate(cb.klass);
    if (s.dim != cb.klass.q) {
        throw validation_error("encode: series dimension != codebook class dimension");
    }
    require_unit_box(s);
    const long long m_shells = cb.shell_count();
    // Strict membership through the quantized shells; the guarantee is
    // meaningless off the class.
    for (long long j = 0; j < m_shells; ++j) {
        const double measured = shell_norm(s, static_cast<int>(j), NormKind::kL2);
        const double allowed = shell_radius(cb.klass, j);
        if (!(measured <= allowed * (1.0 + 1e-12))) {
            throw validation_error("encode: input is not a class member at shell " +
                                   std::to_string(j));
        }
    }

    Code code;
    code.codebook_hash = cb.hash;
    for (long long j = 0; j < m_shells; ++j) {
        const long long bj = require_shell_dim(cb, j);
        const std::vector<double> sub = shell_coefficients(s, static_cast<int>(j));
        if (static_cast<long long>(sub.size()) != bj) {
            throw validation_error("encode: shell coefficient layout mismatch");
        }
        long long best = -1;
        long double best_d2 = 0.0L;
        const auto& pts = cb.shells[j].points;
        for (std::size_t i = 0; i < pts.size(); ++i) {
            long double d2 = 0.0L;
            for (long long t = 0; t < bj; ++t) {
                const long double d = sub[t] - pts[i][t];
                d2 += d * d;
            }
            if (best < 0 || d2 < best_d2) {
                best = static_cast<long long>(i);
                best_d2 = d2;
            }
        }
        if (best < 0) {
            throw validation_error("encode: empty shell net in codebook");
        }
        code.indices.push_back(best);
    }
    return code;
}

ChebSeries decode(const Code& code, const Codebook& cb) {
    if (code.codebook_hash != cb.hash) {
        throw validation_error("decode: code does not match codebook (hash mismatch)");
    }
    if (static_cast<long long>(code.indices.size()) != cb.shell_count()) {
        throw validation_error("decode: index count != shell count");
    }
    ChebSeries out = make_series(cb.klass.q, unit_box(cb.klass.q));
    for (long long j = 0; j < cb.shell_count(); ++j) {
        const long long bj = require_shell_dim(cb, j);
        const long long idx = code.indices[j];
        if (idx < 0 || idx >= static_cast<long long>(cb.shells[j].points.size())) {
            throw validation_error("decode: codeword index out of range at shell " +
                                   std::to_string(j));
        }
        const auto& point = cb.shells[j].points[idx];
        const auto indices = enumerate_shell(static_cast<int>(j), cb.klass.q);
        for (long long t = 0; t < bj; ++t) {
            if (point[t] != 0.0) out.coeffs[indices[t]] = point[t];
        }
    }
    return out;
}

double roundtrip_error(const ChebSeries& s, const Codebook& cb) {
    const Code code = encode(s, cb);
    const long long m_shells = cb.shell_count();
    long double sum = 0.0L;
    for (long long j = 0; j < m_shells; ++j) {
        const std::vector<double> sub = shell_coefficients(s, static_cast<int>(j));
        const auto& point = cb.shells[j].points[code.indices[j]];
        for (std::size_t t = 0; t < sub.size(); ++t) {
            const long double d = sub[t] - point[t];
            sum += d * d;
        }
    }
    for (int j = static_cast<int>(m_shells); j <= s.max_order(); ++j) {
        const long double n = shell_norm(s, j, NormKind::kL2);
        sum += n * n;
    }
    return static_cast<double>(std::sqrt(sum));
}

long double codebook_log_size(const Codebook& cb) {
    long double total = 0.0L;
    for (const auto& net : cb.shells) {
        total += std::log(static_cast<long double>(net.points.size()));
    }
    return total;
}

}  // namespace entropy_grid
