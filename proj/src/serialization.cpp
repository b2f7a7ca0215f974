#include "entropy_grid/serialization.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "entropy_grid/errors.hpp"
#include "entropy_grid/rng.hpp"

namespace entropy_grid {

namespace {

// Artifact formats are closed: unknown keys are rejected so that a typo in
// a hand-edited file fails loudly instead of silently defaulting.
void require_keys(const Json& j, const char* what,
                  std::initializer_list<const char*> keys) {
    if (!j.is_object()) {
        throw validation_error(std::string(what) + ": expected a JSON object");
    }
    for (const char* k : keys) {
        if (!j.contains(k)) {
            throw validation_error(std::string(what) + ": missing key \"" + k + "\"");
        }
    }
    for (const auto& item : j.items()) {
        bool known = false;
        for (const char* k : keys) {
            if (item.key() == k) {
                known = true;
                break;
            }
        }
        if (!known) {
            throw validation_error(std::string(what) + ": unknown key \"" +
                                   item.key() + "\"");
        }
    }
}

Json complex_to_json(const std::complex<double>& c) {
    return Json{{"im", c.imag()}, {"re", c.real()}};
}

std::complex<double> complex_from_json(const Json& j, const char* what) {
    require_keys(j, what, {"im", "re"});
    return {j.at("re").get<double>(), j.at("im").get<double>()};
}

}  // namespace

Json to_json(const ChebSeries& s) {
    Json coeffs = Json::array();
    for (const auto& [k, v] : s.coeffs) {
        coeffs.push_back(Json{{"k", k}, {"v", v}});
    }
    return Json{{"coeffs", std::move(coeffs)},
                {"dim", s.dim},
                {"radii", s.box.radii}};
}

ChebSeries series_from_json(const Json& j) {
    require_keys(j, "series", {"coeffs", "dim", "radii"});
    ChebSeries s;
    s.dim = j.at("dim").get<int>();
    s.box.radii = j.at("radii").get<std::vector<double>>();
    if (s.box.dim() != s.dim) {
        throw validation_error("series: radii length != dim");
    }
    validate_box(s.box);
    for (const auto& entry : j.at("coeffs")) {
        require_keys(entry, "series coefficient", {"k", "v"});
        MultiIndex k = entry.at("k").get<MultiIndex>();
        if (static_cast<int>(k.size()) != s.dim) {
            throw validation_error("series: coefficient index length != dim");
        }
        for (int v : k) {
            if (v < 0) throw validation_error("series: negative index component");
        }
        s.coeffs[std::move(k)] = entry.at("v").get<double>();
    }
    return s;
}

Json to_json(const EpsNet& net) {
    return Json{{"dim", net.dim},
                {"eps", net.eps},
                {"points", net.points},
                {"seed", net.seed},
                {"separation", net.separation}};
}

EpsNet net_from_json(const Json& j) {
    require_keys(j, "net", {"dim", "eps", "points", "seed", "separation"});
    EpsNet net;
    net.dim = j.at("dim").get<int>();
    net.eps = j.at("eps").get<double>();
    net.separation = j.at("separation").get<double>();
    net.seed = j.at("seed").get<std::uint64_t>();
    net.points = j.at("points").get<std::vector<std::vector<double>>>();
    for (const auto& p : net.points) {
        if (static_cast<int>(p.size()) != net.dim) {
            throw validation_error("net: point dimension mismatch");
        }
    }
    return net;
}

Json to_json(const AnalyticClassParams& p) {
    return Json{{"q", p.q}, {"rho", p.rho}};
}

AnalyticClassParams analytic_params_from_json(const Json& j) {
    require_keys(j, "class", {"q", "rho"});
    AnalyticClassParams p;
    p.rho = j.at("rho").get<double>();
    p.q = j.at("q").get<int>();
    validate(p);
    return p;
}

Json to_json(const Codebook& cb) {
    Json shells = Json::array();
    for (const auto& net : cb.shells) shells.push_back(to_json(net));
    return Json{{"class", to_json(cb.klass)}, {"delta", cb.delta},
                {"eps", cb.eps},             {"eta1", cb.eta1},
                {"hash", cb.hash},           {"seed", cb.seed},
                {"shells", std::move(shells)}};
}

Codebook codebook_from_json(const Json& j) {
    require_keys(j, "codebook",
                 {"class", "delta", "eps", "eta1", "hash", "seed", "shells"});
    Codebook cb;
    cb.klass = analytic_params_from_json(j.at("class"));
    cb.eps = j.at("eps").get<double>();
    cb.delta = j.at("delta").get<double>();
    cb.eta1 = j.at("eta1").get<double>();
    cb.seed = j.at("seed").get<std::uint64_t>();
    cb.hash = j.at("hash").get<std::string>();
    for (const auto& shell : j.at("shells")) {
        cb.shells.push_back(net_from_json(shell));
    }
    if (codebook_digest(cb) != cb.hash) {
        throw validation_error("codebook: stored hash does not match contents");
    }
    return cb;
}

Json to_json(const Code& code) {
    return Json{{"codebook_hash", code.codebook_hash}, {"indices", code.indices}};
}

Code code_from_json(const Json& j) {
    require_keys(j, "code", {"codebook_hash", "indices"});
    Code code;
    code.codebook_hash = j.at("codebook_hash").get<std::string>();
    code.indices = j.at("indices").get<std::vector<long long>>();
    return code;
}

Json to_json(const PoleSumSpec& spec) {
    Json terms = Json::array();
    for (const auto& t : spec.terms) {
        terms.push_back(Json{{"amplitude", complex_to_json(t.amplitude)},
                             {"theta", t.theta}});
    }
    return Json{{"dim", spec.dim},   {"kind", "pole_sum"},
                {"rho", spec.rho},   {"seed", spec.seed},
                {"terms", std::move(terms)}, {"version", "0.1.0"}};
}

PoleSumSpec pole_spec_from_json(const Json& j) {
    require_keys(j, "pole-sum spec",
                 {"dim", "kind", "rho", "seed", "terms", "version"});
    if (j.at("kind").get<std::string>() != "pole_sum") {
        throw validation_error("pole-sum spec: kind mismatch");
    }
    PoleSumSpec spec;
    spec.dim = j.at("dim").get<int>();
    spec.rho = j.at("rho").get<double>();
    spec.seed = j.at("seed").get<std::uint64_t>();
    for (const auto& t : j.at("terms")) {
        require_keys(t, "pole term", {"amplitude", "theta"});
        PoleTerm term;
        term.theta = t.at("theta").get<std::vector<double>>();
        term.amplitude = complex_from_json(t.at("amplitude"), "pole amplitude");
        if (static_cast<int>(term.theta.size()) != spec.dim) {
            throw validation_error("pole term: theta length != dim");
        }
        spec.terms.push_back(std::move(term));
    }
    return spec;
}

Json to_json(const BandlimitedSpec& spec) {
    Json terms = Json::array();
    for (const auto& t : spec.terms) {
        Json w = Json::array();
        for (const auto& c : t.w) w.push_back(complex_to_json(c));
        terms.push_back(Json{{"amplitude", complex_to_json(t.amplitude)},
                             {"w", std::move(w)}});
    }
    return Json{{"Q", spec.Q},       {"kind", "bandlimited"},
                {"seed", spec.seed}, {"terms", std::move(terms)},
                {"version", "0.1.0"}, {"vmax", spec.vmax}};
}

BandlimitedSpec band_spec_from_json(const Json& j) {
    require_keys(j, "bandlimited spec",
                 {"Q", "kind", "seed", "terms", "version", "vmax"});
    if (j.at("kind").get<std::string>() != "bandlimited") {
        throw validation_error("bandlimited spec: kind mismatch");
    }
    BandlimitedSpec spec;
    spec.Q = j.at("Q").get<int>();
    spec.vmax = j.at("vmax").get<double>();
    spec.seed = j.at("seed").get<std::uint64_t>();
    for (const auto& t : j.at("terms")) {
        require_keys(t, "bandlimited term", {"amplitude", "w"});
        BandTerm term;
        term.amplitude = complex_from_json(t.at("amplitude"), "band amplitude");
        for (const auto& c : t.at("w")) {
            term.w.push_back(complex_from_json(c, "band frequency"));
        }
        if (static_cast<int>(term.w.size()) != spec.Q) {
            throw validation_error("bandlimited term: frequency length != Q");
        }
        spec.terms.push_back(std::move(term));
    }
    return spec;
}

std::string canonical_dump(const Json& j) { return j.dump(); }

std::string fnv1a64_hex(std::string_view bytes) {
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx",
                  static_cast<unsigned long long>(fnv1a64(bytes)));
    return std::string(buf);
}

std::string codebook_digest(const Codebook& cb) {
    Json j = to_json(cb);
    j.erase("hash");
    return "fnv1a64:" + fnv1a64_hex(canonical_dump(j));
}

Json read_json_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw io_error("cannot open for reading: " + path);
    try {
        Json j;
        in >> j;
        return j;
    } catch (const Json::parse_error& e) {
        throw validation_error("invalid JSON in " + path + ": " + e.what());
    }
}

void write_json_file(const std::string& path, const Json& j) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw io_error("cannot open for writing: " + path);
    out << j.dump(2) << '\n';
    if (!out) throw io_error("write failed: " + path);
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw io_error("cannot open for writing: " + path);
    out << text;
    if (!out) throw io_error("write failed: " + path);
}

}  // namespace entropy_grid
