#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "entropy_grid/chebyshev.hpp"
#include "entropy_grid/classes.hpp"
#include "entropy_grid/codec.hpp"
#include "entropy_grid/generators.hpp"
#include "entropy_grid/netgen.hpp"

namespace entropy_grid {

// Default nlohmann map keeps keys sorted, so dumps are canonical as-is.
using Json = nlohmann::json;

Json to_json(const ChebSeries& s);
ChebSeries series_from_json(const Json& j);

// Wire shape is exactly {"dim","eps","separation","seed","points"}; the
// in-memory diagnostics (sample count, guarantee flag) live in run
// manifests, not in the artifact.
Json to_json(const EpsNet& net);
EpsNet net_from_json(const Json& j);

Json to_json(const AnalyticClassParams& p);
AnalyticClassParams analytic_params_from_json(const Json& j);

Json to_json(const Codebook& cb);  // includes "hash"
Codebook codebook_from_json(const Json& j);

Json to_json(const Code& code);
Code code_from_json(const Json& j);

Json to_json(const PoleSumSpec& spec);
PoleSumSpec pole_spec_from_json(const Json& j);

Json to_json(const BandlimitedSpec& spec);
BandlimitedSpec band_spec_from_json(const Json& j);

// Compact dump with sorted keys; hashing and byte-stable goldens use this.
std::string canonical_dump(const Json& j);

std::string fnv1a64_hex(std::string_view bytes);

// "fnv1a64:<16 hex>" over the canonical dump of the codebook without its
// "hash" member. The prefix records the algorithm in the artifact itself.
std::string codebook_digest(const Codebook& cb);

Json read_json_file(const std::string& path);            // io_error on failure
void write_json_file(const std::string& path, const Json& j);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace entropy_grid
