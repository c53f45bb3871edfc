#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "bpo/bounds.hpp"
#include "bpo/core.hpp"
#include "bpo/exact.hpp"
#include "bpo/policies.hpp"

namespace bpo::io {

using nlohmann::json;

/// {"means": [...], "counts": [...], "strict": bool?}; unknown keys rejected.
BanditInstance parse_instance(const json& doc);
BanditInstance load_instance(const std::filesystem::path& path);

/// {"kind": "greedy"|"lcb"|"ucb"|"alpha"|"custom", "delta"?, "alpha"?, "bias"?}
PolicyDescriptor parse_policy(const json& doc);

/// Index descriptors plus the two non-index rules:
/// {"kind": "threshold", "beta": b} and {"kind": "spike", "delta_gap": d}.
AnyPolicy parse_any_policy(const json& doc, const BanditInstance& instance);

/// Accepts a bare array or an object with a "counts" array.
std::vector<double> parse_counts(const json& doc);

json parse_text(const std::string& text, const std::string& what);
json load_json(const std::filesystem::path& path);

json to_json(const BoundReport& report);
json to_json(const PickDistribution& dist, const std::vector<double>& rank_cdf);

}  // namespace bpo::io
