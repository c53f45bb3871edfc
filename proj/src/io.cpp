#include "bpo/io.hpp"

#include <fstream>
#include <set>
#include <sstream>

namespace bpo::io {

namespace {

void reject_unknown(const json& doc, const std::set<std::string>& allowed, const char* what) {
  if (!doc.is_object()) throw Error(Errc::ParseError, std::string(what) + " must be a JSON object");
  for (const auto& [key, _] : doc.items()) {
    if (!allowed.count(key)) throw Error(Errc::ParseError, std::string(what) + ": unknown field \"" + key + "\"");
  }
}

std::vector<double> number_array(const json& doc, const char* key) {
  if (!doc.contains(key) || !doc.at(key).is_array()) {
    throw Error(Errc::ParseError, std::string("\"") + key + "\" must be an array of numbers");
  }
  std::vector<double> out;
  for (const auto& v : doc.at(key)) {
    if (!v.is_number()) throw Error(Errc::ParseError, std::string("\"") + key + "\" holds a non-number");
    out.push_back(v.get<double>());
  }
  return out;
}

double number_field(const json& doc, const char* key) {
  if (!doc.at(key).is_number()) throw Error(Errc::ParseError, std::string("\"") + key + "\" must be a number");
  return doc.at(key).get<double>();
}

}  // namespace

json parse_text(const std::string& text, const std::string& what) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(Errc::ParseError, what + ": " + e.what());
  }
}

json load_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::ParseError, "cannot open " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_text(buf.str(), path.string());
}

BanditInstance parse_instance(const json& doc) {
  reject_unknown(doc, {"means", "counts", "strict"}, "instance");
  bool strict = true;
  if (doc.contains("strict")) {
    if (!doc.at("strict").is_boolean()) throw Error(Errc::ParseError, "\"strict\" must be a boolean");
    strict = doc.at("strict").get<bool>();
  }
  return validate_instance(number_array(doc, "means"), number_array(doc, "counts"), strict);
}

BanditInstance load_instance(const std::filesystem::path& path) { return parse_instance(load_json(path)); }

PolicyDescriptor parse_policy(const json& doc) {
  reject_unknown(doc, {"kind", "delta", "alpha", "bias"}, "policy");
  if (!doc.contains("kind") || !doc.at("kind").is_string()) {
    throw Error(Errc::ParseError, "policy needs a string \"kind\"");
  }
  const auto kind = doc.at("kind").get<std::string>();
  PolicyDescriptor d;
  if (kind == "greedy") {
    d.kind = IndexKind::Greedy;
  } else if (kind == "lcb") {
    d.kind = IndexKind::Lcb;
  } else if (kind == "ucb") {
    d.kind = IndexKind::Ucb;
  } else if (kind == "alpha") {
    d.kind = IndexKind::ConstantAlpha;
  } else if (kind == "custom") {
    d.kind = IndexKind::Custom;
  } else {
    throw Error(Errc::ParseError, "unknown policy kind \"" + kind + "\"");
  }
  if (doc.contains("delta")) d.delta = number_field(doc, "delta");
  if (doc.contains("alpha")) d.alpha = number_field(doc, "alpha");
  if (doc.contains("bias")) d.bias = number_array(doc, "bias");
  if (d.kind == IndexKind::ConstantAlpha && !d.alpha) throw Error(Errc::ParseError, "alpha policy needs \"alpha\"");
  if (d.kind == IndexKind::Custom && !doc.contains("bias")) throw Error(Errc::ParseError, "custom policy needs \"bias\"");
  return d;
}

AnyPolicy parse_any_policy(const json& doc, const BanditInstance& instance) {
  if (doc.is_object() && doc.contains("kind") && doc.at("kind").is_string()) {
    const auto kind = doc.at("kind").get<std::string>();
    if (kind == "threshold") {
      reject_unknown(doc, {"kind", "beta"}, "policy");
      return ThresholdPolicy{doc.contains("beta") ? number_field(doc, "beta") : 0.0};
    }
    if (kind == "spike") {
      reject_unknown(doc, {"kind", "delta_gap"}, "policy");
      const double gap = number_field(doc, "delta_gap");
      if (!(gap > 0.0)) throw Error(Errc::DomainError, "delta_gap must be positive");
      return SpikeBayesPolicy{gap};
    }
  }
  return make_index_policy(parse_policy(doc), instance.counts());
}

std::vector<double> parse_counts(const json& doc) {
  json wrapped = doc;
  if (doc.is_array()) wrapped = json{{"counts", doc}};
  if (!wrapped.is_object()) throw Error(Errc::ParseError, "counts file must hold an array or an object");
  auto counts = number_array(wrapped, "counts");
  for (double n : counts) {
    if (!(n > 0.0)) throw Error(Errc::NonPositiveCount, "counts must be positive");
  }
  return counts;
}

json to_json(const BoundReport& report) {
  json g = json::array();
  for (const auto& s : report.g_star) g.push_back({{"rank", s.rank}, {"eta", s.eta}, {"value", s.value}});
  return json{{"method", report.method},
              {"regret_bound", report.regret_bound},
              {"rank_cdf_bound", report.rank_cdf_bound},
              {"g_star", g}};
}

json to_json(const PickDistribution& dist, const std::vector<double>& rank_cdf) {
  return json{{"probs", dist.probs}, {"regret", dist.regret}, {"rank_cdf", rank_cdf}};
}

}  // namespace bpo::io
