#include <json.hpp>

#include "maup/errors.hpp"
#include "maup/pipeline.hpp"

namespace maup {
namespace {

using nlohmann::json;

json point_json(const ExportPoint& p) {
  json j{{"x", p.x}, {"y", p.y}, {"label", p.label}};
  if (p.source) j["source"] = std::string(to_string(*p.source));
  return j;
}

json optional_number(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

std::optional<double> read_optional(const json& j, const char* key) {
  const auto& v = j.at(key);
  if (v.is_null()) return std::nullopt;
  return v.get<double>();
}

PromptSource parse_source(const std::string& s) {
  if (s == "mean") return PromptSource::mean_centroid;
  if (s == "uncertainty") return PromptSource::uncertainty;
  throw FormatError("unknown prompt source '" + s + "'");
}

NegativeStatus parse_status(const std::string& s) {
  for (auto st : {NegativeStatus::ok, NegativeStatus::disabled, NegativeStatus::periphery_empty,
                  NegativeStatus::exhausted}) {
    if (to_string(st) == s) return st;
  }
  throw FormatError("unknown negative_status '" + s + "'");
}

ExportPoint read_point(const json& j, int expected_label) {
  ExportPoint p;
  p.x = j.at("x").get<int>();
  p.y = j.at("y").get<int>();
  p.label = j.at("label").get<int>();
  if (p.label != expected_label) throw FormatError("prompt with unexpected label");
  if (j.contains("source")) p.source = parse_source(j.at("source").get<std::string>());
  return p;
}

}  // namespace

ExportPoint to_image(PointRC p, int scale, int label) {
  return ExportPoint{p.col * scale + scale / 2, p.row * scale + scale / 2, label, std::nullopt};
}

PointRC to_grid(const ExportPoint& p, int scale) {
  return PointRC{(p.y - scale / 2) / scale, (p.x - scale / 2) / scale};
}

std::string to_canonical_json(const PromptExport& e) {
  // nlohmann::json objects are key-sorted, and doubles print in shortest
  // round-trip form, so equal exports always serialize to equal bytes.
  json j;
  j["positives"] = json::array();
  for (const auto& p : e.positives) j["positives"].push_back(point_json(p));
  j["negatives"] = json::array();
  for (const auto& p : e.negatives) j["negatives"].push_back(point_json(p));
  j["k_used"] = e.k_used;
  j["n_f"] = e.n_f;
  j["seed"] = e.seed;
  j["scale"] = e.scale;
  j["negative_status"] = std::string(to_string(e.negative_status));
  j["thresholds"] = {{"tau_mean", optional_number(e.tau_mean)},
                     {"tau_uncert", optional_number(e.tau_uncert)},
                     {"tau_neg", optional_number(e.tau_neg)}};
  return j.dump(2) + "\n";
}

PromptExport parse_prompt_json(const std::string& text) {
  try {
    const json j = json::parse(text);
    PromptExport e;
    for (const auto& p : j.at("positives")) e.positives.push_back(read_point(p, 1));
    for (const auto& p : j.at("negatives")) e.negatives.push_back(read_point(p, 0));
    e.k_used = j.at("k_used").get<int>();
    e.n_f = j.at("n_f").get<int>();
    e.seed = j.at("seed").get<std::uint64_t>();
    e.scale = j.at("scale").get<int>();
    if (e.scale < 1) throw FormatError("scale must be >= 1");
    e.negative_status = parse_status(j.at("negative_status").get<std::string>());
    const auto& t = j.at("thresholds");
    e.tau_mean = read_optional(t, "tau_mean");
    e.tau_uncert = read_optional(t, "tau_uncert");
    e.tau_neg = read_optional(t, "tau_neg");
    return e;
  } catch (const json::exception& ex) {
    throw FormatError(std::string("prompts.json: ") + ex.what());
  }
}

}  // namespace maup
