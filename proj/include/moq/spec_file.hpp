#pragma once

// Distribution specs as JSON:
//
//   {
//     "baseline": {"family": "weibull", "scale": 2, "shape": 2},
//     "a": [1e-6, 0.15],
//     "q": 2,        (optional, must equal the length of a)
//     "seed": 42     (optional)
//   }
//
// Families and their keys: exponential {scale}, weibull {scale, shape},
// generalized_weibull {scale, shape, extra_shape}, log_logistic {scale, shape}.
// scale and shape default to 1 where the family has them; extra_shape too.
// Unknown keys are errors.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "moq/baselines.hpp"
#include "moq/error.hpp"
#include "moq/extended_dist.hpp"
#include "moq/param_family.hpp"

namespace moq {

class SpecError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct DistributionSpec {
  BaselineModel baseline = BaselineModel::exponential();
  ParameterVector params{std::vector<double>{1.0}};
  std::optional<std::uint64_t> seed;

  ExtendedDistribution distribution() const { return ExtendedDistribution(baseline, params); }
};

namespace detail {

inline void reject_unknown_keys(const nlohmann::json& obj, const std::set<std::string>& allowed,
                                const std::string& where, const std::string& origin) {
  for (const auto& item : obj.items()) {
    if (!allowed.contains(item.key())) {
      throw SpecError(origin + ": unknown key '" + where + item.key() + "'");
    }
  }
}

inline double number_field(const nlohmann::json& obj, const std::string& key, const std::string& where,
                           const std::string& origin, double fallback) {
  if (!obj.contains(key)) return fallback;
  const auto& v = obj.at(key);
  if (!v.is_number()) throw SpecError(origin + ": '" + where + key + "' must be a number");
  return v.get<double>();
}

}  // namespace detail

inline DistributionSpec parse_spec(const std::string& text, const std::string& origin = "<spec>") {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    // e.byte is 1-based; report line and column.
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw SpecError(origin + ":" + std::to_string(line) + ":" + std::to_string(col) + ": JSON syntax error");
  }
  if (!doc.is_object()) throw SpecError(origin + ": top level must be an object");
  detail::reject_unknown_keys(doc, {"baseline", "a", "q", "seed"}, "", origin);

  if (!doc.contains("baseline")) throw SpecError(origin + ": missing key 'baseline'");
  const auto& b = doc.at("baseline");
  if (!b.is_object()) throw SpecError(origin + ": 'baseline' must be an object");
  if (!b.contains("family") || !b.at("family").is_string()) {
    throw SpecError(origin + ": 'baseline.family' must be a string");
  }
  const std::string family_name = b.at("family").get<std::string>();
  const auto family = parse_family(family_name);
  if (!family) throw SpecError(origin + ": 'baseline.family' has unknown value '" + family_name + "'");

  DistributionSpec spec;
  try {
    const std::string w = "baseline.";
    switch (*family) {
      case BaselineFamily::Exponential:
        detail::reject_unknown_keys(b, {"family", "scale"}, w, origin);
        spec.baseline = BaselineModel::exponential(detail::number_field(b, "scale", w, origin, 1.0));
        break;
      case BaselineFamily::Weibull:
        detail::reject_unknown_keys(b, {"family", "scale", "shape"}, w, origin);
        spec.baseline = BaselineModel::weibull(detail::number_field(b, "scale", w, origin, 1.0),
                                               detail::number_field(b, "shape", w, origin, 1.0));
        break;
      case BaselineFamily::GeneralizedWeibull:
        detail::reject_unknown_keys(b, {"family", "scale", "shape", "extra_shape"}, w, origin);
        spec.baseline = BaselineModel::generalized_weibull(detail::number_field(b, "scale", w, origin, 1.0),
                                                           detail::number_field(b, "shape", w, origin, 1.0),
                                                           detail::number_field(b, "extra_shape", w, origin, 1.0));
        break;
      case BaselineFamily::LogLogistic:
        detail::reject_unknown_keys(b, {"family", "scale", "shape"}, w, origin);
        spec.baseline = BaselineModel::log_logistic(detail::number_field(b, "scale", w, origin, 1.0),
                                                    detail::number_field(b, "shape", w, origin, 1.0));
        break;
    }
  } catch (const Error& e) {
    throw SpecError(origin + ": 'baseline': " + e.what());
  }

  if (!doc.contains("a")) throw SpecError(origin + ": missing key 'a'");
  const auto& a = doc.at("a");
  if (!a.is_array() || a.empty()) throw SpecError(origin + ": 'a' must be a non-empty array of numbers");
  std::vector<double> values;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!a[i].is_number()) throw SpecError(origin + ": 'a[" + std::to_string(i) + "]' must be a number");
    values.push_back(a[i].get<double>());
  }
  try {
    if (doc.contains("q")) {
      if (!doc.at("q").is_number_integer()) throw SpecError(origin + ": 'q' must be an integer");
      spec.params = validate_params(doc.at("q").get<int>(), values);
    } else {
      spec.params = ParameterVector(values);
    }
  } catch (const Error& e) {
    throw SpecError(origin + ": 'a': " + e.what());
  }

  if (doc.contains("seed")) {
    const auto& s = doc.at("seed");
    if (!s.is_number_unsigned()) throw SpecError(origin + ": 'seed' must be a non-negative integer");
    spec.seed = s.get<std::uint64_t>();
  }
  return spec;
}

inline DistributionSpec load_spec(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw SpecError(path.string() + ": cannot open spec file");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_spec(ss.str(), path.string());
}

}  // namespace moq
