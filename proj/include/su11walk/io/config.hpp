#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "su11walk/coin.hpp"
#include "su11walk/errors.hpp"
#include "su11walk/frame.hpp"
#include "su11walk/walk.hpp"

namespace su11walk::io {

using json = nlohmann::ordered_json;

/// Config validation failure naming the offending field.
class ConfigError : public InvalidArgument {
 public:
  ConfigError(const std::string& field, const std::string& message)
      : InvalidArgument(field + ": " + message), field_(field) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

enum class OutputKind { probabilities, sigma, entropy, gram_row, overlap_curve };

inline std::string_view to_string(OutputKind k) {
  switch (k) {
    case OutputKind::probabilities: return "probabilities";
    case OutputKind::sigma: return "sigma";
    case OutputKind::entropy: return "entropy";
    case OutputKind::gram_row: return "gram-row";
    case OutputKind::overlap_curve: return "overlap-curve";
  }
  return "probabilities";
}

inline std::optional<OutputKind> output_kind_from_string(std::string_view s) {
  for (auto k : {OutputKind::probabilities, OutputKind::sigma, OutputKind::entropy, OutputKind::gram_row,
                 OutputKind::overlap_curve})
    if (to_string(k) == s) return k;
  return std::nullopt;
}

struct CoinOperatorSpec {
  enum class Type { hadamard, su2 } type = Type::hadamard;
  double alpha = 0.0, beta = 0.0, gamma = 0.0;

  CoinOperator build() const { return type == Type::hadamard ? hadamard() : su2_coin(alpha, beta, gamma); }
  friend bool operator==(const CoinOperatorSpec&, const CoinOperatorSpec&) = default;
};

/// One experiment: a walk, the tables to produce, and where to put them.
struct ExperimentConfig {
  std::string name = "experiment";
  Frame frame = Frame::ideal();
  std::size_t sites = 200;
  std::size_t steps = 40;
  long start_site = 0;
  CoinPair coin{complex(1.0), complex(0.0)};
  CoinOperatorSpec coin_operator;
  PhaseMode mode = PhaseMode::physical;
  std::optional<double> branch_index;
  std::vector<OutputKind> outputs{OutputKind::probabilities};
  std::string out_dir = ".";

  friend bool operator==(const ExperimentConfig&, const ExperimentConfig&) = default;
};

namespace detail {

inline double number_field(const json& j, const std::string& key, const std::string& path) {
  if (!j.contains(key)) throw ConfigError(path + key, "required field missing");
  const auto& v = j.at(key);
  if (!v.is_number()) throw ConfigError(path + key, "expected a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) throw ConfigError(path + key, "must be finite");
  return d;
}

inline complex complex_field(const json& j, const std::string& key, const std::string& path) {
  if (!j.contains(key)) throw ConfigError(path + key, "required field missing");
  const auto& v = j.at(key);
  if (v.is_number()) return {v.get<double>(), 0.0};
  if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number())
    return {v[0].get<double>(), v[1].get<double>()};
  throw ConfigError(path + key, "expected a number or [re, im]");
}

inline Frame parse_frame_string(const std::string& s) {
  const auto number = [&](const std::string& text) {
    try {
      std::size_t used = 0;
      const double v = std::stod(text, &used);
      if (used != text.size()) throw std::invalid_argument(text);
      return v;
    } catch (const std::exception&) {
      throw ConfigError("frame", "cannot parse number '" + text + "' in '" + s + "'");
    }
  };
  const auto strip = [](std::string t, std::string_view prefix) {
    return t.rfind(prefix, 0) == 0 ? t.substr(prefix.size()) : t;
  };
  if (s == "ideal") return Frame::ideal();
  if (s.rfind("hw:", 0) == 0) return Frame::hw(number(strip(s.substr(3), "alpha=")));
  if (s.rfind("su11:", 0) == 0) {
    const std::string rest = s.substr(5);
    const auto comma = rest.find(',');
    if (comma == std::string::npos) throw ConfigError("frame", "expected su11:k,r");
    return Frame::su11(number(strip(rest.substr(0, comma), "k=")), number(strip(rest.substr(comma + 1), "r=")));
  }
  throw ConfigError("frame", "unknown frame '" + s + "' (expected ideal | hw:ALPHA | su11:K,R)");
}

}  // namespace detail

inline Frame frame_from_json(const json& j) {
  try {
    if (j.is_string()) return detail::parse_frame_string(j.get<std::string>());
    if (!j.is_object() || !j.contains("type") || !j["type"].is_string())
      throw ConfigError("frame", "expected a string or an object with a 'type'");
    const auto type = j["type"].get<std::string>();
    if (type == "ideal") return Frame::ideal();
    if (type == "hw") return Frame::hw(detail::number_field(j, "alpha", "frame."));
    if (type == "su11")
      return Frame::su11(detail::number_field(j, "k", "frame."), detail::number_field(j, "r", "frame."));
    throw ConfigError("frame.type", "unknown frame type '" + type + "'");
  } catch (const ConfigError&) {
    throw;
  } catch (const InvalidArgument& e) {
    throw ConfigError("frame", e.what());
  }
}

inline json frame_to_json(const Frame& f) {
  json j;
  std::visit(
      [&](const auto& v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Frame::Ideal>) {
          j["type"] = "ideal";
        } else if constexpr (std::is_same_v<T, Frame::HW>) {
          j["type"] = "hw";
          j["alpha"] = v.alpha_mag;
        } else {
          j["type"] = "su11";
          j["k"] = v.k;
          j["r"] = v.r;
        }
      },
      f.variant());
  return j;
}

inline ExperimentConfig config_from_json(const json& j) {
  if (!j.is_object()) throw ConfigError("<root>", "expected a JSON object");
  static const std::vector<std::string> known{"name",     "frame",   "sites",         "steps",
                                              "start_site", "coin",  "coin_operator", "phase_mode",
                                              "branch_index", "outputs", "out_dir"};
  for (const auto& [key, _] : j.items())
    if (std::find(known.begin(), known.end(), key) == known.end()) throw ConfigError(key, "unknown field");

  ExperimentConfig c;
  if (j.contains("name")) {
    if (!j["name"].is_string() || j["name"].get<std::string>().empty())
      throw ConfigError("name", "expected a non-empty string");
    c.name = j["name"].get<std::string>();
    if (c.name.find_first_of("/\\") != std::string::npos) throw ConfigError("name", "must not contain path separators");
  }
  if (!j.contains("frame")) throw ConfigError("frame", "required field missing");
  c.frame = frame_from_json(j["frame"]);

  const auto count = [&](const char* key, bool required, std::size_t fallback, std::size_t min) -> std::size_t {
    if (!j.contains(key)) {
      if (required) throw ConfigError(key, "required field missing");
      return fallback;
    }
    if (!j[key].is_number_integer() || j[key].get<long long>() < static_cast<long long>(min))
      throw ConfigError(key, "expected an integer >= " + std::to_string(min));
    return j[key].get<std::size_t>();
  };
  c.sites = count("sites", false, 200, 1);
  c.steps = count("steps", true, 0, 0);
  if (j.contains("start_site")) {
    if (!j["start_site"].is_number_integer()) throw ConfigError("start_site", "expected an integer");
    c.start_site = j["start_site"].get<long>();
  }
  const long lo = -static_cast<long>(c.sites / 2);
  if (c.start_site < lo || c.start_site >= lo + static_cast<long>(c.sites))
    throw ConfigError("start_site", "outside the site range [" + std::to_string(lo) + ", " +
                                        std::to_string(lo + static_cast<long>(c.sites)) + ")");

  if (j.contains("coin")) {
    const auto& cj = j["coin"];
    if (!cj.is_object()) throw ConfigError("coin", "expected {\"up\": ..., \"down\": ...}");
    c.coin.up = detail::complex_field(cj, "up", "coin.");
    c.coin.down = detail::complex_field(cj, "down", "coin.");
    if (std::abs(c.coin.norm2() - 1.0) > 1e-12)
      throw ConfigError("coin", "amplitudes must satisfy |up|^2 + |down|^2 = 1 (got " +
                                    std::to_string(c.coin.norm2()) + ")");
  }
  if (j.contains("coin_operator")) {
    const auto& oj = j["coin_operator"];
    const std::string type = oj.is_string() ? oj.get<std::string>() : oj.value("type", std::string());
    if (type == "hadamard") {
      c.coin_operator = {};
    } else if (type == "su2") {
      if (!oj.is_object()) throw ConfigError("coin_operator", "su2 needs alpha, beta, gamma");
      c.coin_operator.type = CoinOperatorSpec::Type::su2;
      c.coin_operator.alpha = detail::number_field(oj, "alpha", "coin_operator.");
      c.coin_operator.beta = detail::number_field(oj, "beta", "coin_operator.");
      c.coin_operator.gamma = detail::number_field(oj, "gamma", "coin_operator.");
    } else {
      throw ConfigError("coin_operator", "expected \"hadamard\" or {\"type\": \"su2\", ...}");
    }
  }
  if (j.contains("phase_mode")) {
    if (!j["phase_mode"].is_string()) throw ConfigError("phase_mode", "expected a string");
    try {
      c.mode = phase_mode_from_string(j["phase_mode"].get<std::string>());
    } catch (const InvalidArgument& e) {
      throw ConfigError("phase_mode", e.what());
    }
  }
  if (j.contains("branch_index")) c.branch_index = detail::number_field(j, "branch_index", "");
  if (j.contains("outputs")) {
    if (!j["outputs"].is_array() || j["outputs"].empty())
      throw ConfigError("outputs", "expected a non-empty array");
    c.outputs.clear();
    for (std::size_t i = 0; i < j["outputs"].size(); ++i) {
      const auto& o = j["outputs"][i];
      const auto kind = o.is_string() ? output_kind_from_string(o.get<std::string>()) : std::nullopt;
      if (!kind)
        throw ConfigError("outputs[" + std::to_string(i) + "]",
                          "expected one of probabilities|sigma|entropy|gram-row|overlap-curve");
      c.outputs.push_back(*kind);
    }
  }
  if (j.contains("out_dir")) {
    if (!j["out_dir"].is_string()) throw ConfigError("out_dir", "expected a string");
    c.out_dir = j["out_dir"].get<std::string>();
  }
  return c;
}

inline json config_to_json(const ExperimentConfig& c) {
  json j;
  j["name"] = c.name;
  j["frame"] = frame_to_json(c.frame);
  j["sites"] = c.sites;
  j["steps"] = c.steps;
  j["start_site"] = c.start_site;
  j["coin"] = {{"up", {c.coin.up.real(), c.coin.up.imag()}}, {"down", {c.coin.down.real(), c.coin.down.imag()}}};
  if (c.coin_operator.type == CoinOperatorSpec::Type::hadamard) {
    j["coin_operator"] = "hadamard";
  } else {
    j["coin_operator"] = {{"type", "su2"},
                          {"alpha", c.coin_operator.alpha},
                          {"beta", c.coin_operator.beta},
                          {"gamma", c.coin_operator.gamma}};
  }
  j["phase_mode"] = std::string(to_string(c.mode));
  if (c.branch_index) j["branch_index"] = *c.branch_index;
  j["outputs"] = json::array();
  for (auto k : c.outputs) j["outputs"].push_back(std::string(to_string(k)));
  j["out_dir"] = c.out_dir;
  return j;
}

inline ExperimentConfig parse_config(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError("<root>", std::string("malformed JSON: ") + e.what());
  }
  return config_from_json(j);
}

}  // namespace su11walk::io
