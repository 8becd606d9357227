// Copyright 2026 The pqp Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "pqp/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "pqp/error.hpp"

namespace pqp {

using nlohmann::json;

namespace {

[[noreturn]] void fail(std::string_view field, const std::string& what) {
  throw ConfigError("field '" + std::string(field) + "': " + what);
}

double parse_double(std::string_view field, std::string_view text) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (text.empty() || ec != std::errc() || ptr != text.data() + text.size())
    fail(field, "expected a number, got '" + std::string(text) + "'");
  return v;
}

template <class Int>
Int parse_integer(std::string_view field, std::string_view text) {
  Int v = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (text.empty() || ec != std::errc() || ptr != text.data() + text.size())
    fail(field, "expected a non-negative integer, got '" + std::string(text) + "'");
  return v;
}

bool parse_bool(std::string_view field, std::string_view text) {
  if (text == "true" || text == "1") return true;
  if (text == "false" || text == "0") return false;
  fail(field, "expected true or false, got '" + std::string(text) + "'");
}

std::string canonical_key(std::string_view key) {
  std::string k(key);
  std::replace(k.begin(), k.end(), '-', '_');
  if (k == "hwp_offset") k = "hwp_offset_deg";
  return k;
}

double number_field(const json& j, std::string_view field) {
  if (!j.is_number()) fail(field, std::string("expected a number, got ") + j.type_name());
  return j.get<double>();
}

}  // namespace

AlphaRange AlphaRange::parse(std::string_view text) {
  const auto first = text.find(':');
  const auto second = first == std::string_view::npos ? first : text.find(':', first + 1);
  if (second == std::string_view::npos || text.find(':', second + 1) != std::string_view::npos)
    fail("alpha", "expected start:stop:step, got '" + std::string(text) + "'");
  return {parse_double("alpha", text.substr(0, first)),
          parse_double("alpha", text.substr(first + 1, second - first - 1)),
          parse_double("alpha", text.substr(second + 1))};
}

AlphaRange RunConfig::alpha_for(Bell program) const {
  if (alpha) return *alpha;
  // |Psi-> dips at 0 degrees, |Phi-> at 45.
  if (program == Bell::PsiMinus || program == Bell::PsiPlus) return {-45.0, 45.0, 5.0};
  return {0.0, 90.0, 5.0};
}

const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys = {
      "u",     "v1",    "v2",        "hwp_offset_deg", "flux", "seed",
      "replicas", "alpha", "fit_visibility", "exact", "out",  "force"};
  return keys;
}

void RunConfig::validate() const {
  try {
    parse_central_op(u);
  } catch (const std::invalid_argument& e) {
    fail("u", e.what());
  }
  if (!(v1 >= 0.0 && v1 <= 1.0)) fail("v1", "must lie in [0,1]");
  if (!(v2 >= 0.0 && v2 <= 1.0)) fail("v2", "must lie in [0,1]");
  if (!std::isfinite(hwp_offset_deg)) fail("hwp_offset_deg", "must be finite");
  if (!(flux > 0.0) || !std::isfinite(flux)) fail("flux", "must be positive");
  if (replicas != 0 && replicas < 50) fail("replicas", "must be 0 or at least 50");
  if (alpha) {
    if (!(alpha->step != 0.0) || !std::isfinite(alpha->step)) fail("alpha", "step must be non-zero");
    try {
      alpha->grid();
    } catch (const std::invalid_argument& e) {
      fail("alpha", e.what());
    }
  }
  if (fit_visibility && !(*fit_visibility > 0.0 && *fit_visibility < 1.0))
    fail("fit_visibility", "target must lie in (0,1)");
  if (out.empty()) fail("out", "must not be empty");
}

json RunConfig::snapshot() const {
  json j;
  j["u"] = u;
  j["v1"] = v1;
  j["v2"] = v2;
  j["hwp_offset_deg"] = hwp_offset_deg;
  j["flux"] = flux;
  j["seed"] = seed;
  j["replicas"] = replicas;
  if (alpha)
    j["alpha"] = {{"start", alpha->start}, {"stop", alpha->stop}, {"step", alpha->step}};
  else
    j["alpha"] = nullptr;
  j["fit_visibility"] = fit_visibility ? json(*fit_visibility) : json(nullptr);
  j["exact"] = exact;
  return j;
}

RunConfig parse_config(std::string_view json_text, const RunConfig& base, std::string_view source) {
  json j;
  try {
    j = json::parse(json_text.begin(), json_text.end());
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string(source) + ": " + e.what());
  }
  if (!j.is_object()) throw ConfigError(std::string(source) + ": top level must be an object");

  RunConfig cfg = base;
  const auto& keys = config_keys();
  for (const auto& [key, value] : j.items()) {
    if (std::find(keys.begin(), keys.end(), key) == keys.end())
      throw ConfigError(std::string(source) + ": unknown field '" + key + "'");
    if (key == "u") {
      if (!value.is_string()) fail(key, "expected a string");
      cfg.u = value.get<std::string>();
    } else if (key == "v1") {
      cfg.v1 = number_field(value, key);
    } else if (key == "v2") {
      cfg.v2 = number_field(value, key);
    } else if (key == "hwp_offset_deg") {
      cfg.hwp_offset_deg = number_field(value, key);
    } else if (key == "flux") {
      cfg.flux = number_field(value, key);
    } else if (key == "seed") {
      if (!value.is_number_unsigned()) fail(key, "expected a non-negative integer");
      cfg.seed = value.get<std::uint64_t>();
    } else if (key == "replicas") {
      if (!value.is_number_integer()) fail(key, "expected an integer");
      cfg.replicas = value.get<int>();
    } else if (key == "alpha") {
      if (value.is_null()) {
        cfg.alpha.reset();
      } else if (value.is_string()) {
        cfg.alpha = AlphaRange::parse(value.get<std::string>());
      } else if (value.is_object()) {
        AlphaRange r;
        for (const auto& [k, v] : value.items()) {
          if (k == "start") r.start = number_field(v, "alpha.start");
          else if (k == "stop") r.stop = number_field(v, "alpha.stop");
          else if (k == "step") r.step = number_field(v, "alpha.step");
          else fail("alpha", "unknown sub-field '" + k + "'");
        }
        if (!value.contains("start") || !value.contains("stop") || !value.contains("step"))
          fail("alpha", "needs start, stop and step");
        cfg.alpha = r;
      } else {
        fail(key, "expected \"start:stop:step\", an object or null");
      }
    } else if (key == "fit_visibility") {
      if (value.is_null()) cfg.fit_visibility.reset();
      else cfg.fit_visibility = number_field(value, key);
    } else if (key == "exact") {
      if (!value.is_boolean()) fail(key, "expected a boolean");
      cfg.exact = value.get<bool>();
    } else if (key == "out") {
      if (!value.is_string()) fail(key, "expected a string");
      cfg.out = value.get<std::string>();
    } else if (key == "force") {
      if (!value.is_boolean()) fail(key, "expected a boolean");
      cfg.force = value.get<bool>();
    }
  }
  try {
    cfg.validate();
  } catch (const ConfigError& e) {
    throw ConfigError(std::string(source) + ": " + e.what());
  }
  return cfg;
}

RunConfig load_config_file(const std::string& path, const RunConfig& base) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), base, path);
}

void apply_override(RunConfig& cfg, std::string_view raw_key, std::string_view value) {
  const std::string key = canonical_key(raw_key);
  RunConfig next = cfg;
  if (key == "u") next.u = std::string(value);
  else if (key == "v1") next.v1 = parse_double(key, value);
  else if (key == "v2") next.v2 = parse_double(key, value);
  else if (key == "hwp_offset_deg") next.hwp_offset_deg = parse_double(key, value);
  else if (key == "flux") next.flux = parse_double(key, value);
  else if (key == "seed") next.seed = parse_integer<std::uint64_t>(key, value);
  else if (key == "replicas") next.replicas = parse_integer<int>(key, value);
  else if (key == "alpha") next.alpha = AlphaRange::parse(value);
  else if (key == "fit_visibility") next.fit_visibility = parse_double(key, value);
  else if (key == "exact") next.exact = parse_bool(key, value);
  else if (key == "out") next.out = std::string(value);
  else if (key == "force") next.force = parse_bool(key, value);
  else throw ConfigError("unknown field '" + std::string(raw_key) + "'");
  next.validate();
  cfg = std::move(next);
}

}  // namespace pqp
