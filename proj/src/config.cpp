#include <yaml-cpp/yaml.h>

#include <cmath>
#include <fstream>
#include <regex>
#include <sstream>

#include "swarmauth/algebra.hpp"
#include "swarmauth/error.hpp"
#include "swarmauth/simnet.hpp"

namespace swarmauth::sim {
namespace {

[[noreturn]] void fail(const std::string& field, const std::string& what) {
  throw Error(Errc::kConfigError, "field '" + field + "': " + what);
}

std::string scalar_text(const YAML::Node& node, const std::string& field) {
  if (!node.IsScalar()) fail(field, "expected a scalar value");
  return node.Scalar();
}

std::uint64_t parse_uint(const YAML::Node& node, const std::string& field) {
  auto text = scalar_text(node, field);
  if (text.empty() || text.find_first_not_of("0123456789") != std::string::npos) {
    fail(field, "expected a non-negative integer, got '" + text + "'");
  }
  try {
    return std::stoull(text);
  } catch (const std::exception&) {
    fail(field, "integer out of range");
  }
}

bool parse_bool(const YAML::Node& node, const std::string& field) {
  auto text = scalar_text(node, field);
  if (text == "true" || text == "yes" || text == "on") return true;
  if (text == "false" || text == "no" || text == "off") return false;
  fail(field, "expected true or false, got '" + text + "'");
}

Nanos parse_duration(const YAML::Node& node, const std::string& field) {
  static const std::regex kPattern(R"(^\s*([0-9]+(?:\.[0-9]+)?)\s*(ns|us|ms|s)\s*$)");
  auto text = scalar_text(node, field);
  std::smatch m;
  if (!std::regex_match(text, m, kPattern)) {
    fail(field, "expected a duration with unit suffix (ns, us, ms, s), got '" + text + "'");
  }
  const long double value = std::stold(m[1].str());
  const auto& unit = m[2].str();
  const long double scale = unit == "ns" ? 1 : unit == "us" ? 1e3 : unit == "ms" ? 1e6 : 1e9;
  return Nanos(static_cast<Nanos::rep>(std::llround(value * scale)));
}

}  // namespace

void ScenarioConfig::validate() const {
  if (threshold < 2) fail("threshold", "must be >= 2");
  latency.validate();
  if (group == GroupChoice::kToy && (toy_order < 3 || !is_prime_u64(toy_order))) {
    fail("toy_order", "must be an odd prime");
  }
  if (supi_length == 0) fail("supi_length", "must be > 0");
  const auto n = drone_count();
  switch (scenario) {
    case ScenarioKind::kInclusion:
    case ScenarioKind::kUnification:
      if (guard_count() > n) fail("guards", "exceeds n_drones");
      if (guard_count() + 1 < threshold) fail("guards", "need at least threshold - 1 guards");
      break;
    case ScenarioKind::kNr5g:
      if (n < 1) fail("n_drones", "must be >= 1");
      break;
    case ScenarioKind::kBulk:
      if (guard_count() + 1 < threshold) fail("guards", "need at least threshold - 1 guards");
      break;
  }
}

ScenarioConfig parse_config(std::string_view text) {
  YAML::Node root;
  try {
    root = YAML::Load(std::string(text));
  } catch (const YAML::Exception& e) {
    throw Error(Errc::kConfigError, std::string("malformed YAML: ") + e.what());
  }
  if (!root.IsMap()) throw Error(Errc::kConfigError, "config must be a mapping of fields");

  ScenarioConfig cfg;
  bool have_scenario = false;
  for (const auto& kv : root) {
    const auto key = kv.first.as<std::string>();
    const auto& value = kv.second;
    if (key == "scenario") {
      auto s = scalar_text(value, key);
      if (s == "inclusion") cfg.scenario = ScenarioKind::kInclusion;
      else if (s == "unification") cfg.scenario = ScenarioKind::kUnification;
      else if (s == "nr5g") cfg.scenario = ScenarioKind::kNr5g;
      else if (s == "bulk") cfg.scenario = ScenarioKind::kBulk;
      else fail(key, "expected inclusion | unification | nr5g | bulk, got '" + s + "'");
      have_scenario = true;
    } else if (key == "threshold" || key == "t") {
      cfg.threshold = parse_uint(value, key);
    } else if (key == "n_drones") {
      cfg.n_drones = parse_uint(value, key);
    } else if (key == "guards") {
      cfg.guards = parse_uint(value, key);
    } else if (key == "seed") {
      cfg.seed = parse_uint(value, key);
    } else if (key == "adversary") {
      auto s = scalar_text(value, key);
      if (s == "none") cfg.adversary = AdversaryMode::kNone;
      else if (s == "replay") cfg.adversary = AdversaryMode::kReplay;
      else if (s == "eavesdrop") cfg.adversary = AdversaryMode::kEavesdrop;
      else if (s == "mitm") cfg.adversary = AdversaryMode::kMitm;
      else fail(key, "expected none | replay | eavesdrop | mitm, got '" + s + "'");
    } else if (key == "group") {
      auto s = scalar_text(value, key);
      if (s == "ristretto255") cfg.group = GroupChoice::kRistretto255;
      else if (s == "toy") cfg.group = GroupChoice::kToy;
      else fail(key, "expected ristretto255 | toy, got '" + s + "'");
    } else if (key == "toy_order") {
      cfg.toy_order = parse_uint(value, key);
    } else if (key == "mutual") {
      cfg.mutual = parse_bool(value, key);
    } else if (key == "concurrent_broadcast") {
      cfg.latency.concurrent_broadcast = parse_bool(value, key);
    } else if (key == "supi_length") {
      cfg.supi_length = parse_uint(value, key);
    } else if (key == "latency") {
      if (!value.IsMap()) fail(key, "expected a mapping of latency fields");
      for (const auto& lv : value) {
        const auto name = lv.first.as<std::string>();
        auto member = latency_field(name);
        if (!member) fail("latency." + name, "unknown latency field");
        cfg.latency.*member = parse_duration(lv.second, "latency." + name);
      }
    } else {
      fail(key, "unknown field");
    }
  }
  if (!have_scenario) fail("scenario", "missing");
  cfg.validate();
  return cfg;
}

ScenarioConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::kConfigError, "cannot read config file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

}  // namespace swarmauth::sim
