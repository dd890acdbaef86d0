#include "ornet/config.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace ornet {

namespace {

struct KeyValues {
  std::map<std::string, double> values;
  std::map<std::string, std::string> strings;
  std::map<std::string, int> lines;
};

KeyValues parse_file(const std::string& path,
                     const std::set<std::string>& string_keys) {
  std::ifstream in(path);
  if (!in) throw ParseError(0, "cannot open config file: " + path);
  KeyValues kv;
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    const auto hash = raw.find('#');
    std::string line = hash == std::string::npos ? raw : raw.substr(0, hash);
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ParseError(lineno, "expected 'key = value'");
    auto trim = [](std::string s) {
      const auto b = s.find_first_not_of(" \t\r");
      const auto e = s.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty())
      throw ParseError(lineno, "expected 'key = value'");
    if (kv.lines.count(key))
      throw ParseError(lineno, "duplicate key: " + key);
    kv.lines[key] = lineno;
    if (string_keys.count(key)) {
      kv.strings[key] = value;
      continue;
    }
    try {
      std::size_t used = 0;
      const double v = std::stod(value, &used);
      if (used != value.size()) throw std::invalid_argument(value);
      kv.values[key] = v;
    } catch (const std::exception&) {
      throw ParseError(lineno, "not a number: '" + value + "' for " + key);
    }
  }
  return kv;
}

const char* kConfigKeys[] = {"s_x",     "s_y",   "r1_x",  "r1_y",
                             "r2_x",    "r2_y",  "d_x",   "d_y",
                             "p_s_dbm", "n0_dbm", "alpha", "r0",
                             "eta",     "m1_mj", "m2_mj", "inv_lambda1_db",
                             "inv_lambda2_db"};

NetworkConfig config_from(const KeyValues& kv, bool allow_sweep_keys) {
  for (const char* key : kConfigKeys)
    if (!kv.values.count(key))
      throw ParseError(0, std::string("missing key: ") + key);
  for (const auto& [key, line] : kv.lines) {
    const bool known =
        std::find_if(std::begin(kConfigKeys), std::end(kConfigKeys),
                     [&](const char* k) { return key == k; }) !=
        std::end(kConfigKeys);
    const bool sweep_key = key.rfind("sweep_", 0) == 0;
    if (!known && !(allow_sweep_keys && sweep_key))
      throw ParseError(line, "unknown key: " + key);
  }
  const auto get = [&](const char* k) { return kv.values.at(k); };
  NetworkConfig c;
  c.layout.s = {get("s_x"), get("s_y")};
  c.layout.r1 = {get("r1_x"), get("r1_y")};
  c.layout.r2 = {get("r2_x"), get("r2_y")};
  c.layout.d = {get("d_x"), get("d_y")};
  c.p_s = dbm_to_mw(get("p_s_dbm"));
  c.n0 = dbm_to_mw(get("n0_dbm"));
  c.alpha = get("alpha");
  c.r0 = get("r0");
  c.eta = get("eta");
  c.m1 = get("m1_mj");
  c.m2 = get("m2_mj");
  c.lambda1 = 1.0 / db_to_mj(get("inv_lambda1_db"));
  c.lambda2 = 1.0 / db_to_mj(get("inv_lambda2_db"));
  try {
    validate(c);
  } catch (const std::invalid_argument& e) {
    throw ParseError(0, e.what());
  }
  return c;
}

}  // namespace

NetworkConfig load_config(const std::string& path) {
  return config_from(parse_file(path, {}), false);
}

int SweepSpec::point_count() const {
  return static_cast<int>(std::floor((stop - start) / step + 1e-9)) + 1;
}

SweepSpec load_sweep(const std::string& path) {
  const KeyValues kv = parse_file(path, {"sweep_param"});
  SweepSpec spec;
  spec.base = config_from(kv, true);
  if (!kv.strings.count("sweep_param"))
    throw ParseError(0, "missing key: sweep_param");
  spec.param = kv.strings.at("sweep_param");
  for (const char* key : {"sweep_start", "sweep_stop", "sweep_step"})
    if (!kv.values.count(key))
      throw ParseError(0, std::string("missing key: ") + key);
  spec.start = kv.values.at("sweep_start");
  spec.stop = kv.values.at("sweep_stop");
  spec.step = kv.values.at("sweep_step");

  static const std::set<std::string> kParams{
      "lambda1_db", "lambda2_db", "p_s_dbm", "r0", "m1", "m2"};
  if (!kParams.count(spec.param))
    throw ParseError(kv.lines.at("sweep_param"),
                     "unknown sweep_param: " + spec.param);
  if (!(spec.step > 0.0))
    throw ParseError(kv.lines.at("sweep_step"), "sweep_step must be > 0");
  if (!(spec.start <= spec.stop))
    throw ParseError(kv.lines.at("sweep_start"),
                     "sweep_start must be <= sweep_stop");
  // every grid point must stay in the config domain
  for (int i = 0; i < spec.point_count(); ++i)
    apply_sweep_value(spec, spec.value_at(i));
  return spec;
}

NetworkConfig apply_sweep_value(const SweepSpec& spec, double value) {
  NetworkConfig c = spec.base;
  if (spec.param == "lambda1_db")
    c.lambda1 = 1.0 / db_to_mj(value);
  else if (spec.param == "lambda2_db")
    c.lambda2 = 1.0 / db_to_mj(value);
  else if (spec.param == "p_s_dbm")
    c.p_s = dbm_to_mw(value);
  else if (spec.param == "r0")
    c.r0 = value;
  else if (spec.param == "m1")
    c.m1 = value;
  else if (spec.param == "m2")
    c.m2 = value;
  else
    throw std::invalid_argument("unknown sweep param: " + spec.param);
  try {
    validate(c);
  } catch (const std::invalid_argument& e) {
    throw ParseError(0, std::string("sweep value out of domain: ") + e.what());
  }
  return c;
}

}  // namespace ornet
