#include "config.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "risplit/textio.hpp"

namespace risplit::tool {

void RawConfig::set(const std::string& key, std::string value,
                    std::string origin) {
  entries_[key] = Entry{std::move(value), std::move(origin)};
}

// ---------------------------------------------------------------------------
// defaults and presets
// ---------------------------------------------------------------------------

RawConfig default_config() {
  RawConfig cfg;
  auto d = [&](const char* key, const char* value) {
    cfg.set(key, value, "default");
  };
  d("geometry.m_x", "5");
  d("geometry.m_y", "2");
  d("geometry.frequency", "28 GHz");
  d("geometry.d_x", "auto");  // half a wavelength
  d("geometry.d_y", "auto");
  d("placement.d_t", "17 m");
  d("placement.d_r", "20 m");
  d("placement.theta_inc", "45 deg");
  d("placement.theta_dep", "60 deg");
  d("placement.g_t", "40 dB");
  d("placement.g_r", "22 dB");
  d("fading.sigma_t_sq", "0.1");
  d("fading.sigma_r_sq", "0.3");
  d("harvester.a", "120");
  d("harvester.b", "1 mW");
  d("harvester.p_max", "20 mW");
  d("harvester.eta_rf", "0.5");
  d("ris_power.p_static", "2 uW");
  d("ris_power.p_dynamic", "10 mW");
  d("ris_power.alpha", "0.8");
  d("ris_power.p_r", "1e-3");
  d("noise.bandwidth", "1 GHz");
  d("noise.noise_figure", "10 dB");
  d("noise.temperature", "290");
  d("link.p_t", "1 W");
  d("problem.kind", "A");
  d("problem.p_ris", "auto");  // full surface consumption at ris_power values
  d("problem.gamma_0", "20 dB");
  d("montecarlo.trials", "10000");
  d("montecarlo.seed", "1");
  d("montecarlo.policies", "A1,A2,A3,A4,BruteForceA");
  d("demo.policy", "A1");
  d("tracking.step", "0.01 m");
  d("tracking.user_speed", "1.4");
  d("tracking.threshold", "3 dB");
  d("tracking.lateral_range", "40 m");
  d("tracking.tx_height", "3 m");
  d("tracking.rx_height", "1.5 m");
  d("tracking.ground_distance", "17 m");
  d("tracking.tx_ground_distance", "17 m");
  d("tracking.tx_ris_distance", "19 m");
  d("tracking.reconfig_duration", "100 us");
  d("tracking.p_dynamic_grid", "1 mW,10 mW,100 mW,1 W");
  d("tracking.alpha", "0.8");
  return cfg;
}

namespace {

using PresetTable = std::vector<std::pair<const char*, const char*>>;

const std::vector<std::pair<std::string, PresetTable>>& presets() {
  static const std::vector<std::pair<std::string, PresetTable>> table = {
      {"table2-ms10",
       {{"geometry.m_x", "5"}, {"geometry.m_y", "2"},
        {"montecarlo.trials", "10000"}}},
      {"table2-ms12",
       {{"geometry.m_x", "4"}, {"geometry.m_y", "3"},
        {"montecarlo.trials", "10000"}}},
      {"table2-ms15",
       {{"geometry.m_x", "5"}, {"geometry.m_y", "3"},
        {"montecarlo.trials", "10000"}}},
      // 2^20 subsets per trial is too slow for a 10^4-trial sweep; the
      // exhaustive column is covered by the dedicated table3 preset below.
      {"table2-ms20",
       {{"geometry.m_x", "5"}, {"geometry.m_y", "4"},
        {"montecarlo.trials", "10000"},
        {"montecarlo.policies", "A1,A2,A3,A4"}}},
      {"table3-ms20",
       {{"geometry.m_x", "5"}, {"geometry.m_y", "4"},
        {"montecarlo.trials", "1000"},
        {"montecarlo.policies", "A1,A2,A3,A4,BruteForceA"}}},
      {"table4-ms10",
       {{"geometry.m_x", "5"}, {"geometry.m_y", "2"},
        {"problem.kind", "B"},
        {"problem.gamma_0", "20 dB"},
        {"montecarlo.policies", "B1,B2,B3,B4,BruteForceB"},
        {"montecarlo.trials", "10000"}}},
      {"fig7-15x15", {{"geometry.m_x", "15"}, {"geometry.m_y", "15"}}},
      {"fig7-30x30", {{"geometry.m_x", "30"}, {"geometry.m_y", "30"}}},
  };
  return table;
}

}  // namespace

const std::vector<std::string>& preset_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto& [name, table] : presets()) v.push_back(name);
    return v;
  }();
  return names;
}

void apply_preset(RawConfig& cfg, const std::string& name) {
  for (const auto& [preset, table] : presets()) {
    if (preset == name) {
      for (const auto& [key, value] : table)
        cfg.set(key, value, "preset " + name);
      return;
    }
  }
  std::string known;
  for (const auto& n : preset_names()) {
    if (!known.empty()) known += ", ";
    known += n;
  }
  throw ConfigError("unknown preset '" + name + "' (available: " + known +
                    ")");
}

// ---------------------------------------------------------------------------
// INI file and --set parsing
// ---------------------------------------------------------------------------

namespace {

std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

}  // namespace

void apply_file(RawConfig& cfg, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::string line;
  std::string section;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string origin = path + ":" + std::to_string(lineno);
    // strip comments
    if (const auto pos = line.find_first_of("#;"); pos != std::string::npos)
      line.erase(pos);
    const std::string stripped = trim(line);
    if (stripped.empty()) continue;
    if (stripped.front() == '[') {
      if (stripped.back() != ']' || stripped.size() < 3)
        throw ConfigError(origin + ": malformed section header");
      section = trim(stripped.substr(1, stripped.size() - 2));
      if (section.empty())
        throw ConfigError(origin + ": empty section name");
      continue;
    }
    const auto eq = stripped.find('=');
    if (eq == std::string::npos)
      throw ConfigError(origin + ": expected 'key = value'");
    const std::string key = trim(stripped.substr(0, eq));
    const std::string value = trim(stripped.substr(eq + 1));
    if (key.empty()) throw ConfigError(origin + ": empty key");
    if (section.empty())
      throw ConfigError(origin + ": key '" + key +
                        "' appears before any [section] header");
    cfg.set(section + "." + key, value, origin);
  }
}

void apply_override(RawConfig& cfg, const std::string& keyval) {
  const std::string origin = "--set " + keyval;
  const auto eq = keyval.find('=');
  if (eq == std::string::npos)
    throw ConfigError(origin + ": expected section.key=value");
  const std::string key = trim(keyval.substr(0, eq));
  const std::string value = trim(keyval.substr(eq + 1));
  if (key.find('.') == std::string::npos)
    throw ConfigError(origin + ": key must be section.key");
  cfg.set(key, value, origin);
}

// ---------------------------------------------------------------------------
// quantities
// ---------------------------------------------------------------------------

namespace {

enum class Kind {
  kPlain,     // bare number
  kPower,     // W / mW / uW / nW / kW / dBm
  kFreq,      // Hz / kHz / MHz / GHz
  kTime,      // s / ms / us / ns
  kLength,    // m / mm / cm / km
  kAngle,     // rad (bare) / deg
  kGain,      // bare linear, or dB / dBi
  kDecibel,   // stays in dB; bare or dB suffix
};

double parse_plain_number(const std::string& text, const std::string& where) {
  if (text.empty()) throw ConfigError(where + ": empty value");
  const char* begin = text.c_str();
  char* end = nullptr;
  const double v = std::strtod(begin, &end);
  if (end != begin + text.size())
    throw ConfigError(where + ": cannot parse number '" + text + "'");
  if (!std::isfinite(v))
    throw ConfigError(where + ": value '" + text + "' is not finite");
  return v;
}

double parse_quantity(const std::string& raw, Kind kind,
                      const std::string& where) {
  const std::string s = trim(raw);
  // split a trailing alphabetic unit token off the number
  std::size_t cut = s.size();
  while (cut > 0 && (std::isalpha(static_cast<unsigned char>(s[cut - 1]))))
    --cut;
  std::string unit = s.substr(cut);
  std::string num = trim(s.substr(0, cut));
  // "1e9" would lose its exponent marker to the unit scan; if the remainder
  // ends in a digit-e/E, glue it back
  if ((unit == "e" || unit == "E") && !num.empty()) {
    num = s;
    unit.clear();
  }
  const double v = parse_plain_number(num, where);

  auto unknown = [&](const char* allowed) -> double {
    throw ConfigError(where + ": unknown unit '" + unit + "' (allowed: " +
                      allowed + ")");
  };

  switch (kind) {
    case Kind::kPlain:
      if (!unit.empty()) return unknown("none");
      return v;
    case Kind::kPower:
      if (unit.empty() || unit == "W") return v;
      if (unit == "mW") return v * 1e-3;
      if (unit == "uW") return v * 1e-6;
      if (unit == "nW") return v * 1e-9;
      if (unit == "kW") return v * 1e3;
      if (unit == "dBm") return std::pow(10.0, (v - 30.0) / 10.0);
      return unknown("W, mW, uW, nW, kW, dBm");
    case Kind::kFreq:
      if (unit.empty() || unit == "Hz") return v;
      if (unit == "kHz") return v * 1e3;
      if (unit == "MHz") return v * 1e6;
      if (unit == "GHz") return v * 1e9;
      return unknown("Hz, kHz, MHz, GHz");
    case Kind::kTime:
      if (unit.empty() || unit == "s") return v;
      if (unit == "ms") return v * 1e-3;
      if (unit == "us") return v * 1e-6;
      if (unit == "ns") return v * 1e-9;
      return unknown("s, ms, us, ns");
    case Kind::kLength:
      if (unit.empty() || unit == "m") return v;
      if (unit == "mm") return v * 1e-3;
      if (unit == "cm") return v * 1e-2;
      if (unit == "km") return v * 1e3;
      return unknown("m, mm, cm, km");
    case Kind::kAngle:
      if (unit.empty() || unit == "rad") return v;
      if (unit == "deg") return v * M_PI / 180.0;
      return unknown("rad, deg");
    case Kind::kGain:
      if (unit.empty()) return v;  // linear
      if (unit == "dB" || unit == "dBi") return std::pow(10.0, v / 10.0);
      return unknown("bare linear, dB, dBi");
    case Kind::kDecibel:
      if (unit.empty() || unit == "dB") return v;
      return unknown("bare dB, dB");
  }
  return unknown("internal");  // unreachable
}

long long parse_integer(const std::string& text, const std::string& where) {
  if (text.empty()) throw ConfigError(where + ": empty value");
  const char* begin = text.c_str();
  char* end = nullptr;
  const long long v = std::strtoll(begin, &end, 10);
  if (end != begin + text.size())
    throw ConfigError(where + ": cannot parse integer '" + text + "'");
  return v;
}

std::uint64_t parse_u64(const std::string& text, const std::string& where) {
  if (text.empty() || text.front() == '-')
    throw ConfigError(where + ": expected an unsigned integer, got '" + text +
                      "'");
  const char* begin = text.c_str();
  char* end = nullptr;
  const unsigned long long v = std::strtoull(begin, &end, 10);
  if (end != begin + text.size())
    throw ConfigError(where + ": cannot parse integer '" + text + "'");
  return v;
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::string item;
  std::stringstream ss(s);
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

// every key the resolver understands
const char* kKnownKeys[] = {
    "geometry.m_x", "geometry.m_y", "geometry.frequency", "geometry.d_x",
    "geometry.d_y", "placement.d_t", "placement.d_r", "placement.theta_inc",
    "placement.theta_dep", "placement.g_t", "placement.g_r",
    "fading.sigma_t_sq", "fading.sigma_r_sq", "harvester.a", "harvester.b",
    "harvester.p_max", "harvester.eta_rf", "ris_power.p_static",
    "ris_power.p_dynamic", "ris_power.alpha", "ris_power.p_r",
    "noise.bandwidth", "noise.noise_figure", "noise.temperature", "link.p_t",
    "problem.kind", "problem.p_ris", "problem.gamma_0", "montecarlo.trials",
    "montecarlo.seed", "montecarlo.policies", "demo.policy", "tracking.step",
    "tracking.user_speed", "tracking.threshold", "tracking.lateral_range",
    "tracking.tx_height", "tracking.rx_height", "tracking.ground_distance",
    "tracking.tx_ground_distance", "tracking.tx_ris_distance",
    "tracking.reconfig_duration", "tracking.p_dynamic_grid", "tracking.alpha",
};

}  // namespace

ResolvedRun resolve(const RawConfig& cfg) {
  // reject anything outside the schema first, pointing at its origin
  for (const auto& [key, entry] : cfg.entries()) {
    bool known = false;
    for (const char* k : kKnownKeys)
      if (key == k) {
        known = true;
        break;
      }
    if (!known)
      throw ConfigError(entry.origin + ": unknown key '" + key + "'");
  }

  auto entry = [&](const char* key) -> const RawConfig::Entry& {
    // defaults populate every key, so lookups cannot miss
    return cfg.entries().at(key);
  };
  auto where = [&](const char* key) {
    const auto& e = entry(key);
    return e.origin + ": key '" + std::string(key) + "'";
  };
  auto num = [&](const char* key, Kind kind) {
    return parse_quantity(entry(key).value, kind, where(key));
  };
  auto integer = [&](const char* key) {
    return parse_integer(entry(key).value, where(key));
  };

  ResolvedRun run;
  try {
    const auto m_x = static_cast<int>(integer("geometry.m_x"));
    const auto m_y = static_cast<int>(integer("geometry.m_y"));
    const double frequency = num("geometry.frequency", Kind::kFreq);
    if (!(frequency > 0.0))
      throw ConfigError(where("geometry.frequency") + ": must be positive");
    const double lambda = kSpeedOfLight / frequency;
    auto pitch = [&](const char* key) {
      const auto& e = entry(key);
      if (e.value == "auto") return lambda / 2.0;
      return parse_quantity(e.value, Kind::kLength, where(key));
    };
    const double d_x = pitch("geometry.d_x");
    const double d_y = pitch("geometry.d_y");
    const RisGeometry geom = RisGeometry::make(m_x, m_y, d_x, d_y, frequency);

    Placement placement;
    placement.d_t = num("placement.d_t", Kind::kLength);
    placement.d_r = num("placement.d_r", Kind::kLength);
    placement.theta_inc = num("placement.theta_inc", Kind::kAngle);
    placement.theta_dep = num("placement.theta_dep", Kind::kAngle);
    placement.g_t = num("placement.g_t", Kind::kGain);
    placement.g_r = num("placement.g_r", Kind::kGain);

    FadingParams fading;
    fading.sigma_t_sq = num("fading.sigma_t_sq", Kind::kPlain);
    fading.sigma_r_sq = num("fading.sigma_r_sq", Kind::kPlain);

    HarvesterModel harvester;
    harvester.a = num("harvester.a", Kind::kPlain);
    harvester.b = num("harvester.b", Kind::kPower);
    harvester.p_max = num("harvester.p_max", Kind::kPower);
    harvester.eta_rf = num("harvester.eta_rf", Kind::kPlain);

    RisPowerModel ris_power;
    ris_power.p_static = num("ris_power.p_static", Kind::kPower);
    ris_power.p_dynamic = num("ris_power.p_dynamic", Kind::kPower);
    ris_power.alpha = num("ris_power.alpha", Kind::kPlain);
    ris_power.p_r = num("ris_power.p_r", Kind::kPlain);

    NoiseModel noise;
    noise.bandwidth = num("noise.bandwidth", Kind::kFreq);
    noise.noise_figure_db = num("noise.noise_figure", Kind::kDecibel);
    noise.reference_temperature = num("noise.temperature", Kind::kPlain);

    auto& exp = run.experiment;
    exp.scenario.geometry = geom;
    exp.scenario.placement = placement;
    exp.scenario.fading = fading;
    exp.scenario.harvester = harvester;
    exp.scenario.noise = noise;
    exp.scenario.p_t = num("link.p_t", Kind::kPower);

    const std::string kind = entry("problem.kind").value;
    if (kind == "A")
      exp.kind = ProblemKind::A;
    else if (kind == "B")
      exp.kind = ProblemKind::B;
    else
      throw ConfigError(where("problem.kind") + ": must be 'A' or 'B'");

    if (entry("problem.p_ris").value == "auto")
      exp.p_ris = ris_consumption(ris_power, geom.cells());
    else
      exp.p_ris = num("problem.p_ris", Kind::kPower);
    exp.gamma_0 = num("problem.gamma_0", Kind::kGain);

    exp.trials = static_cast<int>(integer("montecarlo.trials"));
    exp.master_seed =
        parse_u64(entry("montecarlo.seed").value, where("montecarlo.seed"));
    for (const auto& name : split_list(entry("montecarlo.policies").value)) {
      const auto id = policy_from_string(name);
      if (!id) {
        std::string valid;
        for (const auto& n : policy_names()) {
          if (!valid.empty()) valid += ", ";
          valid += n;
        }
        throw ConfigError(where("montecarlo.policies") + ": unknown policy '" +
                          name + "' (valid: " + valid + ")");
      }
      exp.policies.push_back(*id);
    }

    {
      const auto& name = entry("demo.policy").value;
      const auto id = policy_from_string(name);
      if (!id) {
        std::string valid;
        for (const auto& n : policy_names()) {
          if (!valid.empty()) valid += ", ";
          valid += n;
        }
        throw ConfigError(where("demo.policy") + ": unknown policy '" + name +
                          "' (valid: " + valid + ")");
      }
      run.demo_policy = *id;
    }

    auto& tr = run.tracking;
    tr.geometry = geom;
    tr.tx_height = num("tracking.tx_height", Kind::kLength);
    tr.rx_height = num("tracking.rx_height", Kind::kLength);
    tr.lateral_range = num("tracking.lateral_range", Kind::kLength);
    tr.user_speed = num("tracking.user_speed", Kind::kPlain);
    tr.ris_to_path_ground_distance =
        num("tracking.ground_distance", Kind::kLength);
    tr.tx_to_ris_ground_distance =
        num("tracking.tx_ground_distance", Kind::kLength);
    tr.tx_ris_distance = num("tracking.tx_ris_distance", Kind::kLength);
    tr.snr_drop_threshold_db = num("tracking.threshold", Kind::kDecibel);
    tr.alpha = num("tracking.alpha", Kind::kPlain);
    tr.step = num("tracking.step", Kind::kLength);
    tr.p_t = exp.scenario.p_t;
    tr.sigma_sq = noise_power(noise);
    tr.g_t = placement.g_t;
    tr.g_r = placement.g_r;
    tr.finalize();

    run.reconfig_duration = num("tracking.reconfig_duration", Kind::kTime);
    for (const auto& item :
         split_list(entry("tracking.p_dynamic_grid").value))
      run.p_dynamic_grid.push_back(parse_quantity(
          item, Kind::kPower, where("tracking.p_dynamic_grid")));
    if (run.p_dynamic_grid.empty())
      throw ConfigError(where("tracking.p_dynamic_grid") + ": empty list");

    // Validate what every subcommand shares.  The experiment-level checks
    // (trial count, policy/problem agreement) belong to `montecarlo`, which
    // runs them itself -- a demo of a B-policy must not stumble over an
    // A-flavoured default policy list it never uses.
    exp.scenario.validate();
  } catch (const std::domain_error& e) {
    throw ConfigError(std::string("invalid configuration: ") + e.what());
  }

  // Render the fully expanded configuration, SI units, auto keys replaced.
  // Feeding these values back through a config file reproduces this run.
  auto& res = run.resolved;
  const auto& exp = run.experiment;
  const auto& tr = run.tracking;
  res["geometry"]["m_x"] = std::to_string(exp.scenario.geometry.m_x);
  res["geometry"]["m_y"] = std::to_string(exp.scenario.geometry.m_y);
  res["geometry"]["frequency"] = fmt_double(exp.scenario.geometry.frequency);
  res["geometry"]["d_x"] = fmt_double(exp.scenario.geometry.d_x);
  res["geometry"]["d_y"] = fmt_double(exp.scenario.geometry.d_y);
  res["placement"]["d_t"] = fmt_double(exp.scenario.placement.d_t);
  res["placement"]["d_r"] = fmt_double(exp.scenario.placement.d_r);
  res["placement"]["theta_inc"] = fmt_double(exp.scenario.placement.theta_inc);
  res["placement"]["theta_dep"] = fmt_double(exp.scenario.placement.theta_dep);
  res["placement"]["g_t"] = fmt_double(exp.scenario.placement.g_t);
  res["placement"]["g_r"] = fmt_double(exp.scenario.placement.g_r);
  res["fading"]["sigma_t_sq"] = fmt_double(exp.scenario.fading.sigma_t_sq);
  res["fading"]["sigma_r_sq"] = fmt_double(exp.scenario.fading.sigma_r_sq);
  res["harvester"]["a"] = fmt_double(exp.scenario.harvester.a);
  res["harvester"]["b"] = fmt_double(exp.scenario.harvester.b);
  res["harvester"]["p_max"] = fmt_double(exp.scenario.harvester.p_max);
  res["harvester"]["eta_rf"] = fmt_double(exp.scenario.harvester.eta_rf);
  res["noise"]["bandwidth"] = fmt_double(exp.scenario.noise.bandwidth);
  res["noise"]["noise_figure"] = fmt_double(exp.scenario.noise.noise_figure_db);
  res["noise"]["temperature"] =
      fmt_double(exp.scenario.noise.reference_temperature);
  res["link"]["p_t"] = fmt_double(exp.scenario.p_t);
  res["problem"]["kind"] = exp.kind == ProblemKind::A ? "A" : "B";
  res["problem"]["p_ris"] = fmt_double(exp.p_ris);
  res["problem"]["gamma_0"] = fmt_double(exp.gamma_0);
  res["montecarlo"]["trials"] = std::to_string(exp.trials);
  res["montecarlo"]["seed"] = std::to_string(exp.master_seed);
  {
    std::string joined;
    for (const auto id : exp.policies) {
      if (!joined.empty()) joined += ",";
      joined += to_string(id);
    }
    res["montecarlo"]["policies"] = joined;
  }
  res["demo"]["policy"] = to_string(run.demo_policy);
  res["tracking"]["step"] = fmt_double(tr.step);
  res["tracking"]["user_speed"] = fmt_double(tr.user_speed);
  res["tracking"]["threshold"] = fmt_double(tr.snr_drop_threshold_db);
  res["tracking"]["lateral_range"] = fmt_double(tr.lateral_range);
  res["tracking"]["tx_height"] = fmt_double(tr.tx_height);
  res["tracking"]["rx_height"] = fmt_double(tr.rx_height);
  res["tracking"]["ground_distance"] =
      fmt_double(tr.ris_to_path_ground_distance);
  res["tracking"]["tx_ground_distance"] =
      fmt_double(tr.tx_to_ris_ground_distance);
  res["tracking"]["tx_ris_distance"] = fmt_double(tr.tx_ris_distance);
  res["tracking"]["reconfig_duration"] = fmt_double(run.reconfig_duration);
  {
    std::string joined;
    for (const double p : run.p_dynamic_grid) {
      if (!joined.empty()) joined += ",";
      joined += fmt_double(p);
    }
    res["tracking"]["p_dynamic_grid"] = joined;
  }
  res["tracking"]["alpha"] = fmt_double(tr.alpha);
  // ris_power keys fold into the resolved problem.p_ris; emit them anyway so
  // the expansion is lossless for a later reader
  res["ris_power"]["p_static"] =
      fmt_double(num("ris_power.p_static", Kind::kPower));
  res["ris_power"]["p_dynamic"] =
      fmt_double(num("ris_power.p_dynamic", Kind::kPower));
  res["ris_power"]["alpha"] = fmt_double(num("ris_power.alpha", Kind::kPlain));
  res["ris_power"]["p_r"] = fmt_double(num("ris_power.p_r", Kind::kPlain));
  return run;
}

}  // namespace risplit::tool
