#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "risplit/montecarlo.hpp"
#include "risplit/tracking.hpp"

namespace risplit::tool {

// Raised for anything the user can fix in the config or on the command
// line; the message carries the offending location ("file:line: ...",
// "--set ...", "preset ...").  Maps to exit code 2.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// One layered key store.  Later layers overwrite earlier ones; each entry
// remembers where its value came from so diagnostics can point at it.
class RawConfig {
 public:
  struct Entry {
    std::string value;
    std::string origin;
  };

  void set(const std::string& key, std::string value, std::string origin);
  const std::map<std::string, Entry>& entries() const { return entries_; }

 private:
  std::map<std::string, Entry> entries_;
};

// Table I values for every key; the shipped default scenario.
RawConfig default_config();

// Built-in named overrides on top of the defaults.
const std::vector<std::string>& preset_names();
void apply_preset(RawConfig& cfg, const std::string& name);

// Flat INI: [section] headers, key = value lines, # or ; comments.
// Unknown keys are rejected later, at resolve time, with file:line.
void apply_file(RawConfig& cfg, const std::string& path);

// One --set override of the form section.key=value.
void apply_override(RawConfig& cfg, const std::string& keyval);

// Everything a subcommand needs, fully typed and in SI units.
struct ResolvedRun {
  ExperimentConfig experiment;  // scenario + problem + trials + policies
  TrackingScenario tracking;    // finalized
  double reconfig_duration = 0.0;
  std::vector<double> p_dynamic_grid;
  PolicyId demo_policy{};

  // The expanded configuration (defaults filled in, units normalized,
  // auto keys replaced by their computed values), as section -> key ->
  // printable value.  Feeding these back in reproduces the run.
  std::map<std::string, std::map<std::string, std::string>> resolved;
};

// Validates every entry against the key schema and builds the run.
// Unknown keys, bad units, and out-of-range values all throw ConfigError
// with the entry's origin.
ResolvedRun resolve(const RawConfig& cfg);

}  // namespace risplit::tool
