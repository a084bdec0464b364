#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "risplit/channel.hpp"
#include "risplit/energy.hpp"
#include "risplit/geometry.hpp"
#include "risplit/link_metrics.hpp"
#include "risplit/policies.hpp"

namespace risplit {

// Everything physical about one experiment: surface, endpoints, fading,
// harvester, receiver noise, transmit power.
struct Scenario {
  RisGeometry geometry;
  Placement placement;
  FadingParams fading;
  HarvesterModel harvester;
  NoiseModel noise;
  double p_t = 1.0;

  void validate() const;
  double noise_power_watts() const;
};

struct ExperimentConfig {
  Scenario scenario;
  ProblemKind kind = ProblemKind::A;
  double p_ris = 0.0;    // harvest floor, W (problem A)
  double gamma_0 = 0.0;  // SNR floor, linear (problem B)
  std::vector<PolicyId> policies;
  int trials = 0;
  std::uint64_t master_seed = 0;

  void validate() const;
  ProblemSpec problem_spec() const;
};

// Per-policy sample arrays, one entry per trial.  objective holds linear SNR
// for problem A and DC watts for problem B; infeasible trials keep the value
// of the fallback allocation (possibly 0).
struct PolicySamples {
  PolicyId policy{};
  std::vector<double> objective;
  std::vector<int> m_h;
  std::vector<char> feasible;

  double feasibility_rate() const;
};

struct ExperimentResult {
  ExperimentConfig config;
  std::vector<PolicySamples> per_policy;  // same order as config.policies
};

// Runs config.trials independent channel draws and solves every configured
// policy on each.  Trial t uses the channel seed derive_seed(master_seed, t)
// and lands in slot t of every sample array, so results are byte-identical
// for any thread count (threads <= 1 runs inline).
ExperimentResult run_experiment(const ExperimentConfig& config, int threads);

// --- summary statistics ----------------------------------------------------

double mean_of(const std::vector<double>& xs);  // throws on empty input

// 10*log10(mean of xs); throws if the mean is not positive.
double mean_db(const std::vector<double>& xs);

// Mean of 10*log10(x) over the samples; nullopt if any sample is <= 0.
std::optional<double> mean_db_of_samples(const std::vector<double>& xs);

// P(m_h = k) for k = 0..m_s, counts normalized by the number of trials.
std::vector<double> pmf_of_mh(const std::vector<int>& m_h, int m_s);

// Sorted (x_db, F) pairs of the empirical CDF of 10*log10(objective), one
// row per distinct finite dB value; F counts all samples <= x including the
// non-positive ones that have no finite dB image.
std::vector<std::pair<double, double>> empirical_cdf(
    const std::vector<double>& objective);

// --- persistence -----------------------------------------------------------
//
// samples.csv: trial, policy_id, objective_linear, objective_db, m_h, feasible
// cdf.csv:     policy_id, x_db, F
// summary.json: per-policy mean_linear / mean_db / mean_db_of_samples,
//               feasibility_rate, pmf_m_h
//
// Rows are trial-major in the configured policy order; trial numbers are
// 1-based like every other external index.

void write_samples_csv(const std::string& path, const ExperimentResult& r);
void write_cdf_csv(const std::string& path, const ExperimentResult& r);
void write_summary_json(const std::string& path, const ExperimentResult& r);

}  // namespace risplit
