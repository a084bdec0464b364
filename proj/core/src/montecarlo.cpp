#include "risplit/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <map>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "risplit/rng.hpp"
#include "risplit/textio.hpp"

namespace risplit {

void Scenario::validate() const {
  placement.validate();
  fading.validate();
  harvester.validate();
  noise.validate();
  if (!(p_t > 0.0)) throw std::domain_error("Scenario: p_t must be positive");
}

double Scenario::noise_power_watts() const { return noise_power(noise); }

void ExperimentConfig::validate() const {
  scenario.validate();
  if (trials < 1)
    throw std::domain_error("ExperimentConfig: trials must be >= 1");
  if (policies.empty())
    throw std::domain_error("ExperimentConfig: no policies selected");
  for (PolicyId p : policies) {
    const bool a = is_problem_a(p);
    if (a != (kind == ProblemKind::A))
      throw std::domain_error(std::string("policy ") + to_string(p) +
                              " does not match the configured problem kind");
  }
  if (p_ris < 0.0 || gamma_0 < 0.0)
    throw std::domain_error("ExperimentConfig: constraints must be >= 0");
}

ProblemSpec ExperimentConfig::problem_spec() const {
  ProblemSpec spec;
  spec.kind = kind;
  spec.p_ris = p_ris;
  spec.gamma_0 = gamma_0;
  spec.p_t = scenario.p_t;
  spec.sigma_sq = scenario.noise_power_watts();
  return spec;
}

double PolicySamples::feasibility_rate() const {
  if (feasible.empty()) return 0.0;
  std::size_t n = 0;
  for (char f : feasible) n += (f != 0);
  return static_cast<double>(n) / static_cast<double>(feasible.size());
}

ExperimentResult run_experiment(const ExperimentConfig& config, int threads) {
  config.validate();
  const ProblemSpec spec = config.problem_spec();
  const auto n_trials = static_cast<std::size_t>(config.trials);
  const bool problem_a = (config.kind == ProblemKind::A);

  ExperimentResult result;
  result.config = config;
  result.per_policy.resize(config.policies.size());
  for (std::size_t p = 0; p < config.policies.size(); ++p) {
    auto& slot = result.per_policy[p];
    slot.policy = config.policies[p];
    slot.objective.resize(n_trials);
    slot.m_h.resize(n_trials);
    slot.feasible.resize(n_trials);
  }

  // Trials are pulled off a shared counter; every trial writes only its own
  // preallocated slot, so the output does not depend on the worker count.
  std::atomic<int> next{0};
  auto worker = [&]() {
    for (;;) {
      const int t = next.fetch_add(1, std::memory_order_relaxed);
      if (t >= config.trials) return;
      const auto ch = draw_channels(config.scenario.geometry,
                                    config.scenario.placement,
                                    config.scenario.fading,
                                    derive_seed(config.master_seed,
                                                static_cast<std::uint64_t>(t)));
      for (std::size_t p = 0; p < config.policies.size(); ++p) {
        const auto outcome =
            solve(config.policies[p], ch, spec, config.scenario.harvester);
        auto& slot = result.per_policy[p];
        const auto i = static_cast<std::size_t>(t);
        slot.objective[i] = problem_a ? outcome.snr : outcome.p_dc;
        slot.m_h[i] = static_cast<int>(outcome.allocation.a_h.size());
        slot.feasible[i] = outcome.feasible ? 1 : 0;
      }
    }
  };

  const int n_workers = std::min(std::max(threads, 1), config.trials);
  if (n_workers <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(n_workers));
    for (int w = 0; w < n_workers; ++w) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  return result;
}

double mean_of(const std::vector<double>& xs) {
  if (xs.empty()) throw std::domain_error("mean_of: empty sample set");
  double s = 0.0;
  for (double x : xs) s += x;
  return s / static_cast<double>(xs.size());
}

double mean_db(const std::vector<double>& xs) {
  const double m = mean_of(xs);
  if (!(m > 0.0))
    throw std::domain_error("mean_db: mean is not positive");
  return 10.0 * std::log10(m);
}

std::optional<double> mean_db_of_samples(const std::vector<double>& xs) {
  if (xs.empty()) return std::nullopt;
  double s = 0.0;
  for (double x : xs) {
    if (!(x > 0.0)) return std::nullopt;
    s += 10.0 * std::log10(x);
  }
  return s / static_cast<double>(xs.size());
}

std::vector<double> pmf_of_mh(const std::vector<int>& m_h, int m_s) {
  if (m_s < 0) throw std::domain_error("pmf_of_mh: m_s must be >= 0");
  if (m_h.empty()) throw std::domain_error("pmf_of_mh: empty sample set");
  std::vector<double> pmf(static_cast<std::size_t>(m_s) + 1, 0.0);
  for (int k : m_h) {
    if (k < 0 || k > m_s)
      throw std::domain_error("pmf_of_mh: sample outside 0..m_s");
    pmf[static_cast<std::size_t>(k)] += 1.0;
  }
  for (double& p : pmf) p /= static_cast<double>(m_h.size());
  return pmf;
}

std::vector<std::pair<double, double>> empirical_cdf(
    const std::vector<double>& objective) {
  const auto n = objective.size();
  std::vector<double> db;
  db.reserve(n);
  std::size_t nonpositive = 0;
  for (double x : objective) {
    if (x > 0.0)
      db.push_back(10.0 * std::log10(x));
    else
      ++nonpositive;
  }
  std::sort(db.begin(), db.end());
  std::vector<std::pair<double, double>> cdf;
  std::size_t seen = nonpositive;
  for (std::size_t i = 0; i < db.size();) {
    std::size_t j = i;
    while (j < db.size() && db[j] == db[i]) ++j;
    seen += j - i;
    cdf.emplace_back(db[i],
                     static_cast<double>(seen) / static_cast<double>(n));
    i = j;
  }
  return cdf;
}

namespace {

std::string objective_db_field(double x) {
  if (x > 0.0) return fmt_double(10.0 * std::log10(x));
  return "-inf";
}

}  // namespace

void write_samples_csv(const std::string& path, const ExperimentResult& r) {
  std::string out = "trial,policy_id,objective_linear,objective_db,m_h,feasible\n";
  for (int t = 0; t < r.config.trials; ++t) {
    for (const auto& slot : r.per_policy) {
      const auto i = static_cast<std::size_t>(t);
      out += csv_row({std::to_string(t + 1), to_string(slot.policy),
                      fmt_double(slot.objective[i]),
                      objective_db_field(slot.objective[i]),
                      std::to_string(slot.m_h[i]),
                      slot.feasible[i] ? "1" : "0"});
    }
  }
  atomic_write(path, out);
}

void write_cdf_csv(const std::string& path, const ExperimentResult& r) {
  std::string out = "policy_id,x_db,F\n";
  for (const auto& slot : r.per_policy) {
    for (const auto& [x_db, f] : empirical_cdf(slot.objective))
      out += csv_row({to_string(slot.policy), fmt_double(x_db), fmt_double(f)});
  }
  atomic_write(path, out);
}

void write_summary_json(const std::string& path, const ExperimentResult& r) {
  nlohmann::ordered_json j;
  j["trials"] = r.config.trials;
  j["master_seed"] = r.config.master_seed;
  j["problem"] = r.config.kind == ProblemKind::A ? "A" : "B";
  auto& pol = j["policies"] = nlohmann::ordered_json::object();
  for (const auto& slot : r.per_policy) {
    nlohmann::ordered_json e;
    const double m = mean_of(slot.objective);
    e["mean_linear"] = m;
    if (m > 0.0)
      e["mean_db"] = 10.0 * std::log10(m);
    else
      e["mean_db"] = nullptr;
    if (const auto mds = mean_db_of_samples(slot.objective))
      e["mean_db_of_samples"] = *mds;
    else
      e["mean_db_of_samples"] = nullptr;
    e["feasibility_rate"] = slot.feasibility_rate();
    e["pmf_m_h"] = pmf_of_mh(slot.m_h, r.config.scenario.geometry.cells());
    pol[to_string(slot.policy)] = std::move(e);
  }
  atomic_write(path, j.dump(2) + "\n");
}

}  // namespace risplit
