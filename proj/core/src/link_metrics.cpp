#include "risplit/link_metrics.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace risplit {

namespace {

constexpr double kBoltzmann = 1.380649e-23;  // J/K, exact SI value

void check_set(const ChannelRealization& ch, const std::vector<int>& set,
               const char* who) {
  const int m = ch.cells();
  int prev = -1;
  for (int k : set) {
    if (k < 0 || k >= m)
      throw std::domain_error(std::string(who) + ": cell index out of range");
    if (k <= prev)
      throw std::domain_error(std::string(who) +
                              ": indices must be ascending and unique");
    prev = k;
  }
}

}  // namespace

void NoiseModel::validate() const {
  if (!(bandwidth > 0.0))
    throw std::domain_error("NoiseModel: bandwidth must be positive");
  if (!(reference_temperature > 0.0))
    throw std::domain_error("NoiseModel: temperature must be positive");
}

double noise_power(const NoiseModel& model) {
  model.validate();
  return kBoltzmann * model.reference_temperature * model.bandwidth *
         std::pow(10.0, model.noise_figure_db / 10.0);
}

double snr_with_phases(const ChannelRealization& channels,
                       const std::vector<int>& a_r, const PhaseConfig& phases,
                       double p_t, double sigma_sq) {
  check_set(channels, a_r, "snr_with_phases");
  if (!(sigma_sq > 0.0))
    throw std::domain_error("snr_with_phases: sigma_sq must be positive");
  if (phases.phi.size() < static_cast<std::size_t>(channels.cells()))
    throw std::domain_error("snr_with_phases: phase vector too short");
  double re = 0.0, im = 0.0;
  for (int k : a_r) {
    const auto i = static_cast<std::size_t>(k);
    const double g = channels.t_mag[i] * channels.r_mag[i];
    const double ang = phases.phi[i] + channels.t_phase[i] + channels.r_phase[i];
    re += g * std::cos(ang);
    im += g * std::sin(ang);
  }
  return (p_t / sigma_sq) * (re * re + im * im);
}

PhaseConfig optimal_phases(const ChannelRealization& channels,
                           const std::vector<int>& a_r) {
  check_set(channels, a_r, "optimal_phases");
  PhaseConfig cfg;
  cfg.phi.assign(static_cast<std::size_t>(channels.cells()), 0.0);
  for (int k : a_r) {
    const auto i = static_cast<std::size_t>(k);
    cfg.phi[i] = -channels.t_phase[i] - channels.r_phase[i];
  }
  return cfg;
}

double max_snr(const ChannelRealization& channels, const std::vector<int>& a_r,
               double p_t, double sigma_sq) {
  check_set(channels, a_r, "max_snr");
  if (!(sigma_sq > 0.0))
    throw std::domain_error("max_snr: sigma_sq must be positive");
  double s = 0.0;
  for (int k : a_r) {
    const auto i = static_cast<std::size_t>(k);
    s += channels.t_mag[i] * channels.r_mag[i];
  }
  return (p_t / sigma_sq) * (s * s);
}

}  // namespace risplit
