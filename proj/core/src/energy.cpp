#include "risplit/energy.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace risplit {

namespace {

void check_index_range(const ChannelRealization& ch, const std::vector<int>& set,
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

void HarvesterModel::validate() const {
  if (!(a > 0.0) || !(b > 0.0) || !(p_max > 0.0))
    throw std::domain_error("HarvesterModel: a, b, p_max must be positive");
  if (!(eta_rf > 0.0) || eta_rf > 1.0)
    throw std::domain_error("HarvesterModel: eta_rf must be in (0, 1]");
}

void RisPowerModel::validate() const {
  if (p_static < 0.0 || p_dynamic < 0.0 || alpha < 0.0 || p_r < 0.0)
    throw std::domain_error("RisPowerModel: fields must be non-negative");
  if (alpha > 1.0 || p_r > 1.0)
    throw std::domain_error("RisPowerModel: alpha and p_r must be <= 1");
}

double harvested_rf_power(const ChannelRealization& channels,
                          const std::vector<int>& a_h, double p_t,
                          const HarvesterModel& model) {
  check_index_range(channels, a_h, "harvested_rf_power");
  double sum = 0.0;
  for (int k : a_h) {
    const double t = channels.t_mag[static_cast<std::size_t>(k)];
    sum += t * t;
  }
  return model.eta_rf * (p_t * sum);
}

double rectifier_dc_power(double p_harv, const HarvesterModel& model) {
  if (!(p_harv >= 0.0))
    throw std::domain_error("rectifier_dc_power: input must be >= 0");
  // Algebraically p_max * (sigmoid(a(p-b)) - omega) / (1 - omega) with
  // omega = sigmoid(-ab), but rearranged so every cancellation happens
  // inside expm1/exp where it costs nothing: zero input gives an exact
  // zero, and tiny inputs keep full relative precision (the naive
  // subtraction of two sigmoids is only good to ~1e-8 there, which shows
  // up directly in inverse round-trip error).
  const double gain = -std::expm1(-model.a * p_harv);
  return model.p_max * gain /
         (1.0 + std::exp(model.a * (model.b - p_harv)));
}

double required_rf_input(double p_dc_target, const HarvesterModel& model) {
  if (!(p_dc_target >= 0.0))
    throw std::domain_error("required_rf_input: target must be >= 0");
  if (p_dc_target >= model.p_max)
    throw std::domain_error(
        "required_rf_input: target >= p_max is infeasible (saturation)");
  if (p_dc_target == 0.0) return 0.0;
  // With u = target/p_max the exact inverse is
  //   p = (ln(1 + u e^{ab}) - ln(1 - u)) / a.
  // log1p keeps the first term accurate for small targets; for the second,
  // once u > 1/2 the difference p_max - target is exact (Sterbenz) and
  // dodges the 1 - u cancellation near saturation.
  const double u = p_dc_target / model.p_max;
  const double growth = std::log1p(u * std::exp(model.a * model.b));
  const double shrink =
      u <= 0.5 ? std::log1p(-u)
               : std::log((model.p_max - p_dc_target) / model.p_max);
  return (growth - shrink) / model.a;
}

double ris_consumption(const RisPowerModel& model, int m_s) {
  if (m_s < 1) throw std::domain_error("ris_consumption: m_s must be >= 1");
  model.validate();
  return static_cast<double>(m_s) * (model.p_static + model.p_d_avg());
}

}  // namespace risplit
