#pragma once

#include <vector>

#include "risplit/channel.hpp"

namespace risplit {

// Nonlinear RF-to-DC rectifier plus the RF combining efficiency in front
// of it.  The conversion curve is a rescaled logistic: zero at zero input,
// saturating at p_max.
struct HarvesterModel {
  double a = 0.0;       // circuit steepness [1/W]
  double b = 0.0;       // turn-on midpoint [W]
  double p_max = 0.0;   // saturation DC power [W]
  double eta_rf = 1.0;  // combining efficiency (0, 1]

  void validate() const;
};

// What the surface itself consumes; defines the harvesting floor P_RIS.
struct RisPowerModel {
  double p_static = 0.0;   // per-cell control + leakage [W]
  double p_dynamic = 0.0;  // per-cell draw while reconfiguring [W]
  double alpha = 1.0;      // probability a cell changes state per reconfig
  double p_r = 0.0;        // fraction of time spent reconfiguring

  // Equivalent continuous dynamic consumption per cell.
  double p_d_avg() const { return alpha * p_r * p_dynamic; }

  void validate() const;
};

// RF power collected from the harvesting cells before rectification:
//   eta_rf * P_t * sum_{k in a_h} |h_t[k]|^2.
// a_h holds 0-based cell indices, sorted ascending; the sum is accumulated
// in that order (the library computes every reported sum in ascending index
// order so independently derived values compare bitwise equal).
double harvested_rf_power(const ChannelRealization& channels,
                          const std::vector<int>& a_h, double p_t,
                          const HarvesterModel& model);

// DC output for a given RF input.  Increasing from an exact 0 toward p_max;
// mathematically it never reaches saturation, though deep enough into the
// flat region round-off lands on p_max itself.
double rectifier_dc_power(double p_harv, const HarvesterModel& model);

// Closed-form inverse of rectifier_dc_power.  Targets at or above p_max are
// unreachable (saturation) and throw.
double required_rf_input(double p_dc_target, const HarvesterModel& model);

// Total surface consumption: m_s * (p_static + p_d_avg).
double ris_consumption(const RisPowerModel& model, int m_s);

}  // namespace risplit
