#pragma once

#include <vector>

#include "risplit/channel.hpp"

namespace risplit {

// Receiver thermal-noise budget.
struct NoiseModel {
  double bandwidth = 0.0;              // [Hz]
  double noise_figure_db = 0.0;        // [dB]
  double reference_temperature = 290.0;  // [K]

  void validate() const;
};

// Per-cell reflection phases; entries for non-reflecting cells are ignored.
struct PhaseConfig {
  std::vector<double> phi;  // [rad], length = cell count
};

// k_B * T0 * bandwidth * 10^(noise_figure/10).
double noise_power(const NoiseModel& model);

// SNR with an explicit phase configuration on the reflecting set a_r
// (0-based, ascending):
//   (P_t / sigma^2) * | sum_k |h_t[k]||h_r[k]| e^{j(phi_k + ang h_t + ang h_r)} |^2
double snr_with_phases(const ChannelRealization& channels,
                       const std::vector<int>& a_r, const PhaseConfig& phases,
                       double p_t, double sigma_sq);

// The phase choice that aligns all reflected terms: phi_k = -ang h_t[k] - ang h_r[k].
PhaseConfig optimal_phases(const ChannelRealization& channels,
                           const std::vector<int>& a_r);

// SNR under the optimal phases, computed directly from magnitudes:
//   (P_t / sigma^2) * (sum_k |h_t[k]||h_r[k]|)^2
// Summed in ascending index order (the library-wide canonical order).
double max_snr(const ChannelRealization& channels, const std::vector<int>& a_r,
               double p_t, double sigma_sq);

}  // namespace risplit
