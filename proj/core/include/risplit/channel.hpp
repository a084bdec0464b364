#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "risplit/geometry.hpp"

namespace risplit {

// Diffuse (non-LoS) power on each link.  The Rician K-factor is 1/sigma^2;
// zero variance means pure LoS.
struct FadingParams {
  double sigma_t_sq = 0.0;  // TX -> cell link
  double sigma_r_sq = 0.0;  // cell -> RX link

  void validate() const;  // throws on negative variances
};

// Channel gains of one fading block, h[k] = A * (e^{j 2 pi d_k / lambda} + m_k),
// stored in polar form.
//
// Polar storage is deliberate: with zero diffuse variance every magnitude on
// that link is the *same double* (no cos/sin round trip), and the equal-gain
// optimality results are exact in floating point rather than approximate.
// Selection and SNR math consume the magnitude vectors directly.
struct ChannelRealization {
  std::vector<double> t_mag, t_phase;  // TX -> cell
  std::vector<double> r_mag, r_phase;  // cell -> RX

  int cells() const { return static_cast<int>(t_mag.size()); }

  std::complex<double> h_t(int k) const {
    return std::polar(t_mag[static_cast<std::size_t>(k)],
                      t_phase[static_cast<std::size_t>(k)]);
  }
  std::complex<double> h_r(int k) const {
    return std::polar(r_mag[static_cast<std::size_t>(k)],
                      r_phase[static_cast<std::size_t>(k)]);
  }
};

// Draws one realization.  The LoS amplitude uses the centre distance for the
// whole surface (far-field convention) while per-cell phases come from exact
// cell-to-endpoint distances when positions are given, otherwise from a
// plane-wave projection of the cell grid onto the arrival/departure
// directions.  Deterministic: equal inputs and seed give bitwise-equal
// output at any call site or thread.
ChannelRealization draw_channels(const RisGeometry& geom,
                                 const Placement& placement,
                                 const FadingParams& fading,
                                 std::uint64_t seed);

}  // namespace risplit
