#include "risplit/channel.hpp"

#include <cmath>
#include <stdexcept>

#include "risplit/rng.hpp"

namespace risplit {

namespace {

constexpr double kTwoPi = 2.0 * M_PI;

double dist(const Vec3& a, const Vec3& b) {
  const double dx = a[0] - b[0], dy = a[1] - b[1], dz = a[2] - b[2];
  return std::sqrt(dx * dx + dy * dy + dz * dz);
}

// Phase of the LoS term for one cell.  fmod keeps the sin/cos argument small
// regardless of how many wavelengths the path spans.
double los_phase(double path_length, double wavelength) {
  return kTwoPi * std::fmod(path_length / wavelength, 1.0);
}

// Fills one link (magnitude/phase vectors) given the per-cell LoS phases.
void fill_link(std::vector<double>& mag, std::vector<double>& phase,
               const std::vector<double>& los, double amplitude,
               double sigma_sq, std::uint64_t seed) {
  const std::size_t m = los.size();
  mag.resize(m);
  phase.resize(m);
  if (sigma_sq == 0.0) {
    // Pure LoS: every cell gets the identical amplitude double.
    for (std::size_t k = 0; k < m; ++k) {
      mag[k] = amplitude;
      phase[k] = los[k];
    }
    return;
  }
  GaussianSource gauss(seed);
  const double scale = std::sqrt(sigma_sq / 2.0);
  for (std::size_t k = 0; k < m; ++k) {
    double z0, z1;
    gauss.pair(z0, z1);
    const double re = std::cos(los[k]) + scale * z0;
    const double im = std::sin(los[k]) + scale * z1;
    mag[k] = amplitude * std::hypot(re, im);
    phase[k] = std::atan2(im, re);
  }
}

}  // namespace

void FadingParams::validate() const {
  if (sigma_t_sq < 0.0 || sigma_r_sq < 0.0)
    throw std::domain_error("FadingParams: variances must be non-negative");
}

ChannelRealization draw_channels(const RisGeometry& geom,
                                 const Placement& placement,
                                 const FadingParams& fading,
                                 std::uint64_t seed) {
  placement.validate();
  fading.validate();

  const auto cells = cell_positions(geom);
  const double lam = geom.wavelength;
  const double amp_t = los_amplitude(placement.d_t, placement.g_t,
                                     element_gain(placement.theta_inc), lam);
  const double amp_r = los_amplitude(placement.d_r, placement.g_r,
                                     element_gain(placement.theta_dep), lam);

  std::vector<double> los_t(cells.size()), los_r(cells.size());
  if (placement.tx_position) {
    for (std::size_t k = 0; k < cells.size(); ++k)
      los_t[k] = los_phase(dist(cells[k], *placement.tx_position), lam);
  } else {
    // Plane wave arriving from (sin theta, 0, cos theta): the phase is the
    // projection of the cell position onto that direction.
    const Vec3 u{std::sin(placement.theta_inc), 0.0,
                 std::cos(placement.theta_inc)};
    for (std::size_t k = 0; k < cells.size(); ++k)
      los_t[k] = los_phase(cells[k][0] * u[0] + cells[k][1] * u[1], lam);
  }
  if (placement.rx_position) {
    for (std::size_t k = 0; k < cells.size(); ++k)
      los_r[k] = los_phase(dist(cells[k], *placement.rx_position), lam);
  } else {
    const Vec3 u{std::sin(placement.theta_dep), 0.0,
                 std::cos(placement.theta_dep)};
    for (std::size_t k = 0; k < cells.size(); ++k)
      los_r[k] = los_phase(cells[k][0] * u[0] + cells[k][1] * u[1], lam);
  }

  ChannelRealization ch;
  fill_link(ch.t_mag, ch.t_phase, los_t, amp_t, fading.sigma_t_sq,
            derive_seed(seed, 0));
  fill_link(ch.r_mag, ch.r_phase, los_r, amp_r, fading.sigma_r_sq,
            derive_seed(seed, 1));
  return ch;
}

}  // namespace risplit
