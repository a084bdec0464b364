#include "risplit/geometry.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace risplit {

RisGeometry RisGeometry::make(int m_x, int m_y, double d_x, double d_y,
                              double frequency) {
  if (m_x < 1 || m_y < 1)
    throw std::domain_error("RisGeometry: cell counts must be >= 1");
  if (!(d_x > 0.0) || !(d_y > 0.0))
    throw std::domain_error("RisGeometry: cell pitch must be positive");
  if (!(frequency > 0.0))
    throw std::domain_error("RisGeometry: frequency must be positive");
  RisGeometry g;
  g.m_x = m_x;
  g.m_y = m_y;
  g.d_x = d_x;
  g.d_y = d_y;
  g.frequency = frequency;
  g.wavelength = kSpeedOfLight / frequency;
  return g;
}

void Placement::validate() const {
  if (!(d_t > 0.0) || !(d_r > 0.0))
    throw std::domain_error("Placement: link distances must be positive");
  if (!(theta_inc >= 0.0) || !(theta_inc < M_PI / 2.0) ||
      !(theta_dep >= 0.0) || !(theta_dep < M_PI / 2.0))
    throw std::domain_error("Placement: angles must lie in [0, pi/2)");
  if (!(g_t > 0.0) || !(g_r > 0.0))
    throw std::domain_error("Placement: antenna gains must be positive");
}

std::vector<Vec3> cell_positions(const RisGeometry& geom) {
  if (geom.m_x < 1 || geom.m_y < 1)
    throw std::domain_error("cell_positions: invalid geometry");
  std::vector<Vec3> pts;
  pts.reserve(static_cast<std::size_t>(geom.cells()));
  const double cx = (geom.m_x - 1) / 2.0;
  const double cy = (geom.m_y - 1) / 2.0;
  for (int iy = 0; iy < geom.m_y; ++iy)
    for (int ix = 0; ix < geom.m_x; ++ix)
      pts.push_back({(ix - cx) * geom.d_x, (iy - cy) * geom.d_y, 0.0});
  return pts;
}

double element_gain(double theta) {
  if (!(theta >= 0.0) || !(theta < M_PI / 2.0))
    throw std::domain_error("element_gain: theta outside [0, pi/2): " +
                            std::to_string(theta));
  return 4.0 * std::cos(theta);
}

double los_amplitude(double distance, double antenna_gain,
                     double element_gain_value, double wavelength) {
  if (!(distance > 0.0))
    throw std::domain_error("los_amplitude: distance must be positive");
  if (antenna_gain < 0.0 || element_gain_value < 0.0)
    throw std::domain_error("los_amplitude: gains must be non-negative");
  return (wavelength / (4.0 * M_PI)) *
         std::sqrt(antenna_gain * element_gain_value) / distance;
}

}  // namespace risplit
