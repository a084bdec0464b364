#pragma once

#include <array>
#include <optional>
#include <vector>

namespace risplit {

inline constexpr double kSpeedOfLight = 299792458.0;  // m/s

using Vec3 = std::array<double, 3>;

// Rectangular uniform planar array of tunable unit cells.  The surface lies
// in the x-y plane with its normal along +z and its centre at the origin.
struct RisGeometry {
  int m_x = 1;             // cells along x
  int m_y = 1;             // cells along y
  double d_x = 0.0;        // cell pitch along x [m]
  double d_y = 0.0;        // cell pitch along y [m]
  double frequency = 0.0;  // carrier [Hz]
  double wavelength = 0.0; // derived, = c / frequency [m]

  int cells() const { return m_x * m_y; }

  // Validates and fills in the wavelength.
  static RisGeometry make(int m_x, int m_y, double d_x, double d_y,
                          double frequency);
};

// Where the transmitter and receiver sit relative to the surface.
// Either give centre distances plus arrival/departure angles (plane-wave
// phases), or explicit 3-D positions (exact per-cell distances).
struct Placement {
  double d_t = 0.0;        // TX -> surface centre [m]
  double d_r = 0.0;        // surface centre -> RX [m]
  double theta_inc = 0.0;  // incidence angle from the normal [rad]
  double theta_dep = 0.0;  // departure angle from the normal [rad]
  double g_t = 1.0;        // TX antenna gain, linear
  double g_r = 1.0;        // RX antenna gain, linear
  std::optional<Vec3> tx_position;  // surface-centred coordinates [m]
  std::optional<Vec3> rx_position;

  void validate() const;  // throws std::domain_error on bad values
};

// Cell centre coordinates, row-major (index k = iy * m_x + ix), centred on
// the origin so the grid is symmetric.
std::vector<Vec3> cell_positions(const RisGeometry& geom);

// Cosine radiation pattern of one unit cell: 4*cos(theta).
// Only the front half-space is defined; theta outside [0, pi/2) throws.
double element_gain(double theta);

// Deterministic line-of-sight amplitude prefactor of one link:
//   (wavelength / 4pi) * sqrt(antenna_gain * element_gain) / distance.
// Its square is the per-cell LoS power gain of that link.
double los_amplitude(double distance, double antenna_gain,
                     double element_gain_value, double wavelength);

}  // namespace risplit
