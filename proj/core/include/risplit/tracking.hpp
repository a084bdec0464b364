#pragma once

#include <string>
#include <vector>

#include "risplit/geometry.hpp"

namespace risplit {

// Free-space user-mobility study: a receiver walks a straight path parallel
// to the surface while the transmitter stays put, and the surface phases are
// refreshed only when the stale configuration has decayed 3 dB below what
// ideal continuous re-optimization would give at the same spot.
//
// Coordinates: the surface lies in the x-y plane with its normal along +z
// and its centre at the origin.  The published distances (TX height 3 m,
// both ground distances 17 m, TX-surface distance 19 m) do not pin a full
// coordinate assignment by themselves; with the TX placed broadside (zero
// lateral offset) they force exactly one mounting height,
//     ris_center_height = tx_height + sqrt(tx_ris_distance^2
//                                          - tx_to_ris_ground_distance^2),
// which finalize() solves and stores so runs can report it.
struct TrackingScenario {
  RisGeometry geometry;
  double tx_height = 3.0;                     // m above ground
  double rx_height = 1.5;                     // m above ground
  double lateral_range = 40.0;                // path spans [-range, +range] m
  double user_speed = 1.4;                    // m/s
  double ris_to_path_ground_distance = 17.0;  // m
  double tx_to_ris_ground_distance = 17.0;    // m
  double tx_ris_distance = 19.0;              // m (centre to TX)
  double snr_drop_threshold_db = 3.0;         // reconfiguration trigger
  double alpha = 0.8;                         // dynamically switched fraction
  double step = 0.01;                         // spatial sampling [m]

  // Scale factors; they shift both traces by the same constant and never
  // move an event.
  double p_t = 1.0;
  double sigma_sq = 1.0;
  double g_t = 1.0;  // linear antenna gains
  double g_r = 1.0;

  // Derived by finalize().
  double ris_center_height = 0.0;
  Vec3 tx_position{0.0, 0.0, 0.0};

  // Solves the mounting height, validates everything; must be called before
  // the simulation entry points below.
  void finalize();

  Vec3 user_position(double x) const;
};

struct ReconfigEvent {
  int index = 0;      // 1-based, in travel order
  double position = 0.0;  // m along the path
  double time = 0.0;      // s since entering at -lateral_range
};

struct TrackingResult {
  std::vector<double> position;  // sample grid, ascending
  std::vector<double> time;
  std::vector<double> snr_db_continuous;
  std::vector<double> snr_db_stale;
  std::vector<ReconfigEvent> events;
};

// SNR along the path with phases re-optimized at every sample.
std::vector<std::pair<double, double>> continuous_snr_trace(
    const TrackingScenario& scenario);

// Full sweep: phases are frozen at -lateral_range (not an event) and
// refreshed whenever the stale SNR drops more than the threshold below the
// continuous one at the same position; the trace shows the refreshed value
// at event samples.
TrackingResult simulate_tracking(const TrackingScenario& scenario);

struct DynamicPowerPoint {
  double p_dynamic = 0.0;  // W
  double p_r = 0.0;        // duty ratio at the fastest cadence
  double p_d_avg = 0.0;    // alpha * p_r * p_dynamic, W
};

// Average dynamic power over a grid of per-reconfiguration power draws,
// using the fastest (worst-segment) event cadence.  Needs at least two
// events to define an interval.
std::vector<DynamicPowerPoint> dynamic_power_curve(
    const std::vector<ReconfigEvent>& events, const TrackingScenario& scenario,
    double reconfig_duration, const std::vector<double>& p_dynamic_grid);

// trace.csv:  position_m, time_s, snr_db_continuous, snr_db_stale
// events.csv: index, position_m, time_s
// pdavg.csv:  p_dynamic_w, reconfig_duration_s, p_r, p_d_avg_w
void write_trace_csv(const std::string& path, const TrackingResult& r);
void write_events_csv(const std::string& path,
                      const std::vector<ReconfigEvent>& events);
void write_pdavg_csv(const std::string& path,
                     const std::vector<DynamicPowerPoint>& rows,
                     double reconfig_duration);

}  // namespace risplit
