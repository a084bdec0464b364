#include "risplit/tracking.hpp"

#include <cmath>
#include <stdexcept>

#include "risplit/textio.hpp"

namespace risplit {

namespace {

constexpr double kTwoPi = 2.0 * M_PI;

double norm3(const Vec3& v) {
  return std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
}

// Per-cell LoS amplitude and distance from one endpoint.  The cell gain
// 4*cos(theta) takes the cosine straight from the geometry (z component over
// distance), skipping an acos/cos round trip.
void fill_link(const std::vector<Vec3>& cells, const Vec3& endpoint,
               double antenna_gain, double wavelength, double ground_z,
               std::vector<double>& amp, std::vector<double>& dist) {
  const std::size_t n = cells.size();
  amp.resize(n);
  dist.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    const Vec3 d{endpoint[0] - cells[k][0], endpoint[1] - cells[k][1],
                 endpoint[2] - cells[k][2]};
    const double r = norm3(d);
    amp[k] = los_amplitude(r, antenna_gain, 4.0 * (ground_z / r), wavelength);
    dist[k] = r;
  }
}

}  // namespace

void TrackingScenario::finalize() {
  if (!(tx_height > 0.0) || !(rx_height > 0.0))
    throw std::domain_error("TrackingScenario: heights must be positive");
  if (!(ris_to_path_ground_distance > 0.0) ||
      !(tx_to_ris_ground_distance > 0.0))
    throw std::domain_error(
        "TrackingScenario: ground distances must be positive");
  if (!(tx_ris_distance > tx_to_ris_ground_distance))
    throw std::domain_error(
        "TrackingScenario: tx_ris_distance must exceed the TX ground "
        "distance (the surface sits above the TX)");
  if (!(snr_drop_threshold_db > 0.0))
    throw std::domain_error("TrackingScenario: threshold must be positive");
  if (!(step > 0.0) || !(lateral_range > 0.0) || !(user_speed > 0.0))
    throw std::domain_error(
        "TrackingScenario: step, range and speed must be positive");
  if (!(p_t > 0.0) || !(sigma_sq > 0.0) || !(g_t > 0.0) || !(g_r > 0.0))
    throw std::domain_error(
        "TrackingScenario: scale factors must be positive");
  if (alpha < 0.0 || alpha > 1.0)
    throw std::domain_error("TrackingScenario: alpha must lie in [0, 1]");

  ris_center_height =
      tx_height + std::sqrt(tx_ris_distance * tx_ris_distance -
                            tx_to_ris_ground_distance * tx_to_ris_ground_distance);
  // Surface-centred frame: the TX sits broadside, below the centre.
  tx_position = {0.0, tx_height - ris_center_height,
                 tx_to_ris_ground_distance};
}

Vec3 TrackingScenario::user_position(double x) const {
  return {x, rx_height - ris_center_height, ris_to_path_ground_distance};
}

namespace {

struct Sweep {
  const TrackingScenario& sc;
  std::vector<Vec3> cells;
  std::vector<double> amp_t, dist_t;  // TX side, fixed
  std::vector<double> amp_r, dist_r;  // refilled per position
  std::vector<double> phase;          // total-path phase per cell
  int n_samples = 0;

  explicit Sweep(const TrackingScenario& scenario)
      : sc(scenario), cells(cell_positions(scenario.geometry)) {
    if (!(sc.ris_center_height > 0.0))
      throw std::logic_error("TrackingScenario::finalize() was not called");
    fill_link(cells, sc.tx_position, sc.g_t, sc.geometry.wavelength,
              sc.tx_to_ris_ground_distance, amp_t, dist_t);
    n_samples = static_cast<int>(
                    std::llround(2.0 * sc.lateral_range / sc.step)) +
                1;
  }

  double x_at(int i) const { return -sc.lateral_range + i * sc.step; }

  // Updates amp_r / dist_r / phase for position x and returns the
  // phase-aligned (continuous-tracking) SNR.
  double continuous_at(double x) {
    fill_link(cells, sc.user_position(x), sc.g_r, sc.geometry.wavelength,
              sc.ris_to_path_ground_distance, amp_r, dist_r);
    const std::size_t n = cells.size();
    phase.resize(n);
    double s = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      phase[k] = kTwoPi * std::fmod((dist_t[k] + dist_r[k]) /
                                        sc.geometry.wavelength,
                                    1.0);
      s += amp_t[k] * amp_r[k];
    }
    return (sc.p_t / sc.sigma_sq) * (s * s);
  }

  // SNR with the configuration frozen at a previous position.
  double stale_at(const std::vector<double>& frozen) const {
    double re = 0.0, im = 0.0;
    for (std::size_t k = 0; k < cells.size(); ++k) {
      const double a = amp_t[k] * amp_r[k];
      const double delta = phase[k] - frozen[k];
      re += a * std::cos(delta);
      im += a * std::sin(delta);
    }
    return (sc.p_t / sc.sigma_sq) * (re * re + im * im);
  }
};

}  // namespace

std::vector<std::pair<double, double>> continuous_snr_trace(
    const TrackingScenario& scenario) {
  Sweep sweep(scenario);
  std::vector<std::pair<double, double>> trace;
  trace.reserve(static_cast<std::size_t>(sweep.n_samples));
  for (int i = 0; i < sweep.n_samples; ++i) {
    const double x = sweep.x_at(i);
    trace.emplace_back(x, sweep.continuous_at(x));
  }
  return trace;
}

TrackingResult simulate_tracking(const TrackingScenario& scenario) {
  Sweep sweep(scenario);
  TrackingResult result;
  const auto n = static_cast<std::size_t>(sweep.n_samples);
  result.position.resize(n);
  result.time.resize(n);
  result.snr_db_continuous.resize(n);
  result.snr_db_stale.resize(n);

  std::vector<double> frozen;  // per-cell phase at the last reconfiguration
  for (int i = 0; i < sweep.n_samples; ++i) {
    const double x = sweep.x_at(i);
    const double cont = sweep.continuous_at(x);
    const double cont_db = 10.0 * std::log10(cont);
    double stale_db;
    if (i == 0) {
      // Initial configuration; by construction not an event.
      frozen = sweep.phase;
      stale_db = cont_db;
    } else {
      const double stale = sweep.stale_at(frozen);
      stale_db = 10.0 * std::log10(stale);
      if (cont_db - stale_db > scenario.snr_drop_threshold_db) {
        frozen = sweep.phase;
        stale_db = cont_db;  // just re-optimized here
        ReconfigEvent ev;
        ev.index = static_cast<int>(result.events.size()) + 1;
        ev.position = x;
        ev.time = (x + scenario.lateral_range) / scenario.user_speed;
        result.events.push_back(ev);
      }
    }
    const auto k = static_cast<std::size_t>(i);
    result.position[k] = x;
    result.time[k] = (x + scenario.lateral_range) / scenario.user_speed;
    result.snr_db_continuous[k] = cont_db;
    result.snr_db_stale[k] = stale_db;
  }
  return result;
}

std::vector<DynamicPowerPoint> dynamic_power_curve(
    const std::vector<ReconfigEvent>& events, const TrackingScenario& scenario,
    double reconfig_duration, const std::vector<double>& p_dynamic_grid) {
  if (events.size() < 2)
    throw std::domain_error(
        "dynamic_power_curve: fewer than two reconfiguration events, "
        "cadence undefined");
  if (!(reconfig_duration > 0.0))
    throw std::domain_error(
        "dynamic_power_curve: reconfig_duration must be positive");
  double min_gap = events[1].time - events[0].time;
  for (std::size_t e = 2; e < events.size(); ++e)
    min_gap = std::min(min_gap, events[e].time - events[e - 1].time);
  if (!(min_gap > 0.0))
    throw std::domain_error(
        "dynamic_power_curve: non-increasing event times");
  const double p_r = reconfig_duration / min_gap;
  std::vector<DynamicPowerPoint> rows;
  rows.reserve(p_dynamic_grid.size());
  for (double p_dyn : p_dynamic_grid) {
    if (p_dyn < 0.0)
      throw std::domain_error(
          "dynamic_power_curve: p_dynamic must be non-negative");
    DynamicPowerPoint pt;
    pt.p_dynamic = p_dyn;
    pt.p_r = p_r;
    pt.p_d_avg = scenario.alpha * (p_r * p_dyn);
    rows.push_back(pt);
  }
  return rows;
}

void write_trace_csv(const std::string& path, const TrackingResult& r) {
  std::string out = "position_m,time_s,snr_db_continuous,snr_db_stale\n";
  for (std::size_t i = 0; i < r.position.size(); ++i)
    out += csv_row({fmt_double(r.position[i]), fmt_double(r.time[i]),
                    fmt_double(r.snr_db_continuous[i]),
                    fmt_double(r.snr_db_stale[i])});
  atomic_write(path, out);
}

void write_events_csv(const std::string& path,
                      const std::vector<ReconfigEvent>& events) {
  std::string out = "index,position_m,time_s\n";
  for (const auto& ev : events)
    out += csv_row({std::to_string(ev.index), fmt_double(ev.position),
                    fmt_double(ev.time)});
  atomic_write(path, out);
}

void write_pdavg_csv(const std::string& path,
                     const std::vector<DynamicPowerPoint>& rows,
                     double reconfig_duration) {
  std::string out = "p_dynamic_w,reconfig_duration_s,p_r,p_d_avg_w\n";
  for (const auto& pt : rows)
    out += csv_row({fmt_double(pt.p_dynamic), fmt_double(reconfig_duration),
                    fmt_double(pt.p_r), fmt_double(pt.p_d_avg)});
  atomic_write(path, out);
}

}  // namespace risplit
