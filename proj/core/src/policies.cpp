#include "risplit/policies.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include <json.hpp>

#include "risplit/link_metrics.hpp"

namespace risplit {

namespace {

const char* kNames[] = {"A1", "A2", "A3", "A4", "B1", "B2", "B3", "B4",
                        "BruteForceA", "BruteForceB", "ClosedFormA"};

void check_inputs(const ChannelRealization& ch, const ProblemSpec& spec) {
  if (ch.cells() < 2)
    throw std::domain_error(
        "policy solvers need at least 2 cells (both sets must be able to be "
        "nonempty)");
  if (!(spec.p_t > 0.0))
    throw std::domain_error("ProblemSpec: p_t must be positive");
  if (!(spec.sigma_sq > 0.0))
    throw std::domain_error("ProblemSpec: sigma_sq must be positive");
  if (spec.p_ris < 0.0 || spec.gamma_0 < 0.0)
    throw std::domain_error("ProblemSpec: constraints must be non-negative");
}

// Indices 0..m-1 sorted by key descending; equal keys keep ascending index
// order (stable), which pins the result on every platform.
std::vector<int> order_desc(const std::vector<double>& key) {
  std::vector<int> idx(key.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(),
                   [&](int a, int b) { return key[a] > key[b]; });
  return idx;
}

// --- canonical sums -------------------------------------------------------
//
// Every reported quantity is accumulated in ascending cell-index order with
// a fixed expression shape:
//     harvest rf   = eta_rf * (p_t * sum of |h_t|^2)
//     snr          = (p_t / sigma_sq) * (sum of |h_t||h_r|)^2
// The greedy loops, the exhaustive search, and the final recomputation all
// reduce to these two folds, so values that are equal in exact arithmetic
// are bitwise equal here as well (the equal-gain optimality tests check ==).

double harvest_sum_masked(const ChannelRealization& ch,
                          const std::vector<char>& in_h) {
  double s = 0.0;
  const int m = ch.cells();
  for (int k = 0; k < m; ++k)
    if (in_h[static_cast<std::size_t>(k)]) {
      const double t = ch.t_mag[static_cast<std::size_t>(k)];
      s += t * t;
    }
  return s;
}

double reflect_sum_masked(const ChannelRealization& ch,
                          const std::vector<char>& in_r) {
  double s = 0.0;
  const int m = ch.cells();
  for (int k = 0; k < m; ++k)
    if (in_r[static_cast<std::size_t>(k)])
      s += ch.t_mag[static_cast<std::size_t>(k)] *
           ch.r_mag[static_cast<std::size_t>(k)];
  return s;
}

double snr_of_sum(double reflect_sum, const ProblemSpec& spec) {
  return (spec.p_t / spec.sigma_sq) * (reflect_sum * reflect_sum);
}

bool harvest_ok(double harvest_sum, const ProblemSpec& spec,
                const HarvesterModel& h) {
  const double rf = h.eta_rf * (spec.p_t * harvest_sum);
  return rectifier_dc_power(rf, h) >= spec.p_ris;
}

// Builds the outcome from a reflect-membership mask, recomputing SNR and DC
// power canonically from the final sets.
PolicyOutcome finish(PolicyId id, const ChannelRealization& ch,
                     const ProblemSpec& spec, const HarvesterModel& h,
                     const std::vector<char>& in_r, bool feasible,
                     std::optional<int> i_stop) {
  PolicyOutcome out;
  out.policy = id;
  const int m = ch.cells();
  for (int k = 0; k < m; ++k) {
    if (in_r[static_cast<std::size_t>(k)])
      out.allocation.a_r.push_back(k);
    else
      out.allocation.a_h.push_back(k);
  }
  out.snr = max_snr(ch, out.allocation.a_r, spec.p_t, spec.sigma_sq);
  out.p_dc = rectifier_dc_power(
      harvested_rf_power(ch, out.allocation.a_h, spec.p_t, h), h);
  out.feasible = feasible;
  out.i_stop = i_stop;
  return out;
}

// --- exact constraint thresholds ------------------------------------------
//
// The exhaustive search tests feasibility millions of times, so the
// constraint is resolved once into a threshold on the raw magnitude sum:
// the smallest double whose canonical predicate holds.  Both predicates are
// monotone in the sum (every floating-point step is monotone), so comparing
// against this boundary is *identical* to evaluating the predicate, at the
// cost of one compare.

// Smallest harvest sum H with rectifier(eta_rf * (p_t * H)) >= p_ris, or
// +inf when p_ris can never be met.
double harvest_sum_threshold(const ProblemSpec& spec, const HarvesterModel& h) {
  if (spec.p_ris <= 0.0) return 0.0;
  if (spec.p_ris >= h.p_max) return std::numeric_limits<double>::infinity();
  auto ok = [&](double x) {
    return rectifier_dc_power(h.eta_rf * (spec.p_t * x), h) >= spec.p_ris;
  };
  double x = required_rf_input(spec.p_ris, h) / (h.eta_rf * spec.p_t);
  const double inf = std::numeric_limits<double>::infinity();
  while (!ok(x)) x = std::nextafter(x, inf);
  for (;;) {
    const double lo = std::nextafter(x, -inf);
    if (lo < 0.0 || !ok(lo)) break;
    x = lo;
  }
  return x;
}

// Smallest reflect sum S with (p_t/sigma_sq) * S^2 >= gamma_0.
double reflect_sum_threshold(const ProblemSpec& spec) {
  if (spec.gamma_0 <= 0.0) return 0.0;
  auto ok = [&](double s) { return snr_of_sum(s, spec) >= spec.gamma_0; };
  double s = std::sqrt(spec.gamma_0 * spec.sigma_sq / spec.p_t);
  const double inf = std::numeric_limits<double>::infinity();
  while (!ok(s)) s = std::nextafter(s, inf);
  for (;;) {
    const double lo = std::nextafter(s, -inf);
    if (lo < 0.0 || !ok(lo)) break;
    s = lo;
  }
  return s;
}

// --- exhaustive search ----------------------------------------------------
//
// Depth-first over the per-cell reflect/harvest decision, cell 0 outermost.
// The preferred branch is taken first, so the first leaf reaching a given
// objective value is almost always the lexicographically smallest preferred
// set; the one exception is nested tying sets (only possible when extra
// cells contribute exactly nothing to the objective sum), which the explicit
// comparison in the leaf settles.  Prefix sums grow in ascending index
// order, hence leaf values equal the canonical folds bit for bit.  Upper
// bounds for pruning are inflated by 1e-9 so float rounding can never prune
// the true optimum; ties survive the inflation, so the tie-break still sees
// every contender.

// Lexicographic order of the ascending index vectors encoded by two masks.
bool lex_less_mask(std::uint32_t x, std::uint32_t y) {
  if (x == y) return false;
  const std::uint32_t d = x ^ y;
  const std::uint32_t k = d & (~d + 1u);      // lowest differing bit
  const std::uint32_t hi = ~((k << 1) - 1u);  // bits strictly above it
  // Both vectors agree below k, so the first difference sits at the slot
  // where one of them holds index k.
  if (x & k) return (y & hi) != 0u;  // y continues with a larger index
  return (x & hi) == 0u;             // x is a strict prefix of y
}

struct SubsetSearch {
  const ChannelRealization& ch;
  int m;
  bool prefer_reflect;        // branch order = tie-break preference
  double need_sum;            // feasibility threshold on the constrained sum
  bool maximize_reflect;      // objective: reflect sum (A) or harvest sum (B)
  std::vector<double> g, t2;  // per-cell products/squares
  std::vector<double> suffix_g, suffix_t2;

  bool found = false;
  double best_obj = 0.0;
  std::uint32_t best_mask = 0;  // bit k set = cell k reflects

  explicit SubsetSearch(const ChannelRealization& channels)
      : ch(channels), m(channels.cells()) {
    g.resize(static_cast<std::size_t>(m));
    t2.resize(static_cast<std::size_t>(m));
    for (int k = 0; k < m; ++k) {
      const auto i = static_cast<std::size_t>(k);
      g[i] = ch.t_mag[i] * ch.r_mag[i];
      t2[i] = ch.t_mag[i] * ch.t_mag[i];
    }
    suffix_g.assign(static_cast<std::size_t>(m) + 1, 0.0);
    suffix_t2.assign(static_cast<std::size_t>(m) + 1, 0.0);
    for (int k = m - 1; k >= 0; --k) {
      const auto i = static_cast<std::size_t>(k);
      suffix_g[i] = g[i] + suffix_g[i + 1];
      suffix_t2[i] = t2[i] + suffix_t2[i + 1];
    }
  }

  void run() { walk(0, 0, 0, 0.0, 0.0, 0); }

  // True when `mask` beats the incumbent on the documented tie-break: the
  // lexicographically smaller reflecting set (A) or harvesting set (B).
  bool tie_less(std::uint32_t mask) const {
    const std::uint32_t full = (1u << m) - 1u;
    const std::uint32_t cand = prefer_reflect ? mask : (~mask & full);
    const std::uint32_t inc = prefer_reflect ? best_mask : (~best_mask & full);
    return lex_less_mask(cand, inc);
  }

  void walk(int k, int n_r, int n_h, double gsum, double hsum,
            std::uint32_t mask) {
    if (k == m) {
      if (n_r == 0 || n_h == 0) return;  // both sets must be nonempty
      const double constrained = maximize_reflect ? hsum : gsum;
      if (constrained < need_sum) return;
      const double obj = maximize_reflect ? gsum : hsum;
      if (!found || obj > best_obj ||
          (obj == best_obj && tie_less(mask))) {
        found = true;
        best_obj = obj;
        best_mask = mask;
      }
      return;
    }
    const auto i = static_cast<std::size_t>(k);
    // Feasibility bound: even sending every remaining cell to the
    // constrained side cannot reach the threshold.
    const double cmax = maximize_reflect ? (hsum + suffix_t2[i])
                                         : (gsum + suffix_g[i]);
    if (cmax * (1.0 + 1e-9) < need_sum) return;
    // Objective bound: even sending every remaining cell to the objective
    // side cannot beat the incumbent.
    if (found) {
      const double omax = maximize_reflect ? (gsum + suffix_g[i])
                                           : (hsum + suffix_t2[i]);
      if (omax * (1.0 + 1e-9) < best_obj) return;
    }
    if (prefer_reflect) {
      walk(k + 1, n_r + 1, n_h, gsum + g[i], hsum, mask | (1u << k));
      walk(k + 1, n_r, n_h + 1, gsum, hsum + t2[i], mask);
    } else {
      walk(k + 1, n_r, n_h + 1, gsum, hsum + t2[i], mask);
      walk(k + 1, n_r + 1, n_h, gsum + g[i], hsum, mask | (1u << k));
    }
  }
};

void check_cap(const ChannelRealization& ch, const char* who) {
  if (ch.cells() > kBruteForceCap)
    throw std::length_error(std::string(who) + ": M_s=" +
                            std::to_string(ch.cells()) +
                            " exceeds the enumeration cap of " +
                            std::to_string(kBruteForceCap) + " cells");
}

std::vector<char> mask_to_in_r(std::uint32_t mask, int m) {
  std::vector<char> in_r(static_cast<std::size_t>(m), 0);
  for (int k = 0; k < m; ++k)
    if (mask & (1u << k)) in_r[static_cast<std::size_t>(k)] = 1;
  return in_r;
}

}  // namespace

const char* to_string(PolicyId id) { return kNames[static_cast<int>(id)]; }

std::optional<PolicyId> policy_from_string(std::string_view name) {
  for (int i = 0; i < static_cast<int>(std::size(kNames)); ++i)
    if (name == kNames[i]) return static_cast<PolicyId>(i);
  return std::nullopt;
}

const std::vector<std::string>& policy_names() {
  static const std::vector<std::string> names(std::begin(kNames),
                                              std::end(kNames));
  return names;
}

bool is_problem_a(PolicyId id) {
  switch (id) {
    case PolicyId::A1:
    case PolicyId::A2:
    case PolicyId::A3:
    case PolicyId::A4:
    case PolicyId::BruteForceA:
    case PolicyId::ClosedFormA:
      return true;
    default:
      return false;
  }
}

PolicyOutcome solve_problem_a(PolicyId policy, const ChannelRealization& ch,
                              const ProblemSpec& spec,
                              const HarvesterModel& harvester) {
  check_inputs(ch, spec);
  harvester.validate();
  if (spec.kind != ProblemKind::A)
    throw std::domain_error("solve_problem_a: spec.kind must be ProblemA");
  const int m = ch.cells();

  if (policy == PolicyId::A4) {
    // Grow the harvesting set by descending |h_t| until the floor is met;
    // at least one cell must keep reflecting.
    const auto order = order_desc(ch.t_mag);
    std::vector<char> in_h(static_cast<std::size_t>(m), 0);
    for (int i = 1; i <= m - 1; ++i) {
      in_h[static_cast<std::size_t>(order[static_cast<std::size_t>(i - 1)])] = 1;
      if (harvest_ok(harvest_sum_masked(ch, in_h), spec, harvester)) {
        std::vector<char> in_r(static_cast<std::size_t>(m), 1);
        for (int k = 0; k < m; ++k)
          if (in_h[static_cast<std::size_t>(k)])
            in_r[static_cast<std::size_t>(k)] = 0;
        return finish(policy, ch, spec, harvester, in_r, true, i);
      }
    }
    // Even m-1 harvesting cells cannot reach the floor.
    std::vector<char> none(static_cast<std::size_t>(m), 0);
    return finish(policy, ch, spec, harvester, none, false, std::nullopt);
  }

  std::vector<double> key;
  switch (policy) {
    case PolicyId::A1:
      key = ch.r_mag;
      break;
    case PolicyId::A2:
      key.resize(static_cast<std::size_t>(m));
      for (int k = 0; k < m; ++k) {
        const auto i = static_cast<std::size_t>(k);
        key[i] = ch.t_mag[i] * ch.r_mag[i];
      }
      break;
    case PolicyId::A3:
      key = ch.t_mag;
      break;
    default:
      throw std::domain_error(
          "solve_problem_a: policy must be one of A1..A4");
  }

  // Grow the reflecting set from the top of the ordering; stop at the first
  // size whose complement can no longer feed the harvester.
  const auto order = order_desc(key);
  std::vector<char> in_r(static_cast<std::size_t>(m), 0);
  std::vector<char> in_h(static_cast<std::size_t>(m), 1);
  int stop = 0;
  for (int i = 1; i <= m; ++i) {
    const auto c = static_cast<std::size_t>(order[static_cast<std::size_t>(i - 1)]);
    in_r[c] = 1;
    in_h[c] = 0;
    if (!harvest_ok(harvest_sum_masked(ch, in_h), spec, harvester)) {
      stop = i;
      break;
    }
  }
  if (stop == 0) {
    // The floor never broke: it must be vacuous; everything reflects.
    return finish(policy, ch, spec, harvester, in_r, true, std::nullopt);
  }
  if (stop == 1) {
    // A single reflecting cell already starves the harvester.
    std::vector<char> none(static_cast<std::size_t>(m), 0);
    return finish(policy, ch, spec, harvester, none, false, 1);
  }
  const auto last = static_cast<std::size_t>(order[static_cast<std::size_t>(stop - 1)]);
  in_r[last] = 0;  // back off the failing cell
  return finish(policy, ch, spec, harvester, in_r, true, stop);
}

PolicyOutcome solve_problem_b(PolicyId policy, const ChannelRealization& ch,
                              const ProblemSpec& spec,
                              const HarvesterModel& harvester) {
  check_inputs(ch, spec);
  harvester.validate();
  if (spec.kind != ProblemKind::B)
    throw std::domain_error("solve_problem_b: spec.kind must be ProblemB");
  const int m = ch.cells();

  if (policy == PolicyId::B1) {
    // Give the strongest |h_t| cells to the harvester while the remaining
    // reflectors still make the SNR floor.
    const auto order = order_desc(ch.t_mag);
    std::vector<char> in_r(static_cast<std::size_t>(m), 1);
    int stop = 0;
    for (int i = 1; i <= m; ++i) {
      const auto c = static_cast<std::size_t>(order[static_cast<std::size_t>(i - 1)]);
      in_r[c] = 0;
      if (snr_of_sum(reflect_sum_masked(ch, in_r), spec) < spec.gamma_0) {
        stop = i;
        break;
      }
    }
    std::optional<int> i_stop;
    if (stop == 0) {
      // Never broke: every cell can harvest (gamma_0 is vacuous).
    } else {
      i_stop = stop;
      const auto last = static_cast<std::size_t>(order[static_cast<std::size_t>(stop - 1)]);
      in_r[last] = 1;  // hand the failing cell back to the reflectors
    }
    // Backing off the very first move leaves nothing harvesting, which is
    // not a valid split even when the full surface clears the floor.
    const bool feasible =
        stop != 1 &&
        snr_of_sum(reflect_sum_masked(ch, in_r), spec) >= spec.gamma_0;
    return finish(policy, ch, spec, harvester, in_r, feasible, i_stop);
  }

  std::vector<double> key;
  switch (policy) {
    case PolicyId::B2:
      key = ch.r_mag;
      break;
    case PolicyId::B3:
      key.resize(static_cast<std::size_t>(m));
      for (int k = 0; k < m; ++k) {
        const auto i = static_cast<std::size_t>(k);
        key[i] = ch.t_mag[i] * ch.r_mag[i];
      }
      break;
    case PolicyId::B4:
      key = ch.t_mag;
      break;
    default:
      throw std::domain_error(
          "solve_problem_b: policy must be one of B1..B4");
  }

  // Grow the reflecting set from the top of the ordering until the SNR
  // floor is met; everything else harvests.  At most m-1 cells may reflect:
  // a floor that only the full surface could meet counts as infeasible,
  // because a split with nothing harvesting is outside the domain.
  const auto order = order_desc(key);
  std::vector<char> in_r(static_cast<std::size_t>(m), 0);
  for (int i = 1; i <= m - 1; ++i) {
    const auto c = static_cast<std::size_t>(order[static_cast<std::size_t>(i - 1)]);
    in_r[c] = 1;
    if (snr_of_sum(reflect_sum_masked(ch, in_r), spec) >= spec.gamma_0)
      return finish(policy, ch, spec, harvester, in_r, true, i);
  }
  // Even m-1 reflecting cells miss gamma_0.
  std::fill(in_r.begin(), in_r.end(), static_cast<char>(1));
  return finish(policy, ch, spec, harvester, in_r, false, std::nullopt);
}

PolicyOutcome brute_force_a(const ChannelRealization& ch,
                            const ProblemSpec& spec,
                            const HarvesterModel& harvester) {
  check_inputs(ch, spec);
  harvester.validate();
  if (spec.kind != ProblemKind::A)
    throw std::domain_error("brute_force_a: spec.kind must be ProblemA");
  check_cap(ch, "brute_force_a");

  SubsetSearch search(ch);
  search.prefer_reflect = true;
  search.maximize_reflect = true;
  search.need_sum = harvest_sum_threshold(spec, harvester);
  search.run();

  if (!search.found) {
    std::vector<char> none(static_cast<std::size_t>(ch.cells()), 0);
    return finish(PolicyId::BruteForceA, ch, spec, harvester, none, false,
                  std::nullopt);
  }
  return finish(PolicyId::BruteForceA, ch, spec, harvester,
                mask_to_in_r(search.best_mask, ch.cells()), true,
                std::nullopt);
}

PolicyOutcome brute_force_b(const ChannelRealization& ch,
                            const ProblemSpec& spec,
                            const HarvesterModel& harvester) {
  check_inputs(ch, spec);
  harvester.validate();
  if (spec.kind != ProblemKind::B)
    throw std::domain_error("brute_force_b: spec.kind must be ProblemB");
  check_cap(ch, "brute_force_b");

  SubsetSearch search(ch);
  search.prefer_reflect = false;
  search.maximize_reflect = false;
  search.need_sum = reflect_sum_threshold(spec);
  search.run();

  if (!search.found) {
    std::vector<char> all(static_cast<std::size_t>(ch.cells()), 1);
    return finish(PolicyId::BruteForceB, ch, spec, harvester, all, false,
                  std::nullopt);
  }
  return finish(PolicyId::BruteForceB, ch, spec, harvester,
                mask_to_in_r(search.best_mask, ch.cells()), true,
                std::nullopt);
}

PolicyOutcome solve(PolicyId policy, const ChannelRealization& ch,
                    const ProblemSpec& spec, const HarvesterModel& harvester) {
  switch (policy) {
    case PolicyId::A1:
    case PolicyId::A2:
    case PolicyId::A3:
    case PolicyId::A4:
      return solve_problem_a(policy, ch, spec, harvester);
    case PolicyId::B1:
    case PolicyId::B2:
    case PolicyId::B3:
    case PolicyId::B4:
      return solve_problem_b(policy, ch, spec, harvester);
    case PolicyId::BruteForceA:
      return brute_force_a(ch, spec, harvester);
    case PolicyId::BruteForceB:
      return brute_force_b(ch, spec, harvester);
    case PolicyId::ClosedFormA: {
      check_inputs(ch, spec);
      harvester.validate();
      if (spec.kind != ProblemKind::A)
        throw std::domain_error("ClosedFormA: spec.kind must be ProblemA");
      const int m = ch.cells();
      for (int k = 1; k < m; ++k)
        if (ch.t_mag[static_cast<std::size_t>(k)] != ch.t_mag[0])
          throw std::domain_error(
              "ClosedFormA requires an equal-gain TX link (all |h_t| equal)");
      const double beta = ch.t_mag[0] * ch.t_mag[0];
      const int istop = closed_form_istop(beta, spec, harvester, m);
      const auto order = order_desc(ch.r_mag);
      std::vector<char> in_r(static_cast<std::size_t>(m), 0);
      for (int i = 0; i < istop - 1; ++i)
        in_r[static_cast<std::size_t>(order[static_cast<std::size_t>(i)])] = 1;
      auto out = finish(PolicyId::ClosedFormA, ch, spec, harvester, in_r,
                        true, istop);
      out.feasible = out.p_dc >= spec.p_ris;
      return out;
    }
  }
  throw std::domain_error("solve: unknown policy");
}

int closed_form_istop(double beta, const ProblemSpec& spec,
                      const HarvesterModel& harvester, int m_s) {
  harvester.validate();
  if (m_s < 2) throw std::domain_error("closed_form_istop: m_s must be >= 2");
  if (!(beta > 0.0))
    throw std::domain_error("closed_form_istop: beta must be positive");
  if (spec.p_ris >= harvester.p_max)
    throw std::domain_error(
        "closed_form_istop: p_ris >= p_max is infeasible (saturation)");
  const double x = required_rf_input(spec.p_ris, harvester);
  // Minimum number of equal-gain harvesting cells, then the first reflecting
  // size that leaves fewer than that.
  const double cells_needed =
      std::ceil(x / (harvester.eta_rf * (spec.p_t * beta)));
  double istop = static_cast<double>(m_s) + 1.0 - cells_needed;
  if (istop < 1.0) istop = 1.0;
  if (istop > m_s) istop = static_cast<double>(m_s);
  return static_cast<int>(istop);
}

std::string to_json(const PolicyOutcome& outcome) {
  nlohmann::ordered_json j;
  j["policy_id"] = to_string(outcome.policy);
  auto one_based = [](const std::vector<int>& v) {
    std::vector<int> r(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) r[i] = v[i] + 1;
    return r;
  };
  j["a_h"] = one_based(outcome.allocation.a_h);
  j["a_r"] = one_based(outcome.allocation.a_r);
  if (outcome.snr > 0.0)
    j["snr_db"] = 10.0 * std::log10(outcome.snr);
  else
    j["snr_db"] = nullptr;
  j["p_dc_watts"] = outcome.p_dc;
  j["feasible"] = outcome.feasible;
  if (outcome.i_stop)
    j["i_stop"] = *outcome.i_stop;
  else
    j["i_stop"] = nullptr;
  return j.dump();
}

}  // namespace risplit
