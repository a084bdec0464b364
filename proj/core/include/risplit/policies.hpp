#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "risplit/channel.hpp"
#include "risplit/energy.hpp"

namespace risplit {

// The eight greedy orderings plus the exhaustive oracles and the equal-gain
// closed form.  A-policies maximize SNR subject to a harvested-power floor;
// B-policies maximize harvested DC power subject to an SNR floor.
enum class PolicyId {
  A1,  // grow reflecting set by descending |h_r| until harvest floor breaks
  A2,  // same, ordered by descending |h_t||h_r|
  A3,  // same, ordered by descending |h_t|
  A4,  // grow harvesting set by descending |h_t| until the floor is met
  B1,  // grow harvesting set by descending |h_t| until the SNR floor breaks
  B2,  // grow reflecting set by descending |h_r| until the SNR floor is met
  B3,  // same, ordered by descending |h_t||h_r|
  B4,  // same, ordered by descending |h_t|
  BruteForceA,
  BruteForceB,
  ClosedFormA,
};

const char* to_string(PolicyId id);
std::optional<PolicyId> policy_from_string(std::string_view name);
// All names accepted by policy_from_string, for diagnostics.
const std::vector<std::string>& policy_names();
bool is_problem_a(PolicyId id);

// Partition of the 0-based cell indices into harvesting and reflecting sets.
// Both vectors are sorted ascending; together they cover 0..M_s-1.
struct Allocation {
  std::vector<int> a_h;
  std::vector<int> a_r;
};

enum class ProblemKind { A, B };

struct ProblemSpec {
  ProblemKind kind = ProblemKind::A;
  double p_ris = 0.0;     // Problem-A floor on rectified DC power [W]
  double gamma_0 = 0.0;   // Problem-B floor on linear SNR
  double p_t = 0.0;       // transmit power [W]
  double sigma_sq = 0.0;  // receiver noise power [W]
};

struct PolicyOutcome {
  PolicyId policy{};
  Allocation allocation;
  double snr = 0.0;   // linear, recomputed from allocation.a_r
  double p_dc = 0.0;  // W, recomputed from allocation.a_h
  bool feasible = false;
  std::optional<int> i_stop;  // greedy stopping index, when defined
};

// Largest surface the exhaustive oracles will enumerate (2^22 - 2 subsets).
inline constexpr int kBruteForceCap = 22;

// Greedy solvers.  Policy must belong to the matching problem family.
// Infeasible Problem A (a single reflecting cell already starves the
// harvester) reports feasible=false with a_r empty and a_h = all cells;
// infeasible Problem B (even the full surface misses gamma_0) reports
// feasible=false with a_h empty and a_r = all cells.
PolicyOutcome solve_problem_a(PolicyId policy, const ChannelRealization& ch,
                              const ProblemSpec& spec,
                              const HarvesterModel& harvester);
PolicyOutcome solve_problem_b(PolicyId policy, const ChannelRealization& ch,
                              const ProblemSpec& spec,
                              const HarvesterModel& harvester);

// Exhaustive oracles over every allocation with both sets nonempty.
// Ties are broken toward the lexicographically smallest reflecting set (A)
// or harvesting set (B).  Surfaces beyond kBruteForceCap are refused.
PolicyOutcome brute_force_a(const ChannelRealization& ch,
                            const ProblemSpec& spec,
                            const HarvesterModel& harvester);
PolicyOutcome brute_force_b(const ChannelRealization& ch,
                            const ProblemSpec& spec,
                            const HarvesterModel& harvester);

// Dispatches to the greedy or brute-force solver for `policy`.
PolicyOutcome solve(PolicyId policy, const ChannelRealization& ch,
                    const ProblemSpec& spec, const HarvesterModel& harvester);

// Equal-gain closed form: with |h_t[i]|^2 = beta for every cell, returns the
// stopping index i such that reflecting the top i-1 cells satisfies the
// Problem-A floor while reflecting i does not.  Clamped to [1, m_s]; the
// degenerate p_ris = 0 gives m_s (the floor never breaks inside the loop).
int closed_form_istop(double beta, const ProblemSpec& spec,
                      const HarvesterModel& harvester, int m_s);

// One-line JSON record of an outcome; cell indices are 1-based in the
// serialized form (files and logs count cells from 1).
std::string to_json(const PolicyOutcome& outcome);

}  // namespace risplit
