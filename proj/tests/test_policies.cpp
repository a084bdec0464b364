#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "risplit/channel.hpp"
#include "risplit/energy.hpp"
#include "risplit/link_metrics.hpp"
#include "risplit/policies.hpp"

using namespace risplit;

namespace {

const double kF = 28e9;
const double kLambda = kSpeedOfLight / kF;
const double kSigmaSq = 4.0038821e-11;

HarvesterModel table_harvester() {
  return HarvesterModel{120.0, 1e-3, 20e-3, 0.5};
}

Placement table_placement() {
  Placement p;
  p.d_t = 17.0;
  p.d_r = 20.0;
  p.theta_inc = M_PI / 4;
  p.theta_dep = M_PI / 3;
  p.g_t = 1e4;
  p.g_r = 158.48931924611142;
  return p;
}

ChannelRealization draw(int m, double sigma_t_sq, double sigma_r_sq,
                        std::uint64_t seed) {
  const auto g = RisGeometry::make(m, 1, kLambda / 2, kLambda / 2, kF);
  return draw_channels(g, table_placement(), {sigma_t_sq, sigma_r_sq}, seed);
}

ChannelRealization crafted(std::vector<double> t, std::vector<double> r) {
  ChannelRealization ch;
  ch.t_mag = std::move(t);
  ch.r_mag = std::move(r);
  ch.t_phase.assign(ch.t_mag.size(), 0.0);
  ch.r_phase.assign(ch.r_mag.size(), 0.0);
  return ch;
}

ProblemSpec spec_a(double p_ris, double p_t = 1.0) {
  ProblemSpec s;
  s.kind = ProblemKind::A;
  s.p_ris = p_ris;
  s.p_t = p_t;
  s.sigma_sq = kSigmaSq;
  return s;
}

ProblemSpec spec_b(double gamma_0, double p_t = 1.0) {
  ProblemSpec s;
  s.kind = ProblemKind::B;
  s.gamma_0 = gamma_0;
  s.p_t = p_t;
  s.sigma_sq = kSigmaSq;
  return s;
}

double pdc_of(const ChannelRealization& ch, const std::vector<int>& a_h,
              const ProblemSpec& s, const HarvesterModel& h) {
  return rectifier_dc_power(harvested_rf_power(ch, a_h, s.p_t, h), h);
}

// Exhaustive reference: direct mask sweep with the library's canonical
// metric functions and an explicit lexicographic tie-break.  Cross-checks
// the search's pruning, branch order, and threshold handling.
PolicyOutcome naive_a(const ChannelRealization& ch, const ProblemSpec& s,
                      const HarvesterModel& h) {
  const int m = ch.cells();
  PolicyOutcome best;
  best.policy = PolicyId::BruteForceA;
  bool found = false;
  for (unsigned mask = 1; mask + 1 < (1u << m); ++mask) {
    std::vector<int> a_r, a_h;
    for (int k = 0; k < m; ++k)
      ((mask >> k) & 1u ? a_r : a_h).push_back(k);
    if (pdc_of(ch, a_h, s, h) < s.p_ris) continue;
    const double snr = max_snr(ch, a_r, s.p_t, s.sigma_sq);
    const bool better =
        !found || snr > best.snr ||
        (snr == best.snr &&
         std::lexicographical_compare(a_r.begin(), a_r.end(),
                                      best.allocation.a_r.begin(),
                                      best.allocation.a_r.end()));
    if (better) {
      found = true;
      best.allocation.a_r = a_r;
      best.allocation.a_h = a_h;
      best.snr = snr;
    }
  }
  if (!found) {
    best.allocation.a_r.clear();
    best.allocation.a_h.resize(static_cast<std::size_t>(m));
    std::iota(best.allocation.a_h.begin(), best.allocation.a_h.end(), 0);
  }
  best.feasible = found;
  best.snr = max_snr(ch, best.allocation.a_r, s.p_t, s.sigma_sq);
  best.p_dc = pdc_of(ch, best.allocation.a_h, s, h);
  return best;
}

PolicyOutcome naive_b(const ChannelRealization& ch, const ProblemSpec& s,
                      const HarvesterModel& h) {
  const int m = ch.cells();
  PolicyOutcome best;
  best.policy = PolicyId::BruteForceB;
  bool found = false;
  for (unsigned mask = 1; mask + 1 < (1u << m); ++mask) {
    std::vector<int> a_r, a_h;
    for (int k = 0; k < m; ++k)
      ((mask >> k) & 1u ? a_r : a_h).push_back(k);
    if (max_snr(ch, a_r, s.p_t, s.sigma_sq) < s.gamma_0) continue;
    const double p_dc = pdc_of(ch, a_h, s, h);
    const bool better =
        !found || p_dc > best.p_dc ||
        (p_dc == best.p_dc &&
         std::lexicographical_compare(a_h.begin(), a_h.end(),
                                      best.allocation.a_h.begin(),
                                      best.allocation.a_h.end()));
    if (better) {
      found = true;
      best.allocation.a_r = a_r;
      best.allocation.a_h = a_h;
      best.p_dc = p_dc;
    }
  }
  if (!found) {
    best.allocation.a_h.clear();
    best.allocation.a_r.resize(static_cast<std::size_t>(m));
    std::iota(best.allocation.a_r.begin(), best.allocation.a_r.end(), 0);
  }
  best.feasible = found;
  best.snr = max_snr(ch, best.allocation.a_r, s.p_t, s.sigma_sq);
  best.p_dc = pdc_of(ch, best.allocation.a_h, s, h);
  return best;
}

void check_partition(const PolicyOutcome& out, int m) {
  std::vector<int> all = out.allocation.a_h;
  all.insert(all.end(), out.allocation.a_r.begin(), out.allocation.a_r.end());
  std::sort(all.begin(), all.end());
  std::vector<int> want(static_cast<std::size_t>(m));
  std::iota(want.begin(), want.end(), 0);
  CHECK(all == want);
}

}  // namespace

TEST_CASE("A1 reflects the strongest RX cells until the floor breaks") {
  // equal TX gains: DC feasibility depends only on how many cells harvest
  const auto ch = crafted({5e-2, 5e-2, 5e-2, 5e-2},
                          {1e-3, 4e-3, 2e-3, 3e-3});
  auto h = table_harvester();
  h.eta_rf = 1.0;
  const auto s2 = spec_a(0.0);  // placeholder to reach the rectifier scale
  const double pdc2 = pdc_of(ch, {0, 1}, s2, h);   // 2 cells harvesting
  const double pdc3 = pdc_of(ch, {0, 1, 2}, s2, h);
  REQUIRE(pdc3 > pdc2);
  const auto s = spec_a(0.5 * (pdc2 + pdc3));  // 3 cells suffice, 2 do not
  const auto out = solve_problem_a(PolicyId::A1, ch, s, h);
  CHECK(out.feasible);
  CHECK(out.allocation.a_r == std::vector<int>{1});  // best |h_r|
  CHECK(out.allocation.a_h == std::vector<int>{0, 2, 3});
  REQUIRE(out.i_stop.has_value());
  CHECK(*out.i_stop == 2);
  check_partition(out, 4);
}

TEST_CASE("A4 grows the harvesting set by TX gain until the floor is met") {
  const auto ch = crafted({5e-2, 5e-2, 5e-2, 5e-2},
                          {1e-3, 4e-3, 2e-3, 3e-3});
  auto h = table_harvester();
  h.eta_rf = 1.0;
  const auto probe = spec_a(0.0);
  const double pdc2 = pdc_of(ch, {0, 1}, probe, h);
  const double pdc3 = pdc_of(ch, {0, 1, 2}, probe, h);
  const auto s = spec_a(0.5 * (pdc2 + pdc3));
  const auto out = solve_problem_a(PolicyId::A4, ch, s, h);
  CHECK(out.feasible);
  // equal TX gains tie; stable order keeps ascending indices
  CHECK(out.allocation.a_h == std::vector<int>{0, 1, 2});
  CHECK(out.allocation.a_r == std::vector<int>{3});
  REQUIRE(out.i_stop.has_value());
  CHECK(*out.i_stop == 3);
}

TEST_CASE("A2 and A3 use their own orderings") {
  // t: order 0,2,3,1  g = t*r: order 1(12e-6),3(9),2(8),0(5)
  const auto ch = crafted({5e-3, 2e-3, 4e-3, 3e-3},
                          {1e-3, 6e-3, 2e-3, 3e-3});
  const auto h = table_harvester();
  const auto s = spec_a(0.0);  // vacuous floor: everything reflects
  for (const auto id : {PolicyId::A1, PolicyId::A2, PolicyId::A3}) {
    const auto out = solve_problem_a(id, ch, s, h);
    CHECK(out.feasible);
    CHECK(out.allocation.a_r == std::vector<int>{0, 1, 2, 3});
    CHECK(out.allocation.a_h.empty());
    CHECK_FALSE(out.i_stop.has_value());
  }
}

TEST_CASE("problem A infeasibility conventions") {
  const auto ch = crafted({1e-6, 1e-6, 1e-6}, {1e-3, 2e-3, 3e-3});
  const auto h = table_harvester();
  // even all three cells harvesting cannot reach 10 mW
  const auto s = spec_a(10e-3);
  for (const auto id : {PolicyId::A1, PolicyId::A2, PolicyId::A3}) {
    const auto out = solve_problem_a(id, ch, s, h);
    CHECK_FALSE(out.feasible);
    CHECK(out.allocation.a_r.empty());
    CHECK(out.allocation.a_h == std::vector<int>{0, 1, 2});
    REQUIRE(out.i_stop.has_value());
    CHECK(*out.i_stop == 1);
    CHECK(out.snr == 0.0);
  }
  const auto out4 = solve_problem_a(PolicyId::A4, ch, s, h);
  CHECK_FALSE(out4.feasible);
  CHECK(out4.allocation.a_r.empty());
  CHECK_FALSE(out4.i_stop.has_value());
}

TEST_CASE("B2 reflects the strongest RX cells until the SNR floor is met") {
  const auto ch = crafted({5e-3, 2e-3, 4e-3, 3e-3},
                          {1e-3, 6e-3, 2e-3, 3e-3});
  const auto h = table_harvester();
  const double snr1 = max_snr(ch, {1}, 1.0, kSigmaSq);
  const double snr2 = max_snr(ch, {1, 3}, 1.0, kSigmaSq);
  REQUIRE(snr2 > snr1);
  const auto s = spec_b(0.5 * (snr1 + snr2));
  const auto out = solve_problem_b(PolicyId::B2, ch, s, h);
  CHECK(out.feasible);
  CHECK(out.allocation.a_r == std::vector<int>{1, 3});
  CHECK(out.allocation.a_h == std::vector<int>{0, 2});
  REQUIRE(out.i_stop.has_value());
  CHECK(*out.i_stop == 2);
  CHECK(out.snr == snr2);  // canonical recomputation, same fold
}

TEST_CASE("vacuous SNR floor leaves one reflecting cell") {
  const auto ch = crafted({5e-3, 2e-3, 4e-3, 3e-3},
                          {1e-3, 6e-3, 2e-3, 3e-3});
  const auto out =
      solve_problem_b(PolicyId::B2, ch, spec_b(0.0), table_harvester());
  CHECK(out.feasible);
  CHECK(out.allocation.a_r == std::vector<int>{1});  // best |h_r| only
  REQUIRE(out.i_stop.has_value());
  CHECK(*out.i_stop == 1);
}

TEST_CASE("B1 hands TX-strong cells to the harvester while SNR holds") {
  const auto ch = crafted({5e-3, 2e-3, 4e-3, 3e-3},
                          {1e-3, 6e-3, 2e-3, 3e-3});
  const auto h = table_harvester();
  // t-order: 0, 2, 3, 1; after harvesting {0,2} the reflectors are {1,3}
  const double snr_after1 = max_snr(ch, {1, 2, 3}, 1.0, kSigmaSq);
  const double snr_after2 = max_snr(ch, {1, 3}, 1.0, kSigmaSq);
  REQUIRE(snr_after1 > snr_after2);
  const auto s = spec_b(0.5 * (snr_after1 + snr_after2));
  const auto out = solve_problem_b(PolicyId::B1, ch, s, h);
  CHECK(out.feasible);
  CHECK(out.allocation.a_h == std::vector<int>{0});
  CHECK(out.allocation.a_r == std::vector<int>{1, 2, 3});
  REQUIRE(out.i_stop.has_value());
  CHECK(*out.i_stop == 2);
}

TEST_CASE("B1 with a vacuous floor sends every cell to harvest") {
  const auto ch = crafted({5e-3, 2e-3, 4e-3, 3e-3},
                          {1e-3, 6e-3, 2e-3, 3e-3});
  const auto out =
      solve_problem_b(PolicyId::B1, ch, spec_b(0.0), table_harvester());
  CHECK(out.feasible);
  CHECK(out.allocation.a_h == std::vector<int>{0, 1, 2, 3});
  CHECK(out.allocation.a_r.empty());
  CHECK_FALSE(out.i_stop.has_value());
}

TEST_CASE("problem B infeasibility conventions") {
  const auto ch = crafted({5e-3, 2e-3, 4e-3, 3e-3},
                          {1e-3, 6e-3, 2e-3, 3e-3});
  const double full = max_snr(ch, {0, 1, 2, 3}, 1.0, kSigmaSq);
  const auto s = spec_b(full * 2.0);  // out of reach for the whole surface
  for (const auto id :
       {PolicyId::B1, PolicyId::B2, PolicyId::B3, PolicyId::B4}) {
    const auto out = solve_problem_b(id, ch, s, table_harvester());
    CHECK_FALSE(out.feasible);
    CHECK(out.allocation.a_h.empty());
    CHECK(out.allocation.a_r == std::vector<int>{0, 1, 2, 3});
  }
}

TEST_CASE("exhaustive search equals the direct mask sweep") {
  const auto h = table_harvester();
  for (const int m : {8, 10}) {
    for (std::uint64_t seed = 0; seed < 15; ++seed) {
      const auto ch = draw(m, 0.1, 0.3, seed);
      // floors that leave a mix of feasible and infeasible realizations
      const auto sa = spec_a(1e-5 * m);
      const auto expected_a = naive_a(ch, sa, h);
      const auto got_a = brute_force_a(ch, sa, h);
      CHECK(got_a.allocation.a_r == expected_a.allocation.a_r);
      CHECK(got_a.allocation.a_h == expected_a.allocation.a_h);
      CHECK(got_a.snr == expected_a.snr);
      CHECK(got_a.p_dc == expected_a.p_dc);
      CHECK(got_a.feasible == expected_a.feasible);

      const auto sb = spec_b(100.0);  // 20 dB
      const auto expected_b = naive_b(ch, sb, h);
      const auto got_b = brute_force_b(ch, sb, h);
      CHECK(got_b.allocation.a_r == expected_b.allocation.a_r);
      CHECK(got_b.allocation.a_h == expected_b.allocation.a_h);
      CHECK(got_b.snr == expected_b.snr);
      CHECK(got_b.p_dc == expected_b.p_dc);
      CHECK(got_b.feasible == expected_b.feasible);
    }
  }
}

TEST_CASE("equal TX gains make the cheap policies exactly optimal") {
  const auto h = table_harvester();
  for (const int m : {6, 8, 10}) {
    const auto sa = spec_a(1e-5 * m);
    const auto sb = spec_b(100.0);
    for (std::uint64_t seed = 100; seed < 150; ++seed) {
      const auto ch = draw(m, 0.0, 0.3, seed);  // pure-LoS TX link
      const auto bf_a = brute_force_a(ch, sa, h);
      const auto a1 = solve_problem_a(PolicyId::A1, ch, sa, h);
      const auto a2 = solve_problem_a(PolicyId::A2, ch, sa, h);
      CHECK(a1.snr == bf_a.snr);  // identical doubles, not approx
      CHECK(a2.snr == bf_a.snr);
      CHECK(a1.feasible == bf_a.feasible);

      // the closed-form stopping index agrees with the greedy loop
      if (a1.i_stop) {
        const double beta = ch.t_mag[0] * ch.t_mag[0];
        CHECK(*a1.i_stop == closed_form_istop(beta, sa, h, m));
      }

      const auto bf_b = brute_force_b(ch, sb, h);
      const auto b2 = solve_problem_b(PolicyId::B2, ch, sb, h);
      const auto b3 = solve_problem_b(PolicyId::B3, ch, sb, h);
      CHECK(b2.p_dc == bf_b.p_dc);
      CHECK(b3.p_dc == bf_b.p_dc);
      CHECK(b2.feasible == bf_b.feasible);
    }
  }
}

TEST_CASE("exhaustive search dominates every greedy policy") {
  const auto h = table_harvester();
  for (std::uint64_t seed = 500; seed < 540; ++seed) {
    const auto ch = draw(10, 0.1, 0.3, seed);
    const auto sa = spec_a(1e-4);
    const auto bf_a = brute_force_a(ch, sa, h);
    for (const auto id :
         {PolicyId::A1, PolicyId::A2, PolicyId::A3, PolicyId::A4}) {
      const auto out = solve_problem_a(id, ch, sa, h);
      check_partition(out, 10);
      if (out.feasible) {
        CHECK(bf_a.feasible);
        CHECK(bf_a.snr >= out.snr);
      }
      if (!bf_a.feasible) CHECK_FALSE(out.feasible);
    }
    const auto sb = spec_b(100.0);
    const auto bf_b = brute_force_b(ch, sb, h);
    for (const auto id :
         {PolicyId::B1, PolicyId::B2, PolicyId::B3, PolicyId::B4}) {
      const auto out = solve_problem_b(id, ch, sb, h);
      check_partition(out, 10);
      if (out.feasible) {
        CHECK(bf_b.feasible);
        CHECK(bf_b.p_dc >= out.p_dc);
      }
      if (!bf_b.feasible) CHECK_FALSE(out.feasible);
    }
  }
}

TEST_CASE("exhaustive ties break to the lexicographically smallest set") {
  const auto h = table_harvester();
  // Cells 3 and 4 contribute nothing, so supersets of {0,1,2} tie exactly;
  // the smallest tying reflecting set is {0,1,2} itself.
  const auto ch_a = crafted({1e-2, 1e-2, 1e-2, 1e-2, 1e-2},
                            {5e-3, 4e-3, 3e-3, 0.0, 0.0});
  const auto sa = spec_a(0.0);
  const auto bf_a = brute_force_a(ch_a, sa, h);
  CHECK(bf_a.allocation.a_r == std::vector<int>{0, 1, 2});
  CHECK(bf_a.allocation.a_h == std::vector<int>{3, 4});
  const auto ref_a = naive_a(ch_a, sa, h);
  CHECK(bf_a.allocation.a_r == ref_a.allocation.a_r);

  // Same construction on the harvesting side: dead TX gains tie the sets
  // {0,1,2}, {0,1,2,3} and {0,1,2,4}.
  const auto ch_b = crafted({5e-3, 4e-3, 3e-3, 0.0, 0.0},
                            {1e-3, 1e-3, 1e-3, 1e-3, 1e-3});
  const auto sb = spec_b(0.0);
  const auto bf_b = brute_force_b(ch_b, sb, h);
  CHECK(bf_b.allocation.a_h == std::vector<int>{0, 1, 2});
  CHECK(bf_b.allocation.a_r == std::vector<int>{3, 4});
  const auto ref_b = naive_b(ch_b, sb, h);
  CHECK(bf_b.allocation.a_h == ref_b.allocation.a_h);
}

TEST_CASE("the exhaustive search refuses oversized surfaces") {
  const auto ch = draw(23, 0.0, 0.0, 1);
  try {
    (void)brute_force_a(ch, spec_a(1e-4), table_harvester());
    FAIL("expected a cap violation");
  } catch (const std::length_error& e) {
    CHECK(std::string(e.what()).find("22") != std::string::npos);
  }
}

TEST_CASE("closed-form stopping index against hand-computed values") {
  const auto h = table_harvester();
  const double beta = 7.104814867663807e-5;  // Table I equal-gain TX link
  const std::vector<std::pair<int, int>> table = {
      {6, 5}, {8, 7}, {10, 8}, {12, 10}, {15, 12}, {20, 16}};
  for (const auto& [m, want] : table) {
    const auto s = spec_a(1e-5 * m);
    CHECK(closed_form_istop(beta, s, h, m) == want);
  }
  // a vacuous floor keeps every cell reflecting
  CHECK(closed_form_istop(beta, spec_a(0.0), h, 10) == 10);
  CHECK_THROWS_AS((void)closed_form_istop(beta, spec_a(20e-3), h, 10),
                  std::domain_error);
}

TEST_CASE("solve dispatcher guards problem kinds and sizes") {
  const auto ch = draw(4, 0.1, 0.3, 3);
  const auto h = table_harvester();
  CHECK_THROWS_AS((void)solve_problem_a(PolicyId::A1, ch, spec_b(1.0), h),
                  std::domain_error);
  CHECK_THROWS_AS((void)solve_problem_b(PolicyId::B2, ch, spec_a(0.0), h),
                  std::domain_error);
  CHECK_THROWS_AS((void)solve(PolicyId::B2, ch, spec_a(0.0), h),
                  std::domain_error);
  const auto tiny = draw(1, 0.1, 0.3, 3);
  CHECK_THROWS_AS((void)solve_problem_a(PolicyId::A1, tiny, spec_a(0.0), h),
                  std::domain_error);
}

TEST_CASE("policy names round-trip") {
  for (const auto& name : policy_names()) {
    const auto id = policy_from_string(name);
    REQUIRE(id.has_value());
    CHECK(to_string(*id) == name);
  }
  CHECK_FALSE(policy_from_string("A9").has_value());
  CHECK(is_problem_a(PolicyId::A4));
  CHECK(is_problem_a(PolicyId::BruteForceA));
  CHECK(is_problem_a(PolicyId::ClosedFormA));
  CHECK_FALSE(is_problem_a(PolicyId::B1));
  CHECK_FALSE(is_problem_a(PolicyId::BruteForceB));
}

TEST_CASE("closed-form policy solves equal-gain draws only") {
  const auto h = table_harvester();
  const auto equal_gain = draw(10, 0.0, 0.3, 9);
  const auto s = spec_a(1e-4);
  const auto out = solve(PolicyId::ClosedFormA, equal_gain, s, h);
  CHECK(out.feasible);
  check_partition(out, 10);
  const auto a1 = solve(PolicyId::A1, equal_gain, s, h);
  CHECK(out.snr == a1.snr);  // same stopping index, same ordering

  const auto faded = draw(10, 0.1, 0.3, 9);
  CHECK_THROWS_AS((void)solve(PolicyId::ClosedFormA, faded, s, h),
                  std::domain_error);
}

TEST_CASE("outcome JSON uses 1-based cell indices") {
  const auto ch = draw(5, 0.1, 0.3, 11);
  const auto out =
      solve(PolicyId::A1, ch, spec_a(5e-5), table_harvester());
  const auto j = nlohmann::json::parse(to_json(out));
  CHECK(j.at("policy_id") == "A1");
  CHECK(j.at("feasible").is_boolean());
  CHECK(j.at("p_dc_watts").is_number());
  std::vector<int> seen;
  for (const auto& v : j.at("a_h")) seen.push_back(v.get<int>());
  for (const auto& v : j.at("a_r")) seen.push_back(v.get<int>());
  CHECK(seen.size() == 5);
  std::sort(seen.begin(), seen.end());
  CHECK(seen == std::vector<int>{1, 2, 3, 4, 5});
}
