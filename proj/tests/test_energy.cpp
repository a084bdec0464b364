#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "risplit/channel.hpp"
#include "risplit/energy.hpp"

using namespace risplit;

namespace {
HarvesterModel table_harvester() { return HarvesterModel{120.0, 1e-3, 20e-3, 0.5}; }
}

TEST_CASE("rectifier anchor points") {
  const auto h = table_harvester();
  // zero input gives zero DC out exactly (expm1(0) is an exact zero)
  CHECK(rectifier_dc_power(0.0, h) == 0.0);
  CHECK(rectifier_dc_power(2e-3, h) ==
        doctest::Approx(0.0022615912656568497).epsilon(1e-12));
  // 30 nepers past the midpoint: within a hair of saturation
  CHECK(rectifier_dc_power(h.b + 30.0 / h.a, h) ==
        doctest::Approx(0.01999999999999647).epsilon(1e-12));
  CHECK(rectifier_dc_power(1.0, h) <= h.p_max);
}

TEST_CASE("rectifier is monotone") {
  const auto h = table_harvester();
  double prev = -1.0;
  for (double p = 0.0; p <= 10e-3; p += 1e-5) {
    const double dc = rectifier_dc_power(p, h);
    CHECK(dc >= prev);
    prev = dc;
  }
}

TEST_CASE("required_rf_input inverts the rectifier") {
  const auto h = table_harvester();
  CHECK(required_rf_input(0.0, h) == 0.0);
  for (double target = 1e-6; target < h.p_max; target *= 2.3) {
    const double rf = required_rf_input(target, h);
    CHECK(rectifier_dc_power(rf, h) ==
          doctest::Approx(target).epsilon(1e-9));
  }
  // close to saturation the inverse must stay finite and consistent
  const double near = h.p_max * (1.0 - 1e-12);
  const double rf = required_rf_input(near, h);
  CHECK(std::isfinite(rf));
  CHECK(rectifier_dc_power(rf, h) == doctest::Approx(near).epsilon(1e-6));
  CHECK_THROWS_AS((void)required_rf_input(h.p_max, h), std::domain_error);
  CHECK_THROWS_AS((void)required_rf_input(h.p_max * 2, h), std::domain_error);
}

TEST_CASE("harvested RF power is the ascending-index fold") {
  ChannelRealization ch;
  ch.t_mag = {3e-3, 1e-3, 2e-3};
  ch.t_phase = {0.0, 0.0, 0.0};
  ch.r_mag = {1e-3, 1e-3, 1e-3};
  ch.r_phase = {0.0, 0.0, 0.0};
  const auto h = table_harvester();
  const double p_t = 2.0;
  const double expected =
      h.eta_rf * (p_t * (3e-3 * 3e-3 + 2e-3 * 2e-3));  // cells 0 and 2
  CHECK(harvested_rf_power(ch, {0, 2}, p_t, h) == expected);
  CHECK(harvested_rf_power(ch, {}, p_t, h) == 0.0);
  // the set must be ascending, unique, in range
  CHECK_THROWS_AS((void)harvested_rf_power(ch, {2, 0}, p_t, h),
                  std::domain_error);
  CHECK_THROWS_AS((void)harvested_rf_power(ch, {0, 0}, p_t, h),
                  std::domain_error);
  CHECK_THROWS_AS((void)harvested_rf_power(ch, {0, 3}, p_t, h),
                  std::domain_error);
}

TEST_CASE("surface consumption scales per cell") {
  RisPowerModel m;
  m.p_static = 2e-6;
  m.p_dynamic = 10e-3;
  m.alpha = 0.8;
  m.p_r = 1e-3;
  // Table I values: 2 uW + 0.8 * 1e-3 * 10 mW = 10 uW per cell
  CHECK(m.p_d_avg() == doctest::Approx(8e-6).epsilon(1e-12));
  CHECK(ris_consumption(m, 10) == doctest::Approx(1e-4).epsilon(1e-12));
  CHECK_THROWS_AS((void)ris_consumption(m, 0), std::domain_error);
}

TEST_CASE("harvester validation") {
  auto h = table_harvester();
  CHECK_NOTHROW(h.validate());
  h.eta_rf = 0.0;
  CHECK_THROWS_AS(h.validate(), std::domain_error);
  h = table_harvester();
  h.a = -1.0;
  CHECK_THROWS_AS(h.validate(), std::domain_error);
  h = table_harvester();
  h.p_max = 0.0;
  CHECK_THROWS_AS(h.validate(), std::domain_error);
}
