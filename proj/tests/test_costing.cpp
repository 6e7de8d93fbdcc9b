#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <sstream>
#include <string>

#include "athn/costing.hpp"

using namespace athn;

namespace {

bool close_dollars(MilliDollars md, std::int64_t dollars, std::int64_t tol = 1) {
  return std::llabs(display_dollars(md) - dollars) <= tol;
}

}  // namespace

TEST_CASE("display_dollars rounds half up in both directions") {
  CHECK(display_dollars(0) == 0);
  CHECK(display_dollars(499) == 0);
  CHECK(display_dollars(500) == 1);
  CHECK(display_dollars(1500) == 2);
  CHECK(display_dollars(-499) == 0);
  CHECK(display_dollars(-500) == -1);
  CHECK(display_dollars(-1500) == -2);
}

TEST_CASE("base-case cost table from the published mileage inputs") {
  Config cfg;  // alpha 25%, $2/mile, e = 0.25
  auto t = build_cost_table({96'669, 96'698}, {91'618, 44'217}, 29'286, cfg);

  CHECK(t.current.total == 193'367);
  CHECK(t.current.loaded_pct == 50);
  CHECK(t.current.empty_pct == 50);
  CHECK(close_dollars(t.current.total_cost, 386'734));

  CHECK(t.autonomous.adj_milli == 750);
  CHECK(t.autonomous.loaded_pct == 67);
  CHECK(t.autonomous.empty_pct == 33);
  CHECK(close_dollars(t.autonomous.loaded_cost, 137'426));
  CHECK(close_dollars(t.autonomous.empty_cost, 66'325));

  CHECK(std::llabs(t.first_last.empty - 9'762) <= 1);
  CHECK(t.first_last.loaded_pct == 75);
  CHECK(t.first_last.empty_pct == 25);
  CHECK(close_dollars(t.first_last.total_cost, 78'097));

  CHECK(std::llabs(t.athn_total_miles - 174'883) <= 1);
  CHECK(close_dollars(t.athn_total_cost, 281'848));
  CHECK(close_dollars(t.savings, 104'886));
  CHECK(std::llabs(t.savings_miles - 18'484) <= 1);
  CHECK(std::abs(t.savings_miles_pct - 10) <= 1);
  CHECK(std::abs(t.savings_pct - 27) <= 1);
}

TEST_CASE("large-network cost table") {
  // Published loaded/empty rows for the current network do not add up to the
  // published total, so the loaded figure is recovered as total minus empty.
  Config cfg;
  auto t = build_cost_table({202'476 - 96'698, 96'698}, {97'326, 53'247}, 23'442, cfg);

  CHECK(t.current.total == 202'476);
  CHECK(std::llabs(t.first_last.empty - 7'814) <= 1);
  CHECK(t.autonomous.empty_pct == 35);
  CHECK(close_dollars(t.autonomous.total_cost, 225'860));
  CHECK(std::llabs(t.athn_total_miles - 181'829) <= 1);
  CHECK(close_dollars(t.athn_total_cost, 288'371));
  CHECK(close_dollars(t.savings, 116'582));
  CHECK(std::abs(t.savings_pct - 29) <= 1);
}

TEST_CASE("all-zero mileage gives an all-zero table") {
  Config cfg;
  auto t = build_cost_table({0, 0}, {0, 0}, 0, cfg);
  CHECK(t.current.total == 0);
  CHECK(t.current.loaded_pct == 0);
  CHECK(t.athn_total_cost == 0);
  CHECK(t.savings == 0);
  CHECK(t.savings_pct == 0);
}

TEST_CASE("negative mileage is rejected") {
  Config cfg;
  CHECK_THROWS_AS(build_cost_table({-1, 0}, {0, 0}, 0, cfg), ConfigError);
  CHECK_THROWS_AS(build_cost_table({0, 0}, {0, -5}, 0, cfg), ConfigError);
  CHECK_THROWS_AS(build_cost_table({0, 0}, {0, 0}, -2, cfg), ConfigError);
}

TEST_CASE("empty-share display identity on the published row") {
  Config cfg;
  auto t = build_cost_table({1, 0}, {91'618, 44'217}, 0, cfg);
  const long double share = 100.0L * 44'217 / (91'618 + 44'217);
  CHECK(t.autonomous.empty_pct == static_cast<int>(std::llround(static_cast<double>(share))));
  CHECK(t.autonomous.empty_pct == 33);
  CHECK(t.autonomous.loaded_pct + t.autonomous.empty_pct == 100);
}

TEST_CASE("savings are affine and non-decreasing in alpha for fixed mileages") {
  const MileagePair current{96'669, 96'698};
  const MileagePair autonomous{91'618, 44'217};
  const Miles fl = 29'286;

  MilliDollars prev = -1;
  MilliDollars first_delta = 0;
  MilliDollars prev_savings = 0;
  int step = 0;
  for (int alpha = 0; alpha <= 900; alpha += 100) {
    Config cfg;
    cfg.alpha_milli = alpha;
    auto t = build_cost_table(current, autonomous, fl, cfg);
    if (prev >= 0) {
      CHECK(t.savings >= prev_savings);
      const MilliDollars delta = t.savings - prev_savings;
      if (step == 1) first_delta = delta;
      // Affine in alpha: equal alpha steps give equal savings steps, up to
      // the half-dollar rounding inside the adjustment.
      if (step > 1) CHECK(std::llabs(delta - first_delta) <= 1);
    }
    prev = 0;
    prev_savings = t.savings;
    ++step;
  }
}

TEST_CASE("text and csv renderings carry the headline numbers") {
  Config cfg;
  auto t = build_cost_table({96'669, 96'698}, {91'618, 44'217}, 29'286, cfg);

  const auto text = render_text(t);
  CHECK(text.find("Current network") != std::string::npos);
  CHECK(text.find("104886") != std::string::npos);
  CHECK(text.find("0.75") != std::string::npos);

  const auto csv = render_csv(t);
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  CHECK(line == "group,row,mileage,pct_of_total,cost_without_autonomy,cost_adjustment,cost");
  int lines = 0;
  bool saw_savings = false;
  while (std::getline(in, line)) {
    ++lines;
    if (line.rfind("savings,", 0) == 0) {
      saw_savings = true;
      CHECK(line.find("104886") != std::string::npos);
    }
  }
  CHECK(lines == 12);
  CHECK(saw_savings);
}

TEST_CASE("sweep renderings") {
  std::vector<SweepRow> rows = {{"0.25", 437, 27, 104'886'000, 0.0, false},
                                {"0.30", 439, 32, 122'396'000, 16.7, false}};
  const auto text = render_sweep_text("alpha", rows);
  CHECK(text.find("alpha") != std::string::npos);
  CHECK(text.find("437") != std::string::npos);
  const auto csv = render_sweep_csv("alpha", rows);
  CHECK(csv.rfind("alpha,automated_orders,", 0) == 0);
  CHECK(csv.find("0.30,439,32,122396,16.7,0") != std::string::npos);
}
