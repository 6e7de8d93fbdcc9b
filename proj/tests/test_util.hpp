#pragma once

#include <cmath>
#include <memory>
#include <string>
#include <vector>

#include "athn/rng.hpp"
#include "athn/types.hpp"

namespace athn::testutil {

// Network from schematic coordinates; miles are rounded Euclidean distances,
// time = miles (60 mph), cost = miles * cost_per_mile.
inline Network grid_network(const std::vector<std::pair<double, double>>& hub_xy,
                            const std::vector<std::pair<double, double>>& customer_xy,
                            MilliDollars cost_per_mile = 2000) {
  std::vector<Location> locations;
  std::vector<std::pair<double, double>> pts;
  for (std::size_t i = 0; i < hub_xy.size(); ++i) {
    locations.push_back({"H" + std::to_string(i + 1), LocationKind::Hub, ""});
    pts.push_back(hub_xy[i]);
  }
  for (std::size_t i = 0; i < customer_xy.size(); ++i) {
    locations.push_back({"C" + std::to_string(i + 1), LocationKind::Customer, ""});
    pts.push_back(customer_xy[i]);
  }
  const std::size_t n = pts.size();
  std::vector<std::vector<Minutes>> time(n, std::vector<Minutes>(n, 0));
  std::vector<std::vector<MilliDollars>> cost(n, std::vector<MilliDollars>(n, 0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      const Miles m = std::max<Miles>(
          1, std::llround(std::hypot(pts[i].first - pts[j].first, pts[i].second - pts[j].second)));
      time[i][j] = m;
      cost[i][j] = m * cost_per_mile;
    }
  }
  return Network(std::move(locations), std::move(time), std::move(cost));
}

// Explicit-matrix network over hubs only (for solver tests).
inline Network hub_matrix_network(int hubs, const std::vector<std::vector<Miles>>& miles,
                                  MilliDollars cost_per_mile = 2000) {
  std::vector<Location> locations;
  for (int i = 0; i < hubs; ++i)
    locations.push_back({"H" + std::to_string(i + 1), LocationKind::Hub, ""});
  const std::size_t n = static_cast<std::size_t>(hubs);
  std::vector<std::vector<Minutes>> time(n, std::vector<Minutes>(n, 0));
  std::vector<std::vector<MilliDollars>> cost(n, std::vector<MilliDollars>(n, 0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      time[i][j] = miles[i][j];
      cost[i][j] = miles[i][j] * cost_per_mile;
    }
  }
  return Network(std::move(locations), std::move(time), std::move(cost));
}

// Owns everything a Subproblem points to.
struct OwnedSubproblem {
  std::shared_ptr<Network> net;
  std::shared_ptr<Config> cfg;
  Subproblem sub;
};

// Random autonomous subproblem over a random hub layout. Covers feasible and
// infeasible cases alike.
inline OwnedSubproblem random_subproblem(Rng& rng, int max_tasks, int max_trucks) {
  const int hubs = static_cast<int>(rng.range(3, 7));
  std::vector<std::pair<double, double>> hub_xy;
  for (int i = 0; i < hubs; ++i)
    hub_xy.emplace_back(rng.unit() * 300.0, rng.unit() * 300.0);

  OwnedSubproblem o;
  o.net = std::make_shared<Network>(grid_network(hub_xy, {}));
  o.cfg = std::make_shared<Config>();
  o.cfg->service_time = rng.range(0, 30);
  o.cfg->flexibility = rng.range(0, 120);
  o.cfg->horizon = 10080;

  o.sub.kind = SubproblemKind::AutonomousNet;
  o.sub.truck_class = TruckClass::Autonomous;
  o.sub.truck_count = static_cast<int>(rng.range(1, max_trucks));
  o.sub.network = o.net.get();
  o.sub.config = o.cfg.get();

  const int n = static_cast<int>(rng.range(1, max_tasks));
  for (int i = 0; i < n; ++i) {
    Task t;
    t.id = "t" + std::to_string(i);
    t.order_id = "o" + std::to_string(i);
    t.leg = Leg::Autonomous;
    t.origin = static_cast<int>(rng.below(static_cast<std::uint64_t>(hubs)));
    t.destination = static_cast<int>(rng.below(static_cast<std::uint64_t>(hubs - 1)));
    if (t.destination >= t.origin) ++t.destination;
    t.pickup_time = rng.range(0, 1500);
    o.sub.tasks.push_back(std::move(t));
  }
  return o;
}

}  // namespace athn::testutil
