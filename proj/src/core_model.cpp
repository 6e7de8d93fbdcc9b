#include "athn/core_model.hpp"

#include <algorithm>

namespace athn {

HubAssignment assign_hubs(const Network& net) {
  const auto hubs = net.hubs();
  if (hubs.empty()) throw SchemaError("network has no hubs");
  HubAssignment out;
  for (int i = 0; i < net.size(); ++i) {
    if (net.location(i).kind != LocationKind::Customer) continue;
    int best = hubs.front();
    for (int h : hubs) {
      const auto c = net.cost(i, h);
      const auto cb = net.cost(i, best);
      if (c < cb || (c == cb && net.location(h).id < net.location(best).id)) best = h;
    }
    out[i] = best;
  }
  return out;
}

namespace {

int hub_for(const HubAssignment& hub_of, int customer, const Network& net) {
  if (net.location(customer).kind == LocationKind::Hub) return customer;
  auto it = hub_of.find(customer);
  if (it == hub_of.end()) throw SchemaError("no hub assigned to " + net.location(customer).id);
  return it->second;
}

}  // namespace

std::array<Task, 3> generate_tasks(const Order& order, const Network& net,
                                   const HubAssignment& hub_of, const Config& cfg) {
  const int h1 = hub_for(hub_of, order.origin, net);
  const int h2 = hub_for(hub_of, order.destination, net);
  if (h1 == h2) throw SameHubError("order " + order.id + ": origin and destination share hub");

  Task first{order.id + ":f", order.id, Leg::FirstMile, order.origin, h1, order.pickup_time};
  Task auton{order.id + ":a", order.id, Leg::Autonomous, h1, h2,
             first.pickup_time + net.time(first.origin, first.destination) + 2 * cfg.service_time};
  Task last{order.id + ":l", order.id, Leg::LastMile, h2, order.destination,
            auton.pickup_time + net.time(auton.origin, auton.destination) + 2 * cfg.service_time};
  return {first, auton, last};
}

std::vector<Task> generate_all_tasks(const std::vector<Order>& orders, const Network& net,
                                     const HubAssignment& hub_of, const Config& cfg,
                                     std::vector<std::string>* same_hub) {
  std::vector<Task> out;
  out.reserve(orders.size() * 3);
  for (const auto& order : orders) {
    try {
      auto tasks = generate_tasks(order, net, hub_of, cfg);
      out.insert(out.end(), tasks.begin(), tasks.end());
    } catch (const SameHubError&) {
      if (same_hub) same_hub->push_back(order.id);
    }
  }
  return out;
}

std::vector<Subproblem> decompose(const std::vector<Task>& tasks, const Fleet& fleet,
                                  const Network& net, const Config& cfg) {
  Subproblem autonet;
  autonet.kind = SubproblemKind::AutonomousNet;
  autonet.truck_class = TruckClass::Autonomous;
  autonet.truck_count = fleet.autonomous_count;
  autonet.network = &net;
  autonet.config = &cfg;

  std::map<int, std::vector<Task>> by_hub;  // hub index -> first/last tasks
  for (const auto& t : tasks) {
    switch (t.leg) {
      case Leg::Autonomous:
        autonet.tasks.push_back(t);
        break;
      case Leg::FirstMile:
        by_hub[t.destination].push_back(t);
        break;
      case Leg::LastMile:
        by_hub[t.origin].push_back(t);
        break;
      case Leg::Direct:
        break;  // handled outside the scheduling pipeline
    }
  }

  std::vector<Subproblem> out;
  if (!autonet.tasks.empty()) {
    if (autonet.truck_count == 0) throw NoTrucksError("no autonomous trucks for nonempty network");
    out.push_back(std::move(autonet));
  }

  // Hub subproblems ordered by hub location id.
  std::vector<int> hub_order;
  for (const auto& [hub, _] : by_hub) hub_order.push_back(hub);
  std::sort(hub_order.begin(), hub_order.end(), [&](int a, int b) {
    return net.location(a).id < net.location(b).id;
  });

  for (int hub : hub_order) {
    Subproblem sp;
    sp.kind = SubproblemKind::HubLocal;
    sp.hub = hub;
    sp.tasks = std::move(by_hub[hub]);
    sp.truck_class = TruckClass::Regular;
    sp.truck_count = fleet.hub_count(net.location(hub).id);
    sp.network = &net;
    sp.config = &cfg;
    if (sp.truck_count == 0)
      throw NoTrucksError("hub " + net.location(hub).id + " has tasks but no trucks");
    out.push_back(std::move(sp));
  }
  return out;
}

}  // namespace athn
