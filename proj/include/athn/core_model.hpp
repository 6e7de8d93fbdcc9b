#pragma once

#include <array>
#include <map>
#include <vector>

#include "athn/types.hpp"

namespace athn {

// customer location index -> designated transfer hub index
using HubAssignment = std::map<int, int>;

// Assigns every customer its cost-nearest hub, ties broken by lowest hub id.
HubAssignment assign_hubs(const Network& net);

// Splits an order into first-mile, autonomous, and last-mile tasks with
// chained pickup times. Throws SameHubError when origin and destination map
// to the same hub; such orders must be served direct.
std::array<Task, 3> generate_tasks(const Order& order, const Network& net,
                                   const HubAssignment& hub_of, const Config& cfg);

// generate_tasks over a batch; orders hitting SameHubError are skipped and
// reported in `same_hub` when non-null.
std::vector<Task> generate_all_tasks(const std::vector<Order>& orders, const Network& net,
                                     const HubAssignment& hub_of, const Config& cfg,
                                     std::vector<std::string>* same_hub = nullptr);

// Partitions tasks into one autonomous-network subproblem plus one subproblem
// per hub with first/last-mile work. Throws NoTrucksError when a nonempty
// subproblem has no compatible trucks.
std::vector<Subproblem> decompose(const std::vector<Task>& tasks, const Fleet& fleet,
                                  const Network& net, const Config& cfg);

}  // namespace athn
