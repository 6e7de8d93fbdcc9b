#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "athn/types.hpp"

namespace athn {

// Self-contained problem document: network, orders, fleet, and parameters.
struct InstanceFile {
  int schema_version = 1;
  Config config;
  Network network;
  Fleet fleet;
  std::vector<Order> orders;
};

nlohmann::ordered_json instance_to_json(const InstanceFile& inst);
InstanceFile instance_from_json(const nlohmann::json& j);

void save_instance(const InstanceFile& inst, const std::string& path);
InstanceFile load_instance(const std::string& path);

// ---------------------------------------------------------------------------
// Synthetic instance generation

struct SyntheticSpec {
  int hub_count = 17;
  int order_count = 494;
  int customer_count = 150;
  Miles region = 800;          // square side in schematic miles
  Miles hub_separation = 100;  // minimum hub spacing before scaling
  Miles target_trip = 431;     // mean order trip length after scaling
  int speed_mph = 50;
  Minutes horizon = 10080;
  std::uint64_t seed = 1;
  int autonomous_trucks = 50;
  int trucks_per_hub = 10;
  Config config;
};

// Deterministic for a fixed seed. Hubs are separation-constrained, customers
// uniform, distances Euclidean scaled so the mean order trip matches
// target_trip, pickups weekday-weighted over the horizon.
InstanceFile generate_instance(const SyntheticSpec& spec);

}  // namespace athn
