#include "athn/types.hpp"

#include <utility>

namespace athn {

const char* leg_name(Leg leg) {
  switch (leg) {
    case Leg::FirstMile: return "first_mile";
    case Leg::Autonomous: return "autonomous";
    case Leg::LastMile: return "last_mile";
    case Leg::Direct: return "direct";
  }
  return "?";
}

Network::Network(std::vector<Location> locations, std::vector<std::vector<Minutes>> travel_time,
                 std::vector<std::vector<MilliDollars>> travel_cost)
    : locations_(std::move(locations)),
      travel_time_(std::move(travel_time)),
      travel_cost_(std::move(travel_cost)) {
  for (int i = 0; i < size(); ++i) {
    auto [it, inserted] = index_.emplace(locations_[static_cast<std::size_t>(i)].id, i);
    if (!inserted) throw SchemaError("duplicate location id: " + locations_[static_cast<std::size_t>(i)].id);
  }
  check_invariants();
}

void Network::check_invariants() const {
  const auto n = locations_.size();
  if (travel_time_.size() != n || travel_cost_.size() != n)
    throw SchemaError("travel matrices must be square over all locations");
  for (std::size_t i = 0; i < n; ++i) {
    if (travel_time_[i].size() != n || travel_cost_[i].size() != n)
      throw SchemaError("travel matrices must be square over all locations");
    if (travel_time_[i][i] != 0 || travel_cost_[i][i] != 0)
      throw SchemaError("matrix diagonal must be zero at " + locations_[i].id);
    for (std::size_t j = 0; j < n; ++j) {
      if (travel_time_[i][j] < 0 || travel_cost_[i][j] < 0)
        throw SchemaError("matrix entries must be nonnegative");
    }
  }
}

int Network::index_of(const std::string& id) const {
  auto it = index_.find(id);
  if (it == index_.end()) throw SchemaError("unknown location id: " + id);
  return it->second;
}

std::vector<int> Network::hubs() const {
  std::vector<int> out;
  for (int i = 0; i < size(); ++i) {
    if (locations_[static_cast<std::size_t>(i)].kind == LocationKind::Hub) out.push_back(i);
  }
  return out;
}

Network Network::scaled_cost(std::int64_t k) const {
  auto cost = travel_cost_;
  for (auto& row : cost) {
    for (auto& c : row) c *= k;
  }
  return Network(locations_, travel_time_, cost);
}

}  // namespace athn
