#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace athn {

using Minutes = std::int64_t;       // minutes from horizon start
using MilliDollars = std::int64_t;  // exact money, no float ties
using Miles = std::int64_t;

// ---------------------------------------------------------------------------
// Errors

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SameHubError : Error {
  using Error::Error;
};
struct NoTrucksError : Error {
  using Error::Error;
};
struct ParseError : Error {
  using Error::Error;
};
struct MalformedOrderError : Error {
  using Error::Error;
};
struct ConfigError : Error {
  using Error::Error;
};
struct GenerationError : Error {
  using Error::Error;
};
struct SchemaError : Error {
  using Error::Error;
};
struct TooLargeError : Error {
  using Error::Error;
};

// ---------------------------------------------------------------------------
// Network

enum class LocationKind { Hub, Customer };

struct Location {
  std::string id;
  LocationKind kind = LocationKind::Customer;
  std::string label;
};

// Complete directed graph over locations with minute and milli-dollar
// matrices. Diagonals are zero; all entries nonnegative.
class Network {
 public:
  Network() = default;
  Network(std::vector<Location> locations, std::vector<std::vector<Minutes>> travel_time,
          std::vector<std::vector<MilliDollars>> travel_cost);

  const std::vector<Location>& locations() const { return locations_; }
  const Location& location(int i) const { return locations_.at(static_cast<std::size_t>(i)); }
  int size() const { return static_cast<int>(locations_.size()); }

  int index_of(const std::string& id) const;
  bool contains(const std::string& id) const { return index_.count(id) > 0; }

  Minutes time(int from, int to) const { return travel_time_[static_cast<std::size_t>(from)][static_cast<std::size_t>(to)]; }
  MilliDollars cost(int from, int to) const { return travel_cost_[static_cast<std::size_t>(from)][static_cast<std::size_t>(to)]; }

  const std::vector<std::vector<Minutes>>& travel_time() const { return travel_time_; }
  const std::vector<std::vector<MilliDollars>>& travel_cost() const { return travel_cost_; }

  // Hub indices in location order.
  std::vector<int> hubs() const;

  // Returns a copy with every travel cost multiplied by k.
  Network scaled_cost(std::int64_t k) const;

 private:
  void check_invariants() const;

  std::vector<Location> locations_;
  std::vector<std::vector<Minutes>> travel_time_;
  std::vector<std::vector<MilliDollars>> travel_cost_;
  std::unordered_map<std::string, int> index_;
};

// ---------------------------------------------------------------------------
// Orders and tasks

struct Order {
  std::string id;
  int origin = -1;       // customer location index
  int destination = -1;  // customer location index
  Minutes pickup_time = 0;
};

enum class Leg { FirstMile, Autonomous, LastMile, Direct };

const char* leg_name(Leg leg);

struct Task {
  std::string id;
  std::string order_id;
  Leg leg = Leg::Direct;
  int origin = -1;
  int destination = -1;
  Minutes pickup_time = 0;
};

// ---------------------------------------------------------------------------
// Fleet and configuration

struct Fleet {
  int autonomous_count = 50;
  std::map<std::string, int> hub_counts;  // hub location id -> regular trucks

  int hub_count(const std::string& hub_id) const {
    auto it = hub_counts.find(hub_id);
    return it == hub_counts.end() ? 0 : it->second;
  }
};

struct Config {
  Minutes service_time = 30;          // S, per load or unload
  Minutes flexibility = 60;           // Delta, appointment window half-width
  int alpha_milli = 250;              // autonomous per-mile discount, thousandths
  MilliDollars cost_per_mile = 2000;  // human-driven rate
  Minutes horizon = 10080;            // one week
  int fl_empty_ratio_milli = 250;     // estimated first/last-mile empty share e

  void check() const {
    if (service_time < 0) throw ConfigError("service_time must be >= 0");
    if (flexibility < 0) throw ConfigError("flexibility must be >= 0");
    if (alpha_milli < 0 || alpha_milli >= 1000) throw ConfigError("alpha must be in [0,1)");
    if (horizon <= 0) throw ConfigError("horizon must be > 0");
    if (cost_per_mile <= 0) throw ConfigError("cost_per_mile must be > 0");
    if (fl_empty_ratio_milli < 0 || fl_empty_ratio_milli >= 1000)
      throw ConfigError("first/last empty ratio must be in [0,1)");
  }
};

inline Minutes task_duration(const Task& t, const Network& net, const Config& cfg) {
  return net.time(t.origin, t.destination) + 2 * cfg.service_time;
}

// ---------------------------------------------------------------------------
// Subproblem

enum class SubproblemKind { AutonomousNet, HubLocal };
enum class TruckClass { Autonomous, Regular };

// One independently solvable slice: the hub-to-hub network, or one hub's
// first/last-mile operations.
struct Subproblem {
  SubproblemKind kind = SubproblemKind::AutonomousNet;
  int hub = -1;  // location index, HubLocal only
  std::vector<Task> tasks;
  int truck_count = 0;
  TruckClass truck_class = TruckClass::Autonomous;
  const Network* network = nullptr;
  const Config* config = nullptr;
};

}  // namespace athn
