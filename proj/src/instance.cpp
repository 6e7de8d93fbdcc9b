#include "athn/instance.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

#include "athn/rng.hpp"

namespace athn {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

double milli_to_frac(int milli) { return milli / 1000.0; }
int frac_to_milli(double frac) { return static_cast<int>(std::llround(frac * 1000.0)); }

}  // namespace

ordered_json instance_to_json(const InstanceFile& inst) {
  ordered_json j;
  j["schema_version"] = inst.schema_version;

  ordered_json cfg;
  cfg["service_time"] = inst.config.service_time;
  cfg["flexibility"] = inst.config.flexibility;
  cfg["alpha"] = milli_to_frac(inst.config.alpha_milli);
  cfg["cost_per_mile"] = inst.config.cost_per_mile;
  cfg["horizon"] = inst.config.horizon;
  cfg["fl_empty_ratio"] = milli_to_frac(inst.config.fl_empty_ratio_milli);
  j["config"] = std::move(cfg);

  ordered_json net;
  net["locations"] = ordered_json::array();
  for (const auto& loc : inst.network.locations()) {
    ordered_json l;
    l["id"] = loc.id;
    l["kind"] = loc.kind == LocationKind::Hub ? "hub" : "customer";
    l["label"] = loc.label;
    net["locations"].push_back(std::move(l));
  }
  net["travel_time"] = inst.network.travel_time();
  net["travel_cost"] = inst.network.travel_cost();
  j["network"] = std::move(net);

  ordered_json fleet;
  fleet["autonomous_count"] = inst.fleet.autonomous_count;
  fleet["hub_counts"] = ordered_json::object();
  for (const auto& [hub, count] : inst.fleet.hub_counts) fleet["hub_counts"][hub] = count;
  j["fleet"] = std::move(fleet);

  j["orders"] = ordered_json::array();
  for (const auto& o : inst.orders) {
    ordered_json jo;
    jo["id"] = o.id;
    jo["origin"] = inst.network.location(o.origin).id;
    jo["destination"] = inst.network.location(o.destination).id;
    jo["pickup_time"] = o.pickup_time;
    j["orders"].push_back(std::move(jo));
  }
  return j;
}

InstanceFile instance_from_json(const json& j) {
  InstanceFile inst;
  try {
    if (!j.contains("schema_version")) throw SchemaError("missing schema_version");
    inst.schema_version = j.at("schema_version").get<int>();
    if (inst.schema_version != 1)
      throw SchemaError("unsupported schema_version " + std::to_string(inst.schema_version));

    const auto& cfg = j.at("config");
    inst.config.service_time = cfg.at("service_time").get<Minutes>();
    inst.config.flexibility = cfg.at("flexibility").get<Minutes>();
    inst.config.alpha_milli = frac_to_milli(cfg.at("alpha").get<double>());
    inst.config.cost_per_mile = cfg.at("cost_per_mile").get<MilliDollars>();
    inst.config.horizon = cfg.at("horizon").get<Minutes>();
    if (cfg.contains("fl_empty_ratio"))
      inst.config.fl_empty_ratio_milli = frac_to_milli(cfg.at("fl_empty_ratio").get<double>());
    inst.config.check();

    const auto& net = j.at("network");
    std::vector<Location> locations;
    for (const auto& l : net.at("locations")) {
      Location loc;
      loc.id = l.at("id").get<std::string>();
      const auto kind = l.at("kind").get<std::string>();
      if (kind == "hub") loc.kind = LocationKind::Hub;
      else if (kind == "customer") loc.kind = LocationKind::Customer;
      else throw SchemaError("unknown location kind '" + kind + "'");
      loc.label = l.value("label", std::string{});
      locations.push_back(std::move(loc));
    }
    inst.network = Network(std::move(locations),
                           net.at("travel_time").get<std::vector<std::vector<Minutes>>>(),
                           net.at("travel_cost").get<std::vector<std::vector<MilliDollars>>>());

    const auto& fleet = j.at("fleet");
    inst.fleet.autonomous_count = fleet.at("autonomous_count").get<int>();
    if (inst.fleet.autonomous_count < 0) throw SchemaError("autonomous_count must be >= 0");
    for (const auto& [hub, count] : fleet.at("hub_counts").items()) {
      const int idx = inst.network.index_of(hub);
      if (inst.network.location(idx).kind != LocationKind::Hub)
        throw SchemaError("hub_counts entry " + hub + " is not a hub");
      const int c = count.get<int>();
      if (c < 0) throw SchemaError("truck counts must be >= 0");
      inst.fleet.hub_counts[hub] = c;
    }

    for (const auto& jo : j.at("orders")) {
      Order o;
      o.id = jo.at("id").get<std::string>();
      o.origin = inst.network.index_of(jo.at("origin").get<std::string>());
      o.destination = inst.network.index_of(jo.at("destination").get<std::string>());
      o.pickup_time = jo.at("pickup_time").get<Minutes>();
      if (o.origin == o.destination)
        throw SchemaError("order " + o.id + ": origin equals destination");
      if (o.pickup_time < 0 || o.pickup_time >= inst.config.horizon)
        throw SchemaError("order " + o.id + ": pickup time outside horizon");
      inst.orders.push_back(std::move(o));
    }
  } catch (const json::exception& e) {
    throw SchemaError(std::string("instance schema: ") + e.what());
  }
  return inst;
}

void save_instance(const InstanceFile& inst, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path);
  out << instance_to_json(inst).dump(2) << '\n';
}

InstanceFile load_instance(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw SchemaError(path + ": " + e.what());
  }
  return instance_from_json(j);
}

InstanceFile generate_instance(const SyntheticSpec& spec) {
  if (spec.hub_count < 1 || spec.order_count < 1 || spec.customer_count < 2)
    throw GenerationError("counts must be >= 1");
  Rng rng(spec.seed);

  struct Point {
    double x, y;
  };
  auto dist = [](Point a, Point b) { return std::hypot(a.x - b.x, a.y - b.y); };
  auto sample = [&](Miles extent) {
    return Point{rng.unit() * static_cast<double>(extent), rng.unit() * static_cast<double>(extent)};
  };

  // Separation-constrained hub placement by rejection sampling.
  std::vector<Point> hub_pts;
  int attempts = 0;
  while (static_cast<int>(hub_pts.size()) < spec.hub_count) {
    if (++attempts > 2000 * spec.hub_count)
      throw GenerationError("region too small for hub separation");
    const auto p = sample(spec.region);
    bool ok = true;
    for (const auto& h : hub_pts) {
      if (dist(p, h) < static_cast<double>(spec.hub_separation)) {
        ok = false;
        break;
      }
    }
    if (ok) hub_pts.push_back(p);
  }

  std::vector<Point> cust_pts;
  for (int i = 0; i < spec.customer_count; ++i) cust_pts.push_back(sample(spec.region));

  // Order endpoint pairs over distinct customers.
  struct Pair {
    int o, d;
  };
  std::vector<Pair> pairs;
  for (int i = 0; i < spec.order_count; ++i) {
    int o = static_cast<int>(rng.below(static_cast<std::uint64_t>(spec.customer_count)));
    int d = static_cast<int>(rng.below(static_cast<std::uint64_t>(spec.customer_count - 1)));
    if (d >= o) ++d;
    pairs.push_back({o, d});
  }

  // Scale so the mean order trip hits the target length.
  double mean_trip = 0;
  for (const auto& p : pairs)
    mean_trip += dist(cust_pts[static_cast<std::size_t>(p.o)], cust_pts[static_cast<std::size_t>(p.d)]);
  mean_trip /= static_cast<double>(pairs.size());
  if (mean_trip <= 0) throw GenerationError("degenerate customer layout");
  const double scale = static_cast<double>(spec.target_trip) / mean_trip;

  std::vector<Location> locations;
  std::vector<Point> pts;
  for (int i = 0; i < spec.hub_count; ++i) {
    char id[16];
    std::snprintf(id, sizeof id, "H%02d", i + 1);
    locations.push_back({id, LocationKind::Hub, std::string("hub ") + id});
    pts.push_back(hub_pts[static_cast<std::size_t>(i)]);
  }
  for (int i = 0; i < spec.customer_count; ++i) {
    char id[16];
    std::snprintf(id, sizeof id, "C%03d", i + 1);
    locations.push_back({id, LocationKind::Customer, std::string("customer ") + id});
    pts.push_back(cust_pts[static_cast<std::size_t>(i)]);
  }

  const int n = static_cast<int>(locations.size());
  std::vector<std::vector<Miles>> miles(static_cast<std::size_t>(n),
                                        std::vector<Miles>(static_cast<std::size_t>(n), 0));
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < n; ++k) {
      if (i == k) continue;
      const auto m = std::llround(dist(pts[static_cast<std::size_t>(i)], pts[static_cast<std::size_t>(k)]) * scale);
      miles[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] = std::max<Miles>(1, m);
    }
  }
  std::vector<std::vector<Minutes>> time(static_cast<std::size_t>(n),
                                         std::vector<Minutes>(static_cast<std::size_t>(n), 0));
  std::vector<std::vector<MilliDollars>> cost(static_cast<std::size_t>(n),
                                              std::vector<MilliDollars>(static_cast<std::size_t>(n), 0));
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < n; ++k) {
      const auto m = miles[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)];
      time[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] =
          (m * 60 + spec.speed_mph / 2) / spec.speed_mph;
      cost[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] = m * spec.config.cost_per_mile;
    }
  }

  InstanceFile inst;
  inst.config = spec.config;
  inst.config.horizon = spec.horizon;
  inst.network = Network(std::move(locations), std::move(time), std::move(cost));
  inst.fleet.autonomous_count = spec.autonomous_trucks;
  for (int i = 0; i < spec.hub_count; ++i) {
    char id[16];
    std::snprintf(id, sizeof id, "H%02d", i + 1);
    inst.fleet.hub_counts[id] = spec.trucks_per_hub;
  }

  // Pickups: weekday-weighted day, any minute within the day.
  const std::int64_t days = std::max<std::int64_t>(1, spec.horizon / 1440);
  std::vector<std::int64_t> weights;
  std::int64_t total_w = 0;
  for (std::int64_t d = 0; d < days; ++d) {
    const std::int64_t w = (d % 7 >= 5) ? 1 : 5;  // horizon starts on a Monday
    weights.push_back(w);
    total_w += w;
  }
  for (int i = 0; i < spec.order_count; ++i) {
    auto pick = static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(total_w)));
    std::int64_t day = 0;
    while (pick >= weights[static_cast<std::size_t>(day)]) pick -= weights[static_cast<std::size_t>(day++)];
    Minutes minute = day * 1440 + static_cast<Minutes>(rng.below(1440));
    minute = std::min(minute, spec.horizon - 1);

    Order o;
    char id[16];
    std::snprintf(id, sizeof id, "o%04d", i + 1);
    o.id = id;
    o.origin = spec.hub_count + pairs[static_cast<std::size_t>(i)].o;
    o.destination = spec.hub_count + pairs[static_cast<std::size_t>(i)].d;
    o.pickup_time = minute;
    inst.orders.push_back(std::move(o));
  }
  return inst;
}

}  // namespace athn
