#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "athn/costing.hpp"
#include "athn/gantt.hpp"
#include "athn/ingest.hpp"
#include "athn/instance.hpp"
#include "athn/pipeline.hpp"

namespace {

using namespace athn;

int to_milli(double frac) { return static_cast<int>(std::llround(frac * 1000.0)); }

struct GlobalFlags {
  std::uint64_t seed = 1;
  double time_limit = 10.0;
  std::optional<double> alpha;
  std::optional<Minutes> delta;
  std::optional<int> trucks;
  int exact_threshold = 8;
  bool serial = false;
};

void apply_overrides(InstanceFile& inst, const GlobalFlags& g) {
  if (g.alpha) inst.config.alpha_milli = to_milli(*g.alpha);
  if (g.delta) inst.config.flexibility = *g.delta;
  if (g.trucks) inst.fleet.autonomous_count = *g.trucks;
}

PipelineOptions pipeline_options(const GlobalFlags& g) {
  PipelineOptions opt;
  opt.seed = g.seed;
  opt.time_limit_seconds = g.time_limit;
  opt.exact_threshold = g.exact_threshold;
  opt.parallel = !g.serial;
  return opt;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path);
  out << content;
}

// Builds an instance from stop records, a pairwise distance table, and an
// access-point histogram. Challenging orders become schedulable orders;
// everything else is counted as pass-through direct work.
InstanceFile build_from_ingest(const std::string& stops_path, const std::string& matrix_path,
                               const std::string& access_path, int hub_k, Miles min_separation,
                               const std::string& code_map_path, const Config& cfg,
                               int autonomous_trucks, int trucks_per_hub) {
  std::ifstream stops_in(stops_path);
  if (!stops_in) throw Error("cannot read " + stops_path);
  const auto records = parse_stop_records(stops_in);

  CodeMap codes;
  if (!code_map_path.empty()) {
    std::ifstream cm(code_map_path);
    if (!cm) throw Error("cannot read " + code_map_path);
    codes = CodeMap::from_csv(cm);
  }
  std::vector<std::string> warnings;
  const auto derived = derive_orders(records, codes, &warnings);
  for (const auto& w : warnings) std::cerr << "warning: " << w << '\n';

  std::ifstream matrix_in(matrix_path);
  if (!matrix_in) throw Error("cannot read " + matrix_path);
  const auto table = PairTable::from_csv(matrix_in);

  std::ifstream access_in(access_path);
  if (!access_in) throw Error("cannot read " + access_path);
  const auto hist = AccessPointHistogram::from_csv(access_in);
  const auto hubs = place_hubs(hist, hub_k, min_separation, table);

  std::set<std::string> hub_set(hubs.begin(), hubs.end());
  std::set<std::string> used;
  int pass_through = 0;
  for (const auto& o : derived) {
    if (!o.challenging) {
      ++pass_through;
      continue;
    }
    used.insert(o.origin);
    used.insert(o.destination);
  }
  if (pass_through > 0)
    std::cerr << pass_through << " non-challenging orders kept direct at historical mileage\n";

  std::vector<Location> locations;
  for (const auto& h : hubs) locations.push_back({h, LocationKind::Hub, h});
  for (const auto& c : used) {
    if (!hub_set.count(c)) locations.push_back({c, LocationKind::Customer, c});
  }

  const int n = static_cast<int>(locations.size());
  std::vector<std::vector<Minutes>> time(n, std::vector<Minutes>(n, 0));
  std::vector<std::vector<MilliDollars>> cost(n, std::vector<MilliDollars>(n, 0));
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < n; ++k) {
      if (i == k) continue;
      time[i][k] = table.time(locations[i].id, locations[k].id);
      cost[i][k] = table.distance(locations[i].id, locations[k].id) * cfg.cost_per_mile;
    }
  }

  InstanceFile inst;
  inst.config = cfg;
  inst.network = Network(std::move(locations), std::move(time), std::move(cost));
  inst.fleet.autonomous_count = autonomous_trucks;
  for (const auto& h : hubs) inst.fleet.hub_counts[h] = trucks_per_hub;

  Minutes max_pickup = 0;
  for (const auto& o : derived) {
    if (!o.challenging || o.origin == o.destination) continue;
    Order order;
    order.id = o.order_id;
    order.origin = inst.network.index_of(o.origin);
    order.destination = inst.network.index_of(o.destination);
    order.pickup_time = o.pickup_time;
    max_pickup = std::max(max_pickup, o.pickup_time);
    inst.orders.push_back(std::move(order));
  }
  if (max_pickup >= inst.config.horizon) inst.config.horizon = max_pickup + 1;
  return inst;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ATHN freight scheduling toolkit"};
  app.require_subcommand(1);

  GlobalFlags g;
  app.add_option("--seed", g.seed, "RNG seed");
  app.add_option("--time-limit", g.time_limit, "per-subproblem solver budget, seconds");
  double alpha_in = 0;
  auto* alpha_opt = app.add_option("--alpha", alpha_in, "autonomous cost discount in [0,1)");
  Minutes delta_in = 0;
  auto* delta_opt = app.add_option("--delta", delta_in, "appointment flexibility, minutes");
  int trucks_in = 0;
  auto* trucks_opt = app.add_option("--trucks", trucks_in, "autonomous truck count");
  app.add_option("--exact-threshold", g.exact_threshold,
                 "max task count for the exact solver (default 8)");
  app.add_flag("--serial", g.serial, "disable OpenMP parallelism");

  // generate
  auto* gen = app.add_subcommand("generate", "generate a synthetic instance");
  SyntheticSpec spec;
  std::string gen_out = "instance.json";
  gen->add_option("--hubs", spec.hub_count, "hub count (17 small / 30 large)");
  gen->add_option("--orders", spec.order_count, "order count");
  gen->add_option("--customers", spec.customer_count, "customer site count");
  gen->add_option("--region", spec.region, "region extent, miles");
  gen->add_option("--hub-separation", spec.hub_separation, "minimum hub spacing, miles");
  gen->add_option("--trip-length", spec.target_trip, "mean order trip length, miles");
  gen->add_option("--horizon", spec.horizon, "horizon, minutes");
  gen->add_option("--trucks-per-hub", spec.trucks_per_hub, "regular trucks per hub");
  gen->add_option("-o,--output", gen_out, "output instance path");

  // ingest
  auto* ing = app.add_subcommand("ingest", "build an instance from stop records");
  std::string ing_stops, ing_matrix, ing_access, ing_codes, ing_out = "instance.json";
  int ing_hubs = 17;
  Miles ing_sep = 50;
  int ing_auto_trucks = 50, ing_hub_trucks = 10;
  ing->add_option("--stops", ing_stops, "stop-record CSV")->required();
  ing->add_option("--matrix", ing_matrix, "location,location,miles,minutes CSV")->required();
  ing->add_option("--access", ing_access, "access-point histogram CSV (location,count)")->required();
  ing->add_option("--hubs", ing_hubs, "number of hubs to place");
  ing->add_option("--min-separation", ing_sep, "minimum hub separation, miles");
  ing->add_option("--code-map", ing_codes, "status/event code map CSV");
  ing->add_option("--autonomous-trucks", ing_auto_trucks, "autonomous fleet size");
  ing->add_option("--trucks-per-hub", ing_hub_trucks, "regular trucks per hub");
  ing->add_option("-o,--output", ing_out, "output instance path");

  // select
  auto* sel = app.add_subcommand("select", "per-order direct vs. ATHN decision");
  std::string sel_instance, sel_out;
  sel->add_option("instance", sel_instance, "instance file")->required();
  sel->add_option("-o,--output", sel_out, "decision CSV path (default stdout)");

  // solve
  auto* sol = app.add_subcommand("solve", "run the full pipeline and write the schedule");
  std::string sol_instance, sol_out = "schedule.json";
  sol->add_option("instance", sol_instance, "instance file")->required();
  sol->add_option("-o,--output", sol_out, "output schedule path");

  // report
  auto* rep = app.add_subcommand("report", "cost table for an instance");
  std::string rep_instance, rep_csv;
  rep->add_option("instance", rep_instance, "instance file")->required();
  rep->add_option("--csv", rep_csv, "also write the table as CSV");

  // gantt
  auto* gan = app.add_subcommand("gantt", "render a schedule as SVG");
  std::string gan_schedule, gan_out = "schedule.svg";
  gan->add_option("schedule", gan_schedule, "schedule file")->required();
  gan->add_option("-o,--output", gan_out, "output SVG path");

  // sweeps
  auto* swa = app.add_subcommand("sweep-alpha", "cost savings across alpha values");
  std::string swa_instance, swa_csv;
  std::vector<double> swa_alphas{0.25, 0.30, 0.35, 0.40};
  swa->add_option("instance", swa_instance, "instance file")->required();
  swa->add_option("--alphas", swa_alphas, "alpha values");
  swa->add_option("--csv", swa_csv, "also write CSV");

  auto* swd = app.add_subcommand("sweep-delta", "cost savings across flexibility values");
  std::string swd_instance, swd_csv;
  std::vector<Minutes> swd_deltas{30, 60, 90, 120};
  swd->add_option("instance", swd_instance, "instance file")->required();
  swd->add_option("--deltas", swd_deltas, "flexibility values, minutes");
  swd->add_option("--csv", swd_csv, "also write CSV");

  CLI11_PARSE(app, argc, argv);
  if (alpha_opt->count()) g.alpha = alpha_in;
  if (delta_opt->count()) g.delta = delta_in;
  if (trucks_opt->count()) g.trucks = trucks_in;

  try {
    if (gen->parsed()) {
      spec.seed = g.seed;
      if (g.alpha) spec.config.alpha_milli = to_milli(*g.alpha);
      if (g.delta) spec.config.flexibility = *g.delta;
      if (g.trucks) spec.autonomous_trucks = *g.trucks;
      save_instance(generate_instance(spec), gen_out);
      std::cout << "wrote " << gen_out << '\n';
    } else if (ing->parsed()) {
      Config cfg;
      if (g.alpha) cfg.alpha_milli = to_milli(*g.alpha);
      if (g.delta) cfg.flexibility = *g.delta;
      auto inst = build_from_ingest(ing_stops, ing_matrix, ing_access, ing_hubs, ing_sep, ing_codes,
                                    cfg, g.trucks.value_or(ing_auto_trucks), ing_hub_trucks);
      save_instance(inst, ing_out);
      std::cout << "wrote " << ing_out << " (" << inst.orders.size() << " challenging orders)\n";
    } else if (sel->parsed()) {
      auto inst = load_instance(sel_instance);
      apply_overrides(inst, g);
      const auto res = select_all(inst.orders, inst.network, assign_hubs(inst.network), inst.config,
                                  g.serial ? ExecMode::Serial : ExecMode::Parallel);
      std::ostringstream os;
      os << "order_id,mode,direct_cost,athn_cost\n";
      for (const auto& d : res.decisions)
        os << d.order_id << ',' << (d.mode == Mode::ATHN ? "athn" : "direct") << ','
           << d.direct_cost << ',' << d.athn_cost << '\n';
      if (sel_out.empty()) std::cout << os.str();
      else write_file(sel_out, os.str());
      std::cout << "athn: " << res.summary.athn_count << "  direct: " << res.summary.direct_count
                << '\n';
    } else if (sol->parsed()) {
      auto inst = load_instance(sol_instance);
      apply_overrides(inst, g);
      const auto res = run_instance(inst, pipeline_options(g));
      save_schedule(inst, res, sol_out);
      std::cout << "automated orders: " << res.selection.summary.athn_count
                << "  autonomous empty share: " << res.auto_empty_share_pct << "%\n";
      std::cout << render_text(res.cost_table);
      if (res.infeasible) {
        std::cerr << "infeasible: " << res.infeasible_detail << '\n';
        return 1;
      }
    } else if (rep->parsed()) {
      auto inst = load_instance(rep_instance);
      apply_overrides(inst, g);
      const auto res = run_instance(inst, pipeline_options(g));
      std::cout << render_text(res.cost_table);
      if (!rep_csv.empty()) write_file(rep_csv, render_csv(res.cost_table));
      if (res.infeasible) {
        std::cerr << "infeasible: " << res.infeasible_detail << '\n';
        return 1;
      }
    } else if (gan->parsed()) {
      emit_gantt_file(gan_schedule, gan_out);
      std::cout << "wrote " << gan_out << '\n';
    } else if (swa->parsed()) {
      auto inst = load_instance(swa_instance);
      apply_overrides(inst, g);
      SweepOptions opt{g.time_limit, g.seed, g.exact_threshold, !g.serial};
      std::vector<int> millis;
      for (double a : swa_alphas) millis.push_back(to_milli(a));
      const auto rows = sweep_alpha(inst, millis, opt);
      std::cout << render_sweep_text("alpha", rows);
      if (!swa_csv.empty()) write_file(swa_csv, render_sweep_csv("alpha", rows));
    } else if (swd->parsed()) {
      auto inst = load_instance(swd_instance);
      apply_overrides(inst, g);
      SweepOptions opt{g.time_limit, g.seed, g.exact_threshold, !g.serial};
      const auto rows = sweep_delta(inst, swd_deltas, opt);
      std::cout << render_sweep_text("delta", rows);
      if (!swd_csv.empty()) write_file(swd_csv, render_sweep_csv("delta", rows));
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
