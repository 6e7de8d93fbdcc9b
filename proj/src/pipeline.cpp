#include "athn/pipeline.hpp"

#include <algorithm>
#include <fstream>
#include <map>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace athn {

namespace {

Miles cost_to_miles(MilliDollars cost, const Config& cfg) {
  return (cost + cfg.cost_per_mile / 2) / cfg.cost_per_mile;
}

SolvedSubproblem solve_one(Subproblem sub, const PipelineOptions& opt, std::uint64_t seed) {
  SolvedSubproblem out;
  out.used_exact = static_cast<int>(sub.tasks.size()) <= opt.exact_threshold;
  out.schedule = out.used_exact ? solve_exact(sub, opt.time_limit_seconds)
                                : solve_heuristic(sub, opt.time_limit_seconds, seed);
  out.sub = std::move(sub);
  return out;
}

}  // namespace

PipelineResult run_instance(const InstanceFile& inst, const PipelineOptions& opt) {
  const auto& net = inst.network;
  const auto& cfg = inst.config;
  cfg.check();

  PipelineResult res;
  const auto hub_of = assign_hubs(net);
  res.selection = select_all(inst.orders, net, hub_of, cfg,
                             opt.parallel ? ExecMode::Parallel : ExecMode::Serial);

  auto tasks = generate_all_tasks(res.selection.athn_orders, net, hub_of, cfg);
  auto subs = decompose(tasks, inst.fleet, net, cfg);

  // Autonomous network first; its actual end times re-chain the last miles.
  std::vector<Subproblem> hub_subs;
  for (auto& sp : subs) {
    if (sp.kind == SubproblemKind::AutonomousNet) {
      auto solved = solve_one(std::move(sp), opt, opt.seed);
      if (solved.schedule.status == SolveStatus::Infeasible) {
        res.infeasible = true;
        res.infeasible_detail = "autonomous network";
        if (!solved.schedule.blocking_task_id.empty())
          res.infeasible_detail += " (task " + solved.schedule.blocking_task_id + ")";
      } else {
        tasks = rechain_downstream(solved.sub, solved.schedule, std::move(tasks));
      }
      res.solved.push_back(std::move(solved));
    }
  }
  if (!res.infeasible) {
    auto resubs = decompose(tasks, inst.fleet, net, cfg);
    for (auto& sp : resubs) {
      if (sp.kind == SubproblemKind::HubLocal) hub_subs.push_back(std::move(sp));
    }
  }

  std::vector<SolvedSubproblem> hub_solved(hub_subs.size());
  const auto n = static_cast<std::int64_t>(hub_subs.size());
#ifdef _OPENMP
  if (opt.parallel) {
#pragma omp parallel for schedule(dynamic)
    for (std::int64_t i = 0; i < n; ++i)
      hub_solved[static_cast<std::size_t>(i)] =
          solve_one(std::move(hub_subs[static_cast<std::size_t>(i)]), opt,
                    opt.seed + 1 + static_cast<std::uint64_t>(i));
  } else
#endif
  {
    for (std::int64_t i = 0; i < n; ++i)
      hub_solved[static_cast<std::size_t>(i)] =
          solve_one(std::move(hub_subs[static_cast<std::size_t>(i)]), opt,
                    opt.seed + 1 + static_cast<std::uint64_t>(i));
  }
  for (auto& s : hub_solved) {
    if (s.schedule.status == SolveStatus::Infeasible && !res.infeasible) {
      res.infeasible = true;
      res.infeasible_detail = "hub " + net.location(s.sub.hub).id;
      if (!s.schedule.blocking_task_id.empty())
        res.infeasible_detail += " (task " + s.schedule.blocking_task_id + ")";
    }
    res.solved.push_back(std::move(s));
  }

  // Mileage accounting for the selected (automated) orders.
  MileagePair current{0, 0};
  for (const auto& o : res.selection.athn_orders) {
    current.loaded += cost_to_miles(net.cost(o.origin, o.destination), cfg);
    current.empty += cost_to_miles(net.cost(o.destination, o.origin), cfg);
  }
  for (const auto& o : res.selection.athn_orders) {
    const int h1 = net.location(o.origin).kind == LocationKind::Hub ? o.origin : hub_of.at(o.origin);
    const int h2 = net.location(o.destination).kind == LocationKind::Hub ? o.destination
                                                                         : hub_of.at(o.destination);
    res.auto_loaded_miles += cost_to_miles(net.cost(h1, h2), cfg);
    res.fl_loaded_miles += cost_to_miles(net.cost(o.origin, h1), cfg) +
                           cost_to_miles(net.cost(h2, o.destination), cfg);
  }
  for (const auto& s : res.solved) {
    if (s.sub.kind == SubproblemKind::AutonomousNet) res.auto_empty_miles += s.schedule.empty_miles;
    else res.fl_actual_empty_miles += s.schedule.empty_miles;
  }
  const Miles auto_total = res.auto_loaded_miles + res.auto_empty_miles;
  res.auto_empty_share_pct =
      auto_total == 0 ? 0 : static_cast<int>((200 * res.auto_empty_miles + auto_total) / (2 * auto_total));

  res.cost_table = build_cost_table(current, {res.auto_loaded_miles, res.auto_empty_miles},
                                    res.fl_loaded_miles, cfg);
  return res;
}

nlohmann::ordered_json schedule_to_json(const InstanceFile& inst, const PipelineResult& result) {
  using nlohmann::ordered_json;
  const auto& net = inst.network;
  const auto S = inst.config.service_time;

  ordered_json j;
  j["schema_version"] = 1;

  ordered_json summary;
  summary["status"] = result.infeasible ? "infeasible" : "ok";
  if (result.infeasible) summary["detail"] = result.infeasible_detail;
  summary["automated_orders"] = result.selection.summary.athn_count;
  summary["direct_orders"] = result.selection.summary.direct_count;
  summary["auto_loaded_miles"] = result.auto_loaded_miles;
  summary["auto_empty_miles"] = result.auto_empty_miles;
  summary["auto_empty_share_pct"] = result.auto_empty_share_pct;
  summary["fl_loaded_miles"] = result.fl_loaded_miles;
  summary["fl_scheduled_empty_miles"] = result.fl_actual_empty_miles;
  j["summary"] = std::move(summary);

  j["subproblems"] = ordered_json::array();
  for (const auto& s : result.solved) {
    ordered_json sp;
    sp["kind"] = s.sub.kind == SubproblemKind::AutonomousNet ? "autonomous" : "hub_local";
    if (s.sub.kind == SubproblemKind::HubLocal) sp["hub"] = net.location(s.sub.hub).id;
    sp["truck_class"] = s.sub.truck_class == TruckClass::Autonomous ? "autonomous" : "regular";
    sp["truck_count"] = s.sub.truck_count;
    sp["solver"] = s.used_exact ? "exact" : "heuristic";
    sp["status"] = status_name(s.schedule.status);
    sp["empty_cost"] = s.schedule.empty_cost;
    sp["empty_miles"] = s.schedule.empty_miles;

    std::map<std::string, const Task*> task_by_id;
    for (const auto& t : s.sub.tasks) task_by_id[t.id] = &t;

    std::map<int, std::vector<const ScheduledTask*>> by_truck;
    for (const auto& a : s.schedule.assignments) by_truck[a.truck].push_back(&a);

    sp["trucks"] = ordered_json::array();
    for (auto& [truck, list] : by_truck) {
      std::sort(list.begin(), list.end(), [](const ScheduledTask* a, const ScheduledTask* b) {
        return a->position < b->position;
      });
      ordered_json jt;
      jt["index"] = truck;
      jt["tasks"] = ordered_json::array();
      jt["relocations"] = ordered_json::array();
      for (std::size_t i = 0; i < list.size(); ++i) {
        const auto* a = list[i];
        const auto* t = task_by_id.at(a->task_id);
        ordered_json ja;
        ja["task_id"] = a->task_id;
        ja["order_id"] = t->order_id;
        ja["leg"] = leg_name(t->leg);
        ja["origin"] = net.location(t->origin).id;
        ja["destination"] = net.location(t->destination).id;
        ja["start"] = a->start;
        ja["load_end"] = a->start + S;
        ja["ship_end"] = a->end - S;
        ja["end"] = a->end;
        jt["tasks"].push_back(std::move(ja));
        if (i + 1 < list.size()) {
          const auto* b = list[i + 1];
          const auto* tb = task_by_id.at(b->task_id);
          if (t->destination != tb->origin) {
            ordered_json jr;
            jr["from"] = net.location(t->destination).id;
            jr["to"] = net.location(tb->origin).id;
            jr["start"] = a->end;
            jr["end"] = a->end + net.time(t->destination, tb->origin);
            jt["relocations"].push_back(std::move(jr));
          }
        }
      }
      sp["trucks"].push_back(std::move(jt));
    }
    j["subproblems"].push_back(std::move(sp));
  }
  return j;
}

void save_schedule(const InstanceFile& inst, const PipelineResult& result, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path);
  out << schedule_to_json(inst, result).dump(2) << '\n';
}

}  // namespace athn
