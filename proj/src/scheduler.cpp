#include "athn/scheduler.hpp"

#include <algorithm>
#include <chrono>
#include <limits>
#include <map>
#include <numeric>
#include <optional>
#include <set>

#include "athn/rng.hpp"

namespace athn {

const char* status_name(SolveStatus s) {
  switch (s) {
    case SolveStatus::Optimal: return "optimal";
    case SolveStatus::Feasible: return "feasible";
    case SolveStatus::Infeasible: return "infeasible";
    case SolveStatus::TimedOut: return "timed_out";
  }
  return "?";
}

namespace {

using Clock = std::chrono::steady_clock;

struct CompiledTask {
  int origin = -1;
  int dest = -1;
  Minutes dur = 0;
  Minutes pickup = 0;
  Minutes wmin = 0;  // max(0, pickup - flexibility)
  Minutes wmax = 0;  // pickup + flexibility
};

struct Compiled {
  const Subproblem* sub = nullptr;
  std::vector<CompiledTask> tasks;
  int trucks = 0;  // capped at task count, trucks are interchangeable

  Minutes transition_time(int a, int b) const {
    return sub->network->time(tasks[static_cast<std::size_t>(a)].dest,
                              tasks[static_cast<std::size_t>(b)].origin);
  }
  MilliDollars link_cost(int a, int b) const {
    return sub->network->cost(tasks[static_cast<std::size_t>(a)].dest,
                              tasks[static_cast<std::size_t>(b)].origin);
  }
};

Compiled compile(const Subproblem& sub) {
  if (!sub.network || !sub.config) throw SchemaError("subproblem missing network or config");
  Compiled c;
  c.sub = &sub;
  c.trucks = std::min<int>(sub.truck_count, static_cast<int>(sub.tasks.size()));
  const auto& cfg = *sub.config;
  c.tasks.reserve(sub.tasks.size());
  for (const auto& t : sub.tasks) {
    CompiledTask ct;
    ct.origin = t.origin;
    ct.dest = t.destination;
    ct.dur = task_duration(t, *sub.network, cfg);
    ct.pickup = t.pickup_time;
    ct.wmin = std::max<Minutes>(0, t.pickup_time - cfg.flexibility);
    ct.wmax = t.pickup_time + cfg.flexibility;
    c.tasks.push_back(ct);
  }
  return c;
}

// Earliest feasible start times for one truck's sequence, or nullopt.
// Starting each task as early as possible is canonical: delaying a task never
// helps the feasibility of its successors.
std::optional<std::vector<Minutes>> propagate(const Compiled& c, const std::vector<int>& seq) {
  std::vector<Minutes> starts(seq.size());
  Minutes prev_end = 0;
  for (std::size_t i = 0; i < seq.size(); ++i) {
    const auto& ct = c.tasks[static_cast<std::size_t>(seq[i])];
    Minutes earliest = ct.wmin;
    if (i > 0) earliest = std::max(earliest, prev_end + c.transition_time(seq[i - 1], seq[i]));
    if (earliest > ct.wmax) return std::nullopt;
    starts[i] = earliest;
    prev_end = earliest + ct.dur;
  }
  return starts;
}

bool chain_feasible(const Compiled& c, const std::vector<int>& seq) {
  Minutes prev_end = 0;
  for (std::size_t i = 0; i < seq.size(); ++i) {
    const auto& ct = c.tasks[static_cast<std::size_t>(seq[i])];
    Minutes earliest = ct.wmin;
    if (i > 0) earliest = std::max(earliest, prev_end + c.transition_time(seq[i - 1], seq[i]));
    if (earliest > ct.wmax) return false;
    prev_end = earliest + ct.dur;
  }
  return true;
}

MilliDollars seq_cost(const Compiled& c, const std::vector<int>& seq) {
  MilliDollars cost = 0;
  for (std::size_t i = 1; i < seq.size(); ++i) cost += c.link_cost(seq[i - 1], seq[i]);
  return cost;
}

MilliDollars total_cost(const Compiled& c, const std::vector<std::vector<int>>& seqs) {
  MilliDollars cost = 0;
  for (const auto& s : seqs) cost += seq_cost(c, s);
  return cost;
}

Miles cost_to_miles(MilliDollars cost, const Config& cfg) {
  return (cost + cfg.cost_per_mile / 2) / cfg.cost_per_mile;
}

Schedule build_schedule(const Subproblem& sub, const Compiled& c,
                        const std::vector<std::vector<int>>& seqs, SolveStatus status) {
  Schedule out;
  out.status = status;
  for (std::size_t k = 0; k < seqs.size(); ++k) {
    auto starts = propagate(c, seqs[k]);
    if (!starts) throw Error("internal: accepted sequence fails propagation");
    for (std::size_t p = 0; p < seqs[k].size(); ++p) {
      const int ti = seqs[k][p];
      ScheduledTask st;
      st.task_id = sub.tasks[static_cast<std::size_t>(ti)].id;
      st.truck = static_cast<int>(k);
      st.position = static_cast<int>(p);
      st.start = (*starts)[p];
      st.end = st.start + c.tasks[static_cast<std::size_t>(ti)].dur;
      out.assignments.push_back(std::move(st));
    }
  }
  out.empty_cost = total_cost(c, seqs);
  out.empty_miles = cost_to_miles(out.empty_cost, *sub.config);
  return out;
}

// Tasks ordered by (pickup time, id) for insertion and construction.
std::vector<int> pickup_order(const Subproblem& sub) {
  std::vector<int> order(sub.tasks.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    const auto& ta = sub.tasks[static_cast<std::size_t>(a)];
    const auto& tb = sub.tasks[static_cast<std::size_t>(b)];
    if (ta.pickup_time != tb.pickup_time) return ta.pickup_time < tb.pickup_time;
    return ta.id < tb.id;
  });
  return order;
}

// ---------------------------------------------------------------------------
// Exact search: tasks are inserted one at a time, each at every position of
// every truck. Every (assignment, per-truck ordering) pair is generated
// exactly once; infeasible partial chains prune the subtree, which is sound
// because removing a task from a feasible chain keeps it feasible.
struct ExactSearch {
  const Compiled& c;
  std::vector<int> order;
  std::vector<std::vector<int>> seqs;
  MilliDollars best_cost = std::numeric_limits<MilliDollars>::max();
  std::vector<std::vector<int>> best_seqs;
  bool found = false;
  bool timed_out = false;
  Clock::time_point deadline;
  std::uint64_t nodes = 0;

  explicit ExactSearch(const Compiled& compiled) : c(compiled) {}

  void run(int depth) {
    if (timed_out) return;
    if ((++nodes & 0x3ff) == 0 && Clock::now() > deadline) {
      timed_out = true;
      return;
    }
    if (depth == static_cast<int>(order.size())) {
      const auto cost = total_cost(c, seqs);
      if (!found || cost < best_cost) {
        found = true;
        best_cost = cost;
        best_seqs = seqs;
      }
      return;
    }
    const int task = order[static_cast<std::size_t>(depth)];
    bool tried_empty = false;
    for (auto& seq : seqs) {
      if (seq.empty()) {
        if (tried_empty) continue;  // trucks are interchangeable
        tried_empty = true;
      }
      for (std::size_t pos = 0; pos <= seq.size(); ++pos) {
        seq.insert(seq.begin() + static_cast<std::ptrdiff_t>(pos), task);
        if (chain_feasible(c, seq)) run(depth + 1);
        seq.erase(seq.begin() + static_cast<std::ptrdiff_t>(pos));
        if (timed_out) return;
      }
    }
  }
};

// ---------------------------------------------------------------------------
// Greedy insertion helpers shared by construction and LNS reinsertion.

struct InsertionSpot {
  int truck = -1;
  std::size_t pos = 0;
  MilliDollars delta = 0;
};

std::optional<InsertionSpot> best_insertion(const Compiled& c,
                                            const std::vector<std::vector<int>>& seqs, int task) {
  std::optional<InsertionSpot> best;
  for (std::size_t k = 0; k < seqs.size(); ++k) {
    auto seq = seqs[k];
    const auto base = seq_cost(c, seq);
    for (std::size_t pos = 0; pos <= seq.size(); ++pos) {
      seq.insert(seq.begin() + static_cast<std::ptrdiff_t>(pos), task);
      if (chain_feasible(c, seq)) {
        const auto delta = seq_cost(c, seq) - base;
        if (!best || delta < best->delta)
          best = InsertionSpot{static_cast<int>(k), pos, delta};
      }
      seq.erase(seq.begin() + static_cast<std::ptrdiff_t>(pos));
    }
  }
  return best;
}

// Last-resort placement: re-sequence one truck's whole load together with the
// new task. Only attempted for short sequences.
bool rescue_insert(const Compiled& c, std::vector<std::vector<int>>& seqs, int task) {
  std::optional<std::pair<MilliDollars, std::pair<int, std::vector<int>>>> best;
  for (std::size_t k = 0; k < seqs.size(); ++k) {
    if (seqs[k].size() > 6) continue;
    std::vector<int> pool = seqs[k];
    pool.push_back(task);
    std::sort(pool.begin(), pool.end());
    const auto base = seq_cost(c, seqs[k]);
    do {
      if (!chain_feasible(c, pool)) continue;
      const auto delta = seq_cost(c, pool) - base;
      if (!best || delta < best->first)
        best = {delta, {static_cast<int>(k), pool}};
    } while (std::next_permutation(pool.begin(), pool.end()));
  }
  if (!best) return false;
  seqs[static_cast<std::size_t>(best->second.first)] = best->second.second;
  return true;
}

void shuffle(std::vector<int>& v, Rng& rng) {
  for (std::size_t i = v.size(); i > 1; --i)
    std::swap(v[i - 1], v[static_cast<std::size_t>(rng.below(i))]);
}

// Greedy reinsertion of a task pool; returns the tasks that found no spot.
std::vector<int> insert_all(const Compiled& c, std::vector<std::vector<int>>& seqs,
                            const std::vector<int>& pool) {
  std::vector<int> failed;
  for (int task : pool) {
    if (auto spot = best_insertion(c, seqs, task)) {
      auto& seq = seqs[static_cast<std::size_t>(spot->truck)];
      seq.insert(seq.begin() + static_cast<std::ptrdiff_t>(spot->pos), task);
    } else {
      failed.push_back(task);
    }
  }
  return failed;
}

// Replaces each short truck sequence by its cheapest feasible permutation.
void polish_trucks(const Compiled& c, std::vector<std::vector<int>>& seqs) {
  for (auto& seq : seqs) {
    if (seq.size() < 3 || seq.size() > 7) continue;
    std::vector<int> pool = seq;
    std::sort(pool.begin(), pool.end());
    MilliDollars best = seq_cost(c, seq);
    std::vector<int> best_seq = seq;
    do {
      if (!chain_feasible(c, pool)) continue;
      const auto cost = seq_cost(c, pool);
      if (cost < best) {
        best = cost;
        best_seq = pool;
      }
    } while (std::next_permutation(pool.begin(), pool.end()));
    seq = best_seq;
  }
}

}  // namespace

// ---------------------------------------------------------------------------

std::vector<Violation> validate(const Subproblem& sub, const Schedule& schedule) {
  std::vector<Violation> out;
  const auto c = compile(sub);
  const auto& cfg = *sub.config;

  std::map<std::string, int> task_index;
  for (std::size_t i = 0; i < sub.tasks.size(); ++i)
    task_index[sub.tasks[i].id] = static_cast<int>(i);

  std::map<std::string, int> seen;
  std::map<int, std::vector<const ScheduledTask*>> by_truck;
  for (const auto& a : schedule.assignments) {
    auto it = task_index.find(a.task_id);
    if (it == task_index.end()) {
      out.push_back({"unknown_task", a.task_id});
      continue;
    }
    if (++seen[a.task_id] > 1) out.push_back({"duplicate_assignment", a.task_id});
    if (a.truck < 0 || a.truck >= sub.truck_count)
      out.push_back({"truck_index", a.task_id + " truck " + std::to_string(a.truck)});
    const auto& ct = c.tasks[static_cast<std::size_t>(it->second)];
    if (a.end - a.start != ct.dur)
      out.push_back({"duration", a.task_id + " length " + std::to_string(a.end - a.start) +
                                     " expected " + std::to_string(ct.dur)});
    if (a.start < ct.pickup - cfg.flexibility || a.start > ct.wmax || a.start < 0)
      out.push_back({"window", a.task_id + " start " + std::to_string(a.start)});
    by_truck[a.truck].push_back(&a);
  }
  for (const auto& t : sub.tasks) {
    if (!seen.count(t.id)) out.push_back({"unassigned_task", t.id});
  }

  MilliDollars recomputed = 0;
  for (auto& [truck, list] : by_truck) {
    std::sort(list.begin(), list.end(),
              [](const ScheduledTask* a, const ScheduledTask* b) { return a->position < b->position; });
    for (std::size_t i = 0; i < list.size(); ++i) {
      if (list[i]->position != static_cast<int>(i))
        out.push_back({"position", list[i]->task_id});
      if (i == 0) continue;
      auto pit = task_index.find(list[i - 1]->task_id);
      auto cit = task_index.find(list[i]->task_id);
      if (pit == task_index.end() || cit == task_index.end()) continue;
      const auto gap = c.transition_time(pit->second, cit->second);
      if (list[i]->start < list[i - 1]->end + gap)
        out.push_back({"overlap", list[i - 1]->task_id + " -> " + list[i]->task_id});
      recomputed += c.link_cost(pit->second, cit->second);
    }
  }
  if (recomputed != schedule.empty_cost)
    out.push_back({"cost_mismatch", "reported " + std::to_string(schedule.empty_cost) +
                                        " recomputed " + std::to_string(recomputed)});
  return out;
}

Schedule solve_exact(const Subproblem& sub, double time_limit_seconds) {
  if (sub.tasks.empty()) {
    Schedule s;
    s.status = SolveStatus::Optimal;
    return s;
  }
  if (sub.truck_count == 0) throw NoTrucksError("subproblem has tasks but no trucks");

  const auto c = compile(sub);
  ExactSearch search(c);
  search.order = pickup_order(sub);
  search.seqs.assign(static_cast<std::size_t>(c.trucks), {});
  search.deadline = Clock::now() + std::chrono::duration_cast<Clock::duration>(
                                       std::chrono::duration<double>(time_limit_seconds));
  search.run(0);

  if (!search.found) {
    Schedule s;
    s.status = search.timed_out ? SolveStatus::TimedOut : SolveStatus::Infeasible;
    return s;
  }
  return build_schedule(sub, c, search.best_seqs,
                        search.timed_out ? SolveStatus::TimedOut : SolveStatus::Optimal);
}

Schedule solve_heuristic(const Subproblem& sub, double time_limit_seconds, std::uint64_t seed) {
  if (sub.tasks.empty()) {
    Schedule s;
    s.status = SolveStatus::Optimal;
    return s;
  }
  if (sub.truck_count == 0) throw NoTrucksError("subproblem has tasks but no trucks");

  const auto c = compile(sub);
  const auto deadline = Clock::now() + std::chrono::duration_cast<Clock::duration>(
                                           std::chrono::duration<double>(time_limit_seconds));

  const int n = static_cast<int>(sub.tasks.size());
  Rng rng(seed);

  auto by_pickup = [&](int a, int b) {
    const auto& ta = sub.tasks[static_cast<std::size_t>(a)];
    const auto& tb = sub.tasks[static_cast<std::size_t>(b)];
    if (ta.pickup_time != tb.pickup_time) return ta.pickup_time < tb.pickup_time;
    return ta.id < tb.id;
  };

  // Greedy construction in pickup order; tasks that fit nowhere are set
  // aside and recovered by the repair phase below.
  std::vector<std::vector<int>> seqs(static_cast<std::size_t>(c.trucks));
  std::vector<int> unplaced;
  for (int task : pickup_order(sub)) {
    if (auto spot = best_insertion(c, seqs, task)) {
      auto& seq = seqs[static_cast<std::size_t>(spot->truck)];
      seq.insert(seq.begin() + static_cast<std::ptrdiff_t>(spot->pos), task);
    } else if (!rescue_insert(c, seqs, task)) {
      unplaced.push_back(task);
    }
  }

  // Repair: eject random placed tasks to make room for the leftovers.
  for (std::uint64_t iter = 0; iter < 50'000 && !unplaced.empty(); ++iter) {
    if ((iter & 0xff) == 0 && Clock::now() > deadline) break;
    std::vector<int> placed;
    for (const auto& seq : seqs) placed.insert(placed.end(), seq.begin(), seq.end());
    if (placed.empty()) break;
    const int cap = std::min(8, static_cast<int>(placed.size()));
    const int q = cap < 2 ? cap : static_cast<int>(rng.range(2, cap));
    std::set<int> removed;
    while (static_cast<int>(removed.size()) < q)
      removed.insert(placed[static_cast<std::size_t>(rng.below(placed.size()))]);

    auto trial = seqs;
    for (auto& seq : trial) {
      seq.erase(std::remove_if(seq.begin(), seq.end(),
                               [&](int t) { return removed.count(t) > 0; }),
                seq.end());
    }
    std::vector<int> pool = unplaced;
    pool.insert(pool.end(), removed.begin(), removed.end());
    if (rng.below(2)) std::sort(pool.begin(), pool.end(), by_pickup);
    else shuffle(pool, rng);
    auto failed = insert_all(c, trial, pool);
    if (failed.size() < unplaced.size()) {
      seqs = std::move(trial);
      unplaced = std::move(failed);
    }
  }
  if (!unplaced.empty()) {
    Schedule s;
    s.status = SolveStatus::Infeasible;
    s.blocking_task_id = sub.tasks[static_cast<std::size_t>(unplaced.front())].id;
    return s;
  }

  // LNS: ruin and recreate with non-worsening acceptance. Removal alternates
  // between a random subset and the neighborhood of a random seed task; for
  // small instances the full task set may be ruined, which acts as a restart.
  auto best = seqs;
  auto best_cost = total_cost(c, seqs);
  if (n >= 3 && best_cost > 0) {
    const int qmax = std::min(8, n);
    const std::uint64_t stall_limit = 2000 + 20 * static_cast<std::uint64_t>(n);
    const std::uint64_t max_iters = 2'000'000;
    auto cur = seqs;
    auto cur_cost = best_cost;
    std::uint64_t stall = 0;
    for (std::uint64_t iter = 0; iter < max_iters && stall < stall_limit; ++iter) {
      if ((iter & 0xff) == 0 && Clock::now() > deadline) break;

      const int q = static_cast<int>(rng.range(2, qmax));
      std::set<int> removed;
      if (rng.below(2)) {
        while (static_cast<int>(removed.size()) < q)
          removed.insert(static_cast<int>(rng.below(static_cast<std::uint64_t>(n))));
      } else {
        // Relatedness by endpoint proximity to a random seed task.
        const int seed_task = static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
        std::vector<std::pair<MilliDollars, int>> related;
        related.reserve(static_cast<std::size_t>(n));
        const auto& st = c.tasks[static_cast<std::size_t>(seed_task)];
        for (int t = 0; t < n; ++t) {
          const auto& tt = c.tasks[static_cast<std::size_t>(t)];
          const auto score = sub.network->cost(st.origin, tt.origin) +
                             sub.network->cost(st.dest, tt.dest);
          related.emplace_back(score, t);
        }
        std::sort(related.begin(), related.end());
        for (int i = 0; i < q && i < n; ++i)
          removed.insert(related[static_cast<std::size_t>(i)].second);
      }

      auto trial = cur;
      for (auto& seq : trial) {
        seq.erase(std::remove_if(seq.begin(), seq.end(),
                                 [&](int t) { return removed.count(t) > 0; }),
                  seq.end());
      }
      std::vector<int> to_insert(removed.begin(), removed.end());
      if (rng.below(2)) std::sort(to_insert.begin(), to_insert.end(), by_pickup);
      else shuffle(to_insert, rng);

      if (!insert_all(c, trial, to_insert).empty()) {
        ++stall;
        continue;
      }
      const auto trial_cost = total_cost(c, trial);
      if (trial_cost <= cur_cost) {
        cur = std::move(trial);
        cur_cost = trial_cost;
        if (cur_cost < best_cost) {
          best = cur;
          best_cost = cur_cost;
          stall = 0;
          continue;
        }
      }
      ++stall;
      if (best_cost == 0) break;
    }
  }
  polish_trucks(c, best);
  return build_schedule(sub, c, best, SolveStatus::Feasible);
}

OracleResult brute_force_oracle(const Subproblem& sub) {
  const int n = static_cast<int>(sub.tasks.size());
  if (n > 8) throw TooLargeError("oracle limited to 8 tasks");
  if (n == 0) return {true, 0};
  if (sub.truck_count == 0) return {false, 0};

  const auto c = compile(sub);
  const int trucks = c.trucks;

  // Minimum feasible cost of one truck's task set over all orderings.
  auto best_truck_cost = [&](std::vector<int> pool) -> std::optional<MilliDollars> {
    if (pool.empty()) return MilliDollars{0};
    std::sort(pool.begin(), pool.end());
    std::optional<MilliDollars> best;
    do {
      if (!chain_feasible(c, pool)) continue;
      const auto cost = seq_cost(c, pool);
      if (!best || cost < *best) best = cost;
    } while (std::next_permutation(pool.begin(), pool.end()));
    return best;
  };

  std::optional<MilliDollars> best;
  std::vector<int> assign(static_cast<std::size_t>(n), 0);
  while (true) {
    std::vector<std::vector<int>> pools(static_cast<std::size_t>(trucks));
    for (int t = 0; t < n; ++t) pools[static_cast<std::size_t>(assign[static_cast<std::size_t>(t)])].push_back(t);
    MilliDollars cost = 0;
    bool feasible = true;
    for (auto& pool : pools) {
      auto bc = best_truck_cost(pool);
      if (!bc) {
        feasible = false;
        break;
      }
      cost += *bc;
    }
    if (feasible && (!best || cost < *best)) best = cost;

    int i = 0;
    while (i < n && ++assign[static_cast<std::size_t>(i)] == trucks) {
      assign[static_cast<std::size_t>(i)] = 0;
      ++i;
    }
    if (i == n) break;
  }
  if (!best) return {false, 0};
  return {true, *best};
}

std::vector<Task> rechain_downstream(const Subproblem& autonomous_sub, const Schedule& schedule,
                                     std::vector<Task> tasks) {
  std::map<std::string, std::string> task_order;  // autonomous task id -> order id
  for (const auto& t : autonomous_sub.tasks) {
    if (t.leg == Leg::Autonomous) task_order[t.id] = t.order_id;
  }
  std::map<std::string, Minutes> order_end;
  for (const auto& a : schedule.assignments) {
    auto it = task_order.find(a.task_id);
    if (it != task_order.end()) order_end[it->second] = a.end;
  }
  for (auto& t : tasks) {
    if (t.leg != Leg::LastMile) continue;
    auto it = order_end.find(t.order_id);
    if (it != order_end.end()) t.pickup_time = it->second;
  }
  return tasks;
}

}  // namespace athn
