#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "athn/types.hpp"

namespace athn {

struct ScheduledTask {
  std::string task_id;
  int truck = 0;     // 0-based within the subproblem
  int position = 0;  // index in the truck's sequence
  Minutes start = 0;
  Minutes end = 0;
};

enum class SolveStatus { Optimal, Feasible, Infeasible, TimedOut };

const char* status_name(SolveStatus s);

struct Schedule {
  std::vector<ScheduledTask> assignments;  // sorted by (truck, position)
  MilliDollars empty_cost = 0;
  Miles empty_miles = 0;
  SolveStatus status = SolveStatus::Infeasible;
  std::string blocking_task_id;  // set when greedy construction fails
};

struct Violation {
  std::string kind;
  std::string detail;
};

// Re-checks every constraint of a schedule against its subproblem from
// scratch: windows, durations, transitions, task coverage, truck bounds, and
// the reported cost. Empty result means valid.
std::vector<Violation> validate(const Subproblem& sub, const Schedule& schedule);

// Exact minimum-empty-cost schedule by depth-first insertion search.
// Intended for small task counts; returns TimedOut with the incumbent when
// the limit is hit.
Schedule solve_exact(const Subproblem& sub, double time_limit_seconds = 60.0);

// Greedy insertion in pickup order followed by large neighborhood search
// (related removal + greedy reinsertion, non-worsening acceptance).
// Deterministic for a fixed seed as long as the search converges (stall
// stop) before the wall-clock limit.
Schedule solve_heuristic(const Subproblem& sub, double time_limit_seconds, std::uint64_t seed);

struct OracleResult {
  bool feasible = false;
  MilliDollars cost = 0;
};

// Independent ground truth: enumerates all task-to-truck assignments and all
// per-truck orderings, deciding feasibility by earliest-start forward
// propagation. Throws TooLargeError above 8 tasks.
OracleResult brute_force_oracle(const Subproblem& sub);

// After solving the autonomous subproblem, resets each order's last-mile
// pickup time to the actual end of its autonomous task. First-mile pickups
// are untouched.
std::vector<Task> rechain_downstream(const Subproblem& autonomous_sub, const Schedule& schedule,
                                     std::vector<Task> tasks);

}  // namespace athn
