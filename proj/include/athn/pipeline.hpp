#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "athn/core_model.hpp"
#include "athn/costing.hpp"
#include "athn/instance.hpp"
#include "athn/scheduler.hpp"
#include "athn/selection.hpp"

namespace athn {

struct PipelineOptions {
  double time_limit_seconds = 10.0;  // per subproblem
  std::uint64_t seed = 1;
  int exact_threshold = 8;  // task count at or below which solve_exact is used
  bool parallel = true;     // OpenMP over hub subproblems; serial path kept for tests
};

struct SolvedSubproblem {
  Subproblem sub;
  Schedule schedule;
  bool used_exact = false;
};

struct PipelineResult {
  SelectionResult selection;
  std::vector<SolvedSubproblem> solved;  // autonomous subproblem first
  bool infeasible = false;
  std::string infeasible_detail;

  Miles auto_loaded_miles = 0;
  Miles auto_empty_miles = 0;
  Miles fl_loaded_miles = 0;
  Miles fl_actual_empty_miles = 0;  // scheduled, vs. the estimated table figure
  int auto_empty_share_pct = 0;

  CostTable cost_table;
};

// Full orchestration: selection, task generation, decomposition, autonomous
// solve, downstream re-chaining, hub solves, costing. Deterministic for a
// fixed seed and options.
PipelineResult run_instance(const InstanceFile& inst, const PipelineOptions& opt);

nlohmann::ordered_json schedule_to_json(const InstanceFile& inst, const PipelineResult& result);
void save_schedule(const InstanceFile& inst, const PipelineResult& result, const std::string& path);

}  // namespace athn
