#pragma once

#include <string>
#include <vector>

#include "athn/types.hpp"

namespace athn {

struct MileagePair {
  Miles loaded = 0;
  Miles empty = 0;
};

struct CostRow {
  std::string label;
  Miles loaded = 0;
  Miles empty = 0;
  Miles total = 0;
  int loaded_pct = 0;  // displayed whole percents, complementary
  int empty_pct = 0;
  MilliDollars loaded_cost_wo = 0;  // cost without autonomy
  MilliDollars empty_cost_wo = 0;
  MilliDollars total_cost_wo = 0;
  int adj_milli = 1000;  // cost adjustment factor, thousandths
  MilliDollars loaded_cost = 0;  // adjusted
  MilliDollars empty_cost = 0;
  MilliDollars total_cost = 0;
};

struct CostTable {
  CostRow current;     // direct service baseline
  CostRow autonomous;  // hub-to-hub legs
  CostRow first_last;  // customer<->hub legs, empties estimated
  Miles athn_total_miles = 0;
  MilliDollars athn_total_cost_wo = 0;
  MilliDollars athn_total_cost = 0;
  Miles savings_miles = 0;
  MilliDollars savings_wo = 0;
  MilliDollars savings = 0;
  int savings_miles_pct = 0;
  int savings_wo_pct = 0;
  int savings_pct = 0;
};

// Display rounding: milli-dollars to whole dollars, half-up.
std::int64_t display_dollars(MilliDollars md);

// Assembles the three-row cost comparison. First/last-mile empty miles are
// estimated as fl_loaded * e / (1 - e); the autonomous row is discounted by
// 1 - alpha.
CostTable build_cost_table(MileagePair current, MileagePair autonomous, Miles fl_loaded,
                           const Config& cfg);

std::string render_text(const CostTable& table);
std::string render_csv(const CostTable& table);

// ---------------------------------------------------------------------------
// Scenario sweeps (full pipeline rerun per point; see pipeline.hpp)

struct SweepRow {
  std::string param;        // alpha or delta rendered for display
  int automated_orders = 0;
  int rel_savings_pct = 0;
  MilliDollars savings = 0;
  double delta_vs_base_pct = 0.0;  // relative to the first row
  bool non_monotone = false;       // flagged for heuristic delta sweeps
};

std::string render_sweep_text(const std::string& param_name, const std::vector<SweepRow>& rows);
std::string render_sweep_csv(const std::string& param_name, const std::vector<SweepRow>& rows);

struct InstanceFile;  // instance.hpp

struct SweepOptions {
  double time_limit_seconds = 10.0;
  std::uint64_t seed = 1;
  int exact_threshold = 8;
  bool parallel = true;
};

std::vector<SweepRow> sweep_alpha(const InstanceFile& instance, const std::vector<int>& alpha_millis,
                                  const SweepOptions& opt);
std::vector<SweepRow> sweep_delta(const InstanceFile& instance, const std::vector<Minutes>& deltas,
                                  const SweepOptions& opt);

}  // namespace athn
