#include <cstdio>

#include "athn/costing.hpp"
#include "athn/pipeline.hpp"

namespace athn {

namespace {

PipelineOptions to_pipeline(const SweepOptions& opt) {
  PipelineOptions p;
  p.time_limit_seconds = opt.time_limit_seconds;
  p.seed = opt.seed;
  p.exact_threshold = opt.exact_threshold;
  p.parallel = opt.parallel;
  return p;
}

SweepRow make_row(std::string param, const PipelineResult& res, MilliDollars base_savings) {
  SweepRow row;
  row.param = std::move(param);
  row.automated_orders = res.selection.summary.athn_count;
  row.rel_savings_pct = res.cost_table.savings_pct;
  row.savings = res.cost_table.savings;
  row.delta_vs_base_pct =
      base_savings == 0 ? 0.0
                        : 100.0 * static_cast<double>(row.savings - base_savings) /
                              static_cast<double>(base_savings);
  return row;
}

}  // namespace

std::vector<SweepRow> sweep_alpha(const InstanceFile& instance, const std::vector<int>& alpha_millis,
                                  const SweepOptions& opt) {
  std::vector<SweepRow> rows;
  MilliDollars base = 0;
  for (std::size_t i = 0; i < alpha_millis.size(); ++i) {
    InstanceFile inst = instance;
    inst.config.alpha_milli = alpha_millis[i];
    const auto res = run_instance(inst, to_pipeline(opt));
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g%%", alpha_millis[i] / 10.0);
    if (i == 0) base = res.cost_table.savings;
    rows.push_back(make_row(buf, res, base));
  }
  return rows;
}

std::vector<SweepRow> sweep_delta(const InstanceFile& instance, const std::vector<Minutes>& deltas,
                                  const SweepOptions& opt) {
  std::vector<SweepRow> rows;
  MilliDollars base = 0;
  for (std::size_t i = 0; i < deltas.size(); ++i) {
    InstanceFile inst = instance;
    inst.config.flexibility = deltas[i];
    const auto res = run_instance(inst, to_pipeline(opt));
    if (i == 0) base = res.cost_table.savings;
    auto row = make_row(std::to_string(deltas[i]), res, base);
    // A heuristic schedule can lose savings despite extra flexibility; flag it.
    if (!rows.empty() && row.savings < rows.back().savings) row.non_monotone = true;
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace athn
