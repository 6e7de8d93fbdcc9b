// Compares the serial reference paths against the OpenMP-parallel ones on a
// generated instance: order selection and the per-hub solve loop.
#include <chrono>
#include <cstdio>

#include "athn/core_model.hpp"
#include "athn/instance.hpp"
#include "athn/pipeline.hpp"
#include "athn/selection.hpp"

using namespace athn;
using Clock = std::chrono::steady_clock;

namespace {

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

}  // namespace

int main(int argc, char** argv) {
  SyntheticSpec spec;
  spec.order_count = argc > 1 ? std::atoi(argv[1]) : 494;
  spec.seed = 7;
  const auto inst = generate_instance(spec);
  const auto hub_of = assign_hubs(inst.network);

  // Selection kernel: many independent per-order decisions.
  constexpr int kSelectReps = 200;
  auto t0 = Clock::now();
  SelectionResult serial_sel;
  for (int i = 0; i < kSelectReps; ++i)
    serial_sel = select_all(inst.orders, inst.network, hub_of, inst.config, ExecMode::Serial);
  const double serial_sel_s = seconds_since(t0);

  t0 = Clock::now();
  SelectionResult parallel_sel;
  for (int i = 0; i < kSelectReps; ++i)
    parallel_sel = select_all(inst.orders, inst.network, hub_of, inst.config, ExecMode::Parallel);
  const double parallel_sel_s = seconds_since(t0);

  const bool sel_match = serial_sel.summary.athn_count == parallel_sel.summary.athn_count &&
                         serial_sel.summary.direct_cost_total == parallel_sel.summary.direct_cost_total;

  // Full pipeline: hub subproblems solved serially vs. in parallel.
  PipelineOptions opt;
  opt.time_limit_seconds = 5.0;
  opt.seed = 7;

  opt.parallel = false;
  t0 = Clock::now();
  const auto serial_run = run_instance(inst, opt);
  const double serial_run_s = seconds_since(t0);

  opt.parallel = true;
  t0 = Clock::now();
  const auto parallel_run = run_instance(inst, opt);
  const double parallel_run_s = seconds_since(t0);

  MilliDollars serial_cost = 0, parallel_cost = 0;
  for (const auto& s : serial_run.solved) serial_cost += s.schedule.empty_cost;
  for (const auto& s : parallel_run.solved) parallel_cost += s.schedule.empty_cost;

  std::printf("selection   serial %8.3fs  parallel %8.3fs  speedup %.2fx  match=%s\n",
              serial_sel_s, parallel_sel_s, serial_sel_s / parallel_sel_s,
              sel_match ? "yes" : "NO");
  std::printf("pipeline    serial %8.3fs  parallel %8.3fs  speedup %.2fx  match=%s\n",
              serial_run_s, parallel_run_s, serial_run_s / parallel_run_s,
              serial_cost == parallel_cost ? "yes" : "NO");
  return sel_match && serial_cost == parallel_cost ? 0 : 1;
}
