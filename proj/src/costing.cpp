#include "athn/costing.hpp"

#include <sstream>

namespace athn {

namespace {

int pct_display(std::int64_t part, std::int64_t whole) {
  if (whole == 0) return 0;
  return static_cast<int>((200 * part + whole) / (2 * whole));  // half-up
}

Miles estimate_fl_empty(Miles fl_loaded, int e_milli) {
  const std::int64_t den = 1000 - e_milli;
  return (fl_loaded * e_milli + den / 2) / den;
}

MilliDollars adjust(MilliDollars cost, int adj_milli) {
  return (cost * adj_milli + 500) / 1000;
}

CostRow make_row(std::string label, Miles loaded, Miles empty, int adj_milli, const Config& cfg) {
  CostRow r;
  r.label = std::move(label);
  r.loaded = loaded;
  r.empty = empty;
  r.total = loaded + empty;
  r.loaded_pct = pct_display(loaded, r.total);
  r.empty_pct = r.total == 0 ? 0 : 100 - r.loaded_pct;
  r.loaded_cost_wo = loaded * cfg.cost_per_mile;
  r.empty_cost_wo = empty * cfg.cost_per_mile;
  r.total_cost_wo = r.loaded_cost_wo + r.empty_cost_wo;
  r.adj_milli = adj_milli;
  r.loaded_cost = adjust(r.loaded_cost_wo, adj_milli);
  r.empty_cost = adjust(r.empty_cost_wo, adj_milli);
  r.total_cost = adjust(r.total_cost_wo, adj_milli);
  return r;
}

}  // namespace

std::int64_t display_dollars(MilliDollars md) {
  if (md >= 0) return (md + 500) / 1000;
  return -((-md + 500) / 1000);
}

CostTable build_cost_table(MileagePair current, MileagePair autonomous, Miles fl_loaded,
                           const Config& cfg) {
  cfg.check();
  if (current.loaded < 0 || current.empty < 0 || autonomous.loaded < 0 || autonomous.empty < 0 ||
      fl_loaded < 0)
    throw ConfigError("mileage inputs must be nonnegative");

  CostTable t;
  t.current = make_row("Current network", current.loaded, current.empty, 1000, cfg);
  t.autonomous = make_row("Autonomous", autonomous.loaded, autonomous.empty,
                          1000 - cfg.alpha_milli, cfg);
  const Miles fl_empty = estimate_fl_empty(fl_loaded, cfg.fl_empty_ratio_milli);
  t.first_last = make_row("First/last mile", fl_loaded, fl_empty, 1000, cfg);

  t.athn_total_miles = t.autonomous.total + t.first_last.total;
  t.athn_total_cost_wo = t.autonomous.total_cost_wo + t.first_last.total_cost_wo;
  t.athn_total_cost = t.autonomous.total_cost + t.first_last.total_cost;

  t.savings_miles = t.current.total - t.athn_total_miles;
  t.savings_wo = t.current.total_cost_wo - t.athn_total_cost_wo;
  t.savings = t.current.total_cost - t.athn_total_cost;
  t.savings_miles_pct = pct_display(t.savings_miles, t.current.total);
  t.savings_wo_pct = pct_display(t.savings_wo, t.current.total_cost_wo);
  t.savings_pct = pct_display(t.savings, t.current.total_cost);
  return t;
}

namespace {

void emit_row_text(std::ostringstream& os, const std::string& group, const CostRow& r) {
  auto line = [&](const char* name, Miles miles, int pct, MilliDollars wo, MilliDollars adj) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "%-28s %-8s %10lld %6d%%  $%10lld   %.2f  $%10lld\n",
                  group.c_str(), name, static_cast<long long>(miles), pct,
                  static_cast<long long>(display_dollars(wo)), r.adj_milli / 1000.0,
                  static_cast<long long>(display_dollars(adj)));
    os << buf;
  };
  line("Loaded", r.loaded, r.loaded_pct, r.loaded_cost_wo, r.loaded_cost);
  line("Empty", r.empty, r.empty_pct, r.empty_cost_wo, r.empty_cost);
  line("Total", r.total, r.total == 0 ? 0 : 100, r.total_cost_wo, r.total_cost);
}

}  // namespace

std::string render_text(const CostTable& t) {
  std::ostringstream os;
  os << "                                          Mileage  % tot   Cost w/o auto  Adj.        Cost\n";
  emit_row_text(os, "Current network", t.current);
  emit_row_text(os, "ATHN  Autonomous", t.autonomous);
  emit_row_text(os, "ATHN  First/last mile", t.first_last);
  char buf[160];
  std::snprintf(buf, sizeof buf, "%-28s %-8s %10lld          $%10lld         $%10lld\n",
                "ATHN", "Total", static_cast<long long>(t.athn_total_miles),
                static_cast<long long>(display_dollars(t.athn_total_cost_wo)),
                static_cast<long long>(display_dollars(t.athn_total_cost)));
  os << buf;
  std::snprintf(buf, sizeof buf, "%-28s %-8s %10lld          $%10lld         $%10lld\n", "Savings",
                "", static_cast<long long>(t.savings_miles),
                static_cast<long long>(display_dollars(t.savings_wo)),
                static_cast<long long>(display_dollars(t.savings)));
  os << buf;
  std::snprintf(buf, sizeof buf, "%-28s %-8s %9d%%          %10d%%         %10d%%\n", "Savings (%)",
                "", t.savings_miles_pct, t.savings_wo_pct, t.savings_pct);
  os << buf;
  return os.str();
}

std::string render_csv(const CostTable& t) {
  std::ostringstream os;
  os << "group,row,mileage,pct_of_total,cost_without_autonomy,cost_adjustment,cost\n";
  auto rows = [&](const std::string& group, const CostRow& r) {
    os << group << ",loaded," << r.loaded << ',' << r.loaded_pct << ','
       << display_dollars(r.loaded_cost_wo) << ',' << r.adj_milli / 1000.0 << ','
       << display_dollars(r.loaded_cost) << '\n';
    os << group << ",empty," << r.empty << ',' << r.empty_pct << ','
       << display_dollars(r.empty_cost_wo) << ',' << r.adj_milli / 1000.0 << ','
       << display_dollars(r.empty_cost) << '\n';
    os << group << ",total," << r.total << ',' << (r.total == 0 ? 0 : 100) << ','
       << display_dollars(r.total_cost_wo) << ',' << r.adj_milli / 1000.0 << ','
       << display_dollars(r.total_cost) << '\n';
  };
  rows("current", t.current);
  rows("athn_autonomous", t.autonomous);
  rows("athn_first_last", t.first_last);
  os << "athn,total," << t.athn_total_miles << ",," << display_dollars(t.athn_total_cost_wo) << ",,"
     << display_dollars(t.athn_total_cost) << '\n';
  os << "savings,," << t.savings_miles << ",," << display_dollars(t.savings_wo) << ",,"
     << display_dollars(t.savings) << '\n';
  os << "savings_pct,," << t.savings_miles_pct << ",," << t.savings_wo_pct << ",," << t.savings_pct
     << '\n';
  return os.str();
}

std::string render_sweep_text(const std::string& param_name, const std::vector<SweepRow>& rows) {
  std::ostringstream os;
  char buf[160];
  std::snprintf(buf, sizeof buf, "%-8s %14s %13s %14s %14s\n", param_name.c_str(), "Autom. orders",
                "Rel. savings", "Cost savings", "vs. base");
  os << buf;
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof buf, "%-8s %14d %12d%%  $%12lld %+13.1f%%%s\n", r.param.c_str(),
                  r.automated_orders, r.rel_savings_pct,
                  static_cast<long long>(display_dollars(r.savings)), r.delta_vs_base_pct,
                  r.non_monotone ? "  (non-monotone)" : "");
    os << buf;
  }
  return os.str();
}

std::string render_sweep_csv(const std::string& param_name, const std::vector<SweepRow>& rows) {
  std::ostringstream os;
  os << param_name << ",automated_orders,rel_savings_pct,savings_dollars,delta_vs_base_pct,non_monotone\n";
  for (const auto& r : rows) {
    os << r.param << ',' << r.automated_orders << ',' << r.rel_savings_pct << ','
       << display_dollars(r.savings) << ',' << r.delta_vs_base_pct << ',' << (r.non_monotone ? 1 : 0)
       << '\n';
  }
  return os.str();
}

}  // namespace athn
