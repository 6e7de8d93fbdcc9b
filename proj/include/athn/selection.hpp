#pragma once

#include <string>
#include <vector>

#include "athn/core_model.hpp"
#include "athn/types.hpp"

namespace athn {

enum class Mode { Direct, ATHN };

struct ModeDecision {
  std::string order_id;
  Mode mode = Mode::Direct;
  MilliDollars direct_cost = 0;
  MilliDollars athn_cost = 0;
};

struct SelectionSummary {
  int athn_count = 0;
  int direct_count = 0;
  MilliDollars athn_cost_total = 0;    // ATHN route cost of the selected orders
  MilliDollars direct_cost_total = 0;  // direct cost of the direct-served orders
};

struct SelectionResult {
  std::vector<Order> athn_orders;
  std::vector<Order> direct_orders;
  std::vector<ModeDecision> decisions;  // ordered by order id
  SelectionSummary summary;
};

enum class ExecMode { Serial, Parallel };

// Direct round trip vs. hub route with the autonomous leg discounted by
// alpha. Orders whose endpoints share a hub are forced Direct. Ties go
// Direct. The alpha comparison is done in exact integer arithmetic.
ModeDecision select_mode(const Order& order, const Network& net, const HubAssignment& hub_of,
                         const Config& cfg);

SelectionResult select_all(const std::vector<Order>& orders, const Network& net,
                           const HubAssignment& hub_of, const Config& cfg,
                           ExecMode exec = ExecMode::Parallel);

}  // namespace athn
