#include "athn/selection.hpp"

#include <algorithm>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace athn {

ModeDecision select_mode(const Order& order, const Network& net, const HubAssignment& hub_of,
                         const Config& cfg) {
  ModeDecision d;
  d.order_id = order.id;
  d.direct_cost = net.cost(order.origin, order.destination) +
                  net.cost(order.destination, order.origin);

  auto hub = [&](int customer) {
    if (net.location(customer).kind == LocationKind::Hub) return customer;
    return hub_of.at(customer);
  };
  const int h1 = hub(order.origin);
  const int h2 = hub(order.destination);
  if (h1 == h2) {
    d.mode = Mode::Direct;
    d.athn_cost = d.direct_cost;
    return d;
  }

  const MilliDollars fl = net.cost(order.origin, h1) + net.cost(h2, order.destination);
  const MilliDollars auto_leg = net.cost(h1, h2);
  // athn = fl + (1 - alpha) * auto_leg, compared exactly; ties go Direct.
  const std::int64_t athn_milli = 1000 * fl + (1000 - cfg.alpha_milli) * auto_leg;
  d.athn_cost = athn_milli / 1000;  // floor keeps the comparison consistent
  d.mode = athn_milli < 1000 * d.direct_cost ? Mode::ATHN : Mode::Direct;
  return d;
}

SelectionResult select_all(const std::vector<Order>& orders, const Network& net,
                           const HubAssignment& hub_of, const Config& cfg, ExecMode exec) {
  SelectionResult res;
  res.decisions.resize(orders.size());

  const auto n = static_cast<std::int64_t>(orders.size());
#ifdef _OPENMP
  if (exec == ExecMode::Parallel) {
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < n; ++i)
      res.decisions[static_cast<std::size_t>(i)] =
          select_mode(orders[static_cast<std::size_t>(i)], net, hub_of, cfg);
  } else
#else
  (void)exec;
#endif
  {
    for (std::int64_t i = 0; i < n; ++i)
      res.decisions[static_cast<std::size_t>(i)] =
          select_mode(orders[static_cast<std::size_t>(i)], net, hub_of, cfg);
  }

  std::vector<std::size_t> idx(orders.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    return res.decisions[a].order_id < res.decisions[b].order_id;
  });

  std::vector<ModeDecision> ordered;
  ordered.reserve(orders.size());
  for (std::size_t i : idx) {
    const auto& d = res.decisions[i];
    if (d.mode == Mode::ATHN) {
      res.athn_orders.push_back(orders[i]);
      res.summary.athn_count++;
      res.summary.athn_cost_total += d.athn_cost;
    } else {
      res.direct_orders.push_back(orders[i]);
      res.summary.direct_count++;
      res.summary.direct_cost_total += d.direct_cost;
    }
    ordered.push_back(d);
  }
  res.decisions = std::move(ordered);
  return res;
}

}  // namespace athn
