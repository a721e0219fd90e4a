#pragma once

#include <memory>
#include <span>
#include <string>
#include <vector>

#include "lsfrp/commodity.hpp"
#include "lsfrp/lp/linear_model.hpp"
#include "lsfrp/reach_index.hpp"
#include "lsfrp/solution.hpp"

namespace lsfrp {

/// Single-ship pricing problem: maximise profit minus the price of every visited
/// node (start visit included) over v_s -> sink paths avoiding forbidden visits.
struct PricingRequest {
  ShipIdx ship = kNoIndex;
  std::vector<double> node_price;  // per visit; empty means all zero
  std::vector<char> forbidden;     // per visit; empty means none
  double time_limit_seconds = lp::kInf;
};

/// A ship path with its exact cargo plan; `profit` carries no duals.
struct PricedPath {
  ShipIdx ship = kNoIndex;
  std::vector<VisitIdx> path;
  std::vector<CargoFlow> cargo;
  std::vector<EmptyFlow> empties;
  double profit = 0.0;
  double value = 0.0;  // profit minus node prices
};

struct PricingResult {
  bool found = false;  // false only when every path is forbidden
  bool timed_out = false;
  PricedPath best;
  long mip_nodes = 0;
  long lp_iterations = 0;
};

class PricingEngine {
 public:
  virtual ~PricingEngine() = default;
  virtual std::string name() const = 0;
  virtual PricingResult price(const PricingRequest& request) = 0;
  /// Size of the ship's pricing model as currently held (cuts included).
  virtual ModelSize model_size(ShipIdx ship) = 0;
};

/// Single-ship version of the disaggregated arc-flow model.
std::unique_ptr<PricingEngine> make_arc_pricing(const ReachIndex& reach, const CommoditySet& set);

/// Raw profit of one ship sailing `path` with the given flows, from instance data.
double path_profit(const Instance& instance, const PricedPath& priced);

/// Fills priced.cargo and priced.empties from per-commodity delivered totals;
/// each commodity leaves the ship at its first destination on priced.path.
void place_flows(const Instance& instance, const CommoditySet& set, PricedPath& priced, std::span<const double> totals);

/// Sum of node prices along a path (sink excluded).
double path_price(const std::vector<VisitIdx>& path, const std::vector<double>& node_price, VisitIdx sink);

}  // namespace lsfrp
