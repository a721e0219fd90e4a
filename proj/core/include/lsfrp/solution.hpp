#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <string>
#include <vector>

#include "lsfrp/instance.hpp"

namespace lsfrp {

struct ShipRoute {
  ShipIdx ship = kNoIndex;
  std::vector<VisitIdx> path;  // v_s first, sink last
  bool operator==(const ShipRoute&) const = default;
};

/// `amount` TEU of a demand carried by `ship` and delivered at `destination`.
struct CargoFlow {
  DemandIdx demand = kNoIndex;
  ShipIdx ship = kNoIndex;
  VisitIdx destination = kNoIndex;
  double amount = 0.0;
  bool operator==(const CargoFlow&) const = default;
};

struct EmptyFlow {
  ShipIdx ship = kNoIndex;
  CargoType type = CargoType::dry;
  VisitIdx origin = kNoIndex;
  VisitIdx destination = kNoIndex;
  double amount = 0.0;
  bool operator==(const EmptyFlow&) const = default;
};

struct ShipCutStats {
  ShipIdx ship = kNoIndex;
  int gamma_dc = 0;
  int gamma_rf = 0;
};

struct ModelSize {
  long rows = 0;
  long cols = 0;
  long nonzeros = 0;
};

struct Diagnostics {
  long columns_generated = 0;
  long rmp_solves = 0;
  long pricing_calls = 0;
  long branch_nodes = 0;  // branch-and-price nodes after the root (0 when the root master is integral)
  long mip_nodes = 0;     // branch-and-bound nodes over all MIP solves
  long lp_iterations = 0;
  int cuts_dc = 0;
  int cuts_rf = 0;
  long separation_calls = 0;
  long cuts_emitted = 0;
  int split_count = 0;
  bool relaxed_master_integral = true;
  double root_bound = std::numeric_limits<double>::quiet_NaN();
  std::vector<ShipCutStats> ship_cuts;
  ModelSize model;
  long assignments = 0;  // oracle only
  double wall_time_s = 0.0;
};

enum class SolveStatus : std::uint8_t { optimal, time_limit, infeasible, no_disjoint_routing, refused };
std::string_view to_string(SolveStatus status);
SolveStatus solve_status_from_string(std::string_view text);

struct Solution {
  std::string instance_name;
  std::string method;
  SolveStatus status = SolveStatus::optimal;
  bool has_solution = false;
  double objective = 0.0;  // currency units
  double bound = std::numeric_limits<double>::quiet_NaN();
  std::vector<ShipRoute> routes;
  std::vector<CargoFlow> cargo;
  std::vector<EmptyFlow> empties;
  Diagnostics diagnostics;
  std::map<std::string, std::string> metadata;

  const ShipRoute* route_of(ShipIdx s) const;
};

/// Profit of a solution recomputed from raw instance data: delivered cargo
/// times (revenue - move cost at origin - move cost at destination), empty
/// equipment likewise, minus sail costs and the port fee of every visit entered.
/// Throws Error when a route is not a walk of the graph or a flow is not on its ship's route.
double evaluate_objective(const Instance& instance, const Solution& solution);

/// Full feasibility audit: node-disjoint routes from every start to the sink,
/// availability and empty caps, and onboard load within capacity in both scopes
/// at every visit (cargo leaves the ship at its recorded destination).
ValidationReport check_solution(const Instance& instance, const Solution& solution, double tol = 1e-6);

/// Relative agreement used throughout: |a - b| <= rel * max(1, |a|, |b|).
inline bool objectives_agree(double a, double b, double rel = 1e-6) {
  return std::abs(a - b) <= rel * std::max({1.0, std::abs(a), std::abs(b)});
}

}  // namespace lsfrp
