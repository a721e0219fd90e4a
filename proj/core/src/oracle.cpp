#include "lsfrp/oracle.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>

#include "lsfrp/lp/simplex.hpp"

namespace lsfrp {

namespace {

std::vector<std::vector<std::pair<VisitIdx, ArcIdx>>> successors(const Instance& in) {
  std::vector<std::vector<std::pair<VisitIdx, ArcIdx>>> succ(in.visit_count() + 1);
  for (ArcIdx a = 0; a < static_cast<int>(in.arcs.size()); ++a) succ[in.arcs[a].from].push_back({in.arcs[a].to, a});
  for (auto& list : succ) std::sort(list.begin(), list.end());
  return succ;
}

double count_paths(const std::vector<std::vector<std::pair<VisitIdx, ArcIdx>>>& succ, VisitIdx v, VisitIdx sink,
                   std::vector<double>& memo) {
  if (v == sink) return 1.0;
  if (memo[v] >= 0) return memo[v];
  double total = 0.0;
  for (const auto& [w, a] : succ[v]) total += count_paths(succ, w, sink, memo);
  return memo[v] = total;
}

double path_cost(const Instance& in, ShipIdx s, const std::vector<VisitIdx>& path,
                 const std::vector<std::vector<std::pair<VisitIdx, ArcIdx>>>& succ) {
  double cost = 0.0;
  for (std::size_t k = 1; k < path.size(); ++k) {
    for (const auto& [w, a] : succ[path[k - 1]])
      if (w == path[k]) cost += in.sail_cost(a, s);
    if (!in.is_sink(path[k])) cost += in.visits[path[k]].port_fee;
  }
  return cost;
}

struct CargoVar {
  enum Kind { demand, empty } kind;
  int ref;   // demand index, or surplus point index for empties
  int ref2;  // deficit point index for empties
  ShipIdx ship;
  VisitIdx origin, destination;
  int from_pos, to_pos;
  bool reefer_slot;
  CargoType type;
  double profit;
};

}  // namespace

std::vector<std::vector<VisitIdx>> enumerate_ship_paths(const Instance& in, ShipIdx ship) {
  require_valid(in);
  if (ship < 0 || ship >= in.ship_count()) throw Error("unknown ship index");
  const auto succ = successors(in);
  std::vector<std::vector<VisitIdx>> paths;
  std::vector<VisitIdx> current{in.ships[ship].start};
  std::function<void(VisitIdx)> dfs = [&](VisitIdx v) {
    if (in.is_sink(v)) {
      paths.push_back(current);
      return;
    }
    for (const auto& [w, a] : succ[v]) {
      current.push_back(w);
      dfs(w);
      current.pop_back();
    }
  };
  dfs(in.ships[ship].start);
  return paths;
}

long enumerate_disjoint_paths(const Instance& in, const std::function<void(const PathAssignment&)>& visit,
                              const OracleOptions& options) {
  require_valid(in);
  const auto succ = successors(in);
  std::vector<double> memo(in.visit_count() + 1, -1.0);
  double product = 1.0;
  for (const Ship& s : in.ships) product *= count_paths(succ, s.start, in.sink(), memo);
  if (product > options.budget)
    throw OracleRefusal("oracle refused: " + std::to_string(static_cast<long double>(product)) +
                        " path combinations exceed the budget of " + std::to_string(options.budget));

  std::vector<std::vector<std::vector<VisitIdx>>> paths;
  for (ShipIdx s = 0; s < in.ship_count(); ++s) paths.push_back(enumerate_ship_paths(in, s));

  PathAssignment assignment;
  assignment.paths.resize(in.ship_count());
  std::vector<char> used(in.visit_count(), 0);
  long count = 0;
  std::function<void(ShipIdx)> rec = [&](ShipIdx s) {
    if (s == in.ship_count()) {
      ++count;
      visit(assignment);
      return;
    }
    for (const auto& path : paths[s]) {
      bool clash = false;
      for (VisitIdx v : path)
        if (!in.is_sink(v) && used[v]) {
          clash = true;
          break;
        }
      if (clash) continue;
      for (VisitIdx v : path)
        if (!in.is_sink(v)) used[v] = 1;
      assignment.paths[s] = path;
      rec(s + 1);
      for (VisitIdx v : path)
        if (!in.is_sink(v)) used[v] = 0;
    }
  };
  rec(0);
  return count;
}

std::vector<PathAssignment> enumerate_disjoint_paths(const Instance& in, const OracleOptions& options) {
  std::vector<PathAssignment> all;
  enumerate_disjoint_paths(in, [&](const PathAssignment& a) { all.push_back(a); }, options);
  return all;
}

Solution brute_force_solve(const Instance& in, const OracleOptions& options) {
  const auto started = std::chrono::steady_clock::now();
  const auto succ = successors(in);
  Solution best;
  best.instance_name = in.name;
  best.method = "oracle";
  best.status = SolveStatus::no_disjoint_routing;
  double best_value = -std::numeric_limits<double>::infinity();
  long lp_iterations = 0;

  auto evaluate = [&](const PathAssignment& assignment) {
    double value = 0.0;
    std::vector<ShipIdx> owner(in.visit_count(), kNoIndex);
    std::vector<int> at(in.visit_count(), -1);
    for (ShipIdx s = 0; s < in.ship_count(); ++s) {
      const auto& path = assignment.paths[s];
      value -= path_cost(in, s, path, succ);
      for (std::size_t k = 0; k + 1 < path.size(); ++k) {
        owner[path[k]] = s;
        at[path[k]] = static_cast<int>(k);
      }
    }

    std::vector<CargoVar> vars;
    for (DemandIdx m = 0; m < static_cast<int>(in.demands.size()); ++m) {
      const Demand& d = in.demands[m];
      const ShipIdx s = owner[d.origin];
      if (s == kNoIndex) continue;
      for (VisitIdx dest : d.destinations) {
        if (owner[dest] != s || at[dest] <= at[d.origin]) continue;
        const double profit = d.revenue - in.visits[d.origin].move_cost - in.visits[dest].move_cost;
        if (profit <= 0) continue;
        vars.push_back({CargoVar::demand, m, -1, s, d.origin, dest, at[d.origin], at[dest],
                        d.type == CargoType::reefer, d.type, profit});
      }
    }
    for (int sp = 0; sp < static_cast<int>(in.empty_points.size()); ++sp) {
      const EmptyPoint& sur = in.empty_points[sp];
      if (sur.amount <= 0 || owner[sur.visit] == kNoIndex) continue;
      for (int dp = 0; dp < static_cast<int>(in.empty_points.size()); ++dp) {
        const EmptyPoint& def = in.empty_points[dp];
        if (def.amount >= 0 || def.type != sur.type) continue;
        const ShipIdx s = owner[sur.visit];
        if (owner[def.visit] != s || at[def.visit] <= at[sur.visit]) continue;
        const double profit =
            in.empty_revenue_for(sur.type) - in.visits[sur.visit].move_cost - in.visits[def.visit].move_cost;
        if (profit <= 0) continue;
        vars.push_back({CargoVar::empty, sp, dp, s, sur.visit, def.visit, at[sur.visit], at[def.visit], false,
                        sur.type, profit});
      }
    }

    // Optimistic bound: every variable at its own cap.
    double optimistic = value;
    for (const CargoVar& v : vars) {
      double cap = v.kind == CargoVar::demand ? in.demands[v.ref].amount
                                              : std::min(in.empty_points[v.ref].amount, -in.empty_points[v.ref2].amount);
      const Ship& ship = in.ships[v.ship];
      optimistic += v.profit * std::min(cap, v.reefer_slot ? ship.capacity_rf : ship.capacity_dc);
    }
    if (!(optimistic > best_value)) return;

    lp::LinearModel model;
    for (const CargoVar& v : vars) model.add_variable(0.0, lp::kInf, v.profit);
    for (DemandIdx m = 0; m < static_cast<int>(in.demands.size()); ++m) {
      std::vector<lp::Term> terms;
      for (int j = 0; j < static_cast<int>(vars.size()); ++j)
        if (vars[j].kind == CargoVar::demand && vars[j].ref == m) terms.push_back({j, 1.0});
      if (!terms.empty()) model.add_row(terms, lp::Sense::le, in.demands[m].amount);
    }
    for (int p = 0; p < static_cast<int>(in.empty_points.size()); ++p) {
      std::vector<lp::Term> terms;
      for (int j = 0; j < static_cast<int>(vars.size()); ++j)
        if (vars[j].kind == CargoVar::empty && (vars[j].ref == p || vars[j].ref2 == p)) terms.push_back({j, 1.0});
      if (!terms.empty()) model.add_row(terms, lp::Sense::le, std::abs(in.empty_points[p].amount));
    }
    for (ShipIdx s = 0; s < in.ship_count(); ++s) {
      const int legs = static_cast<int>(assignment.paths[s].size()) - 1;
      for (int k = 0; k < legs; ++k) {
        std::vector<lp::Term> dc, rf;
        for (int j = 0; j < static_cast<int>(vars.size()); ++j) {
          const CargoVar& v = vars[j];
          if (v.ship != s || v.from_pos > k || k >= v.to_pos) continue;
          dc.push_back({j, 1.0});
          if (v.reefer_slot) rf.push_back({j, 1.0});
        }
        if (!dc.empty()) model.add_row(dc, lp::Sense::le, in.ships[s].capacity_dc);
        if (!rf.empty()) model.add_row(rf, lp::Sense::le, in.ships[s].capacity_rf);
      }
    }
    lp::LpSolution lp_sol = lp::solve_lp(model);
    lp_iterations += lp_sol.iterations;
    if (!lp_sol.optimal()) throw Error("oracle cargo LP failed: " + std::string(lp::to_string(lp_sol.status)));
    value += lp_sol.objective;
    if (!(value > best_value)) return;

    best_value = value;
    best.routes.clear();
    best.cargo.clear();
    best.empties.clear();
    for (ShipIdx s = 0; s < in.ship_count(); ++s) best.routes.push_back({s, assignment.paths[s]});
    for (int j = 0; j < static_cast<int>(vars.size()); ++j) {
      double amount = lp_sol.x[j];
      if (std::abs(amount - std::round(amount)) < 1e-7) amount = std::round(amount);
      if (amount <= 0) continue;
      const CargoVar& v = vars[j];
      if (v.kind == CargoVar::demand) best.cargo.push_back({v.ref, v.ship, v.destination, amount});
      else best.empties.push_back({v.ship, v.type, v.origin, v.destination, amount});
    }
  };

  const long count = enumerate_disjoint_paths(in, evaluate, options);
  best.diagnostics.assignments = count;
  best.diagnostics.lp_iterations = lp_iterations;
  if (std::isfinite(best_value)) {
    best.has_solution = true;
    best.status = SolveStatus::optimal;
    best.objective = best_value;
    best.bound = best_value;
  }
  best.diagnostics.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  return best;
}

}  // namespace lsfrp
