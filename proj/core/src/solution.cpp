#include "lsfrp/solution.hpp"

#include <map>
#include <sstream>

namespace lsfrp {

std::string_view to_string(SolveStatus status) {
  switch (status) {
    case SolveStatus::optimal: return "optimal";
    case SolveStatus::time_limit: return "time_limit";
    case SolveStatus::infeasible: return "infeasible";
    case SolveStatus::no_disjoint_routing: return "no_disjoint_routing";
    case SolveStatus::refused: return "refused";
  }
  return "optimal";
}

SolveStatus solve_status_from_string(std::string_view text) {
  for (SolveStatus s : {SolveStatus::optimal, SolveStatus::time_limit, SolveStatus::infeasible,
                        SolveStatus::no_disjoint_routing, SolveStatus::refused})
    if (to_string(s) == text) return s;
  throw Error("unknown solution status \"" + std::string(text) + "\"");
}

const ShipRoute* Solution::route_of(ShipIdx s) const {
  for (const ShipRoute& r : routes)
    if (r.ship == s) return &r;
  return nullptr;
}

namespace {

struct RouteIndex {
  std::vector<std::vector<int>> position;  // [ship][visit] -> index on path, -1 if absent
};

std::map<std::pair<VisitIdx, VisitIdx>, ArcIdx> arc_lookup(const Instance& in) {
  std::map<std::pair<VisitIdx, VisitIdx>, ArcIdx> arcs;
  for (ArcIdx a = 0; a < static_cast<int>(in.arcs.size()); ++a) arcs[{in.arcs[a].from, in.arcs[a].to}] = a;
  return arcs;
}

std::string ship_name(const Instance& in, ShipIdx s) {
  return (s >= 0 && s < in.ship_count()) ? in.ships[s].id : "#" + std::to_string(s);
}

// Route costs and positions; problems are appended to `report`.
double route_part(const Instance& in, const Solution& sol, RouteIndex& index, ValidationReport& report) {
  const auto arcs = arc_lookup(in);
  index.position.assign(in.ship_count(), std::vector<int>(in.visit_count() + 1, -1));
  double total = 0.0;
  for (std::size_t r = 0; r < sol.routes.size(); ++r) {
    const ShipRoute& route = sol.routes[r];
    const std::string where = "routes[" + std::to_string(r) + "]";
    if (route.ship < 0 || route.ship >= in.ship_count()) {
      report.issues.push_back({where, "unknown ship"});
      continue;
    }
    const Ship& ship = in.ships[route.ship];
    if (route.path.empty() || route.path.front() != ship.start || route.path.back() != in.sink()) {
      report.issues.push_back({where, "path of " + ship.id + " must run from its start visit to the sink"});
      continue;
    }
    for (std::size_t k = 0; k < route.path.size(); ++k) {
      VisitIdx v = route.path[k];
      if (v < 0 || v > in.sink()) {
        report.issues.push_back({where, "path contains an unknown visit"});
        break;
      }
      if (index.position[route.ship][v] >= 0) report.issues.push_back({where, "path repeats " + in.visit_name(v)});
      index.position[route.ship][v] = static_cast<int>(k);
      if (k == 0) continue;
      auto it = arcs.find({route.path[k - 1], v});
      if (it == arcs.end()) {
        report.issues.push_back(
            {where, "no arc " + in.visit_name(route.path[k - 1]) + " -> " + in.visit_name(v) + " for " + ship.id});
        continue;
      }
      total -= in.sail_cost(it->second, route.ship);
      if (!in.is_sink(v)) total -= in.visits[v].port_fee;
    }
  }
  return total;
}

bool ordered_on_route(const RouteIndex& index, ShipIdx s, VisitIdx from, VisitIdx to) {
  if (s < 0 || s >= static_cast<int>(index.position.size())) return false;
  const int a = index.position[s][from];
  const int b = index.position[s][to];
  return a >= 0 && b > a;
}

double cargo_part(const Instance& in, const Solution& sol, const RouteIndex& index, ValidationReport& report) {
  double total = 0.0;
  for (std::size_t f = 0; f < sol.cargo.size(); ++f) {
    const CargoFlow& flow = sol.cargo[f];
    const std::string where = "cargo[" + std::to_string(f) + "]";
    if (flow.demand < 0 || flow.demand >= static_cast<int>(in.demands.size())) {
      report.issues.push_back({where, "unknown demand"});
      continue;
    }
    const Demand& m = in.demands[flow.demand];
    if (std::find(m.destinations.begin(), m.destinations.end(), flow.destination) == m.destinations.end()) {
      report.issues.push_back({where, "destination is not a destination of demand " + m.id});
      continue;
    }
    if (!ordered_on_route(index, flow.ship, m.origin, flow.destination)) {
      report.issues.push_back({where, "demand " + m.id + " is not on the route of " + ship_name(in, flow.ship) +
                                          " from its origin to " + in.visit_name(flow.destination)});
      continue;
    }
    total += flow.amount * (m.revenue - in.visits[m.origin].move_cost - in.visits[flow.destination].move_cost);
  }
  for (std::size_t f = 0; f < sol.empties.size(); ++f) {
    const EmptyFlow& flow = sol.empties[f];
    const std::string where = "empties[" + std::to_string(f) + "]";
    if (flow.origin < 0 || flow.origin >= in.visit_count() || flow.destination < 0 ||
        flow.destination >= in.visit_count()) {
      report.issues.push_back({where, "unknown visit"});
      continue;
    }
    if (!ordered_on_route(index, flow.ship, flow.origin, flow.destination)) {
      report.issues.push_back({where, "empty flow " + in.visit_name(flow.origin) + " -> " +
                                          in.visit_name(flow.destination) + " is not on the route of " +
                                          ship_name(in, flow.ship)});
      continue;
    }
    total += flow.amount * (in.empty_revenue_for(flow.type) - in.visits[flow.origin].move_cost -
                            in.visits[flow.destination].move_cost);
  }
  return total;
}

}  // namespace

double evaluate_objective(const Instance& instance, const Solution& solution) {
  ValidationReport report;
  RouteIndex index;
  double total = route_part(instance, solution, index, report);
  total += cargo_part(instance, solution, index, report);
  if (!report.ok()) throw Error("cannot evaluate solution:\n" + report.to_string());
  return total;
}

ValidationReport check_solution(const Instance& in, const Solution& sol, double tol) {
  ValidationReport report;
  RouteIndex index;
  const double value = route_part(in, sol, index, report) + cargo_part(in, sol, index, report);
  if (!report.ok()) return report;

  std::vector<int> routes_per_ship(in.ship_count(), 0);
  std::vector<std::string> visited_by(in.visit_count());
  for (const ShipRoute& r : sol.routes) {
    ++routes_per_ship[r.ship];
    for (VisitIdx v : r.path) {
      if (in.is_sink(v)) continue;
      if (!visited_by[v].empty())
        report.issues.push_back({"routes", in.visit_name(v) + " visited by " + visited_by[v] + " and " +
                                               in.ships[r.ship].id});
      visited_by[v] = in.ships[r.ship].id;
    }
  }
  for (ShipIdx s = 0; s < in.ship_count(); ++s)
    if (routes_per_ship[s] != 1)
      report.issues.push_back({"routes", in.ships[s].id + " has " + std::to_string(routes_per_ship[s]) + " routes"});

  std::vector<double> delivered(in.demands.size(), 0.0);
  for (const CargoFlow& f : sol.cargo) {
    if (f.amount < -tol) report.issues.push_back({"cargo", "negative flow of " + in.demands[f.demand].id});
    delivered[f.demand] += f.amount;
  }
  for (std::size_t m = 0; m < in.demands.size(); ++m)
    if (delivered[m] > in.demands[m].amount + tol)
      report.issues.push_back({"cargo", "demand " + in.demands[m].id + " over-delivered"});

  std::map<std::pair<VisitIdx, CargoType>, double> out_of, into;
  for (const EmptyFlow& f : sol.empties) {
    if (f.amount < -tol) report.issues.push_back({"empties", "negative empty flow"});
    out_of[{f.origin, f.type}] += f.amount;
    into[{f.destination, f.type}] += f.amount;
  }
  auto point_amount = [&](VisitIdx v, CargoType q) {
    for (const EmptyPoint& e : in.empty_points)
      if (e.visit == v && e.type == q) return e.amount;
    return 0.0;
  };
  for (const auto& [key, total] : out_of)
    if (total > std::max(0.0, point_amount(key.first, key.second)) + tol)
      report.issues.push_back({"empties", "surplus exceeded at " + in.visit_name(key.first)});
  for (const auto& [key, total] : into)
    if (total > std::max(0.0, -point_amount(key.first, key.second)) + tol)
      report.issues.push_back({"empties", "deficit exceeded at " + in.visit_name(key.first)});

  for (const ShipRoute& r : sol.routes) {
    const Ship& ship = in.ships[r.ship];
    const auto& pos = index.position[r.ship];
    for (std::size_t k = 0; k + 1 < r.path.size(); ++k) {
      const int here = static_cast<int>(k);
      double dc = 0.0, rf = 0.0;
      for (const CargoFlow& f : sol.cargo) {
        if (f.ship != r.ship) continue;
        const Demand& m = in.demands[f.demand];
        if (pos[m.origin] <= here && here < pos[f.destination]) {
          dc += f.amount;
          if (m.type == CargoType::reefer) rf += f.amount;
        }
      }
      for (const EmptyFlow& f : sol.empties)
        if (f.ship == r.ship && pos[f.origin] <= here && here < pos[f.destination]) dc += f.amount;
      const std::string at = ship.id + " leaving " + in.visit_name(r.path[k]);
      if (dc > ship.capacity_dc + tol) report.issues.push_back({"capacity", at + " exceeds dry capacity"});
      if (rf > ship.capacity_rf + tol) report.issues.push_back({"capacity", at + " exceeds reefer capacity"});
    }
  }

  if (sol.has_solution && !objectives_agree(value, sol.objective))
    report.issues.push_back({"objective", "reported " + std::to_string(sol.objective) + " but routes and flows give " +
                                              std::to_string(value)});
  return report;
}

}  // namespace lsfrp
