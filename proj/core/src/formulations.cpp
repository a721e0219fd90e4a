#include "lsfrp/formulations.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <map>

namespace lsfrp {

namespace {

using lp::Sense;
using lp::Term;

double entry_cost(const Instance& in, ArcIdx a, ShipIdx s) {
  const Arc& arc = in.arcs[a];
  return in.sail_cost(a, s) + (in.is_sink(arc.to) ? 0.0 : in.visits[arc.to].port_fee);
}

std::string arc_label(const Instance& in, ArcIdx a) {
  return in.visit_name(in.arcs[a].from) + "_" + in.visit_name(in.arcs[a].to);
}

void add_nonempty(lp::LinearModel& model, std::vector<Term> terms, Sense sense, double rhs, std::string name) {
  if (!terms.empty()) model.add_row(std::move(terms), sense, rhs, std::move(name));
}

// Flow conservation of commodity c over its arc set, one row per interior node.
void add_cargo_conservation(lp::LinearModel& model, const Instance& in, const Commodity& c, const std::vector<int>& xs,
                            const std::string& tag) {
  std::map<VisitIdx, std::vector<Term>> balance;
  for (std::size_t k = 0; k < c.arcs.size(); ++k) {
    if (xs[k] == kNoIndex) continue;
    const Arc& arc = in.arcs[c.arcs[k]];
    balance[arc.to].push_back({xs[k], 1.0});
    balance[arc.from].push_back({xs[k], -1.0});
  }
  for (auto& [node, terms] : balance) {
    if (node == c.origin || c.destination_slot(node) != kNoIndex) continue;
    model.add_row(std::move(terms), Sense::eq, 0.0, "cons_" + tag + "_" + in.visit_name(node));
  }
}

double cargo_objective(const Instance& in, const Commodity& c, ArcIdx a) {
  const int slot = c.destination_slot(in.arcs[a].to);
  return slot == kNoIndex ? 0.0 : c.unit_profit[slot];
}

}  // namespace

ModelSize model_size(const lp::LinearModel& model) {
  return {model.num_rows(), model.num_vars(), static_cast<long>(model.num_nonzeros())};
}

void add_ship_arc_block(lp::LinearModel& model, ArcFlowVars& vars, const ReachIndex& reach, const CommoditySet& set,
                        ShipIdx s) {
  const Instance& in = reach.instance();
  const Ship& ship = in.ships[s];
  const int arc_count = static_cast<int>(in.arcs.size());
  const std::string sid = ship.id;

  std::vector<int>& ys = vars.y[s];
  ys.assign(arc_count, kNoIndex);
  for (ArcIdx a = 0; a < arc_count; ++a)
    if (reach.ship_can_use(s, a))
      ys[a] = model.add_variable(0.0, 1.0, -entry_cost(in, a, s), true, "y_" + sid + "_" + arc_label(in, a));

  std::vector<Term> start;
  for (ArcIdx a : reach.out_arcs(ship.start)) start.push_back({ys[a], 1.0});
  model.add_row(std::move(start), Sense::eq, 1.0, "start_" + sid);
  for (VisitIdx j = 0; j < in.visit_count(); ++j) {
    if (j == ship.start || !reach.reaches(ship.start, j)) continue;
    std::vector<Term> terms;
    for (ArcIdx a : reach.in_arcs(j))
      if (ys[a] != kNoIndex) terms.push_back({ys[a], 1.0});
    for (ArcIdx a : reach.out_arcs(j)) terms.push_back({ys[a], -1.0});
    model.add_row(std::move(terms), Sense::eq, 0.0, "flow_" + sid + "_" + in.visit_name(j));
  }

  auto& xs_all = vars.x[s];
  xs_all.assign(set.size(), {});
  std::vector<std::vector<Term>> load_dc(arc_count), load_rf(arc_count);
  for (int c : movable_commodities(reach, set, s)) {
    const Commodity& com = set.items[c];
    const double cap = std::min(com.amount, com.ship_capacity(ship));
    if (cap <= 0) continue;
    const std::string tag = sid + "_" + set.label(in, c);
    std::vector<int>& xs = xs_all[c];
    xs.assign(com.arcs.size(), kNoIndex);
    std::vector<Term> gate;
    for (std::size_t k = 0; k < com.arcs.size(); ++k) {
      const ArcIdx a = com.arcs[k];
      if (ys[a] == kNoIndex) continue;
      xs[k] = model.add_variable(0.0, cap, cargo_objective(in, com, a), false, "x_" + tag + "_" + arc_label(in, a));
      model.add_row({{xs[k], 1.0}, {ys[a], -cap}}, Sense::le, 0.0, "cap_" + tag + "_" + arc_label(in, a));
      load_dc[a].push_back({xs[k], 1.0});
      if (com.reefer_slots) load_rf[a].push_back({xs[k], 1.0});
      if (in.arcs[a].from == com.origin) gate.push_back({xs[k], 1.0});
    }
    for (ArcIdx a : reach.out_arcs(com.origin))
      if (ys[a] != kNoIndex && !in.is_sink(in.arcs[a].to)) gate.push_back({ys[a], -com.amount});
    model.add_row(std::move(gate), Sense::le, 0.0, "avail_" + tag);
    add_cargo_conservation(model, in, com, xs, tag);
  }
  for (ArcIdx a = 0; a < arc_count; ++a) {
    if (!load_dc[a].empty()) {
      load_dc[a].push_back({ys[a], -ship.capacity_dc});
      model.add_row(std::move(load_dc[a]), Sense::le, 0.0, "dc_" + sid + "_" + arc_label(in, a));
    }
    if (!load_rf[a].empty()) {
      load_rf[a].push_back({ys[a], -ship.capacity_rf});
      model.add_row(std::move(load_rf[a]), Sense::le, 0.0, "rf_" + sid + "_" + arc_label(in, a));
    }
  }
}

void add_group_caps(lp::LinearModel& model, const ArcFlowVars& vars, const ReachIndex& reach, const CommoditySet& set,
                    std::span<const ShipIdx> owners) {
  const Instance& in = reach.instance();
  for (const CapGroup& g : set.groups) {
    std::vector<Term> terms;
    for (ShipIdx owner : owners)
      for (int c : g.members) {
        const auto& xs = vars.x[owner][c];
        for (std::size_t k = 0; k < xs.size(); ++k)
          if (xs[k] != kNoIndex && in.arcs[set.items[c].arcs[k]].from == set.items[c].origin)
            terms.push_back({xs[k], 1.0});
      }
    add_nonempty(model, std::move(terms), Sense::le, g.cap, "group_" + g.label);
  }
}

namespace {

void add_node_once_and_sink(lp::LinearModel& model, const ArcFlowVars& vars, const ReachIndex& reach) {
  const Instance& in = reach.instance();
  for (VisitIdx j = 0; j < in.visit_count(); ++j) {
    std::vector<Term> terms;
    for (ShipIdx s = 0; s < in.ship_count(); ++s)
      for (ArcIdx a : reach.in_arcs(j))
        if (vars.y[s][a] != kNoIndex) terms.push_back({vars.y[s][a], 1.0});
    add_nonempty(model, std::move(terms), Sense::le, 1.0, "once_" + in.visit_name(j));
  }
  std::vector<Term> sink;
  for (ShipIdx s = 0; s < in.ship_count(); ++s)
    for (ArcIdx a : reach.in_arcs(in.sink()))
      if (vars.y[s][a] != kNoIndex) sink.push_back({vars.y[s][a], 1.0});
  model.add_row(std::move(sink), Sense::eq, static_cast<double>(in.ship_count()), "sink");
}

}  // namespace

ArcFlowModel build_reduced(const ReachIndex& reach, const FormulationOptions& options) {
  const Instance& in = reach.instance();
  ArcFlowModel built;
  built.commodities = build_commodities(reach, options.commodities);
  const CommoditySet& set = built.commodities;
  lp::LinearModel& model = built.model;
  ArcFlowVars& vars = built.vars;
  const int arc_count = static_cast<int>(in.arcs.size());
  vars.per_ship = false;
  vars.y.assign(in.ship_count(), {});
  vars.x.assign(1, std::vector<std::vector<int>>(set.size()));

  for (ShipIdx s = 0; s < in.ship_count(); ++s) {
    const Ship& ship = in.ships[s];
    auto& ys = vars.y[s];
    ys.assign(arc_count, kNoIndex);
    for (ArcIdx a = 0; a < arc_count; ++a)
      if (reach.ship_can_use(s, a))
        ys[a] = model.add_variable(0.0, 1.0, -entry_cost(in, a, s), true, "y_" + ship.id + "_" + arc_label(in, a));
  }
  add_node_once_and_sink(model, vars, reach);
  for (ShipIdx s = 0; s < in.ship_count(); ++s) {
    const Ship& ship = in.ships[s];
    const auto& ys = vars.y[s];
    std::vector<Term> start;
    for (ArcIdx a : reach.out_arcs(ship.start)) start.push_back({ys[a], 1.0});
    model.add_row(std::move(start), Sense::eq, 1.0, "start_" + ship.id);
    for (VisitIdx j = 0; j < in.visit_count(); ++j) {
      if (j == ship.start || !reach.reaches(ship.start, j)) continue;
      std::vector<Term> terms;
      for (ArcIdx a : reach.in_arcs(j))
        if (ys[a] != kNoIndex) terms.push_back({ys[a], 1.0});
      for (ArcIdx a : reach.out_arcs(j)) terms.push_back({ys[a], -1.0});
      model.add_row(std::move(terms), Sense::eq, 0.0, "flow_" + ship.id + "_" + in.visit_name(j));
    }
  }

  // Ship-summed y terms of one arc scaled by a per-ship factor.
  auto fleet_terms = [&](ArcIdx a, auto factor) {
    std::vector<Term> terms;
    for (ShipIdx s = 0; s < in.ship_count(); ++s)
      if (vars.y[s][a] != kNoIndex) terms.push_back({vars.y[s][a], -factor(in.ships[s])});
    return terms;
  };

  std::vector<std::vector<Term>> load_dc(arc_count), load_rf(arc_count);
  for (int c = 0; c < set.size(); ++c) {
    const Commodity& com = set.items[c];
    std::vector<int>& xs = vars.x[0][c];
    xs.assign(com.arcs.size(), kNoIndex);
    const std::string tag = set.label(in, c);
    std::vector<Term> gate;
    for (std::size_t k = 0; k < com.arcs.size(); ++k) {
      const ArcIdx a = com.arcs[k];
      bool usable = false;
      for (ShipIdx s = 0; s < in.ship_count(); ++s) usable = usable || vars.y[s][a] != kNoIndex;
      if (!usable) continue;
      xs[k] = model.add_variable(0.0, com.amount, cargo_objective(in, com, a), false, "x_" + tag + "_" + arc_label(in, a));
      load_dc[a].push_back({xs[k], 1.0});
      if (com.reefer_slots) load_rf[a].push_back({xs[k], 1.0});
      if (in.arcs[a].from == com.origin) gate.push_back({xs[k], 1.0});
      if (options.tighten) {
        std::vector<Term> row = fleet_terms(a, [&](const Ship&) { return com.amount; });
        row.push_back({xs[k], 1.0});
        model.add_row(std::move(row), Sense::le, 0.0, "tight_" + tag + "_" + arc_label(in, a));
      }
    }
    if (gate.empty()) continue;
    for (ArcIdx a : reach.out_arcs(com.origin)) {
      if (in.is_sink(in.arcs[a].to)) continue;
      std::vector<Term> t = fleet_terms(a, [&](const Ship&) { return com.amount; });
      gate.insert(gate.end(), t.begin(), t.end());
    }
    model.add_row(std::move(gate), Sense::le, 0.0, "avail_" + tag);
    add_cargo_conservation(model, in, com, xs, tag);
  }
  for (ArcIdx a = 0; a < arc_count; ++a) {
    if (!load_rf[a].empty()) {
      std::vector<Term> t = fleet_terms(a, [](const Ship& s) { return s.capacity_rf; });
      load_rf[a].insert(load_rf[a].end(), t.begin(), t.end());
      model.add_row(std::move(load_rf[a]), Sense::le, 0.0, "rf_" + arc_label(in, a));
    }
    if (!load_dc[a].empty()) {
      std::vector<Term> t = fleet_terms(a, [](const Ship& s) { return s.capacity_dc; });
      load_dc[a].insert(load_dc[a].end(), t.begin(), t.end());
      model.add_row(std::move(load_dc[a]), Sense::le, 0.0, "dc_" + arc_label(in, a));
    }
  }
  const ShipIdx owner = 0;
  add_group_caps(model, vars, reach, set, std::span<const ShipIdx>(&owner, 1));
  return built;
}

ArcFlowModel build_revised(const ReachIndex& reach, const FormulationOptions& options) {
  const Instance& in = reach.instance();
  ArcFlowModel built;
  built.commodities = build_commodities(reach, options.commodities);
  built.vars.per_ship = true;
  built.vars.y.assign(in.ship_count(), {});
  built.vars.x.assign(in.ship_count(), {});
  for (ShipIdx s = 0; s < in.ship_count(); ++s)
    add_ship_arc_block(built.model, built.vars, reach, built.commodities, s);
  add_node_once_and_sink(built.model, built.vars, reach);
  std::vector<ShipIdx> owners(in.ship_count());
  for (ShipIdx s = 0; s < in.ship_count(); ++s) owners[s] = s;
  add_group_caps(built.model, built.vars, reach, built.commodities, owners);
  return built;
}

std::vector<VisitIdx> follow_path(const ReachIndex& reach, const std::vector<int>& ship_y, ShipIdx ship,
                                  std::span<const double> x) {
  const Instance& in = reach.instance();
  std::vector<VisitIdx> path{in.ships[ship].start};
  VisitIdx v = path.front();
  while (!in.is_sink(v)) {
    VisitIdx next = kNoIndex;
    for (ArcIdx a : reach.out_arcs(v))
      if (ship_y[a] != kNoIndex && x[ship_y[a]] > 0.5) {
        next = in.arcs[a].to;
        break;
      }
    if (next == kNoIndex || static_cast<int>(path.size()) > reach.node_count()) return {};
    path.push_back(next);
    v = next;
  }
  return path;
}

namespace {

double snap(double v) {
  const double r = std::round(v);
  return std::abs(v - r) <= 1e-7 * std::max(1.0, std::abs(v)) ? r : v;
}

}  // namespace

Solution extract_solution(const ReachIndex& reach, const ArcFlowModel& built, std::span<const double> x) {
  const Instance& in = reach.instance();
  const CommoditySet& set = built.commodities;
  Solution sol;
  sol.instance_name = in.name;
  sol.has_solution = true;
  std::vector<ShipIdx> visited_by(in.visit_count(), kNoIndex);
  for (ShipIdx s = 0; s < in.ship_count(); ++s) {
    std::vector<VisitIdx> path = follow_path(reach, built.vars.y[s], s, x);
    if (path.empty()) throw Error("model point does not route " + in.ships[s].id + " to the sink");
    for (VisitIdx v : path)
      if (!in.is_sink(v)) visited_by[v] = s;
    sol.routes.push_back({s, std::move(path)});
  }

  std::map<std::tuple<DemandIdx, ShipIdx, VisitIdx>, double> cargo;
  std::map<std::tuple<ShipIdx, int, VisitIdx, VisitIdx>, double> empties;
  for (std::size_t owner = 0; owner < built.vars.x.size(); ++owner)
    for (int c = 0; c < set.size() && c < static_cast<int>(built.vars.x[owner].size()); ++c) {
      const Commodity& com = set.items[c];
      const auto& xs = built.vars.x[owner][c];
      for (std::size_t slot = 0; slot < com.destinations.size(); ++slot) {
        const VisitIdx d = com.destinations[slot];
        double amount = 0.0;
        for (std::size_t k = 0; k < xs.size(); ++k)
          if (xs[k] != kNoIndex && in.arcs[com.arcs[k]].to == d) amount += x[xs[k]];
        if (amount <= 1e-9) continue;
        const ShipIdx ship = built.vars.per_ship ? static_cast<ShipIdx>(owner) : visited_by[com.origin];
        if (ship == kNoIndex) throw Error("cargo flow from an unvisited origin " + in.visit_name(com.origin));
        if (com.is_empty()) empties[{ship, static_cast<int>(com.type), com.origin, d}] += amount;
        else cargo[{com.source, ship, d}] += amount;
      }
    }
  for (const auto& [key, amount] : cargo)
    sol.cargo.push_back({std::get<0>(key), std::get<1>(key), std::get<2>(key), snap(amount)});
  for (const auto& [key, amount] : empties)
    sol.empties.push_back(
        {std::get<0>(key), static_cast<CargoType>(std::get<1>(key)), std::get<2>(key), std::get<3>(key), snap(amount)});
  return sol;
}

Solution solve_arc_flow(const ReachIndex& reach, const std::string& method, const FormulationOptions& options,
                        const lp::MipOptions& mip) {
  const auto started = std::chrono::steady_clock::now();
  FormulationOptions effective = options;
  ArcFlowModel built;
  if (method == "revised") {
    built = build_revised(reach, effective);
  } else if (method == "reduced" || method == "reduced-tight") {
    effective.tighten = options.tighten || method == "reduced-tight";
    built = build_reduced(reach, effective);
  } else {
    throw Error("unknown arc-flow method \"" + method + "\"");
  }

  Solution sol;
  Diagnostics diag;
  diag.model = model_size(built.model);
  diag.split_count = built.commodities.split_count;
  lp::MipSolution result = lp::solve_mip(built.model, mip);
  if (result.status == lp::MipStatus::numerical_failure || result.status == lp::MipStatus::unbounded)
    throw Error(method + ": MIP solve failed (" + std::string(lp::to_string(result.status)) + ")");
  if (result.has_incumbent) {
    sol = extract_solution(reach, built, result.x);
    sol.objective = result.objective;
  }
  sol.instance_name = reach.instance().name;
  sol.method = method;
  sol.bound = result.bound;
  switch (result.status) {
    case lp::MipStatus::optimal: sol.status = SolveStatus::optimal; break;
    case lp::MipStatus::infeasible: sol.status = SolveStatus::no_disjoint_routing; break;
    default: sol.status = SolveStatus::time_limit; break;
  }
  diag.mip_nodes = result.nodes;
  diag.lp_iterations = result.lp_iterations;
  diag.root_bound = result.root_bound;
  diag.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  sol.diagnostics = diag;
  return sol;
}

}  // namespace lsfrp
