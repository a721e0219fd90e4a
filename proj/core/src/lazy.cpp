#include "lsfrp/lazy.hpp"

#include <algorithm>
#include <cmath>

#include "lsfrp/formulations.hpp"
#include "lsfrp/lp/mip.hpp"
#include "lsfrp/lp/simplex.hpp"

namespace lsfrp {

namespace {

using lp::Sense;
using lp::Term;

double entry_cost(const Instance& in, ArcIdx a, ShipIdx s) {
  const Arc& arc = in.arcs[a];
  return in.sail_cost(a, s) + (in.is_sink(arc.to) ? 0.0 : in.visits[arc.to].port_fee);
}

double commodity_cap(const Commodity& c, const Ship& ship) { return std::min(c.amount, c.ship_capacity(ship)); }

}  // namespace

CompactModel build_compact_pricing(const ReachIndex& reach, const CommoditySet& set, ShipIdx s,
                                   std::span<const Cut> carried) {
  const Instance& in = reach.instance();
  const Ship& ship = in.ships[s];
  CompactModel out;
  out.ship = s;
  lp::LinearModel& model = out.model;
  out.y.assign(in.arcs.size(), kNoIndex);
  for (ArcIdx a = 0; a < static_cast<int>(in.arcs.size()); ++a)
    if (reach.ship_can_use(s, a))
      out.y[a] = model.add_variable(0.0, 1.0, -entry_cost(in, a, s), true,
                                    "y_" + in.visit_name(in.arcs[a].from) + "_" + in.visit_name(in.arcs[a].to));

  std::vector<Term> start;
  for (ArcIdx a : reach.out_arcs(ship.start)) start.push_back({out.y[a], 1.0});
  model.add_row(std::move(start), Sense::eq, 1.0, "start");
  for (VisitIdx j = 0; j < in.visit_count(); ++j) {
    if (j == ship.start || !reach.reaches(ship.start, j)) continue;
    std::vector<Term> terms;
    for (ArcIdx a : reach.in_arcs(j))
      if (out.y[a] != kNoIndex) terms.push_back({out.y[a], 1.0});
    for (ArcIdx a : reach.out_arcs(j)) terms.push_back({out.y[a], -1.0});
    model.add_row(std::move(terms), Sense::eq, 0.0, "flow_" + in.visit_name(j));
  }

  out.x.assign(set.size(), kNoIndex);
  std::vector<std::vector<Term>> load_dc(in.visit_count()), load_rf(in.visit_count());
  for (int c : movable_commodities(reach, set, s)) {
    const Commodity& com = set.items[c];
    const double cap = commodity_cap(com, ship);
    if (cap <= 0) continue;
    std::vector<Term> leave, arrive;
    for (ArcIdx a : com.arcs) {
      if (out.y[a] == kNoIndex) continue;
      if (in.arcs[a].from == com.origin) leave.push_back({out.y[a], -cap});
      if (com.destination_slot(in.arcs[a].to) != kNoIndex) arrive.push_back({out.y[a], -cap});
    }
    if (leave.empty() || arrive.empty()) continue;
    const std::string tag = set.label(in, c);
    out.x[c] = model.add_variable(0.0, cap, com.unit_profit.front(), false, "x_" + tag);
    leave.push_back({out.x[c], 1.0});
    arrive.push_back({out.x[c], 1.0});
    model.add_row(std::move(leave), Sense::le, 0.0, "load_" + tag);
    model.add_row(std::move(arrive), Sense::le, 0.0, "unload_" + tag);
    load_dc[com.origin].push_back({out.x[c], 1.0});
    if (com.reefer_slots) load_rf[com.origin].push_back({out.x[c], 1.0});
  }
  for (VisitIdx k = 0; k < in.visit_count(); ++k) {
    if (load_dc[k].empty()) continue;
    std::vector<Term> exits;
    for (ArcIdx a : reach.out_arcs(k))
      if (out.y[a] != kNoIndex && !in.is_sink(in.arcs[a].to)) exits.push_back({out.y[a], 0.0});
    auto add_scope = [&](std::vector<Term> terms, double cap, const char* scope) {
      for (Term t : exits) terms.push_back({t.var, -cap});
      model.add_row(std::move(terms), Sense::le, 0.0, std::string(scope) + "_" + in.visit_name(k));
    };
    add_scope(std::move(load_dc[k]), ship.capacity_dc, "dc");
    if (!load_rf[k].empty()) add_scope(std::move(load_rf[k]), ship.capacity_rf, "rf");
  }
  for (const CapGroup& g : set.groups) {
    std::vector<Term> terms;
    for (int c : g.members)
      if (out.x[c] != kNoIndex) terms.push_back({out.x[c], 1.0});
    if (!terms.empty()) model.add_row(std::move(terms), Sense::le, g.cap, "group_" + g.label);
  }
  for (const Cut& cut : carried) model.add_row(cut_row(out, cut));
  return out;
}

lp::Constraint cut_row(const CompactModel& compact, const Cut& cut) {
  lp::Constraint row;
  for (int c : cut.members)
    if (compact.x[c] != kNoIndex) row.terms.push_back({compact.x[c], 1.0});
  row.sense = Sense::le;
  row.rhs = cut.rhs;
  row.name = std::string(cut.scope == CutScope::dc ? "cut_dc_" : "cut_rf_") + std::to_string(cut.node);
  return row;
}

std::vector<Cut> separate_cuts(const ReachIndex& reach, const CommoditySet& set, ShipIdx s,
                               const std::vector<VisitIdx>& path, std::span<const double> totals, double tol) {
  const Instance& in = reach.instance();
  const Ship& ship = in.ships[s];
  std::vector<char> onboard(set.size(), 0);
  std::vector<Cut> cuts;
  for (VisitIdx k : path) {
    if (in.is_sink(k)) break;
    for (int c = 0; c < set.size(); ++c)
      if (onboard[c] && set.items[c].destination_slot(k) != kNoIndex) onboard[c] = 0;
    bool loaded = false;
    for (int c : set.by_origin[k])
      if (totals[c] > tol) onboard[c] = loaded = true;
    if (!loaded) continue;

    for (CutScope scope : {CutScope::dc, CutScope::rf}) {
      const bool rf = scope == CutScope::rf;
      const double cap = rf ? ship.capacity_rf : ship.capacity_dc;
      double load = 0.0;
      for (int c = 0; c < set.size(); ++c)
        if (onboard[c] && (!rf || set.items[c].reefer_slots)) load += totals[c];
      if (load <= cap + tol) continue;
      Cut cut{k, scope, {}, cap};
      double covered = 0.0;
      for (int c = 0; c < set.size(); ++c) {
        const Commodity& com = set.items[c];
        if (rf && !com.reefer_slots) continue;
        const bool leaves = std::any_of(com.arcs.begin(), com.arcs.end(), [&](ArcIdx a) { return in.arcs[a].from == k; });
        if (!leaves) continue;
        cut.members.push_back(c);
        covered += totals[c];
      }
      if (covered <= cap + tol)
        throw lp::SeparationError("capacity cut at " + in.visit_name(k) + " is not violated by its candidate");
      cuts.push_back(std::move(cut));
    }
  }
  return cuts;
}

int capacity_violations(const Instance& in, const PricedPath& plan, double tol) {
  std::vector<int> at(in.visit_count() + 1, -1);
  for (std::size_t k = 0; k < plan.path.size(); ++k) at[plan.path[k]] = static_cast<int>(k);
  const Ship& ship = in.ships[plan.ship];
  int violations = 0;
  for (int leg = 0; leg + 1 < static_cast<int>(plan.path.size()); ++leg) {
    double dc = 0.0, rf = 0.0;
    for (const CargoFlow& f : plan.cargo) {
      const Demand& m = in.demands[f.demand];
      if (at[m.origin] <= leg && leg < at[f.destination]) {
        dc += f.amount;
        if (m.type == CargoType::reefer) rf += f.amount;
      }
    }
    for (const EmptyFlow& e : plan.empties)
      if (at[e.origin] <= leg && leg < at[e.destination]) dc += e.amount;
    violations += (dc > ship.capacity_dc + tol) + (rf > ship.capacity_rf + tol);
  }
  return violations;
}

LazyPricingEngine::LazyPricingEngine(const ReachIndex& reach, const CommoditySet& set)
    : reach_(reach),
      set_(set),
      models_(reach.instance().ship_count()),
      base_obj_(reach.instance().ship_count()),
      pools_(reach.instance().ship_count()) {}

CompactModel& LazyPricingEngine::get(ShipIdx s) {
  auto& slot = models_.at(s);
  if (!slot) {
    slot = std::make_unique<CompactModel>(build_compact_pricing(reach_, set_, s));
    for (const lp::Variable& v : slot->model.vars()) base_obj_[s].push_back(v.obj);
  }
  return *slot;
}

ModelSize LazyPricingEngine::model_size(ShipIdx s) { return lsfrp::model_size(get(s).model); }

PricingResult LazyPricingEngine::price(const PricingRequest& request) {
  const Instance& in = reach_.instance();
  const ShipIdx s = request.ship;
  CompactModel& m = get(s);
  for (ArcIdx a = 0; a < static_cast<int>(in.arcs.size()); ++a) {
    if (m.y[a] == kNoIndex) continue;
    const VisitIdx to = in.arcs[a].to;
    const bool sink = in.is_sink(to);
    m.model.set_objective(m.y[a], base_obj_[s][m.y[a]] - (sink || request.node_price.empty() ? 0.0 : request.node_price[to]));
    const bool banned = !sink && !request.forbidden.empty() && request.forbidden[to];
    m.model.set_bounds(m.y[a], 0.0, banned ? 0.0 : 1.0);
  }

  auto totals_of = [&](std::span<const double> x) {
    std::vector<double> totals(set_.size(), 0.0);
    for (int c = 0; c < set_.size(); ++c)
      if (m.x[c] != kNoIndex) totals[c] = std::max(0.0, x[m.x[c]]);
    return totals;
  };
  auto record = [&](std::vector<Cut>& cuts) {
    std::vector<lp::Constraint> rows;
    for (Cut& cut : cuts) {
      rows.push_back(cut_row(m, cut));
      ++cuts_emitted_;
      pools_[s].push_back(std::move(cut));
    }
    return rows;
  };

  auto separate = [&](std::span<const double> candidate) -> std::vector<lp::Constraint> {
    ++separation_calls_;
    const std::vector<VisitIdx> path = follow_path(reach_, m.y, s, candidate);
    std::vector<double> totals = totals_of(candidate);
    std::vector<Cut> cuts = separate_cuts(reach_, set_, s, path, totals);
    if (cuts.empty() && keep_accepted_) accepted_.push_back({s, path, std::move(totals)});
    return record(cuts);
  };

  lp::MipOptions options;
  options.gap_tol = 1e-9;
  options.time_limit_seconds = request.time_limit_seconds;
  const lp::MipSolution mip = lp::solve_mip(m.model, options, separate);
  PricingResult result;
  result.mip_nodes = mip.nodes;
  result.lp_iterations = mip.lp_iterations;
  result.timed_out = mip.status == lp::MipStatus::time_limit;
  if (mip.status == lp::MipStatus::numerical_failure || mip.status == lp::MipStatus::unbounded)
    throw Error("compact pricing failed for " + in.ships[s].id + " (" + std::string(lp::to_string(mip.status)) + ")");
  if (!mip.has_incumbent || result.timed_out) return result;

  PricedPath& best = result.best;
  best.ship = s;
  best.path = follow_path(reach_, m.y, s, mip.x);

  // Exact cargo on the chosen path; overflow found here also becomes a cut.
  std::vector<double> lower(m.model.num_vars()), upper(m.model.num_vars());
  std::vector<double> totals;
  for (;;) {
    for (int j = 0; j < m.model.num_vars(); ++j) {
      lower[j] = m.model.var(j).lb;
      upper[j] = m.model.var(j).ub;
    }
    for (int y : m.y)
      if (y != kNoIndex) lower[y] = upper[y] = mip.x[y] > 0.5 ? 1.0 : 0.0;
    lp::LpSolveInput input;
    input.lower = &lower;
    input.upper = &upper;
    const lp::LpSolution lp = lp::solve_lp(m.model, input);
    result.lp_iterations += lp.iterations;
    if (!lp.optimal()) throw Error("cargo re-solve failed for " + in.ships[s].id);
    totals = totals_of(lp.x);
    ++separation_calls_;
    std::vector<Cut> cuts = separate_cuts(reach_, set_, s, best.path, totals);
    if (cuts.empty()) break;
    for (lp::Constraint& row : record(cuts)) m.model.add_row(std::move(row));
  }
  place_flows(in, set_, best, totals);
  best.profit = path_profit(in, best);
  best.value = best.profit - path_price(best.path, request.node_price, in.sink());
  result.found = true;
  return result;
}

Solution run_colgen_lazy(const ReachIndex& reach, const CommoditySet& set, LazyPricingEngine& engine,
                         const ColumnGenerationOptions& options) {
  Solution sol = run_column_generation(reach, engine, options, "colgen-lazy");
  Diagnostics& d = sol.diagnostics;
  d.split_count = set.split_count;
  d.separation_calls = engine.separation_calls();
  d.cuts_emitted = engine.cuts_emitted();
  d.cuts_dc = d.cuts_rf = 0;
  d.ship_cuts.clear();
  for (ShipIdx s = 0; s < reach.instance().ship_count(); ++s) {
    ShipCutStats stats{s, 0, 0};
    for (const Cut& cut : engine.cuts(s)) (cut.scope == CutScope::dc ? stats.gamma_dc : stats.gamma_rf) += 1;
    d.cuts_dc += stats.gamma_dc;
    d.cuts_rf += stats.gamma_rf;
    d.ship_cuts.push_back(stats);
  }
  return sol;
}

Solution run_colgen_lazy(const Instance& instance, const ColumnGenerationOptions& options) {
  const ReachIndex reach(instance);
  const CommoditySet set = build_commodities(reach, options.commodities);
  LazyPricingEngine engine(reach, set);
  return run_colgen_lazy(reach, set, engine, options);
}

}  // namespace lsfrp
