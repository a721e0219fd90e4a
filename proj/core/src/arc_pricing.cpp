#include <chrono>
#include <map>

#include "lsfrp/formulations.hpp"
#include "lsfrp/lp/mip.hpp"
#include "lsfrp/pricing.hpp"

namespace lsfrp {

double path_profit(const Instance& instance, const PricedPath& priced) {
  Solution sol;
  sol.routes = {{priced.ship, priced.path}};
  sol.cargo = priced.cargo;
  sol.empties = priced.empties;
  return evaluate_objective(instance, sol);
}

double path_price(const std::vector<VisitIdx>& path, const std::vector<double>& node_price, VisitIdx sink) {
  if (node_price.empty()) return 0.0;
  double total = 0.0;
  for (VisitIdx v : path)
    if (v != sink) total += node_price[v];
  return total;
}

void place_flows(const Instance& in, const CommoditySet& set, PricedPath& priced, std::span<const double> totals) {
  std::vector<int> at(in.visit_count() + 1, -1);
  for (std::size_t k = 0; k < priced.path.size(); ++k) at[priced.path[k]] = static_cast<int>(k);
  std::map<std::pair<DemandIdx, VisitIdx>, double> cargo;
  std::map<std::tuple<int, VisitIdx, VisitIdx>, double> empties;
  for (int c = 0; c < set.size(); ++c) {
    if (totals[c] <= 1e-9) continue;
    const Commodity& com = set.items[c];
    if (at[com.origin] < 0) throw Error("cargo assigned to a commodity whose origin is off the path");
    VisitIdx drop = kNoIndex;
    for (VisitIdx d : com.destinations)
      if (at[d] > at[com.origin] && (drop == kNoIndex || at[d] < at[drop])) drop = d;
    if (drop == kNoIndex) throw Error("cargo assigned to a commodity with no destination on the path");
    if (com.is_empty()) empties[{static_cast<int>(com.type), com.origin, drop}] += totals[c];
    else cargo[{com.source, drop}] += totals[c];
  }
  auto snap = [](double v) {
    const double r = std::round(v);
    return std::abs(v - r) <= 1e-7 * std::max(1.0, std::abs(v)) ? r : v;
  };
  priced.cargo.clear();
  priced.empties.clear();
  for (const auto& [key, amount] : cargo) priced.cargo.push_back({key.first, priced.ship, key.second, snap(amount)});
  for (const auto& [key, amount] : empties)
    priced.empties.push_back({priced.ship, static_cast<CargoType>(std::get<0>(key)), std::get<1>(key),
                              std::get<2>(key), snap(amount)});
}

namespace {

class ArcPricingEngine final : public PricingEngine {
 public:
  ArcPricingEngine(const ReachIndex& reach, const CommoditySet& set)
      : reach_(reach), set_(set), ships_(reach.instance().ship_count()) {}

  std::string name() const override { return "arc-flow"; }

  ModelSize model_size(ShipIdx s) override { return lsfrp::model_size(get(s).model); }

  PricingResult price(const PricingRequest& request) override {
    const Instance& in = reach_.instance();
    const ShipIdx s = request.ship;
    ShipModel& m = get(s);
    const std::vector<int>& ys = m.vars.y[s];
    for (ArcIdx a = 0; a < static_cast<int>(in.arcs.size()); ++a) {
      if (ys[a] == kNoIndex) continue;
      const VisitIdx to = in.arcs[a].to;
      const bool sink = in.is_sink(to);
      const double price = sink || request.node_price.empty() ? 0.0 : request.node_price[to];
      m.model.set_objective(ys[a], m.base_obj[ys[a]] - price);
      const bool banned = !sink && !request.forbidden.empty() && request.forbidden[to];
      m.model.set_bounds(ys[a], 0.0, banned ? 0.0 : 1.0);
    }

    lp::MipOptions options;
    options.gap_tol = 1e-9;
    options.time_limit_seconds = request.time_limit_seconds;
    const lp::MipSolution mip = lp::solve_mip(m.model, options);
    PricingResult result;
    result.mip_nodes = mip.nodes;
    result.lp_iterations = mip.lp_iterations;
    result.timed_out = mip.status == lp::MipStatus::time_limit;
    if (mip.status == lp::MipStatus::numerical_failure || mip.status == lp::MipStatus::unbounded)
      throw Error("arc-flow pricing failed for " + in.ships[s].id);
    if (!mip.has_incumbent || result.timed_out) return result;

    PricedPath& best = result.best;
    best.ship = s;
    best.path = follow_path(reach_, ys, s, mip.x);

    // Re-solve the cargo with the route fixed so the column carries an exact plan.
    std::vector<double> lower(m.model.num_vars()), upper(m.model.num_vars());
    for (int j = 0; j < m.model.num_vars(); ++j) {
      lower[j] = m.model.var(j).lb;
      upper[j] = m.model.var(j).ub;
    }
    for (int y : ys)
      if (y != kNoIndex) lower[y] = upper[y] = mip.x[y] > 0.5 ? 1.0 : 0.0;
    lp::LpSolveInput input;
    input.lower = &lower;
    input.upper = &upper;
    const lp::LpSolution lp = lp::solve_lp(m.model, input);
    result.lp_iterations += lp.iterations;
    if (!lp.optimal()) throw Error("cargo re-solve failed for " + in.ships[s].id);

    std::vector<double> totals(set_.size(), 0.0);
    for (int c = 0; c < set_.size(); ++c) {
      const auto& xs = m.vars.x[s][c];
      for (std::size_t k = 0; k < xs.size(); ++k)
        if (xs[k] != kNoIndex && set_.items[c].destination_slot(in.arcs[set_.items[c].arcs[k]].to) != kNoIndex)
          totals[c] += lp.x[xs[k]];
    }
    place_flows(in, set_, best, totals);
    best.profit = path_profit(in, best);
    best.value = best.profit - path_price(best.path, request.node_price, in.sink());
    result.found = true;
    return result;
  }

 private:
  struct ShipModel {
    bool built = false;
    lp::LinearModel model;
    ArcFlowVars vars;
    std::vector<double> base_obj;
  };

  ShipModel& get(ShipIdx s) {
    ShipModel& m = ships_.at(s);
    if (m.built) return m;
    const int ships = reach_.instance().ship_count();
    m.vars.per_ship = true;
    m.vars.y.assign(ships, {});
    m.vars.x.assign(ships, std::vector<std::vector<int>>(set_.size()));
    add_ship_arc_block(m.model, m.vars, reach_, set_, s);
    add_group_caps(m.model, m.vars, reach_, set_, std::span<const ShipIdx>(&s, 1));
    for (const lp::Variable& v : m.model.vars()) m.base_obj.push_back(v.obj);
    m.built = true;
    return m;
  }

  const ReachIndex& reach_;
  const CommoditySet& set_;
  std::vector<ShipModel> ships_;
};

}  // namespace

std::unique_ptr<PricingEngine> make_arc_pricing(const ReachIndex& reach, const CommoditySet& set) {
  return std::make_unique<ArcPricingEngine>(reach, set);
}

}  // namespace lsfrp
