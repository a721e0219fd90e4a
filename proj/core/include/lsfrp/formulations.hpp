#pragma once

#include <span>
#include <string>
#include <vector>

#include "lsfrp/commodity.hpp"
#include "lsfrp/lp/linear_model.hpp"
#include "lsfrp/lp/mip.hpp"
#include "lsfrp/reach_index.hpp"
#include "lsfrp/solution.hpp"

namespace lsfrp {

struct FormulationOptions {
  bool tighten = false;  // per-arc availability rows on the reduced model
  CommodityOptions commodities{};
};

/// Variable handles of an arc-flow model, kNoIndex where no variable exists.
/// x[owner][c][k] is the flow of commodity c on arc commodities.items[c].arcs[k];
/// owner is the ship in per-ship models and 0 in the reduced model.
struct ArcFlowVars {
  std::vector<std::vector<int>> y;  // [ship][arc]
  std::vector<std::vector<std::vector<int>>> x;
  bool per_ship = false;
};

struct ArcFlowModel {
  lp::LinearModel model;
  ArcFlowVars vars;
  CommoditySet commodities;
};

ArcFlowModel build_reduced(const ReachIndex& reach, const FormulationOptions& options = {});
ArcFlowModel build_revised(const ReachIndex& reach, const FormulationOptions& options = {});

/// Rows and variables of one ship in the disaggregated model: path flow from
/// v_s, per-arc capacities, origin gating, cargo conservation and the per-arc
/// cap min(a, u_s). Appends to `model`; `vars` must be sized for all ships.
/// Coupling rows (node-once, sink count, shared caps) are left to the caller.
void add_ship_arc_block(lp::LinearModel& model, ArcFlowVars& vars, const ReachIndex& reach, const CommoditySet& set,
                        ShipIdx ship);

/// Shared-cap rows for `ships` (every group member flow leaving its origin).
void add_group_caps(lp::LinearModel& model, const ArcFlowVars& vars, const ReachIndex& reach, const CommoditySet& set,
                    std::span<const ShipIdx> owners);

/// Routes and flows from a point whose y values are integral.
Solution extract_solution(const ReachIndex& reach, const ArcFlowModel& built, std::span<const double> x);

/// Path of `ship` encoded by integral y values (v_s ... sink); empty if y leaves v_s nowhere.
std::vector<VisitIdx> follow_path(const ReachIndex& reach, const std::vector<int>& ship_y, ShipIdx ship,
                                  std::span<const double> x);

ModelSize model_size(const lp::LinearModel& model);

/// Builds, solves and extracts; `method` is one of reduced, reduced-tight, revised.
Solution solve_arc_flow(const ReachIndex& reach, const std::string& method, const FormulationOptions& options,
                        const lp::MipOptions& mip = {});

}  // namespace lsfrp
