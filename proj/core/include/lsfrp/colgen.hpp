#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lsfrp/commodity.hpp"
#include "lsfrp/lp/simplex.hpp"
#include "lsfrp/pricing.hpp"
#include "lsfrp/reach_index.hpp"
#include "lsfrp/solution.hpp"

namespace lsfrp {

/// A ship path with its cargo plan; dummy columns route v_s straight to the
/// sink at a prohibitive cost and exist only to keep the master feasible.
struct Column {
  ShipIdx ship = kNoIndex;
  std::vector<VisitIdx> path;  // v_s ... sink; dummy: {v_s, sink}
  std::vector<CargoFlow> cargo;
  std::vector<EmptyFlow> empties;
  double profit = 0.0;
  bool dummy = false;

  /// Visits covered by the column (sink excluded).
  std::vector<VisitIdx> nodes(VisitIdx sink) const;
};

struct MasterDuals {
  std::vector<double> pi;  // per ship, convexity rows (free)
  std::vector<double> mu;  // per visit, node-once rows (>= 0)
};

struct RmpSolution {
  bool optimal = false;
  double objective = 0.0;
  std::vector<double> z;  // per column
  MasterDuals duals;      // relaxed solves only
  long lp_iterations = 0;
};

struct ColumnGenerationOptions {
  CommodityOptions commodities{};
  bool batched = false;  // one column per ship per pass, master re-solved after the pass
  double time_limit_seconds = lp::kInf;
  long node_limit = 100000;
  std::function<void(const std::string&)> log;
};

/// Cost attached to dummy columns: ten times every cost and revenue in the data, plus one.
double dummy_cost(const Instance& instance);
Column dummy_column(const Instance& instance, ShipIdx ship);

/// Master over `columns`: max sum profit * Z, one column per ship, each visit at most once.
/// `relax` solves the LP and returns duals; otherwise Z is binary.
RmpSolution solve_rmp(const Instance& instance, std::span<const Column> columns, bool relax);

/// Ships by ascending path count, each priced with zero duals while avoiding
/// visits taken by earlier ships; every ship also gets its dummy column.
std::vector<Column> initial_columns(const ReachIndex& reach, PricingEngine& engine,
                                    double time_limit_seconds = lp::kInf);

/// Best column for `ship` under `duals`, if its reduced cost exceeds `tol_rc`.
std::optional<Column> price_ship(const Instance& instance, ShipIdx ship, const MasterDuals& duals, PricingEngine& engine,
                                 double tol_rc);

Column to_column(const PricedPath& priced);

/// Column generation with branching on (visit, ship type) inside the tree.
/// `method` tags the returned solution.
Solution run_column_generation(const ReachIndex& reach, PricingEngine& engine, const ColumnGenerationOptions& options,
                               const std::string& method = "colgen");

/// Arc-flow pricing over commodities built from `options.commodities`.
Solution run_column_generation(const Instance& instance, const ColumnGenerationOptions& options = {});

}  // namespace lsfrp
