#pragma once

#include <memory>
#include <span>
#include <vector>

#include "lsfrp/colgen.hpp"
#include "lsfrp/commodity.hpp"
#include "lsfrp/lp/linear_model.hpp"
#include "lsfrp/pricing.hpp"

namespace lsfrp {

enum class CutScope : std::uint8_t { dc, rf };

/// Sum of the members' flows <= rhs: capacity at `node` for one scope.
struct Cut {
  VisitIdx node = kNoIndex;
  CutScope scope = CutScope::dc;
  std::vector<int> members;  // commodity indices
  double rhs = 0.0;
};

/// Per-ship compact model: one total-flow variable per commodity instead of
/// one per arc, so joint capacity along the path is left to cuts.
struct CompactModel {
  ShipIdx ship = kNoIndex;
  lp::LinearModel model;
  std::vector<int> y;  // per arc
  std::vector<int> x;  // per commodity
};

CompactModel build_compact_pricing(const ReachIndex& reach, const CommoditySet& set, ShipIdx ship,
                                   std::span<const Cut> carried = {});

lp::Constraint cut_row(const CompactModel& compact, const Cut& cut);

/// Replays `path` from v_s: cargo unloads at the first destination reached and
/// loads at its origin; every load node where a scope overflows yields one cut.
/// Members are the commodities with a cargo arc leaving the node.
std::vector<Cut> separate_cuts(const ReachIndex& reach, const CommoditySet& set, ShipIdx ship,
                               const std::vector<VisitIdx>& path, std::span<const double> totals,
                               double tol = lp::Tolerances::feasibility);

/// Legs of a one-ship plan where on-board cargo exceeds a capacity, counted per scope.
/// Works from instance data only.
int capacity_violations(const Instance& instance, const PricedPath& plan, double tol = 1e-6);

/// A candidate the lazy pricing MIP accepted without cuts.
struct AcceptedCandidate {
  ShipIdx ship = kNoIndex;
  std::vector<VisitIdx> path;
  std::vector<double> totals;  // per commodity
};

class LazyPricingEngine final : public PricingEngine {
 public:
  LazyPricingEngine(const ReachIndex& reach, const CommoditySet& set);

  std::string name() const override { return "compact-lazy"; }
  PricingResult price(const PricingRequest& request) override;
  ModelSize model_size(ShipIdx ship) override;

  const std::vector<Cut>& cuts(ShipIdx ship) const { return pools_.at(ship); }
  long separation_calls() const { return separation_calls_; }
  long cuts_emitted() const { return cuts_emitted_; }
  const std::vector<AcceptedCandidate>& accepted() const { return accepted_; }
  void keep_accepted(bool keep) { keep_accepted_ = keep; }

 private:
  CompactModel& get(ShipIdx ship);

  const ReachIndex& reach_;
  const CommoditySet& set_;
  std::vector<std::unique_ptr<CompactModel>> models_;
  std::vector<std::vector<double>> base_obj_;
  std::vector<std::vector<Cut>> pools_;
  long separation_calls_ = 0;
  long cuts_emitted_ = 0;
  bool keep_accepted_ = false;
  std::vector<AcceptedCandidate> accepted_;
};

/// Column generation with the compact pricing model and per-ship cut pools.
Solution run_colgen_lazy(const Instance& instance, const ColumnGenerationOptions& options = {});

/// Same, reusing a caller-owned engine (for inspecting cuts and accepted candidates).
Solution run_colgen_lazy(const ReachIndex& reach, const CommoditySet& set, LazyPricingEngine& engine,
                         const ColumnGenerationOptions& options = {});

}  // namespace lsfrp
