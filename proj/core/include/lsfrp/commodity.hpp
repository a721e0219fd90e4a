#pragma once

#include <string>
#include <vector>

#include "lsfrp/instance.hpp"
#include "lsfrp/reach_index.hpp"

namespace lsfrp {

enum class CommodityKind : std::uint8_t { demand, split_member, empty_pair };

/// When a multi-destination demand is replaced by one variable per destination.
///  - safe: some load point lies strictly between two destinations
///    (d1 ->* k ->* d2); the condition under which a capacity cut could
///    count cargo that was already unloaded.
///  - strict: the four reachability criteria of the lazy-constraint method,
///    taken literally.
///  - none: never split (unequal unload costs then make the build fail).
/// Unequal unload costs always force a split under `safe` and `strict`.
enum class SplitRule : std::uint8_t { safe, strict, none };

std::string_view to_string(SplitRule rule);
SplitRule split_rule_from_string(std::string_view text);

/// One flow-carrying entity of the cargo models: an unsplit demand, one
/// destination of a split demand, or an empty-equipment (surplus, deficit) pair.
struct Commodity {
  CommodityKind kind = CommodityKind::demand;
  int source = kNoIndex;  // demand index, or empty pair index
  VisitIdx origin = kNoIndex;
  std::vector<VisitIdx> destinations;  // all strictly reachable from origin
  CargoType type = CargoType::dry;
  bool reefer_slots = false;  // laden reefer cargo also uses powered slots
  double amount = 0.0;
  std::vector<double> unit_profit;  // per destination: revenue minus both move costs
  int group = kNoIndex;             // split family cap, if any
  std::vector<ArcIdx> arcs;         // arcs the cargo can occupy

  /// Capacity bounding this commodity alone on ship `s`.
  double ship_capacity(const Ship& s) const { return reefer_slots ? s.capacity_rf : s.capacity_dc; }
  bool is_empty() const { return kind == CommodityKind::empty_pair; }
  int destination_slot(VisitIdx v) const;
};

struct EmptyPair {
  VisitIdx origin = kNoIndex;
  VisitIdx destination = kNoIndex;
  CargoType type = CargoType::dry;
};

/// Shared availability: sum of total flow of members <= cap.
struct CapGroup {
  double cap = 0.0;
  std::vector<int> members;
  std::string label;
};

struct CommodityOptions {
  SplitRule split_rule = SplitRule::safe;
  bool include_empties = true;
};

struct CommoditySet {
  std::vector<Commodity> items;
  std::vector<EmptyPair> empty_pairs;
  std::vector<CapGroup> groups;
  std::vector<std::vector<int>> by_origin;  // per visit
  std::vector<std::vector<int>> by_demand;  // per demand
  std::vector<bool> split;                  // per demand
  int split_count = 0;

  int size() const { return static_cast<int>(items.size()); }
  std::string label(const Instance& instance, int c) const;
};

/// Per-demand split decision over the whole graph.
std::vector<bool> split_demand_triples(const ReachIndex& reach, SplitRule rule);

/// Demands movable by `ship` that get split.
std::vector<DemandIdx> split_demand_triples(const ReachIndex& reach, ShipIdx ship, SplitRule rule);

/// Throws Error when rule is `none` and a demand has destinations with unequal unload costs.
CommoditySet build_commodities(const ReachIndex& reach, const CommodityOptions& options = {});

/// Commodities whose origin ship `s` can reach.
std::vector<int> movable_commodities(const ReachIndex& reach, const CommoditySet& set, ShipIdx s);

}  // namespace lsfrp
