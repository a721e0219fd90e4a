#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "lsfrp/instance.hpp"

namespace lsfrp {

/// Adjacency, topological order and reachability over visits ∪ {sink}, plus the
/// per-demand cargo arc sets and per-ship movable demands derived from them.
/// Immutable after construction.
class ReachIndex {
 public:
  /// Validates first; throws Error on an inadmissible instance.
  explicit ReachIndex(const Instance& instance);

  int node_count() const { return node_count_; }
  const std::vector<VisitIdx>& topological_order() const { return topo_; }
  int topo_position(VisitIdx v) const { return topo_pos_[v]; }
  const std::vector<ArcIdx>& out_arcs(VisitIdx v) const { return out_[v]; }
  const std::vector<ArcIdx>& in_arcs(VisitIdx v) const { return in_[v]; }
  ArcIdx find_arc(VisitIdx from, VisitIdx to) const;

  /// Reflexive: reaches(v, v) is true.
  bool reaches(VisitIdx from, VisitIdx to) const {
    return reach_[static_cast<std::size_t>(from) * node_count_ + to] != 0;
  }
  bool strictly_reaches(VisitIdx from, VisitIdx to) const { return from != to && reaches(from, to); }

  /// Arcs of A' a cargo unit loaded at `origin` can use before it leaves the ship at
  /// the first visited member of `destinations`: the tail is reachable from the
  /// origin without passing a destination, and the head is a destination or reaches one.
  std::vector<ArcIdx> cargo_arcs(VisitIdx origin, std::span<const VisitIdx> destinations) const;

  /// A^{(o,d,q)} for each demand.
  const std::vector<ArcIdx>& demand_arcs(DemandIdx m) const { return demand_arcs_[m]; }

  /// M̄_s: demands whose origin is reachable from v_s and that can reach a destination.
  const std::vector<DemandIdx>& movable_demands(ShipIdx s) const { return movable_[s]; }

  /// V̄^Orig_{sq}.
  std::vector<VisitIdx> origin_visits(ShipIdx s, CargoType q) const;

  /// Arc is usable by ship s iff its tail is reachable from v_s.
  bool ship_can_use(ShipIdx s, ArcIdx a) const;

  /// Number of v_s -> sink paths (saturating).
  std::uint64_t path_count(ShipIdx s) const;

  const Instance& instance() const { return *instance_; }

 private:
  const Instance* instance_;
  int node_count_ = 0;
  std::vector<std::vector<ArcIdx>> out_;
  std::vector<std::vector<ArcIdx>> in_;
  std::vector<VisitIdx> topo_;
  std::vector<int> topo_pos_;
  std::vector<std::uint8_t> reach_;
  std::vector<std::vector<ArcIdx>> demand_arcs_;
  std::vector<std::vector<DemandIdx>> movable_;
};

/// Convenience wrappers over a freshly built index.
std::uint64_t path_count(const Instance& instance, ShipIdx ship);
std::vector<DemandIdx> movable_demands(const Instance& instance, ShipIdx ship);

}  // namespace lsfrp
