#include "lsfrp/reach_index.hpp"

#include <algorithm>
#include <limits>

namespace lsfrp {

ReachIndex::ReachIndex(const Instance& instance) : instance_(&instance) {
  require_valid(instance);
  node_count_ = instance.visit_count() + 1;
  const int n = node_count_;
  out_.assign(n, {});
  in_.assign(n, {});
  for (ArcIdx a = 0; a < static_cast<int>(instance.arcs.size()); ++a) {
    out_[instance.arcs[a].from].push_back(a);
    in_[instance.arcs[a].to].push_back(a);
  }

  std::vector<int> indeg(n, 0);
  for (const Arc& arc : instance.arcs) ++indeg[arc.to];
  // Smallest-index-first Kahn order keeps the order independent of arc listing.
  std::vector<VisitIdx> ready;
  for (int v = 0; v < n; ++v)
    if (indeg[v] == 0) ready.push_back(v);
  std::make_heap(ready.begin(), ready.end(), std::greater<>());
  while (!ready.empty()) {
    std::pop_heap(ready.begin(), ready.end(), std::greater<>());
    VisitIdx v = ready.back();
    ready.pop_back();
    topo_.push_back(v);
    for (ArcIdx a : out_[v]) {
      VisitIdx w = instance.arcs[a].to;
      if (--indeg[w] == 0) {
        ready.push_back(w);
        std::push_heap(ready.begin(), ready.end(), std::greater<>());
      }
    }
  }
  topo_pos_.assign(n, 0);
  for (int i = 0; i < n; ++i) topo_pos_[topo_[i]] = i;

  reach_.assign(static_cast<std::size_t>(n) * n, 0);
  for (auto it = topo_.rbegin(); it != topo_.rend(); ++it) {
    VisitIdx v = *it;
    std::uint8_t* row = &reach_[static_cast<std::size_t>(v) * n];
    row[v] = 1;
    for (ArcIdx a : out_[v]) {
      const std::uint8_t* succ = &reach_[static_cast<std::size_t>(instance.arcs[a].to) * n];
      for (int w = 0; w < n; ++w) row[w] |= succ[w];
    }
  }

  demand_arcs_.reserve(instance.demands.size());
  for (const Demand& m : instance.demands) demand_arcs_.push_back(cargo_arcs(m.origin, m.destinations));

  movable_.assign(instance.ship_count(), {});
  for (ShipIdx s = 0; s < instance.ship_count(); ++s)
    for (DemandIdx m = 0; m < static_cast<int>(instance.demands.size()); ++m)
      if (!demand_arcs_[m].empty() && reaches(instance.ships[s].start, instance.demands[m].origin))
        movable_[s].push_back(m);
}

ArcIdx ReachIndex::find_arc(VisitIdx from, VisitIdx to) const {
  for (ArcIdx a : out_[from])
    if (instance_->arcs[a].to == to) return a;
  return kNoIndex;
}

std::vector<ArcIdx> ReachIndex::cargo_arcs(VisitIdx origin, std::span<const VisitIdx> destinations) const {
  const Instance& in = *instance_;
  std::vector<char> is_dest(node_count_, 0);
  for (VisitIdx d : destinations) is_dest[d] = 1;
  if (is_dest[origin]) return {};

  std::vector<char> tail_ok(node_count_, 0);
  std::vector<VisitIdx> stack{origin};
  tail_ok[origin] = 1;
  while (!stack.empty()) {
    VisitIdx v = stack.back();
    stack.pop_back();
    for (ArcIdx a : out_[v]) {
      VisitIdx w = in.arcs[a].to;
      if (in.is_sink(w) || is_dest[w] || tail_ok[w]) continue;
      tail_ok[w] = 1;
      stack.push_back(w);
    }
  }

  std::vector<ArcIdx> result;
  for (ArcIdx a = 0; a < static_cast<int>(in.arcs.size()); ++a) {
    const Arc& arc = in.arcs[a];
    if (in.is_sink(arc.to) || !tail_ok[arc.from]) continue;
    bool head_ok = std::any_of(destinations.begin(), destinations.end(),
                               [&](VisitIdx d) { return reaches(arc.to, d); });
    if (head_ok) result.push_back(a);
  }
  return result;
}

std::vector<VisitIdx> ReachIndex::origin_visits(ShipIdx s, CargoType q) const {
  std::vector<VisitIdx> result;
  for (DemandIdx m : movable_[s])
    if (instance_->demands[m].type == q) result.push_back(instance_->demands[m].origin);
  std::sort(result.begin(), result.end());
  result.erase(std::unique(result.begin(), result.end()), result.end());
  return result;
}

bool ReachIndex::ship_can_use(ShipIdx s, ArcIdx a) const {
  return reaches(instance_->ships[s].start, instance_->arcs[a].from);
}

std::uint64_t ReachIndex::path_count(ShipIdx s) const {
  constexpr std::uint64_t kMax = std::numeric_limits<std::uint64_t>::max();
  std::vector<std::uint64_t> count(node_count_, 0);
  count[instance_->sink()] = 1;
  for (auto it = topo_.rbegin(); it != topo_.rend(); ++it) {
    VisitIdx v = *it;
    if (instance_->is_sink(v)) continue;
    std::uint64_t total = 0;
    for (ArcIdx a : out_[v]) {
      std::uint64_t c = count[instance_->arcs[a].to];
      total = (kMax - total < c) ? kMax : total + c;
    }
    count[v] = total;
  }
  return count[instance_->ships[s].start];
}

std::uint64_t path_count(const Instance& instance, ShipIdx ship) {
  if (ship < 0 || ship >= instance.ship_count()) throw Error("unknown ship index");
  return ReachIndex(instance).path_count(ship);
}

std::vector<DemandIdx> movable_demands(const Instance& instance, ShipIdx ship) {
  if (ship < 0 || ship >= instance.ship_count()) throw Error("unknown ship index");
  return ReachIndex(instance).movable_demands(ship);
}

}  // namespace lsfrp
