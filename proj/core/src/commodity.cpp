#include "lsfrp/commodity.hpp"

#include <algorithm>

namespace lsfrp {

std::string_view to_string(SplitRule rule) {
  switch (rule) {
    case SplitRule::safe: return "safe";
    case SplitRule::strict: return "strict";
    case SplitRule::none: return "none";
  }
  return "safe";
}

SplitRule split_rule_from_string(std::string_view text) {
  if (text == "safe") return SplitRule::safe;
  if (text == "strict") return SplitRule::strict;
  if (text == "none") return SplitRule::none;
  throw Error("unknown split rule \"" + std::string(text) + "\" (expected safe, strict or none)");
}

int Commodity::destination_slot(VisitIdx v) const {
  auto it = std::find(destinations.begin(), destinations.end(), v);
  return it == destinations.end() ? kNoIndex : static_cast<int>(it - destinations.begin());
}

std::string CommoditySet::label(const Instance& instance, int c) const {
  const Commodity& k = items[c];
  switch (k.kind) {
    case CommodityKind::demand: return instance.demands[k.source].id;
    case CommodityKind::split_member:
      return instance.demands[k.source].id + ">" + instance.visit_name(k.destinations.front());
    case CommodityKind::empty_pair:
      return "empty:" + std::string(to_string(k.type)) + ":" + instance.visit_name(k.origin) + ">" +
             instance.visit_name(k.destinations.front());
  }
  return {};
}

namespace {

std::vector<VisitIdx> reachable_destinations(const ReachIndex& reach, const Demand& m) {
  std::vector<VisitIdx> result;
  for (VisitIdx d : m.destinations)
    if (reach.strictly_reaches(m.origin, d)) result.push_back(d);
  return result;
}

bool unequal_unload_costs(const Instance& in, const std::vector<VisitIdx>& dests) {
  for (VisitIdx d : dests)
    if (in.visits[d].move_cost != in.visits[dests.front()].move_cost) return true;
  return false;
}

// Visits where cargo of any kind can be loaded.
std::vector<VisitIdx> load_points(const Instance& in) {
  std::vector<VisitIdx> points;
  for (const Demand& m : in.demands) points.push_back(m.origin);
  for (const EmptyPoint& e : in.empty_points)
    if (e.amount > 0) points.push_back(e.visit);
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  return points;
}

bool safe_rule_splits(const ReachIndex& reach, const std::vector<VisitIdx>& dests,
                      const std::vector<VisitIdx>& loads) {
  for (VisitIdx d1 : dests)
    for (VisitIdx d2 : dests) {
      if (d1 == d2 || !reach.reaches(d1, d2)) continue;
      for (VisitIdx k : loads)
        if (reach.strictly_reaches(d1, k) && reach.reaches(k, d2)) return true;
    }
  return false;
}

// Visits reachable from `from` in the graph with `removed` deleted.
std::vector<char> reachable_avoiding(const ReachIndex& reach, VisitIdx from, VisitIdx removed) {
  const Instance& in = reach.instance();
  std::vector<char> seen(reach.node_count(), 0);
  if (from == removed) return seen;
  std::vector<VisitIdx> stack{from};
  seen[from] = 1;
  while (!stack.empty()) {
    VisitIdx v = stack.back();
    stack.pop_back();
    for (ArcIdx a : reach.out_arcs(v)) {
      VisitIdx w = in.arcs[a].to;
      if (w == removed || seen[w]) continue;
      seen[w] = 1;
      stack.push_back(w);
    }
  }
  return seen;
}

bool strict_rule_splits(const ReachIndex& reach, DemandIdx self, const std::vector<VisitIdx>& dests) {
  const Instance& in = reach.instance();
  const VisitIdx o = in.demands[self].origin;
  for (VisitIdx d1 : dests) {
    std::vector<char> avoiding_d1;
    for (VisitIdx d2 : dests) {
      if (d1 == d2 || !reach.reaches(d1, d2)) continue;
      for (DemandIdx other = 0; other < static_cast<int>(in.demands.size()); ++other) {
        if (other == self) continue;
        const Demand& star = in.demands[other];
        if (!reach.reaches(d1, star.origin) || !reach.reaches(star.origin, d2)) continue;
        bool tail = std::any_of(star.destinations.begin(), star.destinations.end(),
                                [&](VisitIdx ds) { return reach.reaches(d2, ds); });
        if (!tail) continue;
        if (avoiding_d1.empty()) avoiding_d1 = reachable_avoiding(reach, o, d1);
        if (avoiding_d1[star.origin]) return true;
      }
    }
  }
  return false;
}

}  // namespace

std::vector<bool> split_demand_triples(const ReachIndex& reach, SplitRule rule) {
  const Instance& in = reach.instance();
  std::vector<bool> split(in.demands.size(), false);
  if (rule == SplitRule::none) return split;
  const std::vector<VisitIdx> loads = load_points(in);
  for (DemandIdx m = 0; m < static_cast<int>(in.demands.size()); ++m) {
    const std::vector<VisitIdx> dests = reachable_destinations(reach, in.demands[m]);
    if (dests.size() < 2) continue;
    if (unequal_unload_costs(in, dests)) split[m] = true;
    else if (rule == SplitRule::safe) split[m] = safe_rule_splits(reach, dests, loads);
    else split[m] = strict_rule_splits(reach, m, dests);
  }
  return split;
}

std::vector<DemandIdx> split_demand_triples(const ReachIndex& reach, ShipIdx ship, SplitRule rule) {
  const std::vector<bool> split = split_demand_triples(reach, rule);
  std::vector<DemandIdx> result;
  for (DemandIdx m : reach.movable_demands(ship))
    if (split[m]) result.push_back(m);
  return result;
}

CommoditySet build_commodities(const ReachIndex& reach, const CommodityOptions& options) {
  const Instance& in = reach.instance();
  CommoditySet set;
  set.split = split_demand_triples(reach, options.split_rule);
  set.by_demand.assign(in.demands.size(), {});

  for (DemandIdx m = 0; m < static_cast<int>(in.demands.size()); ++m) {
    const Demand& dem = in.demands[m];
    const std::vector<VisitIdx> dests = reachable_destinations(reach, dem);
    if (dests.empty()) continue;
    if (options.split_rule == SplitRule::none && unequal_unload_costs(in, dests))
      throw Error("demand " + dem.id + " has destinations with different move costs; it cannot be modelled unsplit");
    auto profit = [&](VisitIdx d) {
      return dem.revenue - in.visits[dem.origin].move_cost - in.visits[d].move_cost;
    };
    auto make = [&](CommodityKind kind, std::vector<VisitIdx> ds) {
      Commodity c;
      c.kind = kind;
      c.source = m;
      c.origin = dem.origin;
      c.type = dem.type;
      c.reefer_slots = dem.type == CargoType::reefer;
      c.amount = dem.amount;
      for (VisitIdx d : ds) c.unit_profit.push_back(profit(d));
      c.arcs = reach.cargo_arcs(dem.origin, ds);
      c.destinations = std::move(ds);
      return c;
    };
    if (set.split[m]) {
      ++set.split_count;
      CapGroup family{dem.amount, {}, dem.id};
      const int group = static_cast<int>(set.groups.size());
      for (VisitIdx d : dests) {
        Commodity c = make(CommodityKind::split_member, {d});
        c.group = group;
        family.members.push_back(set.size());
        set.by_demand[m].push_back(set.size());
        set.items.push_back(std::move(c));
      }
      set.groups.push_back(std::move(family));
    } else {
      set.by_demand[m].push_back(set.size());
      set.items.push_back(make(CommodityKind::demand, dests));
    }
  }

  if (options.include_empties) {
    std::vector<std::vector<int>> out_of(in.empty_points.size()), into(in.empty_points.size());
    for (std::size_t sp = 0; sp < in.empty_points.size(); ++sp) {
      const EmptyPoint& surplus = in.empty_points[sp];
      if (surplus.amount <= 0) continue;
      for (std::size_t dp = 0; dp < in.empty_points.size(); ++dp) {
        const EmptyPoint& deficit = in.empty_points[dp];
        if (deficit.amount >= 0 || deficit.type != surplus.type) continue;
        if (!reach.strictly_reaches(surplus.visit, deficit.visit)) continue;
        Commodity c;
        c.kind = CommodityKind::empty_pair;
        c.source = static_cast<int>(set.empty_pairs.size());
        c.origin = surplus.visit;
        c.destinations = {deficit.visit};
        c.type = surplus.type;
        c.reefer_slots = false;
        c.amount = std::min(surplus.amount, -deficit.amount);
        c.unit_profit = {in.empty_revenue_for(surplus.type) - in.visits[surplus.visit].move_cost -
                         in.visits[deficit.visit].move_cost};
        c.arcs = reach.cargo_arcs(surplus.visit, c.destinations);
        set.empty_pairs.push_back({surplus.visit, deficit.visit, surplus.type});
        out_of[sp].push_back(set.size());
        into[dp].push_back(set.size());
        set.items.push_back(std::move(c));
      }
    }
    for (std::size_t p = 0; p < in.empty_points.size(); ++p) {
      const EmptyPoint& e = in.empty_points[p];
      const std::vector<int>& members = e.amount > 0 ? out_of[p] : into[p];
      if (members.size() < 2) continue;
      set.groups.push_back({std::abs(e.amount), members,
                            std::string(e.amount > 0 ? "surplus:" : "deficit:") + std::string(to_string(e.type)) +
                                ":" + in.visits[e.visit].id});
    }
  }

  set.by_origin.assign(in.visit_count(), {});
  for (int c = 0; c < set.size(); ++c) set.by_origin[set.items[c].origin].push_back(c);
  return set;
}

std::vector<int> movable_commodities(const ReachIndex& reach, const CommoditySet& set, ShipIdx s) {
  const VisitIdx start = reach.instance().ships[s].start;
  std::vector<int> result;
  for (int c = 0; c < set.size(); ++c)
    if (!set.items[c].arcs.empty() && reach.reaches(start, set.items[c].origin)) result.push_back(c);
  return result;
}

}  // namespace lsfrp
