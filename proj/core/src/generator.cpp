#include "lsfrp/generator.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

#include "lsfrp/reach_index.hpp"

namespace lsfrp {

namespace {

// mt19937_64 output is fixed by the standard; the distributions are not, so
// sampling is done here to keep instances identical across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(Range r) { return r.lo + (r.hi - r.lo) * unit(); }
  double whole(Range r) { return std::round(uniform(r)); }
  bool chance(double p) { return unit() < p; }
  int below(int n) { return static_cast<int>(engine_() % static_cast<std::uint64_t>(n)); }

 private:
  std::mt19937_64 engine_;
};

void check_range(const Range& r, const char* name) {
  if (!std::isfinite(r.lo) || !std::isfinite(r.hi) || r.lo > r.hi)
    throw Error(std::string("generator range ") + name + " is inverted or not finite");
}

}  // namespace

void check_params(const GeneratorParams& p) {
  if (p.ships < 1) throw Error("generator needs at least one ship");
  if (p.ship_types < 1 || p.ship_types > p.ships) throw Error("ship_types must lie in [1, ships]");
  if (p.visits < p.ships) throw Error("visits must be at least the number of ships (one start visit each)");
  if (p.layers < 0 || p.ports < 0 || p.demands < 0 || p.empty_points < 0)
    throw Error("generator counts must be non-negative");
  if (p.demands > 0 && p.visits == p.ships) throw Error("demands need visits beyond the start visits");
  if (p.empty_points > 2 * p.visits) throw Error("at most two empty points (dc, rf) per visit");
  if (!(p.arc_density > 0.0 && p.arc_density <= 1.0)) throw Error("arc_density must lie in (0, 1]");
  if (!(p.reefer_fraction >= 0.0 && p.reefer_fraction <= 1.0)) throw Error("reefer_fraction must lie in [0, 1]");
  if (!(p.multi_destination_fraction >= 0.0 && p.multi_destination_fraction <= 1.0))
    throw Error("multi_destination_fraction must lie in [0, 1]");
  check_range(p.move_cost, "move_cost");
  check_range(p.revenue, "revenue");
  check_range(p.sail_cost, "sail_cost");
  check_range(p.port_fee, "port_fee");
  check_range(p.capacity_dc, "capacity_dc");
  check_range(p.reefer_share, "reefer_share");
  check_range(p.demand_amount, "demand_amount");
  check_range(p.empty_amount, "empty_amount");
  if (p.move_cost.lo < 0) throw Error("move costs must be non-negative");
  if (p.capacity_dc.lo <= 0 || p.reefer_share.lo < 0 || p.reefer_share.hi > 1)
    throw Error("capacities must be positive with reefer_share in [0, 1]");
  if (p.demand_amount.lo <= 0 || p.empty_amount.lo <= 0) throw Error("amounts must be positive");
  if (!std::isfinite(p.empty_revenue)) throw Error("empty_revenue must be finite");
}

Instance generate_random(const GeneratorParams& p) {
  check_params(p);
  Rng rng(p.seed);
  Instance in;
  in.name = p.name.empty() ? "gen-" + std::to_string(p.seed) : p.name;
  for (int t = 0; t < p.ship_types; ++t) in.ship_types.push_back("T" + std::to_string(t));

  // Layer 0 holds the starts; the remaining visits are dealt over middle layers.
  const int rest = p.visits - p.ships;
  int middle = p.layers > 0 ? p.layers : std::max(1, rest / p.ships);
  middle = std::min(middle, std::max(1, rest));
  std::vector<std::vector<VisitIdx>> layers(1 + (rest > 0 ? middle : 0));
  std::vector<int> layer_of(p.visits);
  for (int v = 0; v < p.ships; ++v) {
    layers[0].push_back(v);
    layer_of[v] = 0;
  }
  for (int k = 0; k < rest; ++k) {
    const int layer = 1 + static_cast<int>(static_cast<long>(k) * middle / rest);
    layers[layer].push_back(p.ships + k);
    layer_of[p.ships + k] = layer;
  }
  const int last = static_cast<int>(layers.size()) - 1;

  const int port_count = p.ports > 0 ? p.ports : std::max(2, (p.visits * 3 + 4) / 5);
  std::vector<double> port_move(port_count), port_fee(port_count);
  for (int q = 0; q < port_count; ++q) {
    port_move[q] = rng.whole(p.move_cost);
    port_fee[q] = rng.whole(p.port_fee);
  }
  std::vector<int> port_of(p.visits);
  for (int v = 0; v < p.visits; ++v) {
    port_of[v] = rng.below(port_count);
    Visit visit;
    visit.id = "v" + std::to_string(v);
    visit.port = "P" + std::to_string(port_of[v]);
    visit.port_fee = port_fee[port_of[v]];
    visit.move_cost = port_move[port_of[v]];
    visit.time_index = layer_of[v];
    in.visits.push_back(std::move(visit));
  }

  std::vector<double> cap_dc(p.ship_types), cap_rf(p.ship_types);
  for (int t = 0; t < p.ship_types; ++t) {
    cap_dc[t] = rng.whole(p.capacity_dc);
    cap_rf[t] = std::round(cap_dc[t] * rng.uniform(p.reefer_share));
  }
  for (int s = 0; s < p.ships; ++s) {
    Ship ship;
    ship.id = "s" + std::to_string(s);
    ship.start = s;
    ship.type = s % p.ship_types;
    ship.capacity_dc = cap_dc[ship.type];
    ship.capacity_rf = cap_rf[ship.type];
    in.ships.push_back(std::move(ship));
  }

  const VisitIdx sink = p.visits;
  std::set<std::pair<VisitIdx, VisitIdx>> arcs;
  auto add_arc = [&](VisitIdx from, VisitIdx to) { arcs.insert({from, to}); };

  // One chain per ship through distinct visits keeps disjoint routing feasible.
  for (int s = 0; s < p.ships; ++s) {
    VisitIdx at = s;
    for (int l = 1; l <= last; ++l)
      if (s < static_cast<int>(layers[l].size())) {
        add_arc(at, layers[l][s]);
        at = layers[l][s];
      }
    add_arc(at, sink);
  }
  for (int l = 1; l <= last; ++l)
    for (VisitIdx v : layers[l]) {
      bool has_in = std::any_of(arcs.begin(), arcs.end(), [&](const auto& a) { return a.second == v; });
      if (!has_in) {
        const auto& from_layer = layers[rng.below(l)];
        add_arc(from_layer[rng.below(static_cast<int>(from_layer.size()))], v);
      }
    }
  for (int l = 0; l <= last; ++l)
    for (VisitIdx v : layers[l]) {
      bool has_out = std::any_of(arcs.begin(), arcs.end(), [&](const auto& a) { return a.first == v; });
      if (has_out) continue;
      if (l == last) {
        add_arc(v, sink);
      } else {
        const auto& to_layer = layers[l + 1 + rng.below(last - l)];
        add_arc(v, to_layer[rng.below(static_cast<int>(to_layer.size()))]);
      }
    }
  for (int a = 0; a <= last; ++a)
    for (int b = a + 1; b <= last; ++b) {
      const double prob = b == a + 1 ? p.arc_density : (b == a + 2 ? 0.3 : 0.1) * p.arc_density;
      for (VisitIdx u : layers[a])
        for (VisitIdx w : layers[b])
          if (rng.chance(prob)) add_arc(u, w);
    }
  for (int l = 1; l <= last; ++l)
    for (VisitIdx v : layers[l])
      if (l == last || rng.chance(0.15 * p.arc_density)) add_arc(v, sink);

  for (const auto& [from, to] : arcs) {
    Arc arc;
    arc.from = from;
    arc.to = to;
    const double base = to == sink ? 0.0 : rng.whole(p.sail_cost);
    for (int t = 0; t < p.ship_types; ++t) arc.sail_cost.push_back(std::round(base * (1.0 + 0.15 * t)));
    in.arcs.push_back(std::move(arc));
  }

  in.metadata["generator"] = "layered";
  in.metadata["seed"] = std::to_string(p.seed);
  in.empty_revenue = {p.empty_revenue, p.empty_revenue};

  const Instance skeleton = in;
  const ReachIndex reach(skeleton);
  std::vector<VisitIdx> origins;
  for (VisitIdx v = 0; v < p.visits; ++v)
    for (VisitIdx w = p.ships; w < p.visits; ++w)
      if (reach.strictly_reaches(v, w)) {
        origins.push_back(v);
        break;
      }
  for (int k = 0; k < p.demands && !origins.empty(); ++k) {
    Demand m;
    m.id = "m" + std::to_string(k);
    m.origin = origins[rng.below(static_cast<int>(origins.size()))];
    std::vector<VisitIdx> reachable;
    for (VisitIdx w = 0; w < p.visits; ++w)
      if (reach.strictly_reaches(m.origin, w)) reachable.push_back(w);
    const VisitIdx primary = reachable[rng.below(static_cast<int>(reachable.size()))];
    m.destinations.push_back(primary);
    if (rng.chance(p.multi_destination_fraction))
      for (VisitIdx w : reachable)
        if (w != primary && port_of[w] == port_of[primary] && m.destinations.size() < 3) m.destinations.push_back(w);
    std::sort(m.destinations.begin(), m.destinations.end());
    m.type = rng.chance(p.reefer_fraction) ? CargoType::reefer : CargoType::dry;
    m.amount = rng.whole(p.demand_amount);
    m.revenue = rng.whole(p.revenue);
    in.demands.push_back(std::move(m));
  }

  std::set<std::pair<VisitIdx, int>> used;
  for (int k = 0; k < p.empty_points; ++k) {
    EmptyPoint e;
    do {
      e.visit = rng.below(p.visits);
      e.type = rng.chance(0.8) ? CargoType::dry : CargoType::reefer;
    } while (!used.insert({e.visit, static_cast<int>(e.type)}).second);
    const double amount = rng.whole(p.empty_amount);
    e.amount = (k % 2 == 0) ? amount : -amount;
    in.empty_points.push_back(e);
  }

  require_valid(in);
  return in;
}

}  // namespace lsfrp
