#include "lsfrp/instance.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>
#include <utility>

namespace lsfrp {

std::string_view to_string(CargoType type) { return type == CargoType::reefer ? "rf" : "dc"; }

CargoType cargo_type_from_string(std::string_view text) {
  if (text == "dc" || text == "dry") return CargoType::dry;
  if (text == "rf" || text == "reefer") return CargoType::reefer;
  throw Error("unknown cargo type \"" + std::string(text) + "\"");
}

const std::string& Instance::visit_name(VisitIdx v) const {
  if (v == sink()) return sink_id;
  return visits.at(static_cast<std::size_t>(v)).id;
}

VisitIdx Instance::find_visit(std::string_view id) const {
  for (int v = 0; v < visit_count(); ++v)
    if (visits[v].id == id) return v;
  if (id == sink_id) return sink();
  return kNoIndex;
}

ShipIdx Instance::find_ship(std::string_view id) const {
  for (int s = 0; s < ship_count(); ++s)
    if (ships[s].id == id) return s;
  return kNoIndex;
}

DemandIdx Instance::find_demand(std::string_view id) const {
  for (int m = 0; m < static_cast<int>(demands.size()); ++m)
    if (demands[m].id == id) return m;
  return kNoIndex;
}

bool ValidationReport::mentions(std::string_view needle) const {
  return std::any_of(issues.begin(), issues.end(), [&](const ValidationIssue& issue) {
    return issue.message.find(needle) != std::string::npos ||
           issue.location.find(needle) != std::string::npos;
  });
}

std::string ValidationReport::to_string() const {
  std::ostringstream out;
  for (const auto& issue : issues) out << issue.location << ": " << issue.message << '\n';
  return out.str();
}

namespace {

class Checker {
 public:
  explicit Checker(const Instance& instance) : in_(instance) {}

  ValidationReport run() {
    check_ids();
    check_ships();
    check_visits();
    check_arcs();
    if (arcs_ok_) check_graph();
    check_demands();
    check_empties();
    return std::move(report_);
  }

 private:
  void fail(std::string location, std::string message) {
    report_.issues.push_back({std::move(location), std::move(message)});
  }

  bool visit_ok(VisitIdx v) const { return v >= 0 && v < in_.visit_count(); }
  bool node_ok(VisitIdx v) const { return v >= 0 && v <= in_.visit_count(); }

  static std::string at(std::string_view list, std::size_t i) {
    return std::string(list) + "[" + std::to_string(i) + "]";
  }

  void check_ids() {
    std::set<std::string> seen;
    for (std::size_t i = 0; i < in_.visits.size(); ++i) {
      if (in_.visits[i].id.empty()) fail(at("visits", i) + ".id", "empty id");
      if (!seen.insert(in_.visits[i].id).second)
        fail(at("visits", i) + ".id", "duplicate visit id \"" + in_.visits[i].id + "\"");
    }
    if (seen.count(in_.sink_id)) fail("sink", "sink id collides with a visit id");
    std::set<std::string> ships;
    for (std::size_t i = 0; i < in_.ships.size(); ++i)
      if (!ships.insert(in_.ships[i].id).second)
        fail(at("ships", i) + ".id", "duplicate ship id \"" + in_.ships[i].id + "\"");
    std::set<std::string> demands;
    for (std::size_t i = 0; i < in_.demands.size(); ++i)
      if (!demands.insert(in_.demands[i].id).second)
        fail(at("demands", i) + ".id", "duplicate demand id \"" + in_.demands[i].id + "\"");
  }

  void check_ships() {
    std::set<VisitIdx> starts;
    for (std::size_t i = 0; i < in_.ships.size(); ++i) {
      const Ship& ship = in_.ships[i];
      const std::string loc = at("ships", i);
      if (!visit_ok(ship.start)) {
        fail(loc + ".start", "start visit does not exist");
      } else if (!starts.insert(ship.start).second) {
        fail(loc + ".start", "start visit shared with another ship");
      }
      if (ship.type < 0 || ship.type >= static_cast<int>(in_.ship_types.size()))
        fail(loc + ".type", "unknown ship type");
      if (!(ship.capacity_rf >= 0.0)) fail(loc + ".capacity_rf", "negative reefer capacity");
      if (ship.capacity_rf > ship.capacity_dc)
        fail(loc + ".capacity_rf",
             "capacity ordering violated: capacity_rf exceeds capacity_dc");
    }
  }

  void check_visits() {
    for (std::size_t i = 0; i < in_.visits.size(); ++i) {
      const Visit& v = in_.visits[i];
      if (!(v.move_cost >= 0.0)) fail(at("visits", i) + ".move_cost", "negative move cost");
      if (!std::isfinite(v.port_fee)) fail(at("visits", i) + ".port_fee", "non-finite port fee");
    }
  }

  void check_arcs() {
    std::set<std::pair<VisitIdx, VisitIdx>> seen;
    for (std::size_t i = 0; i < in_.arcs.size(); ++i) {
      const Arc& arc = in_.arcs[i];
      const std::string loc = at("arcs", i);
      if (!node_ok(arc.from) || in_.is_sink(arc.from)) {
        fail(loc + ".from", "arc tail is not a visit");
        arcs_ok_ = false;
        continue;
      }
      if (!node_ok(arc.to)) {
        fail(loc + ".to", "arc head does not exist");
        arcs_ok_ = false;
        continue;
      }
      if (arc.from == arc.to) fail(loc, "self loop");
      if (!seen.insert({arc.from, arc.to}).second) fail(loc, "duplicate arc");
      if (arc.sail_cost.size() != in_.ship_types.size())
        fail(loc + ".sail_cost", "one sail cost per ship type required");
    }
  }

  // Acyclicity, sink out-degree, source/sink coverage.
  void check_graph() {
    const int n = in_.visit_count() + 1;
    std::vector<std::vector<VisitIdx>> out(n), in(n);
    for (const Arc& arc : in_.arcs) {
      out[arc.from].push_back(arc.to);
      in[arc.to].push_back(arc.from);
    }
    std::vector<int> indeg(n, 0);
    for (const Arc& arc : in_.arcs) ++indeg[arc.to];
    std::vector<VisitIdx> queue;
    for (int v = 0; v < n; ++v)
      if (indeg[v] == 0) queue.push_back(v);
    std::size_t head = 0;
    while (head < queue.size()) {
      VisitIdx v = queue[head++];
      for (VisitIdx w : out[v])
        if (--indeg[w] == 0) queue.push_back(w);
    }
    if (static_cast<int>(queue.size()) != n) {
      std::string members;
      for (int v = 0; v < n; ++v)
        if (indeg[v] > 0) members += " " + in_.visit_name(v);
      fail("arcs", "graph contains a cycle through:" + members);
      return;
    }
    if (!out[in_.sink()].empty()) fail("sink", "sink has outgoing arcs");

    for (std::size_t s = 0; s < in_.ships.size(); ++s) {
      VisitIdx start = in_.ships[s].start;
      if (!visit_ok(start)) continue;
      if (out[start].empty()) fail(at("ships", s) + ".start", "start visit has no outgoing arc");
      if (!in[start].empty())
        fail(at("ships", s) + ".start", "start visit has incoming arcs (starts must be sources)");
    }

    std::vector<char> from_source(n, 0), to_sink(n, 0);
    std::vector<VisitIdx> stack;
    for (const Ship& ship : in_.ships)
      if (visit_ok(ship.start) && !from_source[ship.start]) {
        from_source[ship.start] = 1;
        stack.push_back(ship.start);
      }
    while (!stack.empty()) {
      VisitIdx v = stack.back();
      stack.pop_back();
      for (VisitIdx w : out[v])
        if (!from_source[w]) {
          from_source[w] = 1;
          stack.push_back(w);
        }
    }
    to_sink[in_.sink()] = 1;
    stack.push_back(in_.sink());
    while (!stack.empty()) {
      VisitIdx v = stack.back();
      stack.pop_back();
      for (VisitIdx w : in[v])
        if (!to_sink[w]) {
          to_sink[w] = 1;
          stack.push_back(w);
        }
    }
    for (int v = 0; v < in_.visit_count(); ++v) {
      if (!from_source[v])
        fail(at("visits", v), "visit \"" + in_.visits[v].id + "\" not reachable from any ship start");
      if (!to_sink[v])
        fail(at("visits", v), "visit \"" + in_.visits[v].id + "\" cannot reach the sink");
    }
  }

  void check_demands() {
    for (std::size_t i = 0; i < in_.demands.size(); ++i) {
      const Demand& m = in_.demands[i];
      const std::string loc = at("demands", i);
      if (!visit_ok(m.origin)) fail(loc + ".origin", "origin is not a visit");
      if (m.destinations.empty()) fail(loc + ".destinations", "empty destination set");
      for (VisitIdx d : m.destinations) {
        if (!visit_ok(d)) fail(loc + ".destinations", "destination is not a visit");
        if (d == m.origin) fail(loc + ".destinations", "origin listed as destination");
      }
      if (!std::is_sorted(m.destinations.begin(), m.destinations.end()) ||
          std::adjacent_find(m.destinations.begin(), m.destinations.end()) != m.destinations.end())
        fail(loc + ".destinations", "destinations must be sorted and unique");
      if (!(m.amount > 0.0)) fail(loc + ".amount", "amount must be positive");
      if (!std::isfinite(m.revenue)) fail(loc + ".revenue", "non-finite revenue");
    }
  }

  void check_empties() {
    std::set<std::pair<VisitIdx, int>> seen;
    for (std::size_t i = 0; i < in_.empty_points.size(); ++i) {
      const EmptyPoint& e = in_.empty_points[i];
      const std::string loc = at("empty_points", i);
      if (!visit_ok(e.visit)) fail(loc + ".visit", "empty point visit does not exist");
      if (e.amount == 0.0 || !std::isfinite(e.amount)) fail(loc + ".amount", "amount must be non-zero");
      if (!seen.insert({e.visit, static_cast<int>(e.type)}).second)
        fail(loc, "duplicate (visit, cargo type) empty point");
    }
    for (CargoType q : kCargoTypes)
      if (!std::isfinite(in_.empty_revenue_for(q)))
        fail("empty_revenue", "non-finite empty revenue");
  }

  const Instance& in_;
  ValidationReport report_;
  bool arcs_ok_ = true;
};

}  // namespace

ValidationReport validate(const Instance& instance) { return Checker(instance).run(); }

void require_valid(const Instance& instance) {
  ValidationReport report = validate(instance);
  if (!report.ok()) throw Error("invalid instance:\n" + report.to_string());
}

Instance with_empty_revenue(Instance instance, double revenue_per_teu) {
  instance.empty_revenue = {revenue_per_teu, revenue_per_teu};
  return instance;
}

}  // namespace lsfrp
