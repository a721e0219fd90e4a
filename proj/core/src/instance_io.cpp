#include "lsfrp/instance_io.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "json.hpp"

namespace lsfrp {

using Json = nlohmann::ordered_json;

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write " + path.string());
  out << text;
  if (!out) throw Error("failed writing " + path.string());
}

namespace {

std::int64_t to_cents(double money) { return std::llround(money * 100.0); }
double from_cents(std::int64_t cents) { return static_cast<double>(cents) / 100.0; }

// Field access with the JSON path carried along for error messages.
class Node {
 public:
  Node(const Json& value, std::string path) : value_(value), path_(std::move(path)) {}

  const Json& raw() const { return value_; }
  const std::string& path() const { return path_; }

  [[noreturn]] void fail(const std::string& message) const { throw ParseError(path_ + ": " + message); }

  bool has(const char* key) const { return value_.is_object() && value_.contains(key); }

  Node at(const char* key) const {
    if (!value_.is_object()) fail("expected an object");
    auto it = value_.find(key);
    if (it == value_.end()) fail(std::string("missing field \"") + key + "\"");
    return Node(*it, path_ + "." + key);
  }

  std::vector<Node> items() const {
    if (!value_.is_array()) fail("expected an array");
    std::vector<Node> result;
    for (std::size_t i = 0; i < value_.size(); ++i) result.emplace_back(value_[i], path_ + "[" + std::to_string(i) + "]");
    return result;
  }

  std::vector<Node> items_or_empty(const char* key) const { return has(key) ? at(key).items() : std::vector<Node>{}; }

  std::string str() const {
    if (!value_.is_string()) fail("expected a string");
    return value_.get<std::string>();
  }

  double number() const {
    if (!value_.is_number()) fail("expected a number");
    double v = value_.get<double>();
    if (!std::isfinite(v)) fail("expected a finite number");
    return v;
  }

  std::int64_t integer() const {
    if (!value_.is_number_integer()) fail("expected an integer");
    return value_.get<std::int64_t>();
  }

  double cents() const { return from_cents(integer()); }

  bool boolean() const {
    if (!value_.is_boolean()) fail("expected true or false");
    return value_.get<bool>();
  }

 private:
  const Json& value_;
  std::string path_;
};

Json parse_json(std::string_view text) {
  try {
    return Json::parse(text.begin(), text.end());
  } catch (const Json::parse_error& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
}

void expect_schema(const Node& root, std::string_view schema) {
  const std::string found = root.at("schema").str();
  if (found != schema) root.at("schema").fail("expected \"" + std::string(schema) + "\", found \"" + found + "\"");
}

CargoType parse_type(const Node& n) {
  try {
    return cargo_type_from_string(n.str());
  } catch (const Error& e) {
    n.fail(e.what());
  }
}

VisitIdx resolve_visit(const Instance& in, const Node& n, bool allow_sink) {
  const std::string id = n.str();
  VisitIdx v = in.find_visit(id);
  if (v == kNoIndex || (!allow_sink && in.is_sink(v))) n.fail("unknown visit \"" + id + "\"");
  return v;
}

ShipIdx resolve_ship(const Instance& in, const Node& n) {
  const std::string id = n.str();
  ShipIdx s = in.find_ship(id);
  if (s == kNoIndex) n.fail("unknown ship \"" + id + "\"");
  return s;
}

Json number_json(double v) {
  // Whole numbers are written without a fraction so fixtures stay readable.
  if (std::abs(v) < 9e15 && v == std::floor(v)) return Json(static_cast<std::int64_t>(v));
  return Json(v);
}

}  // namespace

Instance parse_instance(std::string_view text) {
  const Json doc = parse_json(text);
  const Node root(doc, "$");
  expect_schema(root, kInstanceSchema);

  Instance in;
  if (root.has("name")) in.name = root.at("name").str();
  if (root.has("sink")) in.sink_id = root.at("sink").str();
  for (const Node& t : root.at("ship_types").items()) in.ship_types.push_back(t.str());
  if (root.has("empty_revenue_cents")) {
    const Node er = root.at("empty_revenue_cents");
    if (er.has("dc")) in.empty_revenue[0] = er.at("dc").cents();
    if (er.has("rf")) in.empty_revenue[1] = er.at("rf").cents();
  }

  for (const Node& v : root.at("visits").items()) {
    Visit visit;
    visit.id = v.at("id").str();
    visit.port = v.has("port") ? v.at("port").str() : visit.id;
    visit.port_fee = v.at("port_fee_cents").cents();
    visit.move_cost = v.at("move_cost_cents").cents();
    if (v.has("time_index")) visit.time_index = static_cast<int>(v.at("time_index").integer());
    in.visits.push_back(std::move(visit));
  }

  auto type_index = [&](const Node& n) {
    const std::string name = n.str();
    for (std::size_t t = 0; t < in.ship_types.size(); ++t)
      if (in.ship_types[t] == name) return static_cast<int>(t);
    n.fail("unknown ship type \"" + name + "\"");
  };

  for (const Node& s : root.at("ships").items()) {
    Ship ship;
    ship.id = s.at("id").str();
    ship.start = resolve_visit(in, s.at("start"), false);
    ship.capacity_dc = s.at("capacity_dc").number();
    ship.capacity_rf = s.at("capacity_rf").number();
    ship.type = type_index(s.at("type"));
    in.ships.push_back(std::move(ship));
  }

  for (const Node& a : root.at("arcs").items()) {
    Arc arc;
    arc.from = resolve_visit(in, a.at("from"), false);
    arc.to = resolve_visit(in, a.at("to"), true);
    const Node costs = a.at("sail_cost_cents");
    arc.sail_cost.assign(in.ship_types.size(), 0.0);
    if (!costs.raw().is_object()) costs.fail("expected an object keyed by ship type");
    if (costs.raw().size() != in.ship_types.size()) costs.fail("needs exactly one cost per ship type");
    for (std::size_t t = 0; t < in.ship_types.size(); ++t) arc.sail_cost[t] = costs.at(in.ship_types[t].c_str()).cents();
    in.arcs.push_back(std::move(arc));
  }

  for (const Node& m : root.items_or_empty("demands")) {
    Demand d;
    d.id = m.at("id").str();
    d.origin = resolve_visit(in, m.at("origin"), false);
    for (const Node& dest : m.at("destinations").items()) d.destinations.push_back(resolve_visit(in, dest, false));
    d.type = parse_type(m.at("type"));
    d.amount = m.at("amount").number();
    d.revenue = m.at("revenue_cents").cents();
    in.demands.push_back(std::move(d));
  }

  for (const Node& e : root.items_or_empty("empty_points")) {
    EmptyPoint p;
    p.visit = resolve_visit(in, e.at("visit"), false);
    p.type = parse_type(e.at("type"));
    p.amount = e.at("amount").number();
    in.empty_points.push_back(p);
  }

  if (root.has("metadata")) {
    const Node meta = root.at("metadata");
    if (!meta.raw().is_object()) meta.fail("expected an object");
    for (auto it = meta.raw().begin(); it != meta.raw().end(); ++it)
      in.metadata[it.key()] = Node(it.value(), meta.path() + "." + it.key()).str();
  }

  ValidationReport report = validate(in);
  if (!report.ok()) throw ParseError("instance is not admissible:\n" + report.to_string());
  return in;
}

Instance read_instance(const std::filesystem::path& path) {
  try {
    return parse_instance(read_text_file(path));
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

std::string write_instance(const Instance& in) {
  Json doc;
  doc["schema"] = kInstanceSchema;
  doc["name"] = in.name;
  doc["sink"] = in.sink_id;
  doc["ship_types"] = in.ship_types;
  doc["empty_revenue_cents"] = {{"dc", to_cents(in.empty_revenue[0])}, {"rf", to_cents(in.empty_revenue[1])}};

  Json ships = Json::array();
  for (const Ship& s : in.ships)
    ships.push_back({{"id", s.id},
                     {"start", in.visit_name(s.start)},
                     {"type", in.ship_types.at(s.type)},
                     {"capacity_dc", number_json(s.capacity_dc)},
                     {"capacity_rf", number_json(s.capacity_rf)}});
  doc["ships"] = std::move(ships);

  Json visits = Json::array();
  for (const Visit& v : in.visits)
    visits.push_back({{"id", v.id},
                      {"port", v.port},
                      {"port_fee_cents", to_cents(v.port_fee)},
                      {"move_cost_cents", to_cents(v.move_cost)},
                      {"time_index", v.time_index}});
  doc["visits"] = std::move(visits);

  Json arcs = Json::array();
  for (const Arc& a : in.arcs) {
    Json costs = Json::object();
    for (std::size_t t = 0; t < in.ship_types.size(); ++t) costs[in.ship_types[t]] = to_cents(a.sail_cost.at(t));
    arcs.push_back({{"from", in.visit_name(a.from)}, {"to", in.visit_name(a.to)}, {"sail_cost_cents", std::move(costs)}});
  }
  doc["arcs"] = std::move(arcs);

  Json demands = Json::array();
  for (const Demand& m : in.demands) {
    Json dests = Json::array();
    for (VisitIdx d : m.destinations) dests.push_back(in.visit_name(d));
    demands.push_back({{"id", m.id},
                       {"origin", in.visit_name(m.origin)},
                       {"destinations", std::move(dests)},
                       {"type", std::string(to_string(m.type))},
                       {"amount", number_json(m.amount)},
                       {"revenue_cents", to_cents(m.revenue)}});
  }
  doc["demands"] = std::move(demands);

  Json empties = Json::array();
  for (const EmptyPoint& e : in.empty_points)
    empties.push_back(
        {{"visit", in.visit_name(e.visit)}, {"type", std::string(to_string(e.type))}, {"amount", number_json(e.amount)}});
  doc["empty_points"] = std::move(empties);

  Json meta = Json::object();
  for (const auto& [k, v] : in.metadata) meta[k] = v;
  doc["metadata"] = std::move(meta);
  return doc.dump(2) + "\n";
}

void write_instance(const Instance& instance, const std::filesystem::path& path) {
  write_text_file(path, write_instance(instance));
}

std::string write_solution(const Instance& in, const Solution& sol, const SolutionWriteOptions& options) {
  Json doc;
  doc["schema"] = kSolutionSchema;
  doc["instance"] = sol.instance_name;
  doc["method"] = sol.method;
  doc["status"] = std::string(to_string(sol.status));
  doc["has_solution"] = sol.has_solution;
  doc["objective"] = number_json(sol.objective);
  doc["bound"] = std::isfinite(sol.bound) ? number_json(sol.bound) : Json(nullptr);

  Json routes = Json::array();
  for (const ShipRoute& r : sol.routes) {
    Json path = Json::array();
    for (VisitIdx v : r.path) path.push_back(in.visit_name(v));
    routes.push_back({{"ship", in.ships.at(r.ship).id}, {"path", std::move(path)}});
  }
  doc["routes"] = std::move(routes);

  Json cargo = Json::array();
  for (const CargoFlow& f : sol.cargo)
    cargo.push_back({{"demand", in.demands.at(f.demand).id},
                     {"ship", in.ships.at(f.ship).id},
                     {"destination", in.visit_name(f.destination)},
                     {"amount", number_json(f.amount)}});
  doc["cargo"] = std::move(cargo);

  Json empties = Json::array();
  for (const EmptyFlow& f : sol.empties)
    empties.push_back({{"ship", in.ships.at(f.ship).id},
                       {"type", std::string(to_string(f.type))},
                       {"origin", in.visit_name(f.origin)},
                       {"destination", in.visit_name(f.destination)},
                       {"amount", number_json(f.amount)}});
  doc["empties"] = std::move(empties);

  const Diagnostics& d = sol.diagnostics;
  Json diag;
  diag["columns_generated"] = d.columns_generated;
  diag["rmp_solves"] = d.rmp_solves;
  diag["pricing_calls"] = d.pricing_calls;
  diag["branch_nodes"] = d.branch_nodes;
  diag["mip_nodes"] = d.mip_nodes;
  diag["lp_iterations"] = d.lp_iterations;
  diag["cuts"] = {{"dc", d.cuts_dc}, {"rf", d.cuts_rf}};
  diag["separation_calls"] = d.separation_calls;
  diag["cuts_emitted"] = d.cuts_emitted;
  diag["split_count"] = d.split_count;
  diag["relaxed_master_integral"] = d.relaxed_master_integral;
  diag["root_bound"] = std::isfinite(d.root_bound) ? number_json(d.root_bound) : Json(nullptr);
  Json per_ship = Json::array();
  for (const ShipCutStats& c : d.ship_cuts)
    per_ship.push_back({{"ship", in.ships.at(c.ship).id}, {"gamma_dc", c.gamma_dc}, {"gamma_rf", c.gamma_rf}});
  diag["ship_cuts"] = std::move(per_ship);
  diag["model"] = {{"rows", d.model.rows}, {"cols", d.model.cols}, {"nonzeros", d.model.nonzeros}};
  diag["assignments"] = d.assignments;
  if (options.include_timing) diag["wall_time_s"] = d.wall_time_s;
  doc["diagnostics"] = std::move(diag);

  Json meta = Json::object();
  for (const auto& [k, v] : sol.metadata) meta[k] = v;
  doc["metadata"] = std::move(meta);
  return doc.dump(2) + "\n";
}

void write_solution(const Instance& instance, const Solution& solution, const std::filesystem::path& path,
                    const SolutionWriteOptions& options) {
  write_text_file(path, write_solution(instance, solution, options));
}

Solution parse_solution(std::string_view text, const Instance& in) {
  const Json doc = parse_json(text);
  const Node root(doc, "$");
  expect_schema(root, kSolutionSchema);

  Solution sol;
  sol.instance_name = root.at("instance").str();
  sol.method = root.at("method").str();
  try {
    sol.status = solve_status_from_string(root.at("status").str());
  } catch (const Error& e) {
    root.at("status").fail(e.what());
  }
  sol.has_solution = root.at("has_solution").boolean();
  sol.objective = root.at("objective").number();
  if (!root.at("bound").raw().is_null()) sol.bound = root.at("bound").number();

  for (const Node& r : root.at("routes").items()) {
    ShipRoute route;
    route.ship = resolve_ship(in, r.at("ship"));
    for (const Node& v : r.at("path").items()) route.path.push_back(resolve_visit(in, v, true));
    sol.routes.push_back(std::move(route));
  }
  for (const Node& f : root.at("cargo").items()) {
    CargoFlow flow;
    const std::string id = f.at("demand").str();
    flow.demand = in.find_demand(id);
    if (flow.demand == kNoIndex) f.at("demand").fail("unknown demand \"" + id + "\"");
    flow.ship = resolve_ship(in, f.at("ship"));
    flow.destination = resolve_visit(in, f.at("destination"), false);
    flow.amount = f.at("amount").number();
    sol.cargo.push_back(flow);
  }
  for (const Node& f : root.at("empties").items()) {
    EmptyFlow flow;
    flow.ship = resolve_ship(in, f.at("ship"));
    flow.type = parse_type(f.at("type"));
    flow.origin = resolve_visit(in, f.at("origin"), false);
    flow.destination = resolve_visit(in, f.at("destination"), false);
    flow.amount = f.at("amount").number();
    sol.empties.push_back(flow);
  }

  const Node diag = root.at("diagnostics");
  Diagnostics& d = sol.diagnostics;
  auto count = [&](const char* key) { return diag.has(key) ? diag.at(key).integer() : 0; };
  d.columns_generated = count("columns_generated");
  d.rmp_solves = count("rmp_solves");
  d.pricing_calls = count("pricing_calls");
  d.branch_nodes = count("branch_nodes");
  d.mip_nodes = count("mip_nodes");
  d.lp_iterations = count("lp_iterations");
  if (diag.has("cuts")) {
    d.cuts_dc = static_cast<int>(diag.at("cuts").at("dc").integer());
    d.cuts_rf = static_cast<int>(diag.at("cuts").at("rf").integer());
  }
  d.separation_calls = count("separation_calls");
  d.cuts_emitted = count("cuts_emitted");
  d.split_count = static_cast<int>(count("split_count"));
  if (diag.has("relaxed_master_integral")) d.relaxed_master_integral = diag.at("relaxed_master_integral").boolean();
  if (diag.has("root_bound") && !diag.at("root_bound").raw().is_null()) d.root_bound = diag.at("root_bound").number();
  for (const Node& c : diag.items_or_empty("ship_cuts"))
    d.ship_cuts.push_back({resolve_ship(in, c.at("ship")), static_cast<int>(c.at("gamma_dc").integer()),
                           static_cast<int>(c.at("gamma_rf").integer())});
  if (diag.has("model")) {
    const Node m = diag.at("model");
    d.model = {m.at("rows").integer(), m.at("cols").integer(), m.at("nonzeros").integer()};
  }
  d.assignments = count("assignments");
  if (diag.has("wall_time_s")) d.wall_time_s = diag.at("wall_time_s").number();

  if (root.has("metadata")) {
    const Node meta = root.at("metadata");
    for (auto it = meta.raw().begin(); it != meta.raw().end(); ++it)
      sol.metadata[it.key()] = Node(it.value(), meta.path() + "." + it.key()).str();
  }
  return sol;
}

}  // namespace lsfrp
