#include "lsfrp/colgen.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <queue>
#include <set>
#include <sstream>
#include <tuple>

#include "lsfrp/lp/mip.hpp"

namespace lsfrp {

std::vector<VisitIdx> Column::nodes(VisitIdx sink) const {
  std::vector<VisitIdx> out;
  for (VisitIdx v : path)
    if (v != sink) out.push_back(v);
  return out;
}

double dummy_cost(const Instance& in) {
  double total = 0.0;
  for (const Arc& a : in.arcs)
    for (double c : a.sail_cost) total += std::abs(c);
  for (const Visit& v : in.visits) total += std::abs(v.port_fee) + 2.0 * std::abs(v.move_cost);
  for (const Demand& m : in.demands) total += m.amount * std::abs(m.revenue);
  for (const EmptyPoint& e : in.empty_points) total += std::abs(e.amount) * std::abs(in.empty_revenue_for(e.type));
  return -(10.0 * total + 1.0);
}

Column dummy_column(const Instance& in, ShipIdx ship) {
  Column c;
  c.ship = ship;
  c.path = {in.ships[ship].start, in.sink()};
  c.profit = dummy_cost(in);
  c.dummy = true;
  return c;
}

Column to_column(const PricedPath& priced) {
  Column c;
  c.ship = priced.ship;
  c.path = priced.path;
  c.cargo = priced.cargo;
  c.empties = priced.empties;
  c.profit = priced.profit;
  return c;
}

namespace {

std::vector<lp::Term> master_column(const Instance& in, const Column& c) {
  std::vector<lp::Term> terms{{c.ship, 1.0}};
  for (VisitIdx v : c.nodes(in.sink())) terms.push_back({in.ship_count() + v, 1.0});
  return terms;
}

lp::LinearModel master_rows(const Instance& in) {
  lp::LinearModel model;
  for (const Ship& s : in.ships) model.add_row({}, lp::Sense::eq, 1.0, "ship_" + s.id);
  for (const Visit& v : in.visits) model.add_row({}, lp::Sense::le, 1.0, "once_" + v.id);
  return model;
}

MasterDuals split_duals(const Instance& in, const std::vector<double>& duals) {
  MasterDuals d;
  d.pi.assign(duals.begin(), duals.begin() + in.ship_count());
  d.mu.assign(duals.begin() + in.ship_count(), duals.begin() + in.ship_count() + in.visit_count());
  return d;
}

std::vector<ShipIdx> ships_by_paths(const ReachIndex& reach, bool descending) {
  std::vector<ShipIdx> order(reach.instance().ship_count());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](ShipIdx a, ShipIdx b) {
    return descending ? reach.path_count(a) > reach.path_count(b) : reach.path_count(a) < reach.path_count(b);
  });
  return order;
}

}  // namespace

RmpSolution solve_rmp(const Instance& in, std::span<const Column> columns, bool relax) {
  std::vector<char> covered(in.ship_count(), 0);
  for (const Column& c : columns) covered.at(c.ship) = 1;
  for (ShipIdx s = 0; s < in.ship_count(); ++s)
    if (!covered[s]) throw Error("master has no column for ship " + in.ships[s].id);

  lp::LinearModel model = master_rows(in);
  for (const Column& c : columns) model.add_column(0.0, relax ? lp::kInf : 1.0, c.profit, master_column(in, c), !relax);
  RmpSolution out;
  if (relax) {
    const lp::LpSolution lp = lp::solve_lp(model);
    out.optimal = lp.optimal();
    out.objective = lp.objective;
    out.z = lp.x;
    out.lp_iterations = lp.iterations;
    if (lp.optimal()) out.duals = split_duals(in, lp.duals);
  } else {
    const lp::MipSolution mip = lp::solve_mip(model);
    out.optimal = mip.status == lp::MipStatus::optimal;
    out.objective = mip.objective;
    out.z = mip.x;
    out.lp_iterations = mip.lp_iterations;
  }
  return out;
}

std::vector<Column> initial_columns(const ReachIndex& reach, PricingEngine& engine, double time_limit_seconds) {
  const auto started = std::chrono::steady_clock::now();
  const Instance& in = reach.instance();
  std::vector<Column> columns;
  std::vector<char> used(in.visit_count(), 0);
  for (ShipIdx s : ships_by_paths(reach, false)) {
    PricingRequest request;
    request.ship = s;
    request.forbidden = used;
    request.time_limit_seconds =
        time_limit_seconds - std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    const PricingResult result = engine.price(request);
    if (result.timed_out) break;
    if (!result.found) continue;
    columns.push_back(to_column(result.best));
    for (VisitIdx v : columns.back().nodes(in.sink())) used[v] = 1;
  }
  for (ShipIdx s = 0; s < in.ship_count(); ++s) columns.push_back(dummy_column(in, s));
  return columns;
}

std::optional<Column> price_ship(const Instance&, ShipIdx ship, const MasterDuals& duals, PricingEngine& engine,
                                 double tol_rc) {
  PricingRequest request;
  request.ship = ship;
  request.node_price = duals.mu;
  const PricingResult result = engine.price(request);
  if (!result.found || result.best.value - duals.pi[ship] <= tol_rc) return std::nullopt;
  return to_column(result.best);
}

namespace {

using Clock = std::chrono::steady_clock;

// Z over columns of one ship (by_ship) or one ship type visiting `visit`:
// either none of them (force = false) or at least one (force = true).
struct Rule {
  VisitIdx visit = kNoIndex;
  bool by_ship = false;
  int key = 0;
  bool force = false;
};

struct NodeResult {
  bool timed_out = false;
  double bound = -lp::kInf;
  bool integral = false;
  bool infeasible = false;
  std::vector<double> z;  // per pool column
};

class BranchAndPrice {
 public:
  BranchAndPrice(const ReachIndex& reach, PricingEngine& engine, const ColumnGenerationOptions& options)
      : reach_(reach), in_(reach.instance()), engine_(engine), options_(options), started_(Clock::now()) {}

  Solution run(const std::string& method);

 private:
  double elapsed() const { return std::chrono::duration<double>(Clock::now() - started_).count(); }
  double remaining() const { return options_.time_limit_seconds - elapsed(); }

  bool applies(const Rule& r, ShipIdx s) const { return r.key == (r.by_ship ? s : in_.ships[s].type); }
  bool matches(const Rule& r, const Column& c) const {
    return !c.dummy && applies(r, c.ship) && std::find(c.path.begin(), c.path.end(), r.visit) != c.path.end();
  }

  bool add_to_pool(Column column) {
    if (!seen_.insert({column.ship, column.dummy, column.path}).second) return false;
    pool_.push_back(std::move(column));
    return true;
  }

  void log(const std::string& line) const {
    if (options_.log) options_.log(line);
  }

  NodeResult solve_node(const std::vector<Rule>& rules, int node_id);
  std::optional<Rule> choose_branch(const std::vector<double>& z) const;

  const ReachIndex& reach_;
  const Instance& in_;
  PricingEngine& engine_;
  const ColumnGenerationOptions& options_;
  Clock::time_point started_;
  std::vector<Column> pool_;
  std::set<std::tuple<ShipIdx, bool, std::vector<VisitIdx>>> seen_;  // a dummy shares its path with the real direct route
  Diagnostics diag_;
};

NodeResult BranchAndPrice::solve_node(const std::vector<Rule>& rules, int node_id) {
  NodeResult out;
  lp::LinearModel model = master_rows(in_);
  std::vector<int> force_rows;
  for (const Rule& r : rules)
    if (r.force) force_rows.push_back(model.add_row({}, lp::Sense::ge, 1.0, "force_" + in_.visit_name(r.visit)));

  auto column_terms = [&](const Column& c) {
    std::vector<lp::Term> terms = master_column(in_, c);
    std::size_t k = 0;
    for (const Rule& r : rules) {
      if (!r.force) continue;
      if (matches(r, c)) terms.push_back({force_rows[k], 1.0});
      ++k;
    }
    return terms;
  };
  auto column_ub = [&](const Column& c) {
    for (const Rule& r : rules)
      if (!r.force && matches(r, c)) return 0.0;
    return lp::kInf;
  };

  std::vector<int> var_of_column;
  for (const Column& c : pool_) var_of_column.push_back(model.add_column(0.0, column_ub(c), c.profit, column_terms(c)));
  std::vector<int> artificials;
  for (int row : force_rows) {
    const lp::Term term{row, 1.0};
    artificials.push_back(model.add_column(0.0, lp::kInf, dummy_cost(in_), std::span<const lp::Term>(&term, 1)));
  }

  std::vector<std::vector<char>> forbidden(in_.ship_count(), std::vector<char>(in_.visit_count(), 0));
  for (const Rule& r : rules)
    if (!r.force)
      for (ShipIdx s = 0; s < in_.ship_count(); ++s)
        if (applies(r, s)) forbidden[s][r.visit] = 1;

  lp::Basis basis;
  lp::LpSolution lp;
  // False when the time limit stopped the master.
  auto resolve = [&]() {
    lp::LpSolveInput input;
    if (!basis.empty()) input.warm_start = &basis;
    input.options.time_limit_seconds = remaining();
    lp = lp::solve_lp(model, input);
    ++diag_.rmp_solves;
    diag_.lp_iterations += lp.iterations;
    if (lp.status == lp::LpStatus::time_limit) {
      out.timed_out = true;
      return false;
    }
    if (!lp.optimal()) throw Error("restricted master failed: " + std::string(lp::to_string(lp.status)));
    basis = lp.basis;
    return true;
  };

  const std::vector<ShipIdx> order = ships_by_paths(reach_, true);
  if (!resolve()) return out;
  for (int pass = 1;; ++pass) {
    bool added = false;
    for (ShipIdx s : order) {
      if (remaining() <= 0) {
        out.timed_out = true;
        return out;
      }
      const MasterDuals duals = split_duals(in_, lp.duals);
      PricingRequest request;
      request.ship = s;
      request.node_price = duals.mu;
      std::size_t k = 0;
      for (const Rule& r : rules) {
        if (!r.force) continue;
        if (applies(r, s)) request.node_price[r.visit] += lp.duals[force_rows[k]];
        ++k;
      }
      request.forbidden = forbidden[s];
      request.time_limit_seconds = remaining();
      const PricingResult priced = engine_.price(request);
      ++diag_.pricing_calls;
      diag_.mip_nodes += priced.mip_nodes;
      diag_.lp_iterations += priced.lp_iterations;
      if (priced.timed_out) {
        out.timed_out = true;
        return out;
      }
      const double tol_rc = 1e-6 * (1.0 + std::abs(lp.objective));
      if (!priced.found || priced.best.value - duals.pi[s] <= tol_rc) continue;
      Column column = to_column(priced.best);
      if (!add_to_pool(column)) continue;
      var_of_column.push_back(model.add_column(0.0, lp::kInf, column.profit, column_terms(column)));
      added = true;
      if (!options_.batched && !resolve()) return out;
    }
    std::ostringstream line;
    line.precision(12);
    line << "colgen node=" << node_id << " pass=" << pass << " columns=" << pool_.size() << " rmp=" << lp.objective;
    log(line.str());
    if (!added) break;
    if (options_.batched && !resolve()) return out;
  }

  out.bound = lp.objective;
  out.z.assign(pool_.size(), 0.0);
  bool integral = true;
  for (std::size_t c = 0; c < pool_.size(); ++c) {
    out.z[c] = lp.x[var_of_column[c]];
    if (std::abs(out.z[c] - std::round(out.z[c])) > lp::Tolerances::integrality) integral = false;
  }
  double artificial = 0.0;
  for (int a : artificials) artificial += lp.x[a];
  if (integral && artificial > lp::Tolerances::integrality) out.infeasible = true;
  out.integral = integral && !out.infeasible;
  return out;
}

std::optional<Rule> BranchAndPrice::choose_branch(const std::vector<double>& z) const {
  auto pick = [&](bool by_ship) -> std::optional<Rule> {
    const int keys = by_ship ? in_.ship_count() : static_cast<int>(in_.ship_types.size());
    std::vector<double> sum(static_cast<std::size_t>(in_.visit_count()) * keys, 0.0);
    for (std::size_t c = 0; c < pool_.size(); ++c) {
      if (pool_[c].dummy || z[c] <= 0) continue;
      const int key = by_ship ? pool_[c].ship : in_.ships[pool_[c].ship].type;
      for (VisitIdx v : pool_[c].nodes(in_.sink())) sum[static_cast<std::size_t>(v) * keys + key] += z[c];
    }
    std::optional<Rule> best;
    double best_score = lp::Tolerances::integrality;
    for (VisitIdx v = 0; v < in_.visit_count(); ++v)
      for (int key = 0; key < keys; ++key) {
        const double value = sum[static_cast<std::size_t>(v) * keys + key];
        const double score = std::abs(value - std::round(value));
        if (score > best_score + 1e-12) {
          best_score = score;
          best = Rule{v, by_ship, key, false};
        }
      }
    return best;
  };
  if (auto rule = pick(false)) return rule;
  return pick(true);
}

Solution BranchAndPrice::run(const std::string& method) {
  for (Column& c : initial_columns(reach_, engine_, remaining())) add_to_pool(std::move(c));
  diag_.pricing_calls += in_.ship_count();

  struct TreeNode {
    std::vector<Rule> rules;
    double bound;
    int id;
  };
  auto worse = [](const TreeNode& a, const TreeNode& b) { return a.bound < b.bound || (a.bound == b.bound && a.id > b.id); };
  std::priority_queue<TreeNode, std::vector<TreeNode>, decltype(worse)> open(worse);
  open.push({{}, lp::kInf, 0});
  int next_id = 1;
  long processed = 0;
  bool limit_hit = false;
  double incumbent = -lp::kInf;
  std::vector<std::size_t> chosen;
  auto prune = [&](double bound) { return bound <= incumbent + 1e-6 * (1.0 + std::abs(incumbent)); };

  while (!open.empty()) {
    if (prune(open.top().bound)) {
      open.pop();
      continue;
    }
    if (processed >= options_.node_limit || remaining() <= 0) {
      limit_hit = true;
      break;
    }
    TreeNode node = open.top();
    open.pop();
    const NodeResult result = solve_node(node.rules, node.id);
    if (result.timed_out) {
      open.push(node);
      limit_hit = true;
      break;
    }
    if (processed++ == 0) {
      diag_.root_bound = result.bound;
      diag_.relaxed_master_integral = result.integral;
    } else {
      ++diag_.branch_nodes;
    }
    if (result.infeasible || prune(result.bound)) continue;
    if (result.integral) {
      incumbent = result.bound;
      chosen.clear();
      for (std::size_t c = 0; c < result.z.size(); ++c)
        if (result.z[c] > 0.5) chosen.push_back(c);
      continue;
    }
    const std::optional<Rule> rule = choose_branch(result.z);
    if (!rule) throw Error("fractional master without a branching candidate");
    Rule forbid = *rule;
    Rule force = *rule;
    force.force = true;
    TreeNode left{node.rules, result.bound, next_id++};
    left.rules.push_back(forbid);
    TreeNode right{node.rules, result.bound, next_id++};
    right.rules.push_back(force);
    std::ostringstream line;
    line << "branch node=" << node.id << " visit=" << in_.visit_name(rule->visit) << " "
         << (rule->by_ship ? "ship=" + in_.ships[rule->key].id : "type=" + in_.ship_types[rule->key]);
    log(line.str());
    open.push(std::move(left));
    open.push(std::move(right));
  }

  Solution sol;
  sol.instance_name = in_.name;
  sol.method = method;
  double open_bound = incumbent;
  if (limit_hit)
    while (!open.empty()) {
      open_bound = std::max(open_bound, open.top().bound);
      open.pop();
    }
  sol.bound = open_bound;
  bool uses_dummy = false;
  for (std::size_t c : chosen) uses_dummy = uses_dummy || pool_[c].dummy;
  if (!chosen.empty() && !uses_dummy) {
    sol.has_solution = true;
    sol.objective = 0.0;
    for (std::size_t c : chosen) {
      const Column& col = pool_[c];
      sol.routes.push_back({col.ship, col.path});
      sol.cargo.insert(sol.cargo.end(), col.cargo.begin(), col.cargo.end());
      sol.empties.insert(sol.empties.end(), col.empties.begin(), col.empties.end());
      sol.objective += col.profit;
    }
    std::sort(sol.routes.begin(), sol.routes.end(), [](const ShipRoute& a, const ShipRoute& b) { return a.ship < b.ship; });
  }
  if (limit_hit) sol.status = SolveStatus::time_limit;
  else if (sol.has_solution) sol.status = SolveStatus::optimal;
  else sol.status = SolveStatus::no_disjoint_routing;

  for (const Column& c : pool_) diag_.columns_generated += c.dummy ? 0 : 1;
  // Largest single-ship pricing model.
  ModelSize size;
  for (ShipIdx s = 0; s < in_.ship_count(); ++s) {
    const ModelSize m = engine_.model_size(s);
    size.rows = std::max(size.rows, m.rows);
    size.cols = std::max(size.cols, m.cols);
    size.nonzeros = std::max(size.nonzeros, m.nonzeros);
  }
  diag_.model = size;
  diag_.wall_time_s = elapsed();
  sol.diagnostics = diag_;
  return sol;
}

}  // namespace

Solution run_column_generation(const ReachIndex& reach, PricingEngine& engine, const ColumnGenerationOptions& options,
                               const std::string& method) {
  BranchAndPrice solver(reach, engine, options);
  return solver.run(method);
}

Solution run_column_generation(const Instance& instance, const ColumnGenerationOptions& options) {
  const ReachIndex reach(instance);
  const CommoditySet set = build_commodities(reach, options.commodities);
  auto engine = make_arc_pricing(reach, set);
  Solution sol = run_column_generation(reach, *engine, options, "colgen");
  sol.diagnostics.split_count = set.split_count;
  return sol;
}

}  // namespace lsfrp
