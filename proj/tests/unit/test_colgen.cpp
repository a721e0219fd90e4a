#include <doctest.h>

#include <sstream>

#include "fixtures.hpp"
#include "lsfrp/colgen.hpp"
#include "lsfrp/generator.hpp"
#include "lsfrp/instance_io.hpp"
#include "lsfrp/oracle.hpp"
#include "lsfrp/solver.hpp"

using namespace lsfrp;

namespace {

Column real_column(ShipIdx ship, std::vector<VisitIdx> path, double profit) {
  Column c;
  c.ship = ship;
  c.path = std::move(path);
  c.profit = profit;
  return c;
}

// Both starts can only leave through k.
Instance forced_clash() {
  Instance in = testing::shared_corridor();
  in.arcs.erase(std::remove_if(in.arcs.begin(), in.arcs.end(),
                               [&](const Arc& a) { return a.to == in.sink() && a.from != 2; }),
                in.arcs.end());
  in.name = "forced-clash";
  return in;
}

}  // namespace

TEST_CASE("master over fixed columns") {
  const Instance in = testing::shared_corridor();
  const VisitIdx tau = in.sink();
  SUBCASE("disjoint columns are all taken") {
    const std::vector<Column> cols{real_column(0, {0, 2, tau}, 90), real_column(1, {1, tau}, -50)};
    const RmpSolution rmp = solve_rmp(in, cols, true);
    CHECK(rmp.objective == doctest::Approx(40));
    CHECK(rmp.z[0] == doctest::Approx(1));
    CHECK(rmp.z[1] == doctest::Approx(1));
  }
  SUBCASE("a shared visit sends one ship to its dummy") {
    const std::vector<Column> cols{real_column(0, {0, 2, tau}, 90), real_column(1, {1, 2, tau}, 80),
                                   dummy_column(in, 0), dummy_column(in, 1)};
    const RmpSolution rmp = solve_rmp(in, cols, false);
    CHECK(rmp.z[0] == doctest::Approx(1));
    CHECK(rmp.z[3] == doctest::Approx(1));
    CHECK(rmp.objective == doctest::Approx(90 + dummy_cost(in)));
  }
  SUBCASE("a ship without columns is an error") {
    const std::vector<Column> cols{real_column(0, {0, 2, tau}, 90)};
    CHECK_THROWS_AS(solve_rmp(in, cols, true), Error);
  }
}

TEST_CASE("t1 master picks the best real path") {
  const Instance in = testing::t1();
  const std::vector<Column> cols{real_column(0, {0, 1, 2, 3}, 676), real_column(0, {0, 2, 3}, -17)};
  const RmpSolution rmp = solve_rmp(in, cols, true);
  CHECK(rmp.z[0] == doctest::Approx(1));
  CHECK(rmp.objective == doctest::Approx(676));
  CHECK(rmp.duals.pi[0] == doctest::Approx(676 - rmp.duals.mu[0] - rmp.duals.mu[1] - rmp.duals.mu[2]));
}

TEST_CASE("initial columns") {
  const Instance in = testing::t1();
  const ReachIndex reach(in);
  const CommoditySet set = build_commodities(reach);
  auto engine = make_arc_pricing(reach, set);
  const std::vector<Column> cols = initial_columns(reach, *engine);
  REQUIRE(cols.size() == 2);
  CHECK(cols[0].profit == doctest::Approx(676));
  CHECK(cols[1].dummy);

  const Instance clash = forced_clash();
  const ReachIndex reach2(clash);
  const CommoditySet set2 = build_commodities(reach2);
  auto engine2 = make_arc_pricing(reach2, set2);
  const std::vector<Column> cols2 = initial_columns(reach2, *engine2);
  CHECK(std::count_if(cols2.begin(), cols2.end(), [](const Column& c) { return !c.dummy; }) == 1);
  CHECK(std::count_if(cols2.begin(), cols2.end(), [](const Column& c) { return c.dummy; }) == 2);
}

TEST_CASE("isolated start gets its direct column") {
  Instance in = testing::t1();
  for (Arc& a : in.arcs)
    if (a.to == 3) a.to = 4;
  in.visits.push_back({"w", "Pw", 0, 0, 0});
  in.ships.push_back({"s2", 3, 100, 20, 0});
  in.arcs.push_back({3, 4, {0}});
  const ReachIndex reach(in);
  const CommoditySet set = build_commodities(reach);
  auto engine = make_arc_pricing(reach, set);
  const std::vector<Column> cols = initial_columns(reach, *engine);
  REQUIRE(cols.size() == 4);
  CHECK(cols[0].path == std::vector<VisitIdx>{3, 4});
  CHECK_FALSE(cols[0].dummy);
  CHECK(run_column_generation(in).objective == doctest::Approx(676));
}

TEST_CASE("pricing with node prices") {
  const Instance in = testing::t1();
  const ReachIndex reach(in);
  const CommoditySet set = build_commodities(reach);
  auto engine = make_arc_pricing(reach, set);
  MasterDuals duals{{0.0}, {0.0, 0.0, 0.0}};
  auto col = price_ship(in, 0, duals, *engine, 1e-6);
  REQUIRE(col);
  CHECK(col->profit == doctest::Approx(676));

  duals.mu[1] = 1000;
  CHECK_FALSE(price_ship(in, 0, duals, *engine, 1e-6));
  // With a negative convexity dual a column is returned; it avoids v1 and is the
  // best of v0 tau (0) and v0 v2 tau (-17).
  duals.pi[0] = -100;
  col = price_ship(in, 0, duals, *engine, 1e-6);
  REQUIRE(col);
  CHECK(std::find(col->path.begin(), col->path.end(), 1) == col->path.end());
  CHECK(col->profit == doctest::Approx(0));
  PricingRequest request;
  request.ship = 0;
  request.forbidden = {0, 0, 1};
  request.node_price = {0, 1000, 0};
  CHECK(engine->price(request).best.path == std::vector<VisitIdx>{0, 3});
}

TEST_CASE("t1 by column generation needs no branching") {
  std::vector<std::string> lines;
  ColumnGenerationOptions options;
  options.log = [&](const std::string& l) { lines.push_back(l); };
  const Solution sol = run_column_generation(testing::t1(), options);
  CHECK(sol.status == SolveStatus::optimal);
  CHECK(sol.objective == doctest::Approx(676));
  CHECK(sol.diagnostics.branch_nodes == 0);
  CHECK(sol.diagnostics.relaxed_master_integral);
  REQUIRE_FALSE(lines.empty());
  CHECK(lines.front().rfind("colgen node=0 pass=1 ", 0) == 0);
}

TEST_CASE("odd cycle needs branching and still reaches the oracle") {
  const Instance in = testing::odd_cycle();
  const double oracle = brute_force_solve(in).objective;
  for (bool batched : {false, true}) {
    ColumnGenerationOptions options;
    options.batched = batched;
    const Solution sol = run_column_generation(in, options);
    CHECK(sol.status == SolveStatus::optimal);
    CHECK(sol.objective == doctest::Approx(oracle));
    CHECK_FALSE(sol.diagnostics.relaxed_master_integral);
    CHECK(sol.diagnostics.branch_nodes > 0);
    CHECK(sol.diagnostics.root_bound > oracle + 1);
    CHECK(check_solution(in, sol).ok());
  }
}

// Two identical ships. Cargo makes path profit non-additive over arcs, so the
// path master has a fractional vertex even with a single ship type: half of each
// of two routes per ship covers every shared visit exactly once.
TEST_CASE("single ship type can still leave the master fractional") {
  const Instance in = read_instance(testing::fixture_path("single_type_fractional.json"));
  REQUIRE(in.ship_types.size() == 1);
  REQUIRE(in.ships[0].capacity_dc == in.ships[1].capacity_dc);
  const Solution oracle = brute_force_solve(in);
  CHECK(oracle.objective == doctest::Approx(1706118.0).epsilon(1e-9));
  for (Method m : {Method::colgen, Method::colgen_lazy}) {
    CAPTURE(to_string(m));
    const Solution sol = solve(in, m);
    CHECK(sol.status == SolveStatus::optimal);
    CHECK(sol.objective == doctest::Approx(oracle.objective).epsilon(1e-9));
    CHECK_FALSE(sol.diagnostics.relaxed_master_integral);
    CHECK(sol.diagnostics.root_bound == doctest::Approx(1736238.0).epsilon(1e-9));
    CHECK(sol.diagnostics.branch_nodes > 0);
  }
}

TEST_CASE("master objective never decreases along a node") {
  std::vector<double> values;
  ColumnGenerationOptions options;
  options.log = [&](const std::string& l) {
    if (l.rfind("colgen node=0 ", 0) != 0) return;
    std::istringstream in(l.substr(l.find("rmp=") + 4));
    double v;
    in >> v;
    values.push_back(v);
  };
  GeneratorParams p;
  p.seed = 11;
  run_column_generation(generate_random(p), options);
  REQUIRE(values.size() >= 2);
  for (std::size_t k = 1; k < values.size(); ++k) CHECK(values[k] >= values[k - 1] - 1e-6 * (1 + std::abs(values[k])));
}

TEST_CASE("no disjoint routing is reported, not hidden behind a dummy") {
  const Instance in = forced_clash();
  for (Method m : all_methods()) {
    CAPTURE(to_string(m));
    const Solution sol = solve(in, m);
    CHECK(sol.status == SolveStatus::no_disjoint_routing);
    CHECK_FALSE(sol.has_solution);
  }
}

TEST_CASE("random instances match the oracle") {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    GeneratorParams p;
    p.seed = seed;
    p.ship_types = 1 + static_cast<int>(seed % 2);
    p.empty_points = static_cast<int>(seed % 3);
    const Instance in = generate_random(p);
    CAPTURE(seed);
    const double oracle = brute_force_solve(in).objective;
    const Solution sol = run_column_generation(in);
    CHECK(objectives_agree(sol.objective, oracle));
    CHECK(objectives_agree(evaluate_objective(in, sol), sol.objective));
    CHECK(check_solution(in, sol).ok());
  }
}

TEST_CASE("method names round trip") {
  for (Method m : all_methods()) CHECK(method_from_string(to_string(m)) == m);
  CHECK_THROWS_AS(method_from_string("simplex"), Error);
}

TEST_CASE("oracle refusal becomes a status") {
  GeneratorParams p;
  p.seed = 3;
  p.visits = 20;
  p.arc_density = 0.7;
  SolveOptions options;
  options.oracle_budget = 10;
  CHECK(solve(generate_random(p), Method::oracle, options).status == SolveStatus::refused);
}
