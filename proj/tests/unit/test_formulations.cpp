#include <doctest.h>

#include <chrono>
#include <cmath>

#include "fixtures.hpp"
#include "lsfrp/formulations.hpp"
#include "lsfrp/generator.hpp"
#include "lsfrp/lp/simplex.hpp"
#include "lsfrp/oracle.hpp"
#include "lsfrp/solver.hpp"

using namespace lsfrp;

namespace {

double lp_bound(const lp::LinearModel& model) {
  const lp::LpSolution sol = lp::solve_lp(model);
  REQUIRE(sol.optimal());
  return sol.objective;
}

const char* const kMethods[] = {"reduced", "reduced-tight", "revised"};

}  // namespace

TEST_CASE("evaluate_objective from raw data") {
  const Instance in = testing::t1();
  Solution sol;
  sol.routes = {{0, {0, 1, 2, 3}}};
  sol.cargo = {{0, 0, 2, 50}};
  CHECK(evaluate_objective(in, sol) == doctest::Approx(676));
  sol.cargo = {{0, 0, 2, 10}};
  CHECK(evaluate_objective(in, sol) == doctest::Approx(116));
  CHECK(evaluate_objective(in, Solution{}) == 0);

  sol.routes = {{0, {0, 2, 3}}};
  CHECK_THROWS_AS(evaluate_objective(in, sol), Error);
  sol.routes = {{0, {0, 1, 0, 3}}};
  sol.cargo.clear();
  CHECK_THROWS_AS(evaluate_objective(in, sol), Error);
}

TEST_CASE("t1 optimum 676 under every arc-flow model") {
  const Instance in = testing::t1();
  const ReachIndex reach(in);
  for (const char* method : kMethods) {
    CAPTURE(method);
    const Solution sol = solve_arc_flow(reach, method, {});
    CHECK(sol.status == SolveStatus::optimal);
    CHECK(sol.objective == doctest::Approx(676));
    CHECK(evaluate_objective(in, sol) == doctest::Approx(676));
    CHECK(check_solution(in, sol).ok());
    CHECK(sol.route_of(0)->path == std::vector<VisitIdx>{0, 1, 2, 3});
  }
  CHECK(lp_bound(build_reduced(reach).model) == doctest::Approx(676));
}

TEST_CASE("zero demands reduce to the cheapest disjoint routing") {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    GeneratorParams p;
    p.seed = seed;
    p.demands = 0;
    const Instance in = generate_random(p);
    const ReachIndex reach(in);
    const double oracle = brute_force_solve(in).objective;
    for (const char* method : kMethods) CHECK(solve_arc_flow(reach, method, {}).objective == doctest::Approx(oracle));
  }
}

TEST_CASE("disaggregation closes a gap the reduced relaxation leaves open") {
  const Instance in = testing::lp_gap();
  const ReachIndex reach(in);
  const double reduced = lp_bound(build_reduced(reach).model);
  const double tight = lp_bound(build_reduced(reach, {true, {}}).model);
  const double revised = lp_bound(build_revised(reach).model);
  CHECK(revised < reduced - 1.0);
  CHECK(revised <= tight + 1e-6);
  CHECK(tight <= reduced + 1e-6);
  const double oracle = brute_force_solve(in).objective;
  for (const char* method : kMethods) CHECK(solve_arc_flow(reach, method, {}).objective == doctest::Approx(oracle));
}

TEST_CASE("crafted fixtures agree with the oracle") {
  for (const Instance& in : {testing::overload1(), testing::reefer_pair(), testing::figure3(), testing::odd_cycle(),
                             testing::shared_corridor(), with_empty_revenue(testing::empty_line(), 100)}) {
    CAPTURE(in.name);
    const ReachIndex reach(in);
    const double oracle = brute_force_solve(in).objective;
    for (const char* method : kMethods) {
      CAPTURE(method);
      const Solution sol = solve_arc_flow(reach, method, {});
      CHECK(sol.objective == doctest::Approx(oracle));
      CHECK(evaluate_objective(in, sol) == doctest::Approx(sol.objective));
      CHECK(check_solution(in, sol).ok());
    }
  }
}

TEST_CASE("random instances: optima agree and relaxations are ordered") {
  for (std::uint64_t seed = 1; seed <= 12; ++seed) {
    GeneratorParams p;
    p.seed = seed;
    p.ships = 2 + static_cast<int>(seed % 2);
    p.ship_types = 1 + static_cast<int>(seed % 2);
    p.visits = 10;
    p.demands = 8;
    p.empty_points = static_cast<int>(seed % 3);
    const Instance in = generate_random(p);
    CAPTURE(seed);
    const ReachIndex reach(in);
    const double oracle = brute_force_solve(in).objective;
    for (const char* method : kMethods) {
      CAPTURE(method);
      const Solution sol = solve_arc_flow(reach, method, {});
      CHECK(objectives_agree(sol.objective, oracle));
      CHECK(objectives_agree(evaluate_objective(in, sol), sol.objective));
      CHECK(check_solution(in, sol).ok());
    }
    const double scale = 1e-6 * std::max(1.0, std::abs(oracle));
    const double reduced = lp_bound(build_reduced(reach).model);
    const double tight = lp_bound(build_reduced(reach, {true, {}}).model);
    const double revised = lp_bound(build_revised(reach).model);
    CHECK(revised <= tight + scale);
    CHECK(tight <= reduced + scale);
  }
}

TEST_CASE("model sizes are reported") {
  const Instance in = testing::t1();
  const ReachIndex reach(in);
  const ArcFlowModel built = build_revised(reach);
  const ModelSize size = model_size(built.model);
  CHECK(size.rows == built.model.num_rows());
  CHECK(size.cols == built.model.num_vars());
  CHECK(size.nonzeros > size.cols);
}

// Objective coefficients near 1e6 once made two columns trade places on
// reduced costs of order 1e-9 until the iteration limit.
TEST_CASE("large costs do not stall the simplex inside branch and bound") {
  struct Case {
    std::uint64_t seed;
    const char* method;
  };
  for (const Case& c : {Case{32, "reduced"}, Case{61, "reduced-tight"}}) {
    GeneratorParams p;
    p.seed = c.seed;
    p.ships = 1 + static_cast<int>(c.seed % 3);
    p.ship_types = std::min(1 + static_cast<int>((c.seed / 3) % p.ships), 2);
    p.visits = 10 + static_cast<int>(c.seed % 5);
    p.demands = 6 + static_cast<int>(c.seed % 7);
    p.reefer_fraction = c.seed % 4 == 0 ? 0.0 : 0.2;
    p.multi_destination_fraction = 0.25 + 0.25 * static_cast<double>(c.seed % 2);
    p.empty_points = static_cast<int>(c.seed % 3);
    const Instance in = generate_random(p);
    CAPTURE(c.seed);
    const ReachIndex reach(in);
    const Solution sol = solve_arc_flow(reach, c.method, {});
    CHECK(sol.status == SolveStatus::optimal);
    CHECK(objectives_agree(sol.objective, brute_force_solve(in).objective));
  }
}

TEST_CASE("time limit stops every method promptly") {
  GeneratorParams p;
  p.seed = 7;
  p.visits = 36;
  p.demands = 28;
  p.arc_density = 0.5;
  const Instance in = generate_random(p);
  SolveOptions options;
  options.time_limit_seconds = 0.2;
  for (Method method : {Method::reduced, Method::reduced_tight, Method::revised, Method::colgen, Method::colgen_lazy}) {
    CAPTURE(to_string(method));
    const auto started = std::chrono::steady_clock::now();
    const Solution sol = solve(in, method, options);
    const double took = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    CHECK(sol.status == SolveStatus::time_limit);
    CHECK(took < 5.0);
    if (sol.has_solution) CHECK(sol.bound >= sol.objective - 1e-6);
  }
}
