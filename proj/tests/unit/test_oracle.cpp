#include <doctest.h>

#include "fixtures.hpp"
#include "lsfrp/generator.hpp"
#include "lsfrp/oracle.hpp"

using namespace lsfrp;

TEST_CASE("t1 has four assignments and optimum 676 on v0 v1 v2") {
  const Instance in = testing::t1();
  // v0 tau, v0 v1 tau, v0 v1 v2 tau, v0 v2 tau
  CHECK(enumerate_disjoint_paths(in).size() == 4);
  const Solution sol = brute_force_solve(in);
  CHECK(sol.status == SolveStatus::optimal);
  CHECK(sol.objective == doctest::Approx(50 * 14 - 24));
  CHECK(sol.route_of(0)->path == std::vector<VisitIdx>{0, 1, 2, 3});
  CHECK(evaluate_objective(in, sol) == doctest::Approx(676));
  CHECK(check_solution(in, sol).ok());
}

TEST_CASE("shared visits are never assigned twice") {
  const Instance in = testing::shared_corridor();
  const auto all = enumerate_disjoint_paths(in);
  CHECK(all.size() == 3);
  for (const auto& a : all) CHECK_FALSE((a.paths[0][1] == 2 && a.paths[1][1] == 2));
  const Solution sol = brute_force_solve(in);
  CHECK(sol.objective == doctest::Approx(100 - 10 - 50));
}

TEST_CASE("budget overrun is refused") {
  GeneratorParams p;
  p.seed = 3;
  p.visits = 20;
  p.arc_density = 0.7;
  const Instance in = generate_random(p);
  CHECK_THROWS_AS(brute_force_solve(in, {10}), OracleRefusal);
}

TEST_CASE("zero demand optimum is the pure routing cost") {
  Instance in = testing::t1();
  in.demands.clear();
  CHECK(brute_force_solve(in).objective == doctest::Approx(0));
}

TEST_CASE("overload fixture respects joint capacity") {
  const Instance in = testing::overload1();
  const Solution sol = brute_force_solve(in);
  // 50 slots between oB and dA: B pays 12 per TEU, A 10; A fills 20, B 30.
  CHECK(sol.objective == doctest::Approx(30 * 12 + 20 * 10 - 15 - 3));
  CHECK(check_solution(in, sol).ok());
}

TEST_CASE("reefer plugs bind before total capacity") {
  const Instance in = testing::reefer_pair();
  const Solution sol = brute_force_solve(in);
  CHECK(sol.objective == doctest::Approx(4 * 50 + 1 * 40 - 6 - 3));
}

TEST_CASE("figure-3 optimum takes the detour through dA1") {
  const Solution sol = brute_force_solve(testing::figure3());
  CHECK(sol.objective == doctest::Approx(2000 - 50 - 4));
}
