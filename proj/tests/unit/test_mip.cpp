#include <random>

#include "doctest.h"
#include "lp_reference.hpp"
#include "random_models.hpp"
#include "lsfrp/lp/lp_format.hpp"
#include "lsfrp/lp/mip.hpp"

#include <sstream>

using namespace lsfrp::lp;

TEST_CASE("two-item knapsack") {
  LinearModel m;
  m.add_variable(0, 1, 10.0, true);
  m.add_variable(0, 1, 9.0, true);
  m.add_row({{0, 5.0}, {1, 5.0}}, Sense::le, 5.0);
  MipSolution s = solve_mip(m);
  REQUIRE(s.status == MipStatus::optimal);
  CHECK(s.objective == doctest::Approx(10.0));
  CHECK(s.x[0] == doctest::Approx(1.0));
  CHECK(s.x[1] == doctest::Approx(0.0));
}

TEST_CASE("random knapsacks agree with exhaustive search") {
  std::mt19937 rng(99);
  for (int trial = 0; trial < 60; ++trial) {
    CAPTURE(trial);
    LinearModel m = lsfrp::testing::random_knapsack(rng, trial);
    auto expected = lsfrp::testing::integer_enumeration_optimum(m);
    REQUIRE(expected);
    MipSolution s = solve_mip(m);
    REQUIRE(s.status == MipStatus::optimal);
    CHECK(s.objective == doctest::Approx(*expected));
    CHECK(m.max_violation(s.x) <= 1e-7);
    CHECK(s.root_bound >= s.objective - 1e-9);
  }
}

TEST_CASE("mixed integer with continuous part") {
  LinearModel m;
  m.add_variable(0, 3, 1.0, true);
  m.add_variable(0, kInf, 1.0);
  m.add_row({{0, 2.0}, {1, 1.0}}, Sense::le, 4.5);
  m.add_row({{1, 1.0}}, Sense::le, 1.2);
  MipSolution s = solve_mip(m);
  REQUIRE(s.status == MipStatus::optimal);
  // x = 2, y = 0.5 beats x = 1, y = 1.2
  CHECK(s.objective == doctest::Approx(2.5));
}

TEST_CASE("infeasible integer program") {
  LinearModel m;
  m.add_variable(0, 1, 1.0, true);
  m.add_row({{0, 2.0}}, Sense::eq, 1.0);
  MipSolution s = solve_mip(m);
  CHECK(s.status == MipStatus::infeasible);
  CHECK_FALSE(s.has_incumbent);
}

TEST_CASE("candidate callback adds lazy rows") {
  LinearModel m;
  for (int j = 0; j < 3; ++j) m.add_variable(0, 1, 1.0 + j, true);
  int calls = 0;
  auto cb = [&](std::span<const double> x) {
    ++calls;
    std::vector<Constraint> cuts;
    if (x[0] + x[1] + x[2] > 2.5) cuts.push_back({{{0, 1.0}, {1, 1.0}, {2, 1.0}}, Sense::le, 2.0, "pack"});
    if (x[2] + x[1] > 1.5) cuts.push_back({{{1, 1.0}, {2, 1.0}}, Sense::le, 1.0, "pair"});
    return cuts;
  };
  MipSolution s = solve_mip(m, {}, cb);
  REQUIRE(s.status == MipStatus::optimal);
  CHECK(s.objective == doctest::Approx(4.0));
  CHECK(s.cuts_added >= 1);
  CHECK(s.callback_calls == calls);
  CHECK(m.num_rows() == s.cuts_added);
}

TEST_CASE("non-violated lazy row is rejected") {
  LinearModel m;
  m.add_variable(0, 1, 1.0, true);
  auto cb = [](std::span<const double>) {
    return std::vector<Constraint>{{{{0, 1.0}}, Sense::le, 5.0, "slack"}};
  };
  CHECK_THROWS_AS(solve_mip(m, {}, cb), SeparationError);
}

TEST_CASE("node limit stops the search with a valid bound") {
  std::mt19937 rng(5);
  LinearModel m;
  std::vector<Term> row;
  for (int j = 0; j < 25; ++j) {
    m.add_variable(0, 1, 10 + (j * 7) % 13, true);
    row.push_back({j, 3.0 + (j * 5) % 11});
  }
  m.add_row(row, Sense::le, 61.5);
  MipOptions opt;
  opt.node_limit = 3;
  MipSolution s = solve_mip(m, opt);
  CHECK(s.status == MipStatus::node_limit);
  CHECK(s.nodes == 3);
  MipSolution full = solve_mip(m);
  REQUIRE(full.status == MipStatus::optimal);
  CHECK(s.bound >= full.objective - 1e-9);
}

TEST_CASE("LP format writer") {
  LinearModel m;
  m.add_variable(0, 1, 2.0, true, "x");
  m.add_variable(0, kInf, -1.0, false, "y");
  m.add_row({{0, 1.0}, {1, 2.0}}, Sense::ge, 1.0, "c1");
  std::ostringstream out;
  write_lp(m, out);
  const std::string s = out.str();
  CHECK(s.find("Maximize") != std::string::npos);
  CHECK(s.find("c1:") != std::string::npos);
  CHECK(s.find("General") != std::string::npos);
  CHECK(s.find("End") != std::string::npos);
}
