#include <doctest.h>

#include "fixtures.hpp"
#include "lsfrp/generator.hpp"
#include "lsfrp/instance_io.hpp"
#include "lsfrp/oracle.hpp"

using namespace lsfrp;

TEST_CASE("t1 file matches the in-memory fixture") {
  CHECK(read_instance(testing::fixture_path("t1.json")) == testing::t1());
}

TEST_CASE("instances survive a round trip") {
  CHECK(parse_instance(write_instance(testing::t1())) == testing::t1());
  CHECK(parse_instance(write_instance(testing::odd_cycle())) == testing::odd_cycle());
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    GeneratorParams p;
    p.seed = seed;
    p.ship_types = 2;
    p.empty_points = 4;
    const Instance in = generate_random(p);
    const std::string text = write_instance(in);
    CHECK(parse_instance(text) == in);
    CHECK(write_instance(parse_instance(text)) == text);
  }
}

TEST_CASE("unknown visit references are reported by name") {
  std::string text = read_text_file(testing::fixture_path("t1.json"));
  text.replace(text.find("\"destinations\": [\"v2\"]"), 22, "\"destinations\": [\"v9\"]");
  try {
    parse_instance(text);
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("\"v9\"") != std::string::npos);
    CHECK(std::string(e.what()).find("demands[0]") != std::string::npos);
  }
}

TEST_CASE("malformed input and invariant failures are parse errors") {
  CHECK_THROWS_AS(parse_instance("{"), ParseError);
  CHECK_THROWS_AS(parse_instance("{\"schema\": \"other\"}"), ParseError);
  Instance in = testing::t1();
  in.ships[0].capacity_rf = 500;
  CHECK_THROWS_AS(parse_instance(write_instance(in)), ParseError);
}

TEST_CASE("empty demand list is a valid instance") {
  Instance in = testing::t1();
  in.demands.clear();
  CHECK(parse_instance(write_instance(in)) == in);
}

TEST_CASE("solutions survive a round trip") {
  const Instance in = testing::t1();
  Solution sol = brute_force_solve(in);
  sol.diagnostics.ship_cuts.push_back({0, 1, 2});
  const std::string text = write_solution(in, sol);
  CHECK(text.find("\"objective\": 676") != std::string::npos);
  const Solution back = parse_solution(text, in);
  CHECK(back.objective == 676);
  CHECK(back.routes == sol.routes);
  CHECK(back.cargo == sol.cargo);
  CHECK(write_solution(in, back) == text);
  CHECK(write_solution(in, sol, {false}).find("wall_time_s") == std::string::npos);
}

TEST_CASE("generator is a pure function of its parameters") {
  GeneratorParams p;
  p.seed = 42;
  p.empty_points = 3;
  CHECK(write_instance(generate_random(p)) == write_instance(generate_random(p)));
  GeneratorParams q = p;
  q.seed = 43;
  CHECK(write_instance(generate_random(p)) != write_instance(generate_random(q)));
}

TEST_CASE("generator rejects infeasible parameters") {
  GeneratorParams p;
  p.visits = 2;
  CHECK_THROWS_AS(generate_random(p), Error);
  p = {};
  p.arc_density = 0;
  CHECK_THROWS_AS(generate_random(p), Error);
  p = {};
  p.revenue = {10, 5};
  CHECK_THROWS_AS(generate_random(p), Error);
}

TEST_CASE("generated instances validate across shapes") {
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    GeneratorParams p;
    p.seed = seed;
    p.ships = 1 + static_cast<int>(seed % 3);
    p.ship_types = 1 + static_cast<int>(seed % p.ships);
    p.visits = 6 + static_cast<int>(seed % 9);
    p.demands = static_cast<int>(seed % 13);
    p.empty_points = static_cast<int>(seed % 4);
    CHECK(validate(generate_random(p)).ok());
  }
}
