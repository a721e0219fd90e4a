#include <doctest.h>

#include <algorithm>

#include "fixtures.hpp"
#include "lsfrp/commodity.hpp"
#include "lsfrp/generator.hpp"
#include "lsfrp/oracle.hpp"
#include "lsfrp/reach_index.hpp"

using namespace lsfrp;

TEST_CASE("t1 validates and has the expected cargo arcs") {
  const Instance in = testing::t1();
  CHECK(validate(in).ok());
  const ReachIndex reach(in);
  const auto& arcs = reach.demand_arcs(0);
  REQUIRE(arcs.size() == 1);
  CHECK(in.arcs[arcs[0]].from == 1);
  CHECK(in.arcs[arcs[0]].to == 2);
  CHECK(reach.path_count(0) == 4);
  CHECK(reach.movable_demands(0) == std::vector<DemandIdx>{0});
}

TEST_CASE("validation names the offending field") {
  Instance in = testing::t1();
  in.arcs.push_back({2, 1, {1.0}});
  CHECK_FALSE(validate(in).ok());

  in = testing::t1();
  in.ships[0].capacity_rf = 200;
  CHECK(validate(in).mentions("capacity_rf"));

  in = testing::t1();
  in.demands[0].destinations = {9};
  CHECK_FALSE(validate(in).ok());
}

TEST_CASE("topological order sends every arc forward") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    GeneratorParams p;
    p.seed = seed;
    const Instance in = generate_random(p);
    const ReachIndex reach(in);
    for (const Arc& a : in.arcs) CHECK(reach.topo_position(a.from) < reach.topo_position(a.to));
  }
}

TEST_CASE("path counts agree with enumeration") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    GeneratorParams p;
    p.seed = seed;
    p.ships = 2;
    const Instance in = generate_random(p);
    const ReachIndex reach(in);
    for (ShipIdx s = 0; s < in.ship_count(); ++s)
      CHECK(reach.path_count(s) == enumerate_ship_paths(in, s).size());
  }
}

TEST_CASE("removing an arc never grows a cargo arc set") {
  GeneratorParams p;
  p.seed = 5;
  const Instance in = generate_random(p);
  const ReachIndex full(in);
  for (std::size_t drop = 0; drop < in.arcs.size(); drop += 3) {
    Instance cut = in;
    cut.arcs.erase(cut.arcs.begin() + static_cast<long>(drop));
    if (!validate(cut).ok()) continue;
    const ReachIndex part(cut);
    for (DemandIdx m = 0; m < static_cast<int>(in.demands.size()); ++m)
      CHECK(part.demand_arcs(m).size() <= full.demand_arcs(m).size());
    for (ShipIdx s = 0; s < in.ship_count(); ++s)
      for (DemandIdx m : part.movable_demands(s)) {
        const auto& before = full.movable_demands(s);
        CHECK(std::find(before.begin(), before.end(), m) != before.end());
      }
  }
}

TEST_CASE("movable demands differ per ship") {
  const Instance in = testing::lp_gap();
  const ReachIndex reach(in);
  CHECK(reach.movable_demands(0) == std::vector<DemandIdx>{0});
  CHECK(reach.movable_demands(1).empty());
}

TEST_CASE("figure-3 demand A is split under both rules") {
  const Instance in = testing::figure3();
  const ReachIndex reach(in);
  for (SplitRule rule : {SplitRule::safe, SplitRule::strict}) {
    const auto split = split_demand_triples(reach, rule);
    CHECK(split[0]);
    CHECK_FALSE(split[1]);
  }
  CHECK_FALSE(split_demand_triples(reach, SplitRule::none)[0]);

  const CommoditySet set = build_commodities(reach);
  CHECK(set.split_count == 1);
  REQUIRE(set.by_demand[0].size() == 2);
  const Commodity& a1 = set.items[set.by_demand[0][0]];
  const Commodity& a2 = set.items[set.by_demand[0][1]];
  CHECK(a1.kind == CommodityKind::split_member);
  CHECK(a1.destinations == std::vector<VisitIdx>{1});
  CHECK(a2.destinations == std::vector<VisitIdx>{3});
  CHECK(a1.group == a2.group);
  CHECK(set.groups[a1.group].cap == 100);
  // The member bound for dA1 never leaves the first leg.
  CHECK(a1.arcs.size() == 1);
}

TEST_CASE("single destinations and disjoint demands never split") {
  const Instance in = testing::overload1();
  const ReachIndex reach(in);
  CHECK(split_demand_triples(reach, SplitRule::safe) == std::vector<bool>{false, false});
  CHECK(split_demand_triples(reach, SplitRule::strict) == std::vector<bool>{false, false});
}

TEST_CASE("unequal unload costs force a split or fail without splitting") {
  Instance in = testing::figure3();
  in.visits[3].move_cost = 2;
  in.demands[1].destinations = {4};
  const ReachIndex reach(in);
  CHECK(build_commodities(reach, {SplitRule::safe, true}).split[0]);
  CHECK_THROWS_AS(build_commodities(reach, {SplitRule::none, true}), Error);
}

TEST_CASE("empty pairs only for reachable surplus and deficit") {
  const Instance in = with_empty_revenue(testing::empty_line(), 100);
  const ReachIndex reach(in);
  const CommoditySet set = build_commodities(reach);
  REQUIRE(set.empty_pairs.size() == 2);
  for (const Commodity& c : set.items) {
    CHECK(c.is_empty());
    CHECK_FALSE(c.reefer_slots);
    CHECK(c.unit_profit[0] == doctest::Approx(80));
  }
  CHECK(set.items[0].amount == 40);
  CHECK(set.items[1].amount == 10);
  CHECK(build_commodities(reach, {SplitRule::safe, false}).size() == 0);
}
