#include <doctest.h>

#include "fixtures.hpp"
#include "lsfrp/formulations.hpp"
#include "lsfrp/generator.hpp"
#include "lsfrp/lazy.hpp"
#include "lsfrp/oracle.hpp"

using namespace lsfrp;

namespace {

std::vector<double> totals_for(const CommoditySet& set, std::initializer_list<std::pair<int, double>> amounts) {
  std::vector<double> totals(set.size(), 0.0);
  for (auto [c, a] : amounts) totals[c] = a;
  return totals;
}

}  // namespace

TEST_CASE("t1 needs no cuts") {
  const Solution sol = run_colgen_lazy(testing::t1());
  CHECK(sol.objective == doctest::Approx(676));
  CHECK(sol.diagnostics.cuts_dc == 0);
  CHECK(sol.diagnostics.cuts_rf == 0);
}

TEST_CASE("overload replay emits one dc cut at origin B") {
  const Instance in = testing::overload1();
  const ReachIndex reach(in);
  const CommoditySet set = build_commodities(reach);
  const std::vector<Cut> cuts = separate_cuts(reach, set, 0, {0, 1, 2, 3, 4}, totals_for(set, {{0, 40}, {1, 30}}));
  REQUIRE(cuts.size() == 1);
  CHECK(cuts[0].node == 1);
  CHECK(cuts[0].scope == CutScope::dc);
  CHECK(cuts[0].rhs == 50);
  CHECK(cuts[0].members == std::vector<int>{0, 1});
  CHECK(separate_cuts(reach, set, 0, {0, 4}, totals_for(set, {})).empty());
}

TEST_CASE("reefer replay emits an rf cut only") {
  const Instance in = testing::reefer_pair();
  const ReachIndex reach(in);
  const CommoditySet set = build_commodities(reach);
  const std::vector<Cut> cuts = separate_cuts(reach, set, 0, {0, 1, 2, 3, 4}, totals_for(set, {{0, 4}, {1, 4}}));
  REQUIRE(cuts.size() == 1);
  CHECK(cuts[0].scope == CutScope::rf);
  CHECK(cuts[0].node == 2);
  CHECK(cuts[0].rhs == 5);
}

TEST_CASE("a cut the candidate satisfies is a soundness error") {
  const Instance in = testing::overload1();
  const ReachIndex reach(in);
  const CommoditySet set = build_commodities(reach);
  // B's cargo counted as if it rode from oA: the replay sees an overflow the members do not carry.
  CHECK(separate_cuts(reach, set, 0, {0, 1, 2, 3, 4}, totals_for(set, {{0, 40}, {1, 10}})).empty());
}

TEST_CASE("lazy column generation on the capacity fixtures") {
  for (const Instance& in : {testing::overload1(), testing::reefer_pair()}) {
    CAPTURE(in.name);
    const ReachIndex reach(in);
    const CommoditySet set = build_commodities(reach);
    LazyPricingEngine engine(reach, set);
    engine.keep_accepted(true);
    const Solution sol = run_colgen_lazy(reach, set, engine);
    CHECK(sol.objective == doctest::Approx(brute_force_solve(in).objective));
    CHECK(sol.diagnostics.cuts_dc + sol.diagnostics.cuts_rf >= 1);
    CHECK(sol.diagnostics.cuts_emitted == sol.diagnostics.cuts_dc + sol.diagnostics.cuts_rf);
    CHECK(check_solution(in, sol).ok());
    for (const AcceptedCandidate& a : engine.accepted())
      CHECK(separate_cuts(reach, set, a.ship, a.path, a.totals).empty());
  }
  CHECK(run_colgen_lazy(testing::overload1()).diagnostics.cuts_dc >= 1);
  const Solution reefer = run_colgen_lazy(testing::reefer_pair());
  CHECK(reefer.diagnostics.cuts_rf >= 1);
  CHECK(reefer.diagnostics.cuts_dc == 0);
}

TEST_CASE("figure-3 needs splitting") {
  const Instance in = testing::figure3();
  const double oracle = brute_force_solve(in).objective;
  ColumnGenerationOptions options;
  const Solution split = run_colgen_lazy(in, options);
  CHECK(split.objective == doctest::Approx(oracle));
  CHECK(split.diagnostics.split_count == 1);
  options.commodities.split_rule = SplitRule::none;
  const Solution unsplit = run_colgen_lazy(in, options);
  CHECK(unsplit.objective <= oracle + 1e-6);
  CHECK(unsplit.objective < oracle - 1);
  options.commodities.split_rule = SplitRule::strict;
  CHECK(run_colgen_lazy(in, options).objective == doctest::Approx(oracle));
}

TEST_CASE("compact model is smaller than the arc-flow pricing model") {
  GeneratorParams p;
  p.seed = 2;
  p.visits = 30;
  p.demands = 25;
  const Instance in = generate_random(p);
  const ReachIndex reach(in);
  const CommoditySet set = build_commodities(reach);
  LazyPricingEngine lazy(reach, set);
  auto arc = make_arc_pricing(reach, set);
  for (ShipIdx s = 0; s < in.ship_count(); ++s) {
    const ModelSize a = arc->model_size(s), c = lazy.model_size(s);
    CHECK(c.rows < a.rows);
    CHECK(c.cols < a.cols);
    CHECK(c.nonzeros < a.nonzeros);
  }
}

TEST_CASE("empty equipment never lowers the optimum") {
  const Instance base = testing::empty_line();
  const double without = run_colgen_lazy(with_empty_revenue(base, 0)).objective;
  const double with = run_colgen_lazy(with_empty_revenue(base, 100)).objective;
  CHECK(with > without);
  CHECK(with == doctest::Approx(brute_force_solve(with_empty_revenue(base, 100)).objective));
}

TEST_CASE("random instances match the oracle with sound incumbents") {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    GeneratorParams p;
    p.seed = seed;
    p.ship_types = 1 + static_cast<int>(seed % 2);
    p.empty_points = static_cast<int>(seed % 3);
    const Instance in = with_empty_revenue(generate_random(p), 300);
    CAPTURE(seed);
    const ReachIndex reach(in);
    const CommoditySet set = build_commodities(reach);
    LazyPricingEngine engine(reach, set);
    engine.keep_accepted(true);
    const Solution sol = run_colgen_lazy(reach, set, engine);
    CHECK(objectives_agree(sol.objective, brute_force_solve(in).objective));
    CHECK(check_solution(in, sol).ok());
    for (const AcceptedCandidate& a : engine.accepted())
      CHECK(separate_cuts(reach, set, a.ship, a.path, a.totals).empty());
  }
}
