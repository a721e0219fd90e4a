#include "fixtures.hpp"

namespace lsfrp::testing {

namespace {

struct Builder {
  Instance in;

  explicit Builder(std::string name, int types = 1) {
    in.name = std::move(name);
    for (int t = 0; t < types; ++t) in.ship_types.push_back("T" + std::to_string(t));
  }
  VisitIdx visit(std::string id, double fee = 0, double move = 0, std::string port = {}) {
    Visit v;
    v.port = port.empty() ? "P" + id : port;
    v.id = std::move(id);
    v.port_fee = fee;
    v.move_cost = move;
    v.time_index = static_cast<int>(in.visits.size());
    in.visits.push_back(std::move(v));
    return in.visit_count() - 1;
  }
  void ship(std::string id, VisitIdx start, double dc, double rf, int type = 0) {
    in.ships.push_back({std::move(id), start, dc, rf, type});
  }
  // Pass -1 as `to` for the sink; costs per type, the last one repeated.
  void arc(VisitIdx from, VisitIdx to, std::vector<double> cost = {0}) {
    while (static_cast<int>(cost.size()) < static_cast<int>(in.ship_types.size())) cost.push_back(cost.back());
    in.arcs.push_back({from, to, std::move(cost)});
  }
  void demand(std::string id, VisitIdx o, std::vector<VisitIdx> d, double amount, double revenue,
              CargoType q = CargoType::dry) {
    in.demands.push_back({std::move(id), o, std::move(d), q, amount, revenue});
  }
  Instance done() {
    for (Arc& a : in.arcs)
      if (a.to == -1) a.to = in.sink();
    require_valid(in);
    return in;
  }
};

constexpr VisitIdx tau = -1;

}  // namespace

Instance t1() {
  Builder b("T1");
  const VisitIdx v0 = b.visit("v0"), v1 = b.visit("v1", 2, 3), v2 = b.visit("v2", 2, 3);
  b.ship("s1", v0, 100, 20);
  b.arc(v0, v1, {10});
  b.arc(v1, v2, {10});
  b.arc(v0, v2, {15});
  b.arc(v1, tau);
  b.arc(v2, tau);
  b.arc(v0, tau);
  b.demand("m1", v1, {v2}, 50, 20);
  return b.done();
}

Instance overload1() {
  Builder b("overload-1");
  const VisitIdx oa = b.visit("oA"), ob = b.visit("oB", 1), da = b.visit("dA", 1), db = b.visit("dB", 1);
  b.ship("s1", oa, 50, 10);
  b.arc(oa, ob, {5});
  b.arc(ob, da, {5});
  b.arc(da, db, {5});
  b.arc(db, tau);
  b.arc(oa, tau);
  b.demand("A", oa, {da}, 40, 10);
  b.demand("B", ob, {db}, 30, 12);
  return b.done();
}

Instance reefer_pair() {
  Builder b("reefer-pair");
  const VisitIdx v0 = b.visit("v0"), v1 = b.visit("v1", 1), v2 = b.visit("v2", 1), v3 = b.visit("v3", 1);
  b.ship("s1", v0, 100, 5);
  b.arc(v0, v1, {2});
  b.arc(v1, v2, {2});
  b.arc(v2, v3, {2});
  b.arc(v3, tau);
  b.arc(v0, tau);
  b.demand("R1", v1, {v3}, 4, 50, CargoType::reefer);
  b.demand("R2", v2, {v3}, 4, 40, CargoType::reefer);
  return b.done();
}

Instance figure3() {
  Builder b("figure-3");
  const VisitIdx oa = b.visit("oA"), da1 = b.visit("dA1", 50, 0, "PA"), ob = b.visit("oB", 0);
  const VisitIdx da2 = b.visit("dA2", 0, 0, "PA"), db = b.visit("dB", 0);
  b.ship("s1", oa, 100, 10);
  b.arc(oa, da1, {1});
  b.arc(da1, ob, {1});
  b.arc(oa, ob, {1});
  b.arc(ob, da2, {1});
  b.arc(da2, db, {1});
  b.arc(db, tau);
  b.arc(oa, tau);
  b.demand("A", oa, {da1, da2}, 100, 10);
  b.demand("B", ob, {db}, 100, 10);
  return b.done();
}

Instance lp_gap() {
  Builder b("lp-gap", 2);
  const VisitIdx s0 = b.visit("s0"), s1 = b.visit("s1"), o = b.visit("o"), k = b.visit("k"), d = b.visit("d");
  b.ship("big", s0, 100, 10, 0);
  b.ship("far", s1, 100, 10, 1);
  b.arc(s0, o, {1});
  b.arc(o, k, {1});
  b.arc(k, d, {10000, 1});
  b.arc(s1, k, {1});
  b.arc(k, tau);
  b.arc(d, tau);
  b.arc(s0, tau);
  b.arc(s1, tau);
  b.demand("m", o, {d}, 100, 30);
  return b.done();
}

Instance odd_cycle() {
  Builder b("odd-cycle", 3);
  const VisitIdx sa = b.visit("sa"), sb = b.visit("sb"), sc = b.visit("sc");
  const VisitIdx n1 = b.visit("n1", -10), n2 = b.visit("n2", -10), n3 = b.visit("n3", -10);
  b.ship("a", sa, 100, 10, 0);
  b.ship("b", sb, 100, 10, 1);
  b.ship("c", sc, 100, 10, 2);
  constexpr double far = 1000;
  b.arc(sa, n1, {0, far, far});
  b.arc(sb, n2, {far, 0, far});
  b.arc(sc, n1, {far, far, 0});
  b.arc(n1, n2, {0, far, far});
  b.arc(n2, n3, {far, 0, far});
  b.arc(n1, n3, {far, far, 0});
  for (VisitIdx v : {sa, sb, sc, n1, n2, n3}) b.arc(v, tau);
  b.demand("m12", n1, {n2}, 1, 10);
  b.demand("m23", n2, {n3}, 1, 10);
  b.demand("m13", n1, {n3}, 1, 10);
  return b.done();
}

Instance shared_corridor() {
  Builder b("shared-corridor");
  const VisitIdx a = b.visit("a"), c = b.visit("c"), k = b.visit("k", -100);
  b.ship("s1", a, 100, 10);
  b.ship("s2", c, 100, 10);
  b.arc(a, k, {10});
  b.arc(c, k, {10});
  b.arc(k, tau);
  b.arc(a, tau, {50});
  b.arc(c, tau, {50});
  return b.done();
}

Instance empty_line() {
  Builder b("empty-line");
  const VisitIdx v0 = b.visit("v0"), v1 = b.visit("v1", 5, 10), v2 = b.visit("v2", 5, 10);
  b.ship("s1", v0, 100, 10);
  b.arc(v0, v1, {20});
  b.arc(v1, v2, {20});
  b.arc(v2, tau);
  b.arc(v0, tau);
  b.in.empty_points.push_back({v1, CargoType::dry, 60});
  b.in.empty_points.push_back({v2, CargoType::dry, -40});
  b.in.empty_points.push_back({v1, CargoType::reefer, 10});
  b.in.empty_points.push_back({v2, CargoType::reefer, -15});
  return b.done();
}

std::string fixture_path(const std::string& file) { return std::string(LSFRP_FIXTURE_DIR) + "/" + file; }

}  // namespace lsfrp::testing
