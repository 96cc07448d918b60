#include <doctest.h>

#include "goi/battery.hpp"
#include "goi/graphing.hpp"

using namespace goi;

namespace {

Cell C(const std::string& s) { return Cell::parse(s); }

Branch translate(const Cell& guard, int64_t to, Tag out_tag = {}) {
  Branch b = Branch::identity_on(guard);
  b.out_base = to;
  b.out_tag = std::move(out_tag);
  b.canonicalize();
  return b;
}

Graphing on(const std::vector<int64_t>& units, Dims dialect = {}) {
  Graphing g;
  g.carrier = CellSet::units(units);
  g.dialect = std::move(dialect);
  return g;
}

}  // namespace

TEST_CASE("normal forms: empty sources and the refinement figure") {
  Graphing g = on({0, 1});
  g.add_edge("e");  // no branches: empty source
  g.add_edge("f").branches.push_back(translate(Cell::unit(0), 1));
  Graphing h = on({0, 1});
  h.add_edge("f").branches.push_back(translate(Cell::unit(0), 1));
  CHECK(ae_equal(g, h));
  CHECK(normalize_ae(g).edges.size() == 1);

  // One edge over [0,2) against its refinement into [0,1) and two halves of
  // [1,2), all realized by the same map.
  Graphing whole = on({0, 1, 3, 4});
  auto& e = whole.add_edge("e");
  e.branches = {translate(Cell::unit(0), 4), translate(Cell::unit(1), 3)};
  Graphing refined = on({0, 1, 3, 4});
  refined.add_edge("e1").branches = {translate(Cell::unit(0), 4)};
  refined.add_edge("e2").branches = {translate(C("[1; x:1=0]"), 3)};
  refined.add_edge("e3").branches = {translate(C("[1; x:1=1]"), 3)};
  CHECK(ae_equal(whole, refined));
  Graphing other = refined;
  other.edges[2].weight = Rational(1, 2);
  CHECK_FALSE(ae_equal(whole, other));
}

TEST_CASE("normal forms survive random refinement") {
  SplitMix64 rng(1);
  for (int iter = 0; iter < 200; ++iter) {
    Graphing g = random_graphing_triple(rng)[rng.below(3)];
    Graphing split;
    split.carrier = g.carrier;
    split.dialect = g.dialect;
    int n = 0;
    for (const auto& e : g.edges) {
      uint64_t q = uint64_t(rng.range(1, 6));
      for (bool bit : {false, true}) {
        auto& ne = split.add_edge(e.id + "." + std::to_string(n++), e.weight);
        for (const auto& b : e.branches) {
          Cell half = b.guard;
          if (half.bits.count(q) && half.bits.at(q) != bit) continue;
          half.bits[q] = bit;
          if (auto r = b.restrict(half)) ne.branches.push_back(*r);
        }
      }
    }
    CHECK(ae_equal(split, g));
  }
}

TEST_CASE("lifts: singleton and iterated") {
  Graphing g = on({0, 1}, {2});
  g.add_edge("e").branches.push_back(translate(Cell::unit(0).with_tag({1}), 1, {0}));
  Graphing one = lift_graphing(g, {1}, Lift::Dagger);
  CHECK(one.dialect == Dims{2, 1});
  CHECK(one.dialect_size() == g.dialect_size());
  REQUIRE(one.edges.size() == 1);
  CHECK(one.edges[0].branches[0].guard.tag == Tag{1, 0});

  Graphing twice = lift_graphing(lift_graphing(g, {2}, Lift::Dagger), {3}, Lift::Dagger);
  Graphing once = lift_graphing(g, {2, 3}, Lift::Dagger);
  CHECK(twice.dialect == once.dialect);
  CHECK(ae_equal(twice, once));
  Graphing dd = lift_graphing(g, {3}, Lift::Ddagger);
  CHECK(dd.dialect == Dims{3, 2});
}

TEST_CASE("execution composes translations") {
  Graphing F = on({0, 2});
  F.add_edge("f").branches.push_back(translate(Cell::unit(0), 2));
  Graphing G = on({2, 5});
  G.add_edge("g").branches.push_back(translate(Cell::unit(2), 5));
  Graphing H = execute_graphing(F, G);
  CHECK(H.carrier == CellSet::units({0, 5}));
  Graphing want = on({0, 5});
  want.add_edge("h").branches.push_back(translate(Cell::unit(0), 5));
  CHECK(ae_equal(H, want));

  // With an empty partner, only edges inside the symmetric difference remain.
  Graphing E = on({2});
  Graphing R = execute_graphing(F, E);
  CHECK(R.carrier == CellSet::units({0}));
  CHECK(normalize_ae(R).edges.empty());
}

TEST_CASE("execution is associative on random graphings") {
  SplitMix64 rng(2);
  int compared = 0;
  for (int iter = 0; iter < 120; ++iter) {
    auto [F, G, H] = random_graphing_triple(rng);
    Graphing l, r;
    try {
      l = execute_graphing(F, execute_graphing(G, H));
      r = execute_graphing(execute_graphing(F, G), H);
    } catch (const ResourceError&) {
      continue;
    }
    CHECK(l.dialect == r.dialect);
    CHECK(ae_equal(l, r));
    ++compared;
  }
  CHECK(compared > 60);
}

TEST_CASE("circuits: identity composites, disjoint carriers, half overlap") {
  Graphing F = on({0, 2});
  F.add_edge("f").branches.push_back(translate(Cell::unit(0), 2));
  Graphing G = on({0, 2});
  G.add_edge("g").branches.push_back(translate(Cell::unit(2), 0));
  auto cs = circuits_graphing(F, G);
  REQUIRE(cs.size() == 1);
  CHECK(cs[0].support.measure() == 1);
  CHECK(cs[0].weight == 1);

  Graphing far = on({7});
  far.add_edge("x").branches.push_back(translate(Cell::unit(7), 7));
  CHECK(circuits_graphing(F, far).empty());

  Graphing half = on({0, 2});
  half.add_edge("g").branches.push_back(translate(C("[2; x:1=0]"), 0));
  auto hc = circuits_graphing(F, half);
  REQUIRE(hc.size() == 1);
  CHECK(hc[0].support.measure() == Rational(1, 2));
}

TEST_CASE("measurement of graphings") {
  Graphing F = on({0, 2});
  F.add_edge("f").branches.push_back(translate(Cell::unit(0), 2));
  Graphing G = on({0, 2});
  G.add_edge("g").branches.push_back(translate(Cell::unit(2), 0));
  CHECK(measure_graphing(F, G).is_inf());
  CHECK(measure_graphing(F, on({0, 2})) == ExtReal(0));

  // Weight 1/2 on a support of measure 1/4, with m(1/2) = 2.
  Graphing Q = on({0, 2});
  Q.add_edge("q", Rational(1, 2)).branches.push_back(translate(C("[2; x:1=0, x:2=1]"), 0));
  CHECK(measure_graphing(F, Q) == ExtReal(Rational(1, 2)));
}

TEST_CASE("embedding a dialect in the interval factor") {
  Graphing A = on({0, 1});
  A.add_edge("e").branches.push_back(translate(Cell::unit(0), 1));
  Graphing E = embed_dialect(A, DialectEncoding::flat(A.dialect));
  REQUIRE(E.edges.size() == 1);
  CHECK(E.edges[0].branches[0].guard == Cell::unit(0, Space::LineTimesInterval));

  Graphing B = on({0, 1}, {2});
  B.add_edge("stay").branches.push_back(translate(Cell::unit(0).with_tag({0}), 1, {0}));
  B.add_edge("cross").branches.push_back(translate(Cell::unit(0).with_tag({0}), 1, {1}));
  Graphing EB = embed_dialect(B, DialectEncoding::flat(B.dialect));
  REQUIRE(EB.edges.size() == 2);
  const Branch& stay = EB.edges[0].branches[0];
  const Branch& cross = EB.edges[1].branches[0];
  // Track-0 slot 1 is interval position 1, i.e. code 2 of Line x [0,1].
  CHECK(stay.guard.bits == Bits{{2, false}});
  CHECK(cross.guard.bits == Bits{{2, false}});
  CHECK(stay.writes == Bits{{2, false}});
  CHECK(cross.writes == Bits{{2, true}});
  CHECK(cross.guard.measure() == Rational(1, 2));
  CHECK(EB.source(1).measure() == Rational(1, 2));
  CHECK(omega_collapse(EB).carrier == CellSet::units({0, 1}));
}

TEST_CASE("trefoil for graphings") {
  BatteryOptions opt;
  opt.iters = 60;
  opt.seed = 3;
  BatteryResult r = battery_trefoil_graphing(opt);
  CHECK_MESSAGE(r.ok(), r.summary());
}

TEST_CASE("non-terminating execution reports its frontier") {
  Graphing F = on({0, 1});
  F.add_edge("in").branches.push_back(translate(Cell::unit(0), 1));
  F.add_edge("loop").branches.push_back(prefix_write(Cell::unit(1), 1, {true}));
  Graphing G = on({1, 2});
  G.add_edge("back").branches.push_back(translate(Cell::unit(1), 1));
  try {
    execute_graphing(F, G, Fuel{50});
    FAIL("expected a resource error");
  } catch (const ResourceError& e) {
    std::string what = e.what();
    CHECK(what.find("fuel=50") != std::string::npos);
    CHECK(what.find("frontier") != std::string::npos);
  }
}

TEST_CASE("validation rejects overlapping branches and foreign targets") {
  Graphing g = on({0, 1});
  auto& e = g.add_edge("e");
  e.branches = {translate(Cell::unit(0), 1), translate(C("[0; x:1=0]"), 1)};
  CHECK_THROWS_AS(g.validate(), std::invalid_argument);
  Graphing h = on({0});
  h.add_edge("e").branches.push_back(translate(Cell::unit(0), 4));
  CHECK_THROWS_AS(h.validate(), std::invalid_argument);
}
