#include <doctest.h>

#include <algorithm>
#include <functional>
#include <map>

#include "goi/battery.hpp"
#include "goi/graph.hpp"

using namespace goi;

namespace {

struct E {
  Side side;
  size_t idx;
  const Edge* e;
};

std::vector<E> all_edges(const Graph& F, const Graph& G) {
  std::vector<E> out;
  for (size_t i = 0; i < F.edges.size(); ++i) out.push_back({Side::F, i, &F.edges[i]});
  for (size_t i = 0; i < G.edges.size(); ++i) out.push_back({Side::G, i, &G.edges[i]});
  return out;
}

// Every sequence of edges up to max_len that chains and alternates colours.
// The predicate is prefix closed, so extending only valid prefixes still
// visits every valid sequence.
void sequences(const Graph& F, const Graph& G, size_t max_len, const std::function<void(const std::vector<E>&)>& visit) {
  auto edges = all_edges(F, G);
  std::vector<E> cur;
  std::function<void()> rec = [&]() {
    if (!cur.empty()) visit(cur);
    if (cur.size() == max_len) return;
    for (const auto& x : edges) {
      if (!cur.empty() && (cur.back().side == x.side || cur.back().e->dst != x.e->src)) continue;
      cur.push_back(x);
      rec();
      cur.pop_back();
    }
  };
  rec();
}

using Seq = std::vector<std::pair<int, size_t>>;

Seq seq_of(const std::vector<E>& s) {
  Seq out;
  for (const auto& x : s) out.emplace_back(int(x.side), x.idx);
  return out;
}

Seq seq_of(const std::vector<Step>& s) {
  Seq out;
  for (const auto& x : s) out.emplace_back(int(x.side), x.edge);
  return out;
}

Graph random_graph(SplitMix64& rng, const std::vector<std::string>& V, int max_edges, const std::string& prefix) {
  Graph g;
  for (const auto& v : V) g.add_vertex(v);
  int n = int(rng.range(0, max_edges));
  for (int k = 0; k < n; ++k)
    g.add_edge(prefix + std::to_string(k), V[rng.below(V.size())], V[rng.below(V.size())], random_weight(rng));
  return g;
}

std::set<std::string> symdiff(const Graph& F, const Graph& G) {
  std::set<std::string> out;
  for (const auto& v : F.vertices)
    if (!G.vertices.count(v)) out.insert(v);
  for (const auto& v : G.vertices)
    if (!F.vertices.count(v)) out.insert(v);
  return out;
}

}  // namespace

TEST_CASE("alternating paths: single edges and two-edge compositions") {
  Graph F, G;
  F.add_vertex("1");
  F.add_vertex("2");
  F.add_edge("e", "1", "2");
  auto p = alternating_paths(F, G, {"1", "2"});
  REQUIRE(p.size() == 1);
  CHECK(p[0].steps == std::vector<Step>{{Side::F, 0}});

  G.add_vertex("2");
  G.add_vertex("3");
  G.add_edge("f", "2", "3");
  p = alternating_paths(F, G, {"1", "3"});
  REQUIRE(p.size() == 1);
  CHECK(p[0].steps == std::vector<Step>{{Side::F, 0}, {Side::G, 0}});
  CHECK(p[0].src == "1");
  CHECK(p[0].dst == "3");
}

TEST_CASE("alternating paths agree with exhaustive sequence enumeration") {
  SplitMix64 rng(7);
  const std::vector<std::string> V = {"1", "2", "3", "4"};
  int compared = 0, infinite = 0;
  for (int iter = 0; iter < 300; ++iter) {
    Graph F = random_graph(rng, V, 3, "f"), G = random_graph(rng, V, 3, "g");
    std::set<std::string> ends;
    for (const auto& v : V)
      if (rng.coin()) ends.insert(v);
    size_t n = F.edges.size() + G.edges.size();
    std::vector<Seq> oracle;
    bool pumpable = false;
    sequences(F, G, 3 * n + 1, [&](const std::vector<E>& s) {
      if (!ends.count(s.front().e->src) || !ends.count(s.back().e->dst)) return;
      if (s.size() > n) pumpable = true;  // some edge repeats: the loop can be pumped
      else oracle.push_back(seq_of(s));
    });
    try {
      auto got = alternating_paths(F, G, ends);
      CHECK_FALSE(pumpable);
      std::vector<Seq> mine;
      for (const auto& p : got) mine.push_back(seq_of(p.steps));
      std::sort(mine.begin(), mine.end());
      std::sort(oracle.begin(), oracle.end());
      CHECK(mine == oracle);
      ++compared;
    } catch (const ResourceError&) {
      CHECK(pumpable);
      ++infinite;
    }
  }
  CHECK(compared > 100);
  CHECK(infinite > 0);
}

TEST_CASE("execution multiplies weights along paths") {
  Graph F, G;
  F.add_vertex("1");
  F.add_vertex("2");
  G.add_vertex("2");
  G.add_vertex("3");
  F.add_edge("e", "1", "2", Rational(1, 2));
  G.add_edge("f", "2", "3", Rational(1, 3));
  Graph r = execute(F, G);
  CHECK(r.vertices == std::set<std::string>{"1", "3"});
  REQUIRE(r.edges.size() == 1);
  CHECK(r.edges[0].src == "1");
  CHECK(r.edges[0].dst == "3");
  CHECK(r.edges[0].weight == Rational(1, 6));
}

TEST_CASE("execution with the empty graph is the identity") {
  SplitMix64 rng(3);
  for (int k = 0; k < 20; ++k) {
    Graph F = random_graph(rng, {"1", "2", "3"}, 5, "e");
    CHECK(equal_up_to_renaming(execute(F, Graph{}), F));
  }
}

TEST_CASE("execution is associative on triples without a common vertex") {
  SplitMix64 rng(11);
  int compared = 0;
  for (int iter = 0; iter < 300; ++iter) {
    auto t = random_graph_triple(rng);
    try {
      Graph l = execute(t[0], execute(t[1], t[2]));
      Graph r = execute(execute(t[0], t[1]), t[2]);
      CHECK(equal_up_to_renaming(l, r));
      // Independent check: the vertex set is the symmetric difference.
      CHECK(l.vertices == symdiff(t[0], execute(t[1], t[2])));
      ++compared;
    } catch (const ResourceError&) {
    }
  }
  CHECK(compared > 100);
}

TEST_CASE("circuits: the closed pair and disjoint graphs") {
  Graph F, G;
  F.add_vertex("1");
  F.add_vertex("2");
  G.add_vertex("1");
  G.add_vertex("2");
  F.add_edge("e", "1", "2", Rational(1, 2));
  G.add_edge("f", "2", "1", Rational(2, 3));
  auto c = one_circuits(F, G);
  REQUIRE(c.size() == 1);
  CHECK(c[0].weight == Rational(1, 3));

  Graph H;
  H.add_vertex("7");
  H.add_edge("h", "7", "7");
  CHECK(one_circuits(F, H).empty());
}

TEST_CASE("circuits agree with brute-force cycle enumeration on parallel edges") {
  SplitMix64 rng(5);
  int compared = 0;
  for (int iter = 0; iter < 300; ++iter) {
    Graph F = random_graph(rng, {"1", "2", "3"}, 3, "f"), G = random_graph(rng, {"1", "2", "3"}, 3, "g");
    // Double one edge of each side so parallel edges always occur.
    if (!F.edges.empty()) F.add_edge("fd", F.edges[0].src, F.edges[0].dst, F.edges[0].weight);
    if (!G.edges.empty()) G.add_edge("gd", G.edges[0].src, G.edges[0].dst, G.edges[0].weight);
    std::set<Seq> oracle;
    sequences(F, G, 8, [&](const std::vector<E>& s) {
      if (s.size() < 2 || s.front().side != Side::F || s.back().side != Side::G) return;
      if (s.back().e->dst != s.front().e->src) return;
      Seq q = seq_of(s);
      // Primitive: no proper rotation gives back q.
      bool primitive = true;
      for (size_t k = 1; k < q.size() && primitive; ++k) {
        if (q.size() % k) continue;
        Seq r(q.begin() + k, q.end());
        r.insert(r.end(), q.begin(), q.begin() + k);
        if (r == q) primitive = false;
      }
      if (!primitive) return;
      Seq best = q;  // canonical rotation starting in F
      for (size_t k = 2; k < q.size(); k += 2) {
        Seq r(q.begin() + k, q.end());
        r.insert(r.end(), q.begin(), q.begin() + k);
        best = std::min(best, r);
      }
      oracle.insert(best);
    });
    try {
      auto got = one_circuits(F, G);
      bool short_enough = std::all_of(got.begin(), got.end(), [](const Circuit& c) { return c.steps.size() <= 8; });
      if (!short_enough) continue;
      CHECK(got.size() == oracle.size());
      ++compared;
    } catch (const ResourceError&) {
    }
  }
  CHECK(compared > 100);
}

TEST_CASE("measurement: one circuit, none, and a tabulated quantifier") {
  Graph F, G;
  F.add_vertex("1");
  F.add_vertex("2");
  G.add_vertex("1");
  G.add_vertex("2");
  F.add_edge("e", "1", "2", Rational(1, 2));
  G.add_edge("f", "2", "1", Rational(1));
  Quantifier m = Quantifier::table({{Rational(1, 2), ExtReal(Rational(7, 10))}});
  CHECK(measure(F, G, m) == ExtReal(Rational(7, 10)));
  CHECK(measure(F, Graph{}, m) == ExtReal(0));
  CHECK(measure(F, G, Quantifier()) == ExtReal(2));
}

TEST_CASE("geometric trefoil: circuit weight multisets agree") {
  SplitMix64 rng(13);
  int compared = 0;
  for (int iter = 0; iter < 1000; ++iter) {
    auto [F, G, H] = random_graph_triple(rng);
    try {
      auto l = circuit_weights(execute(F, G), H);
      auto l2 = circuit_weights(F, G);
      auto r = circuit_weights(execute(G, H), F);
      auto r2 = circuit_weights(G, H);
      l.insert(l2.begin(), l2.end());
      r.insert(r2.begin(), r2.end());
      CHECK(l == r);
      ++compared;
    } catch (const ResourceError&) {
    }
  }
  CHECK(compared > 300);
}

TEST_CASE("numerical trefoil on random triples, default and identity quantifiers") {
  SplitMix64 rng(17);
  int nontrivial = 0, compared = 0;
  for (int iter = 0; iter < 500; ++iter) {
    auto [F, G, H] = random_graph_triple(rng);
    bool a, b;
    try {
      a = graph_trefoil_holds(F, G, H, Quantifier());
      b = graph_trefoil_holds(F, G, H, Quantifier::identity());
      Quantifier id = Quantifier::identity();
      if (!measure(F, G, id).is_zero() || !measure(G, H, id).is_zero() || !measure(F, execute(G, H), id).is_zero())
        ++nontrivial;
    } catch (const ResourceError&) {
      continue;
    }
    CHECK(a);
    CHECK(b);
    ++compared;
  }
  CHECK(compared > 200);
  CHECK(nontrivial > 10);
}

TEST_CASE("path enumeration limit is reported with the bound") {
  Graph F, G;
  for (const char* v : {"a", "m", "z"}) {
    F.add_vertex(v);
    G.add_vertex(v);
  }
  F.add_vertex("s");
  G.add_vertex("t");
  for (int k = 0; k < 12; ++k) F.add_edge("f" + std::to_string(k), "s", "m");
  for (int k = 0; k < 12; ++k) G.add_edge("g" + std::to_string(k), "m", "t");
  EnumLimits lim;
  lim.max_paths = 100;
  try {
    execute(F, G, lim);
    FAIL("expected a resource error");
  } catch (const ResourceError& e) {
    CHECK(std::string(e.what()).find("max_paths=100") != std::string::npos);
  }
}

TEST_CASE("validation rejects malformed graphs") {
  Graph g;
  g.add_vertex("1");
  g.edges.push_back({"e", "1", "2", 1});
  CHECK_THROWS_AS(g.validate(), std::invalid_argument);
  Graph h;
  h.add_vertex("1");
  h.edges.push_back({"e", "1", "1", 0});
  CHECK_THROWS_AS(h.validate(), std::invalid_argument);
}
