#include "goi/battery.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace goi {

namespace {

constexpr size_t kMaxFailures = 5;
constexpr int kMaxRedraws = 10000;

// Draw until `make` succeeds without a ResourceError, counting the misses.
template <class Make>
auto draw(BatteryResult& r, Make&& make) {
  for (int k = 0;; ++k) {
    try {
      return make();
    } catch (const ResourceError&) {
      if (k >= kMaxRedraws) throw;
      ++r.redrawn;
    }
  }
}

void record(BatteryResult& r, bool ok, const std::function<std::string()>& describe) {
  ++r.total;
  if (ok) ++r.passed;
  else if (r.failures.size() < kMaxFailures) r.failures.push_back("case " + std::to_string(r.total - 1) + ": " + describe());
}

struct Timer {
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  }
};

// Membership masks over three objects, excluding the full mask.
uint32_t random_mask(SplitMix64& rng) { return uint32_t(rng.range(1, 6)); }

std::string vname(int v) { return std::to_string(v); }

std::string graph_str(const Graph& g) {
  std::ostringstream os;
  os << "{";
  for (const auto& e : g.edges) os << " " << e.src << "->" << e.dst << ":" << e.weight.get_str();
  os << " }";
  return os.str();
}

std::string thick_str(const ThickGraph& g) {
  std::ostringstream os;
  os << "{D=" << g.dialect.size();
  for (const auto& e : g.edges)
    os << " " << encode_vertex(e.src) << "->" << encode_vertex(e.dst) << ":" << e.weight.get_str();
  os << " }";
  return os.str();
}

bool any_infinite(std::initializer_list<ExtReal> xs) {
  for (const auto& x : xs)
    if (!x.finite()) return true;
  return false;
}

ThickGraph random_thick_on(SplitMix64& rng, const std::vector<std::string>& S, uint32_t dsize, int max_edges) {
  std::vector<DElem> D;
  for (uint32_t k = 1; k <= dsize; ++k) D.push_back(std::to_string(k));
  ThickGraph g(S, D);
  if (S.empty()) return g;
  int n = int(rng.range(0, max_edges));
  for (int k = 0; k < n; ++k) {
    TVertex a{S[rng.below(S.size())], D[rng.below(D.size())]};
    TVertex b{S[rng.below(S.size())], D[rng.below(D.size())]};
    g.add_edge("e" + std::to_string(k), a, b, random_weight(rng));
  }
  return g;
}

std::vector<Cell> random_cells_on(SplitMix64& rng, Space s, const std::vector<int64_t>& bases, int max_cells) {
  std::vector<Cell> cells;
  int n = int(rng.range(1, max_cells));
  for (int k = 0; k < n; ++k) {
    Cell c = Cell::unit(bases[rng.below(bases.size())], s);
    int bits = int(rng.range(0, 4));
    for (int b = 0; b < bits; ++b) c.bits[uint64_t(rng.range(1, 8))] = rng.coin();
    cells.push_back(std::move(c));
  }
  return cells;
}

// A branch from unit a to unit b: a translation, a track permutation or a
// bit rewrite, restricted to a random sub-cell.
Branch random_branch(SplitMix64& rng, int64_t a, int64_t b) {
  Cell guard = Cell::unit(a);
  int bits = int(rng.range(0, 2));
  for (int k = 0; k < bits; ++k) guard.bits[uint64_t(rng.range(1, 4))] = rng.coin();
  Branch br;
  br.guard = guard;
  br.out_space = Space::Line;
  br.out_base = b;
  switch (rng.below(4)) {
    case 0: br.src = track_perm_src(TrackPerm::TauHat, Embedding::Interval); break;
    case 1: br.src = track_perm_src(TrackPerm::ThetaHat, Embedding::Interval); break;
    case 2: {
      uint64_t q = uint64_t(rng.range(1, 4));
      bool v = rng.coin();
      br.guard.bits[q] = v;
      br.canonicalize();
      br.writes[q] = !v;
      return br;
    }
    default: break;
  }
  br.canonicalize();
  return br;
}

Project balanced(const Graphing& g) {
  Project p;
  p.carrier = g.carrier;
  p.slices.emplace_back(Rational(1), g);
  return p;
}

// Random branch on `from` (tag `ft`) to `to` (tag `tt`), guard refined by an
// optional line digit so several branches of one edge can share a unit.
Branch tagged_branch(int64_t from, Tag ft, int64_t to, Tag tt, std::optional<std::pair<uint64_t, bool>> bit) {
  Cell c = Cell::unit(from).with_tag(std::move(ft));
  if (bit) c.bits[bit->first] = bit->second;
  Branch br = Branch::identity_on(c);
  br.out_base = to;
  br.out_tag = std::move(tt);
  return br;
}

Graphing random_balanced_graphing(SplitMix64& rng, const std::vector<int64_t>& bases, int max_edges,
                                  const std::vector<std::pair<int64_t, int64_t>>& moves) {
  Graphing g;
  g.carrier = CellSet::units(bases);
  uint32_t n = rng.coin() ? 2 : 1;
  if (n == 2) g.dialect = {2};
  auto tag = [&](uint32_t t) { return n == 2 ? Tag{t} : Tag{}; };
  int edges = int(rng.range(1, max_edges));
  for (int k = 0; k < edges; ++k) {
    auto [from, to] = moves[rng.below(moves.size())];
    auto& e = g.add_edge("e" + std::to_string(k));
    // Either one branch per dialect element, or a single branch on half of
    // one element's cell.
    if (rng.coin()) {
      std::vector<uint32_t> targets;
      for (uint32_t t = 0; t < n; ++t) targets.push_back(t);
      if (rng.coin()) std::reverse(targets.begin(), targets.end());
      for (uint32_t t = 0; t < n; ++t) e.branches.push_back(tagged_branch(from, tag(t), to, tag(targets[t]), {}));
    } else {
      uint32_t t = uint32_t(rng.below(n)), u = uint32_t(rng.below(n));
      e.branches.push_back(tagged_branch(from, tag(t), to, tag(u), std::make_pair(uint64_t(1), rng.coin())));
    }
  }
  return g;
}

}  // namespace

std::string BatteryResult::summary() const {
  std::ostringstream os;
  os << passed << "/" << total << " exact";
  if (redrawn) os << ", " << redrawn << (redrawn == 1 ? " infinite draw" : " infinite draws") << " redrawn";
  if (infinite) os << ", " << infinite << (infinite == 1 ? " case" : " cases") << " with an infinite measurement";
  return os.str();
}

const std::vector<std::string>& battery_names() {
  static const std::vector<std::string> names = {"trefoil",   "trefoil-thick", "trefoil-graphing", "measure-preserve",
                                                 "promotion", "contraction",   "assoc"};
  return names;
}

BatteryResult run_battery(const std::string& name, const BatteryOptions& opt) {
  if (name == "trefoil") return battery_trefoil(opt);
  if (name == "trefoil-thick") return battery_trefoil_thick(opt);
  if (name == "trefoil-graphing") return battery_trefoil_graphing(opt);
  if (name == "measure-preserve") return battery_measure_preserve(opt);
  if (name == "promotion") return battery_promotion(opt);
  if (name == "contraction") return battery_contraction(opt);
  if (name == "assoc") return battery_assoc(opt);
  throw std::invalid_argument("unknown battery '" + name + "'");
}

// ---------------------------------------------------------------- generators

Rational random_weight(SplitMix64& rng) {
  if (rng.below(8) == 0) return Rational(1);
  long q = long(rng.range(2, 6));
  long p = long(rng.range(1, q - 1));
  Rational w(p, q);
  w.canonicalize();
  return w;
}

std::array<Graph, 3> random_graph_triple(SplitMix64& rng) {
  std::array<std::vector<std::string>, 3> verts;
  int nv = int(rng.range(2, 6));
  for (int v = 0; v < nv; ++v) {
    uint32_t mask = random_mask(rng);
    for (int k = 0; k < 3; ++k)
      if (mask >> k & 1) verts[k].push_back(vname(v));
  }
  std::array<Graph, 3> out;
  for (int k = 0; k < 3; ++k) {
    for (const auto& v : verts[k]) out[k].add_vertex(v);
    if (verts[k].empty()) continue;
    int ne = int(rng.range(0, 8));
    for (int e = 0; e < ne; ++e) {
      const auto& a = verts[k][rng.below(verts[k].size())];
      const auto& b = verts[k][rng.below(verts[k].size())];
      out[k].add_edge(std::string(1, char('a' + k)) + std::to_string(e), a, b, random_weight(rng));
    }
  }
  return out;
}

std::array<ThickGraph, 3> random_thick_triple(SplitMix64& rng, bool disjoint_gh) {
  std::array<std::vector<std::string>, 3> S;
  int nv = int(rng.range(2, 5));
  for (int v = 0; v < nv; ++v) {
    uint32_t mask = random_mask(rng);
    if (disjoint_gh && (mask & 6) == 6) mask &= rng.coin() ? 3 : 5;
    for (int k = 0; k < 3; ++k)
      if (mask >> k & 1) S[k].push_back(vname(v));
  }
  std::array<ThickGraph, 3> out;
  for (int k = 0; k < 3; ++k) out[k] = random_thick_on(rng, S[k], uint32_t(rng.range(1, 3)), 5);
  return out;
}

std::array<Graphing, 3> random_graphing_triple(SplitMix64& rng) {
  std::array<std::vector<int64_t>, 3> bases;
  for (int64_t b = 0; b < 5; ++b) {
    uint32_t mask = random_mask(rng);
    for (int k = 0; k < 3; ++k)
      if (mask >> k & 1) bases[k].push_back(b);
  }
  std::array<Graphing, 3> out;
  for (int k = 0; k < 3; ++k) {
    out[k].carrier = CellSet::units(bases[k]);
    if (bases[k].empty()) continue;
    int ne = int(rng.range(1, 3));
    for (int e = 0; e < ne; ++e) {
      int64_t a = bases[k][rng.below(bases[k].size())], b = bases[k][rng.below(bases[k].size())];
      auto& edge = out[k].add_edge(std::string(1, char('a' + k)) + std::to_string(e), random_weight(rng));
      edge.branches.push_back(random_branch(rng, a, b));
    }
  }
  return out;
}

CellSet random_cellset(SplitMix64& rng, Space s) { return CellSet(random_cells_on(rng, s, {0, 1}, 3)); }

PromotionInstance random_promotion_instance(SplitMix64& rng) {
  PromotionInstance in;
  in.a = balanced(random_balanced_graphing(rng, {10}, 2, {{10, 10}}));
  // No f edge from unit 0 to itself: with a looping on the same unit the
  // alternating paths would never leave it.
  in.f = balanced(random_balanced_graphing(rng, {0, 1}, 4, {{0, 1}, {1, 0}, {1, 1}}));
  return in;
}

PromotionSides promotion_sides(const PromotionInstance& in, Fuel fuel) {
  const Graphing& A = in.a.slices.at(0).second;
  const Graphing& F = in.f.slices.at(0).second;
  Project prom = promotion_project({10}, {0}, {1}, {11});
  PromotionSides out;
  out.lhs = execute_project(prom, tensor_project(bang_project(in.a), bang_project(in.f)), Quantifier(), fuel);
  Graphing fa = execute_graphing(F, relocate(A, {{10, 0}}), fuel);
  DialectEncoding enc = DialectEncoding::interleaved(fa.dialect, F.dialect.size());
  out.rhs = relocate_project(bang_project(balanced(fa), &enc), {{1, 11}});
  return out;
}

// ---------------------------------------------------------------- single checks

bool graph_trefoil_holds(const Graph& F, const Graph& G, const Graph& H, const Quantifier& m) {
  ExtReal l = measure(F, execute(G, H), m) + measure(G, H, m);
  ExtReal r = measure(H, execute(F, G), m) + measure(F, G, m);
  return l == r;
}

bool thick_trefoil_holds(const ThickGraph& F, const ThickGraph& G, const ThickGraph& H, const Quantifier& m) {
  ExtReal l = measure_thick(F, execute_thick(G, H), m) + measure_thick(G, H, m);
  ExtReal r = measure_thick(H, execute_thick(F, G), m) + measure_thick(F, G, m);
  return l == r;
}

bool thick_trefoil_unnormalized_holds(const ThickGraph& F, const ThickGraph& G, const ThickGraph& H,
                                      const Quantifier& m) {
  auto U = Normalization::Unnormalized;
  ExtReal nF(long(F.dialect_size())), nH(long(H.dialect_size()));
  ExtReal l = measure_thick(F, execute_thick(G, H), m, U) + nF * measure_thick(G, H, m, U);
  ExtReal r = measure_thick(H, execute_thick(F, G), m, U) + nH * measure_thick(F, G, m, U);
  return l == r;
}

bool thick_adjunction_holds(const ThickGraph& F, const ThickGraph& G, const ThickGraph& H, const Quantifier& m) {
  return measure_thick(F, execute_thick(G, H), m) == measure_thick(H, execute_thick(F, G), m) + measure_thick(F, G, m);
}

bool graphing_trefoil_holds(const Graphing& F, const Graphing& G, const Graphing& H, const Quantifier& m, Fuel fuel) {
  ExtReal l = measure_graphing(F, execute_graphing(G, H, fuel), m, fuel) + measure_graphing(G, H, m, fuel);
  ExtReal r = measure_graphing(H, execute_graphing(F, G, fuel), m, fuel) + measure_graphing(F, G, m, fuel);
  return l == r;
}

ThickGraph rename_carrier(const ThickGraph& A, const std::vector<std::pair<std::string, std::string>>& map) {
  std::map<std::string, std::string> m(map.begin(), map.end());
  auto f = [&](const std::string& s) {
    auto it = m.find(s);
    return it == m.end() ? s : it->second;
  };
  std::vector<std::string> S;
  for (const auto& s : A.carrier) S.push_back(f(s));
  ThickGraph out(S, A.dialect);
  for (const auto& e : A.edges) out.add_edge(e.id, {f(e.src.s), e.src.d}, {f(e.dst.s), e.dst.d}, e.weight);
  return out;
}

ThickGraph thick_union(const ThickGraph& a, const ThickGraph& b) {
  if (a.dialect != b.dialect) throw std::invalid_argument("thick_union: dialects differ");
  std::vector<std::string> S = a.carrier;
  for (const auto& s : b.carrier) {
    if (std::find(S.begin(), S.end(), s) != S.end()) throw std::invalid_argument("thick_union: carriers overlap");
    S.push_back(s);
  }
  ThickGraph out(S, a.dialect);
  for (const auto& e : a.edges) out.add_edge("1." + e.id, e.src, e.dst, e.weight);
  for (const auto& e : b.edges) out.add_edge("2." + e.id, e.src, e.dst, e.weight);
  return out;
}

SlicedThickGraph contraction_target(const ThickGraph& A, const std::vector<std::pair<std::string, std::string>>& phi,
                                    const std::vector<std::pair<std::string, std::string>>& psi) {
  ThickGraph prod = execute_thick(rename_carrier(A, phi), rename_carrier(A, psi));
  SlicedThickGraph out;
  out.slices.emplace_back(Rational(1, 2), prod);
  out.slices.emplace_back(Rational(1, 2), ThickGraph(prod.carrier, {"0"}));
  return out;
}

// ---------------------------------------------------------------- batteries

BatteryResult battery_trefoil(const BatteryOptions& opt) {
  BatteryResult r;
  r.name = "trefoil";
  Timer t;
  SplitMix64 rng(opt.seed);
  for (uint64_t i = 0; i < opt.iters; ++i) {
    bool inf = false;
    auto [F, G, H] = draw(r, [&] {
      auto tr = random_graph_triple(rng);
      auto& [f, g, h] = tr;
      ExtReal l = measure(f, execute(g, h), opt.m), r2 = measure(h, execute(f, g), opt.m);
      ExtReal a = measure(g, h, opt.m), b = measure(f, g, opt.m);
      inf = any_infinite({l, r2, a, b});
      return tr;
    });
    if (inf) ++r.infinite;
    record(r, graph_trefoil_holds(F, G, H, opt.m),
           [&] { return "F=" + graph_str(F) + " G=" + graph_str(G) + " H=" + graph_str(H); });
  }
  r.seconds = t.seconds();
  return r;
}

BatteryResult battery_trefoil_thick(const BatteryOptions& opt) {
  BatteryResult r;
  r.name = "trefoil-thick";
  Timer t;
  SplitMix64 rng(opt.seed);
  for (uint64_t i = 0; i < opt.iters; ++i) {
    bool inf = false;
    auto tri = draw(r, [&] {
      auto tr = random_thick_triple(rng);
      auto& [f, g, h] = tr;
      ExtReal l = measure_thick(f, execute_thick(g, h), opt.m), r2 = measure_thick(h, execute_thick(f, g), opt.m);
      inf = any_infinite({l, r2, measure_thick(g, h, opt.m), measure_thick(f, g, opt.m)});
      return tr;
    });
    auto adj = draw(r, [&] {
      auto tr = random_thick_triple(rng, true);
      auto& [f, g, h] = tr;
      inf = any_infinite({measure_thick(f, execute_thick(g, h), opt.m), measure_thick(h, execute_thick(f, g), opt.m),
                          measure_thick(f, g, opt.m)}) ||
            inf;
      return tr;
    });
    if (inf) ++r.infinite;
    const auto& [F, G, H] = tri;
    const auto& [F2, G2, H2] = adj;
    bool ok = thick_trefoil_holds(F, G, H, opt.m) && thick_trefoil_unnormalized_holds(F, G, H, opt.m) &&
              thick_adjunction_holds(F2, G2, H2, opt.m);
    record(r, ok, [&] {
      return "trefoil F=" + thick_str(F) + " G=" + thick_str(G) + " H=" + thick_str(H) + "; adjunction F=" +
             thick_str(F2) + " G=" + thick_str(G2) + " H=" + thick_str(H2);
    });
  }
  r.seconds = t.seconds();
  return r;
}

BatteryResult battery_trefoil_graphing(const BatteryOptions& opt) {
  BatteryResult r;
  r.name = "trefoil-graphing";
  Timer t;
  SplitMix64 rng(opt.seed);
  for (uint64_t i = 0; i < opt.iters; ++i) {
    bool holds = false, inf = false;
    draw(r, [&] {
      auto [F, G, H] = random_graphing_triple(rng);
      ExtReal l1 = measure_graphing(F, execute_graphing(G, H, opt.fuel), opt.m, opt.fuel);
      ExtReal l2 = measure_graphing(G, H, opt.m, opt.fuel);
      ExtReal r1 = measure_graphing(H, execute_graphing(F, G, opt.fuel), opt.m, opt.fuel);
      ExtReal r2 = measure_graphing(F, G, opt.m, opt.fuel);
      holds = l1 + l2 == r1 + r2;
      inf = any_infinite({l1, l2, r1, r2});
      return 0;
    });
    if (inf) ++r.infinite;
    record(r, holds, [&] { return std::string("graphing trefoil differs"); });
  }
  r.seconds = t.seconds();
  return r;
}

BatteryResult battery_measure_preserve(const BatteryOptions& opt) {
  BatteryResult r;
  r.name = "measure-preserve";
  Timer t;
  SplitMix64 rng(opt.seed);
  const std::vector<int64_t> B = {0, 1};
  for (uint64_t i = 0; i < opt.iters; ++i) {
    // Random composition of non-inflating generators, tracking the space.
    Space s = Space::Line;
    CellSet X = random_cellset(rng, s);
    CellSet Y = X;
    std::optional<BitMap> comp;
    std::vector<std::string> names;
    bool ok = true;
    int len = int(rng.range(1, 6));
    for (int k = 0; k < len; ++k) {
      BitMap g;
      uint64_t pick = rng.below(5);
      if (pick < 3) {
        TrackPerm kind = pick == 0 ? TrackPerm::TauHat : pick == 1 ? TrackPerm::ThetaHat : TrackPerm::ThetaHatInv;
        Embedding emb = s == Space::Line ? Embedding::Interval : Embedding::Product;
        g = track_permute(kind, B, emb, s);
        names.push_back(pick == 0 ? "tau" : pick == 1 ? "theta" : "theta^-1");
      } else if (pick == 3) {
        g = s == Space::Line ? deinterleave(B) : interleave(B);
        names.push_back(s == Space::Line ? "deinterleave" : "interleave");
        s = s == Space::Line ? Space::LineTimesInterval : Space::Line;
      } else if (s == Space::Line) {
        uint32_t n = rng.coin() ? 2 : 4;
        uint32_t from = uint32_t(rng.below(n)), to = uint32_t(rng.below(n));
        Embedding emb = rng.coin() ? Embedding::Interval : Embedding::Product;
        g = slice_translate(TrackLayout::track0(n), from, to, emb, B);
        names.push_back("slice" + std::to_string(from) + "->" + std::to_string(to));
      } else {
        g = interleave(B);
        names.push_back("interleave");
        s = Space::Line;
      }
      CellSet before = Y & g.domain();
      Y = g.apply(Y);
      ok = ok && Y.measure() == before.measure();
      comp = comp ? compose_maps(g, *comp) : g;
    }
    // The composite agrees with the step-by-step transport and is invertible
    // on its domain.
    CellSet D = X & comp->domain();
    ok = ok && comp->apply(X) == Y && Y.measure() == D.measure() && comp->preimage(Y) == D;

    // Inflating fax: k sources into one target scales measure by 2^-delta.
    int k = int(rng.range(1, 4));
    std::vector<int64_t> sources;
    for (int j = 0; j < k; ++j) sources.push_back(j);
    BitMap fax = inflating_fax_map(sources, 9);
    unsigned delta = log2_exact(pad_pow2(uint32_t(k)));
    CellSet Z(random_cells_on(rng, Space::Line, sources, 3));
    ok = ok && fax.apply(Z).measure() * pow2(long(delta)) == (Z & fax.domain()).measure();
    if ((1 << delta) == k) ok = ok && fax.preimage(CellSet::units({9})).measure() == Rational(k);
    record(r, ok, [&] {
      std::string s2 = "X=" + X.str() + " via";
      for (const auto& n : names) s2 += " " + n;
      return s2 + "; fax k=" + std::to_string(k) + " Z=" + Z.str();
    });
  }
  r.seconds = t.seconds();
  return r;
}

BatteryResult battery_promotion(const BatteryOptions& opt) {
  BatteryResult r;
  r.name = "promotion";
  Timer t;
  SplitMix64 rng(opt.seed);
  for (uint64_t i = 0; i < opt.iters; ++i) {
    PromotionInstance in;
    PromotionSides sides = draw(r, [&] {
      in = random_promotion_instance(rng);
      return promotion_sides(in, opt.fuel);
    });
    record(r, project_ae_equal(sides.lhs, sides.rhs), [&] {
      return "a has " + std::to_string(in.a.slices[0].second.edges.size()) + " edges, f has " +
             std::to_string(in.f.slices[0].second.edges.size());
    });
  }
  r.seconds = t.seconds();
  return r;
}

BatteryResult battery_contraction(const BatteryOptions& opt) {
  BatteryResult r;
  r.name = "contraction";
  Timer t;
  SplitMix64 rng(opt.seed);
  for (uint64_t i = 0; i < opt.iters; ++i) {
    int k = int(rng.range(1, 3));
    std::vector<std::string> V;
    std::vector<std::pair<std::string, std::string>> phi, psi;
    std::vector<std::string> W;
    for (int v = 1; v <= k; ++v) {
      V.push_back(vname(v));
      phi.emplace_back(vname(v), vname(v + 10));
      psi.emplace_back(vname(v), vname(v + 20));
      W.push_back(vname(v + 10));
      W.push_back(vname(v + 20));
    }
    ThickGraph A;
    ThickGraph Ctr = contraction_graph(phi, psi);
    SlicedThickGraph lhs, rhs;
    draw(r, [&] {
      A = random_thick_on(rng, V, 1, 4);
      lhs = SlicedThickGraph(execute_thick(Ctr, A));
      rhs = contraction_target(A, phi, psi);
      return 0;
    });
    bool ok = true;
    int tests = 0;
    for (int j = 0; j < 20 && ok;) {
      ThickGraph H = random_thick_on(rng, W, uint32_t(rng.range(1, 2)), 5);
      try {
        ExtReal x = measure_thick(lhs, SlicedThickGraph(H), opt.m), y = measure_thick(rhs, SlicedThickGraph(H), opt.m);
        if (!x.finite()) ++r.infinite;
        ok = x == y;
        ++j;
        ++tests;
      } catch (const ResourceError&) {
        ++r.redrawn;
      }
    }
    record(r, ok, [&] { return "A=" + thick_str(A) + " after " + std::to_string(tests) + " tests"; });
  }
  r.seconds = t.seconds();
  return r;
}

BatteryResult battery_assoc(const BatteryOptions& opt) {
  BatteryResult r;
  r.name = "assoc";
  Timer t;
  SplitMix64 rng(opt.seed);
  for (uint64_t i = 0; i < opt.iters; ++i) {
    bool ok = false;
    draw(r, [&] {
      auto [F, G, H] = random_graph_triple(rng);
      ok = equal_up_to_renaming(execute(F, execute(G, H)), execute(execute(F, G), H));
      return 0;
    });
    draw(r, [&] {
      auto [F, G, H] = random_thick_triple(rng);
      ThickGraph left = map_dialect(execute_thick(execute_thick(F, G), H), reassociate);
      ok = thick_equal(left, execute_thick(F, execute_thick(G, H))) && ok;
      return 0;
    });
    record(r, ok, [&] { return std::string("execution is not associative on this draw"); });
  }
  r.seconds = t.seconds();
  return r;
}

}  // namespace goi
