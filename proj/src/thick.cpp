#include "goi/thick.hpp"

#include <algorithm>
#include <set>

namespace goi {

DElem dialect_pair(const DElem& a, const DElem& b) { return "(" + a + "," + b + ")"; }

std::pair<DElem, DElem> dialect_split(const DElem& d) {
  if (d.size() < 5 || d.front() != '(' || d.back() != ')') throw std::invalid_argument("not a pair: " + d);
  int depth = 0;
  for (size_t i = 1; i + 1 < d.size(); ++i) {
    char c = d[i];
    if (c == '(') ++depth;
    else if (c == ')') --depth;
    else if (c == ',' && depth == 0) return {d.substr(1, i - 1), d.substr(i + 1, d.size() - i - 2)};
  }
  throw std::invalid_argument("not a pair: " + d);
}

DElem reassociate(const DElem& d) {
  auto [ab, c] = dialect_split(d);
  auto [a, b] = dialect_split(ab);
  return dialect_pair(a, dialect_pair(b, c));
}

std::string encode_vertex(const TVertex& v) { return v.s + "@" + v.d; }

TVertex decode_vertex(const std::string& s) {
  auto at = s.find('@');
  if (at == std::string::npos) throw std::invalid_argument("not a thick vertex: " + s);
  return {s.substr(0, at), s.substr(at + 1)};
}

ThickGraph::ThickGraph(std::vector<std::string> S, std::vector<DElem> D)
    : carrier(std::move(S)), dialect(std::move(D)) {
  std::sort(carrier.begin(), carrier.end());
  carrier.erase(std::unique(carrier.begin(), carrier.end()), carrier.end());
}

void ThickGraph::validate() const {
  if (dialect.empty()) throw std::invalid_argument("thick graph with empty dialect");
  std::set<std::string> S(carrier.begin(), carrier.end());
  std::set<DElem> D(dialect.begin(), dialect.end());
  if (D.size() != dialect.size()) throw std::invalid_argument("repeated dialect element");
  for (const auto& s : carrier)
    if (s.find('@') != std::string::npos) throw std::invalid_argument("carrier vertex may not contain '@': " + s);
  std::set<std::string> ids;
  for (const auto& e : edges) {
    for (const auto* v : {&e.src, &e.dst})
      if (!S.count(v->s) || !D.count(v->d))
        throw std::invalid_argument("edge " + e.id + " leaves S x D");
    if (!ids.insert(e.id).second) throw std::invalid_argument("duplicate edge id " + e.id);
    if (e.weight <= 0) throw std::invalid_argument("edge " + e.id + " has a non-positive weight");
  }
}

void ThickGraph::add_edge(std::string id, TVertex src, TVertex dst, Rational w) {
  edges.push_back({std::move(id), std::move(src), std::move(dst), std::move(w)});
}

Graph ThickGraph::underlying() const {
  Graph g;
  for (const auto& s : carrier)
    for (const auto& d : dialect) g.vertices.insert(encode_vertex({s, d}));
  for (const auto& e : edges) g.edges.push_back({e.id, encode_vertex(e.src), encode_vertex(e.dst), e.weight});
  return g;
}

Rational SlicedThickGraph::unit() const {
  Rational u = 0;
  for (const auto& [a, g] : slices) u += a;
  return u;
}

ThickGraph variant_of(const ThickGraph& G, const std::map<DElem, DElem>& phi) {
  std::set<DElem> image;
  for (const auto& d : G.dialect) {
    auto it = phi.find(d);
    if (it == phi.end()) throw std::invalid_argument("dialect map is not total on " + d);
    if (!image.insert(it->second).second) throw std::invalid_argument("dialect map is not injective");
  }
  return map_dialect(G, [&](const DElem& d) { return phi.at(d); });
}

ThickGraph map_dialect(const ThickGraph& G, const std::function<DElem(const DElem&)>& fn) {
  ThickGraph out;
  out.carrier = G.carrier;
  for (const auto& d : G.dialect) out.dialect.push_back(fn(d));
  for (const auto& e : G.edges) out.add_edge(e.id, {e.src.s, fn(e.src.d)}, {e.dst.s, fn(e.dst.d)}, e.weight);
  return out;
}

ThickGraph lift(const ThickGraph& G, const std::vector<DElem>& E, LiftSide side) {
  auto pair = [&](const DElem& d, const DElem& e) {
    return side == LiftSide::Dagger ? dialect_pair(d, e) : dialect_pair(e, d);
  };
  ThickGraph out;
  out.carrier = G.carrier;
  if (side == LiftSide::Dagger) {
    for (const auto& d : G.dialect)
      for (const auto& e : E) out.dialect.push_back(pair(d, e));
  } else {
    for (const auto& e : E)
      for (const auto& d : G.dialect) out.dialect.push_back(pair(d, e));
  }
  for (const auto& e : E)
    for (const auto& x : G.edges)
      out.add_edge(x.id + "#" + e, {x.src.s, pair(x.src.d, e)}, {x.dst.s, pair(x.dst.d, e)}, x.weight);
  return out;
}

ThickGraph execute_thick(const ThickGraph& F, const ThickGraph& G, EnumLimits lim) {
  Graph f = lift(F, G.dialect, LiftSide::Dagger).underlying();
  Graph g = lift(G, F.dialect, LiftSide::Ddagger).underlying();
  Graph h = execute(f, g, lim);
  std::vector<std::string> S;
  std::set_symmetric_difference(F.carrier.begin(), F.carrier.end(), G.carrier.begin(), G.carrier.end(),
                                std::back_inserter(S));
  std::vector<DElem> D;
  for (const auto& a : F.dialect)
    for (const auto& b : G.dialect) D.push_back(dialect_pair(a, b));
  ThickGraph out(S, D);
  for (const auto& e : h.edges) out.add_edge(e.id, decode_vertex(e.src), decode_vertex(e.dst), e.weight);
  return out;
}

SlicedThickGraph execute_sliced(const SlicedThickGraph& F, const SlicedThickGraph& G, EnumLimits lim) {
  SlicedThickGraph out;
  for (const auto& [a, f] : F.slices)
    for (const auto& [b, g] : G.slices) out.slices.emplace_back(a * b, execute_thick(f, g, lim));
  return out;
}

ExtReal measure_thick(const ThickGraph& F, const ThickGraph& G, const Quantifier& m, Normalization norm,
                      EnumLimits lim) {
  Graph f = lift(F, G.dialect, LiftSide::Dagger).underlying();
  Graph g = lift(G, F.dialect, LiftSide::Ddagger).underlying();
  ExtReal sum = measure(f, g, m, lim);
  if (norm == Normalization::Unnormalized) return sum;
  return sum * ExtReal(Rational(1, F.dialect_size() * G.dialect_size()));
}

ExtReal measure_thick(const SlicedThickGraph& F, const SlicedThickGraph& G, const Quantifier& m, Normalization norm,
                      EnumLimits lim) {
  ExtReal total(0);
  for (const auto& [a, f] : F.slices)
    for (const auto& [b, g] : G.slices) total += ExtReal(Rational(a * b)) * measure_thick(f, g, m, norm, lim);
  return total;
}

std::pair<Rational, ThickGraph> flatten_sliced(const SlicedThickGraph& F) {
  if (F.slices.empty()) throw std::invalid_argument("flatten_sliced: no slices");
  const auto& S = F.slices.front().second.carrier;
  Rational n = 0;
  for (const auto& [a, g] : F.slices) {
    if (g.carrier != S) throw std::invalid_argument("flatten_sliced: slice carriers differ");
    n += static_cast<long>(g.dialect_size());
  }
  const auto& [a0, g0] = F.slices.front();
  Rational alpha = a0 * n / static_cast<long>(g0.dialect_size());
  for (const auto& [a, g] : F.slices)
    if (a != alpha * static_cast<long>(g.dialect_size()) / n)
      throw std::invalid_argument("flatten_sliced: coefficients are not proportional to dialect sizes");
  ThickGraph out;
  out.carrier = S;
  for (size_t i = 0; i < F.slices.size(); ++i) {
    const auto& g = F.slices[i].second;
    auto tag = [&](const DElem& d) { return dialect_pair(std::to_string(i), d); };
    for (const auto& d : g.dialect) out.dialect.push_back(tag(d));
    for (const auto& e : g.edges)
      out.add_edge(std::to_string(i) + ":" + e.id, {e.src.s, tag(e.src.d)}, {e.dst.s, tag(e.dst.d)}, e.weight);
  }
  return {alpha, out};
}

bool universal_equiv(const SlicedThickGraph& F, const SlicedThickGraph& G, const std::vector<SlicedThickGraph>& tests,
                     const Quantifier& m, EnumLimits lim) {
  auto carrier = [](const SlicedThickGraph& x) {
    return x.slices.empty() ? std::vector<std::string>{} : x.slices.front().second.carrier;
  };
  if (carrier(F) != carrier(G)) throw std::invalid_argument("universal_equiv: carriers differ");
  for (const auto& H : tests)
    if (measure_thick(F, H, m, Normalization::Normalized, lim) != measure_thick(G, H, m, Normalization::Normalized, lim))
      return false;
  return true;
}

ThickGraph contraction_graph(const std::vector<std::pair<std::string, std::string>>& phi,
                             const std::vector<std::pair<std::string, std::string>>& psi) {
  std::set<std::string> A, W1, W2;
  for (const auto& [v, w] : phi) { A.insert(v); W1.insert(w); }
  std::set<std::string> A2;
  for (const auto& [v, w] : psi) { A2.insert(v); W2.insert(w); }
  if (A != A2 || W1.size() != phi.size() || W2.size() != psi.size() || A.size() != phi.size())
    throw std::invalid_argument("contraction_graph: phi and psi must be bijections from the same domain");
  for (const auto& w : W1)
    if (A.count(w) || W2.count(w)) throw std::invalid_argument("contraction_graph: codomains overlap");
  for (const auto& w : W2)
    if (A.count(w)) throw std::invalid_argument("contraction_graph: codomains overlap");
  std::vector<std::string> S(A.begin(), A.end());
  S.insert(S.end(), W1.begin(), W1.end());
  S.insert(S.end(), W2.begin(), W2.end());
  ThickGraph out(S, {"1", "2"});
  for (const auto& [v, w] : phi) {
    out.add_edge("(" + v + ",1,o)", {w, "1"}, {v, "1"});
    out.add_edge("(" + v + ",1,i)", {v, "1"}, {w, "1"});
  }
  for (const auto& [v, w] : psi) {
    out.add_edge("(" + v + ",2,o)", {w, "1"}, {v, "2"});
    out.add_edge("(" + v + ",2,i)", {v, "2"}, {w, "1"});
  }
  return out;
}

bool thick_equal(const ThickGraph& a, const ThickGraph& b) {
  auto sorted = [](std::vector<std::string> v) { std::sort(v.begin(), v.end()); return v; };
  if (sorted(a.carrier) != sorted(b.carrier) || sorted(a.dialect) != sorted(b.dialect)) return false;
  return equal_up_to_renaming(a.underlying(), b.underlying());
}

}  // namespace goi
