#include "goi/graph.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <sstream>
#include <unordered_map>

namespace goi {

void Graph::validate() const {
  std::set<std::string> ids;
  for (const auto& e : edges) {
    if (!vertices.count(e.src) || !vertices.count(e.dst))
      throw std::invalid_argument("edge " + e.id + " has an endpoint outside the vertex set");
    if (!ids.insert(e.id).second) throw std::invalid_argument("duplicate edge id " + e.id);
    if (e.weight <= 0) throw std::invalid_argument("edge " + e.id + " has a non-positive weight");
  }
}

void Graph::add_edge(std::string id, std::string src, std::string dst, Rational w) {
  vertices.insert(src);
  vertices.insert(dst);
  edges.push_back({std::move(id), std::move(src), std::move(dst), std::move(w)});
}

namespace {

// Nodes of the transition graph are edges of F followed by edges of G. There
// is a transition u -> v when u and v come from different graphs and the
// target of u is the source of v.
struct StateGraph {
  const Graph& F;
  const Graph& G;
  size_t nf;
  std::vector<std::vector<size_t>> succ;

  StateGraph(const Graph& f, const Graph& g) : F(f), G(g), nf(f.edges.size()) {
    size_t n = nf + g.edges.size();
    succ.resize(n);
    std::unordered_map<std::string, std::vector<size_t>> fsrc, gsrc;
    for (size_t i = 0; i < nf; ++i) fsrc[F.edges[i].src].push_back(i);
    for (size_t i = 0; i < G.edges.size(); ++i) gsrc[G.edges[i].src].push_back(nf + i);
    for (size_t u = 0; u < n; ++u) {
      const auto& table = u < nf ? gsrc : fsrc;
      auto it = table.find(edge(u).dst);
      if (it != table.end()) succ[u] = it->second;
    }
  }
  size_t size() const { return succ.size(); }
  const Edge& edge(size_t u) const { return u < nf ? F.edges[u] : G.edges[u - nf]; }
  Step step(size_t u) const { return u < nf ? Step{Side::F, u} : Step{Side::G, u - nf}; }
};

using Key = std::vector<std::pair<std::string, int>>;

Key key_of(const StateGraph& sg, const std::vector<size_t>& nodes) {
  Key k;
  k.reserve(nodes.size());
  for (size_t u : nodes) k.emplace_back(sg.edge(u).id, u < sg.nf ? 0 : 1);
  return k;
}

}  // namespace

std::vector<Path> alternating_paths(const Graph& F, const Graph& G, const std::set<std::string>& V,
                                    EnumLimits lim) {
  StateGraph sg(F, G);
  size_t n = sg.size();
  std::vector<std::vector<size_t>> pred(n);
  for (size_t u = 0; u < n; ++u)
    for (size_t v : sg.succ[u]) pred[v].push_back(u);

  auto sweep = [&](const std::vector<std::vector<size_t>>& adj, auto is_seed) {
    std::vector<char> seen(n, 0);
    std::vector<size_t> stack;
    for (size_t u = 0; u < n; ++u)
      if (is_seed(u)) { seen[u] = 1; stack.push_back(u); }
    while (!stack.empty()) {
      size_t u = stack.back();
      stack.pop_back();
      for (size_t v : adj[u])
        if (!seen[v]) { seen[v] = 1; stack.push_back(v); }
    }
    return seen;
  };
  auto fwd = sweep(sg.succ, [&](size_t u) { return V.count(sg.edge(u).src) > 0; });
  auto bwd = sweep(pred, [&](size_t u) { return V.count(sg.edge(u).dst) > 0; });
  std::vector<char> useful(n);
  for (size_t u = 0; u < n; ++u) useful[u] = fwd[u] && bwd[u];

  // A cycle among useful nodes means infinitely many paths.
  std::vector<int> colour(n, 0);
  std::function<bool(size_t)> has_cycle = [&](size_t u) {
    colour[u] = 1;
    for (size_t v : sg.succ[u]) {
      if (!useful[v]) continue;
      if (colour[v] == 1) return true;
      if (colour[v] == 0 && has_cycle(v)) return true;
    }
    colour[u] = 2;
    return false;
  };
  for (size_t u = 0; u < n; ++u)
    if (useful[u] && colour[u] == 0 && has_cycle(u))
      throw ResourceError("infinitely many alternating paths (a cycle connects the endpoint set)");

  std::vector<std::pair<Key, Path>> found;
  std::vector<size_t> cur;
  std::function<void(size_t)> dfs = [&](size_t u) {
    cur.push_back(u);
    if (V.count(sg.edge(u).dst)) {
      if (found.size() >= lim.max_paths)
        throw ResourceError("path enumeration exceeded max_paths=" + std::to_string(lim.max_paths));
      Path p;
      Rational w = 1;
      for (size_t x : cur) {
        p.steps.push_back(sg.step(x));
        w *= sg.edge(x).weight;
      }
      p.src = sg.edge(cur.front()).src;
      p.dst = sg.edge(u).dst;
      p.weight = w;
      found.emplace_back(key_of(sg, cur), std::move(p));
    }
    for (size_t v : sg.succ[u])
      if (useful[v]) dfs(v);
    cur.pop_back();
  };
  for (size_t u = 0; u < n; ++u)
    if (useful[u] && V.count(sg.edge(u).src)) dfs(u);

  std::stable_sort(found.begin(), found.end(),
                   [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<Path> out;
  out.reserve(found.size());
  for (auto& f : found) out.push_back(std::move(f.second));
  return out;
}

std::string path_label(const Graph& F, const Graph& G, const std::vector<Step>& steps) {
  std::string s;
  for (size_t i = 0; i < steps.size(); ++i) {
    if (i) s += '.';
    const auto& st = steps[i];
    s += st.side == Side::F ? "F:" : "G:";
    s += (st.side == Side::F ? F.edges[st.edge] : G.edges[st.edge]).id;
  }
  return s;
}

Graph execute(const Graph& F, const Graph& G, EnumLimits lim) {
  Graph out;
  for (const auto& v : F.vertices)
    if (!G.vertices.count(v)) out.vertices.insert(v);
  for (const auto& v : G.vertices)
    if (!F.vertices.count(v)) out.vertices.insert(v);
  for (const auto& p : alternating_paths(F, G, out.vertices, lim))
    out.edges.push_back({path_label(F, G, p.steps), p.src, p.dst, p.weight});
  return out;
}

std::vector<Circuit> one_circuits(const Graph& F, const Graph& G, EnumLimits lim) {
  StateGraph sg(F, G);
  size_t n = sg.size();
  // Tarjan's strongly connected components.
  std::vector<long> index(n, -1), low(n, 0), comp(n, -1);
  std::vector<char> on_stack(n, 0);
  std::vector<size_t> stack;
  long counter = 0, ncomp = 0;
  std::function<void(size_t)> strong = [&](size_t u) {
    index[u] = low[u] = counter++;
    stack.push_back(u);
    on_stack[u] = 1;
    for (size_t v : sg.succ[u]) {
      if (index[v] < 0) {
        strong(v);
        low[u] = std::min(low[u], low[v]);
      } else if (on_stack[v]) {
        low[u] = std::min(low[u], index[v]);
      }
    }
    if (low[u] == index[u]) {
      size_t v;
      do {
        v = stack.back();
        stack.pop_back();
        on_stack[v] = 0;
        comp[v] = ncomp;
      } while (v != u);
      ++ncomp;
    }
  };
  for (size_t u = 0; u < n; ++u)
    if (index[u] < 0) strong(u);

  std::vector<std::vector<size_t>> members(ncomp);
  for (size_t u = 0; u < n; ++u) members[comp[u]].push_back(u);

  std::vector<std::pair<Key, Circuit>> found;
  for (const auto& mem : members) {
    size_t internal = 0;
    for (size_t u : mem)
      for (size_t v : sg.succ[u])
        if (comp[v] == comp[u]) ++internal;
    if (internal == 0) continue;
    // A strongly connected component carries finitely many primitive cycles
    // only when it is a single simple cycle.
    if (internal != mem.size())
      throw ResourceError("infinitely many 1-circuits (a strongly connected component is not a simple cycle)");
    if (found.size() >= lim.max_paths)
      throw ResourceError("circuit enumeration exceeded max_paths=" + std::to_string(lim.max_paths));
    std::vector<size_t> cyc{mem.front()};
    while (true) {
      size_t u = cyc.back(), next = 0;
      for (size_t v : sg.succ[u])
        if (comp[v] == comp[u]) next = v;
      if (next == cyc.front()) break;
      cyc.push_back(next);
    }
    // Least rotation.
    Key best;
    size_t best_r = 0;
    for (size_t r = 0; r < cyc.size(); ++r) {
      std::vector<size_t> rot(cyc.begin() + r, cyc.end());
      rot.insert(rot.end(), cyc.begin(), cyc.begin() + r);
      Key k = key_of(sg, rot);
      if (r == 0 || k < best) { best = k; best_r = r; }
    }
    std::rotate(cyc.begin(), cyc.begin() + best_r, cyc.end());
    Circuit c;
    for (size_t u : cyc) {
      c.steps.push_back(sg.step(u));
      c.weight *= sg.edge(u).weight;
    }
    found.emplace_back(best, std::move(c));
  }
  std::sort(found.begin(), found.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<Circuit> out;
  for (auto& f : found) out.push_back(std::move(f.second));
  return out;
}

ExtReal measure(const Graph& F, const Graph& G, const Quantifier& m, EnumLimits lim) {
  ExtReal total(0);
  for (const auto& c : one_circuits(F, G, lim)) total += m(c.weight);
  return total;
}

std::multiset<Rational> circuit_weights(const Graph& F, const Graph& G, EnumLimits lim) {
  std::multiset<Rational> out;
  for (const auto& c : one_circuits(F, G, lim)) out.insert(c.weight);
  return out;
}

Graph graph_union(const Graph& F, const Graph& G) {
  Graph out = F;
  out.vertices.insert(G.vertices.begin(), G.vertices.end());
  out.edges.insert(out.edges.end(), G.edges.begin(), G.edges.end());
  return out;
}

Graph canonical(const Graph& g) {
  Graph out;
  out.vertices = g.vertices;
  std::vector<std::tuple<std::string, std::string, Rational>> es;
  for (const auto& e : g.edges) es.emplace_back(e.src, e.dst, e.weight);
  std::sort(es.begin(), es.end());
  for (size_t i = 0; i < es.size(); ++i)
    out.edges.push_back({"e" + std::to_string(i), std::get<0>(es[i]), std::get<1>(es[i]), std::get<2>(es[i])});
  return out;
}

bool equal_up_to_renaming(const Graph& a, const Graph& b) {
  Graph ca = canonical(a), cb = canonical(b);
  if (ca.vertices != cb.vertices || ca.edges.size() != cb.edges.size()) return false;
  for (size_t i = 0; i < ca.edges.size(); ++i) {
    const auto &x = ca.edges[i], &y = cb.edges[i];
    if (x.src != y.src || x.dst != y.dst || x.weight != y.weight) return false;
  }
  return true;
}

std::string to_dot(const Graph& g, const std::string& name) {
  std::ostringstream os;
  os << "digraph \"" << name << "\" {\n";
  for (const auto& v : g.vertices) os << "  \"" << v << "\";\n";
  for (const auto& e : g.edges)
    os << "  \"" << e.src << "\" -> \"" << e.dst << "\" [label=\"" << e.id << " (" << format_rational(e.weight)
       << ")\"];\n";
  os << "}\n";
  return os.str();
}

}  // namespace goi
