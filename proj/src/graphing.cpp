#include "goi/graphing.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace goi {

uint64_t dialect_size(const Dims& d) {
  uint64_t n = 1;
  for (auto k : d) {
    if (k == 0) throw std::invalid_argument("dialect coordinate of size 0");
    n *= k;
  }
  return n;
}

std::vector<Tag> dialect_elements(const Dims& d) {
  std::vector<Tag> out{Tag{}};
  for (auto k : d) {
    std::vector<Tag> next;
    for (const auto& t : out)
      for (uint32_t i = 0; i < k; ++i) {
        Tag u = t;
        u.push_back(i);
        next.push_back(std::move(u));
      }
    out = std::move(next);
  }
  return out;
}

namespace {

bool tag_in(const Tag& t, const Dims& d) {
  if (t.size() != d.size()) return false;
  for (size_t i = 0; i < t.size(); ++i)
    if (t[i] >= d[i]) return false;
  return true;
}

bool inside(const CellSet& region, const Cell& c) {
  Rational m = 0;
  for (const auto& x : region.restrict_wild(c)) m += x.measure();
  return m == c.measure();
}

}  // namespace

void Graphing::validate() const {
  for (const auto& c : carrier.cells())
    if (!c.tag.empty()) throw std::invalid_argument("carrier cells are untagged");
  std::set<std::string> ids;
  for (const auto& e : edges) {
    if (!ids.insert(e.id).second) throw std::invalid_argument("duplicate edge id " + e.id);
    if (e.weight <= 0 || e.weight > 1) throw std::invalid_argument("edge " + e.id + ": weight outside ]0,1]");
    for (size_t i = 0; i < e.branches.size(); ++i) {
      const auto& b = e.branches[i];
      if (!tag_in(b.guard.tag, dialect) || !tag_in(b.out_tag, dialect))
        throw std::invalid_argument("edge " + e.id + ": tag outside the dialect");
      if (!inside(carrier, b.guard)) throw std::invalid_argument("edge " + e.id + ": source leaves the carrier");
      if (!inside(carrier, b.target())) throw std::invalid_argument("edge " + e.id + ": target leaves the carrier");
      for (size_t j = 0; j < i; ++j)
        if (intersect(b.guard, e.branches[j].guard))
          throw std::invalid_argument("edge " + e.id + ": overlapping branch guards");
    }
  }
}

CellSet Graphing::source(size_t e) const {
  std::vector<Cell> cs;
  for (const auto& b : edges.at(e).branches) cs.push_back(b.guard);
  return CellSet(std::move(cs));
}

CellSet Graphing::target(size_t e) const {
  std::vector<Cell> cs;
  for (const auto& b : edges.at(e).branches) cs.push_back(b.target());
  return CellSet(std::move(cs));
}

GEdge& Graphing::add_edge(std::string id, Rational w) {
  edges.push_back({std::move(id), std::move(w), {}});
  return edges.back();
}

Graphing lift_graphing(const Graphing& F, const Dims& E, Lift side) {
  Graphing out;
  out.carrier = F.carrier;
  auto join = [&](const Tag& d, const Tag& e) {
    Tag t = side == Lift::Dagger ? d : e;
    const Tag& rest = side == Lift::Dagger ? e : d;
    t.insert(t.end(), rest.begin(), rest.end());
    return t;
  };
  out.dialect = join(F.dialect, E);
  auto elems = dialect_elements(E);
  for (const auto& e : F.edges) {
    GEdge ne{e.id, e.weight, {}};
    for (const auto& el : elems)
      for (const auto& b : e.branches) {
        Branch nb = b;
        nb.guard.tag = join(b.guard.tag, el);
        nb.out_tag = join(b.out_tag, el);
        ne.branches.push_back(std::move(nb));
      }
    out.edges.push_back(std::move(ne));
  }
  return out;
}

namespace {

struct Item {
  std::vector<Step> steps;
  Branch comp;
  Rational weight;
};

std::string label(const Graphing& F, const Graphing& G, const std::vector<Step>& steps) {
  std::string s;
  for (size_t i = 0; i < steps.size(); ++i) {
    if (i) s += '.';
    s += steps[i].side == Side::F ? "F:" : "G:";
    s += (steps[i].side == Side::F ? F : G).edges[steps[i].edge].id;
  }
  return s;
}

Rational frontier_measure(const std::vector<Item>& items) {
  Rational m = 0;
  for (const auto& it : items) m += it.comp.guard.measure();
  return m;
}

// Continue every item across the intersection I with the edges of the other side.
void extend(const Item& it, const CellSet& I, const Graphing& other, Side other_side, std::vector<Item>& next) {
  Cell Y = it.comp.target();
  for (const auto& c : I.restrict_wild(Y)) {
    for (size_t idx = 0; idx < other.edges.size(); ++idx) {
      const auto& e = other.edges[idx];
      for (const auto& b : e.branches) {
        auto z = intersect(c, b.guard);
        if (!z) continue;
        auto dom = it.comp.preimage(*z);
        if (!dom) continue;
        auto r = it.comp.restrict(*dom);
        if (!r) continue;
        auto nb = compose(b, *r);
        if (!nb) continue;
        Item n{it.steps, std::move(*nb), it.weight * e.weight};
        n.steps.push_back({other_side, idx});
        next.push_back(std::move(n));
      }
    }
  }
}

struct Piece {
  Rational weight;
  Branch b;
  bool operator<(const Piece& o) const {
    if (weight != o.weight) return weight < o.weight;
    return b < o.b;
  }
  bool operator==(const Piece& o) const { return weight == o.weight && b == o.b; }
};

std::vector<Piece> normalize_group(std::vector<Piece> S, uint64_t after);

// Try to glue the two halves of a split at position p.
std::optional<std::vector<Piece>> glue(const std::vector<Piece>& R0, const std::vector<Piece>& R1, uint64_t p) {
  if (R0.size() != R1.size()) return std::nullopt;
  std::vector<char> used(R1.size(), 0);
  std::vector<Piece> merged;
  for (const auto& a : R0) {
    std::vector<Branch> cands;
    {
      Branch m = a.b;
      m.guard.bits.erase(p);
      cands.push_back(m);
    }
    for (const auto& [q, v] : a.b.writes) {
      if (v) continue;
      Branch m = a.b;
      m.guard.bits.erase(p);
      m.writes.erase(q);
      m.src = m.src.with_values({{q, p}});
      cands.push_back(m);
    }
    bool done = false;
    for (auto& m : cands) {
      auto m0 = m.restrict(m.guard.with_bit(p, false));
      auto m1 = m.restrict(m.guard.with_bit(p, true));
      if (!m0 || !m1 || !(*m0 == a.b)) continue;
      for (size_t j = 0; j < R1.size(); ++j) {
        if (used[j] || R1[j].weight != a.weight || !(R1[j].b == *m1)) continue;
        used[j] = 1;
        merged.push_back({a.weight, std::move(m)});
        done = true;
        break;
      }
      if (done) break;
    }
    if (!done) return std::nullopt;
  }
  std::sort(merged.begin(), merged.end());
  return merged;
}

std::vector<Piece> normalize_group(std::vector<Piece> S, uint64_t after) {
  uint64_t p = UINT64_MAX;
  for (const auto& x : S) {
    auto it = x.b.guard.bits.upper_bound(after);
    if (it != x.b.guard.bits.end()) p = std::min(p, it->first);
  }
  if (p == UINT64_MAX) {
    std::sort(S.begin(), S.end());
    return S;
  }
  std::vector<Piece> S0, S1;
  for (const auto& x : S) {
    auto it = x.b.guard.bits.find(p);
    if (it != x.b.guard.bits.end()) {
      (it->second ? S1 : S0).push_back(x);
      continue;
    }
    for (bool v : {false, true})
      if (auto r = x.b.restrict(x.b.guard.with_bit(p, v))) (v ? S1 : S0).push_back({x.weight, std::move(*r)});
  }
  auto R0 = normalize_group(std::move(S0), p), R1 = normalize_group(std::move(S1), p);
  if (auto g = glue(R0, R1, p)) return std::move(*g);
  std::vector<Piece> out = std::move(R0);
  out.insert(out.end(), R1.begin(), R1.end());
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Piece> normalize_pieces(const std::vector<Piece>& pieces) {
  std::map<std::tuple<Space, int64_t, Tag>, std::vector<Piece>> groups;
  for (const auto& x : pieces) groups[{x.b.guard.space, x.b.guard.base, x.b.guard.tag}].push_back(x);
  std::vector<Piece> out;
  for (auto& [k, S] : groups) {
    auto R = normalize_group(std::move(S), 0);
    out.insert(out.end(), R.begin(), R.end());
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

std::vector<Branch> normalize_branches(const std::vector<Branch>& bs) {
  std::vector<Piece> ps;
  for (const auto& b : bs) ps.push_back({Rational(1), b});
  std::vector<Branch> out;
  for (auto& p : normalize_pieces(ps)) out.push_back(std::move(p.b));
  return out;
}

Graphing execute_graphing(const Graphing& F, const Graphing& G, Fuel fuel) {
  Graphing f = lift_graphing(F, G.dialect, Lift::Dagger);
  Graphing g = lift_graphing(G, F.dialect, Lift::Ddagger);
  CellSet I = F.carrier & G.carrier;
  CellSet OF = F.carrier - G.carrier, OG = G.carrier - F.carrier;

  std::vector<Item> frontier;
  for (Side s : {Side::F, Side::G}) {
    const Graphing& X = s == Side::F ? f : g;
    const CellSet& O = s == Side::F ? OF : OG;
    for (size_t i = 0; i < X.edges.size(); ++i)
      for (const auto& b : X.edges[i].branches)
        for (const auto& c : O.restrict_wild(b.guard))
          if (auto r = b.restrict(c)) frontier.push_back({{{s, i}}, std::move(*r), X.edges[i].weight});
  }

  std::map<std::string, std::pair<Rational, std::vector<Branch>>> emitted;
  uint64_t rounds = 0;
  while (!frontier.empty()) {
    if (++rounds > fuel.rounds)
      throw ResourceError("execution did not terminate within fuel=" + std::to_string(fuel.rounds) +
                          " rounds; frontier of " + std::to_string(frontier.size()) +
                          (frontier.size() == 1 ? " piece" : " pieces") + ", measure " +
                          format_rational(frontier_measure(frontier)));
    std::vector<Item> next;
    for (const auto& it : frontier) {
      Side last = it.steps.back().side;
      const CellSet& exit = last == Side::F ? OF : OG;
      Cell Y = it.comp.target();
      for (const auto& c : exit.restrict_wild(Y)) {
        auto dom = it.comp.preimage(c);
        if (!dom) continue;
        auto r = it.comp.restrict(*dom);
        if (!r) continue;
        auto& slot = emitted[label(f, g, it.steps)];
        slot.first = it.weight;
        slot.second.push_back(std::move(*r));
      }
      if (last == Side::F) extend(it, I, g, Side::G, next);
      else extend(it, I, f, Side::F, next);
    }
    frontier = std::move(next);
  }

  Graphing out;
  out.carrier = (F.carrier - G.carrier) | (G.carrier - F.carrier);
  out.dialect = F.dialect;
  out.dialect.insert(out.dialect.end(), G.dialect.begin(), G.dialect.end());
  for (auto& [id, wb] : emitted) out.edges.push_back({id, wb.first, normalize_branches(wb.second)});
  return out;
}

namespace {

using Key = std::vector<std::pair<int, size_t>>;

Key key_of(const std::vector<Step>& s) {
  Key k;
  for (const auto& x : s) k.emplace_back(int(x.side), x.edge);
  return k;
}

bool primitive(const std::vector<Step>& s) {
  size_t n = s.size();
  for (size_t d = 1; d < n; ++d) {
    if (n % d) continue;
    bool periodic = true;
    for (size_t i = d; i < n && periodic; ++i) periodic = s[i] == s[i - d];
    if (periodic) return false;
  }
  return true;
}

bool canonical_rotation(const std::vector<Step>& s) {
  Key k = key_of(s);
  for (size_t r = 2; r < k.size(); r += 2) {
    Key rot(k.begin() + r, k.end());
    rot.insert(rot.end(), k.begin(), k.begin() + r);
    if (rot < k) return false;
  }
  return true;
}

CellSet overlaps(const Graphing& X) {
  std::vector<Cell> cs;
  for (size_t i = 0; i < X.edges.size(); ++i)
    for (size_t j = 0; j < i; ++j)
      for (const auto& a : X.edges[i].branches)
        for (const auto& b : X.edges[j].branches)
          if (auto z = intersect(a.guard, b.guard)) cs.push_back(*z);
  return CellSet(std::move(cs));
}

}  // namespace

std::vector<GCircuit> circuits_graphing(const Graphing& F, const Graphing& G, Fuel fuel,
                                        const Quantifier* stop_on_infinite) {
  Graphing f = lift_graphing(F, G.dialect, Lift::Dagger);
  Graphing g = lift_graphing(G, F.dialect, Lift::Ddagger);
  CellSet I = F.carrier & G.carrier;
  CellSet overlap[2] = {overlaps(f), overlaps(g)};

  std::vector<Item> frontier;
  for (size_t i = 0; i < f.edges.size(); ++i)
    for (const auto& b : f.edges[i].branches)
      for (const auto& c : I.restrict_wild(b.guard))
        if (auto r = b.restrict(c)) frontier.push_back({{{Side::F, i}}, std::move(*r), f.edges[i].weight});

  std::map<Key, std::pair<GCircuit, std::vector<Cell>>> found;
  auto finish = [&] {
    std::vector<GCircuit> out;
    for (auto& [k, v] : found) {
      v.first.support = CellSet(std::move(v.second));
      out.push_back(std::move(v.first));
    }
    return out;
  };

  uint64_t rounds = 0;
  while (!frontier.empty()) {
    if (++rounds > fuel.rounds)
      throw ResourceError("circuit enumeration did not finish within fuel=" + std::to_string(fuel.rounds) +
                          " rounds; frontier of " + std::to_string(frontier.size()) +
                          (frontier.size() == 1 ? " piece" : " pieces") + ", measure " +
                          format_rational(frontier_measure(frontier)));
    std::vector<Item> next;
    for (auto& it : frontier) {
      std::vector<Item> live{it};
      if (it.steps.size() % 2 == 0) {
        auto fix = fixed_points(it.comp);
        if (!fix.empty()) {
          // A fixed point meeting overlapping sources would sit on infinitely
          // many primitive cycles.
          CellSet cur(fix);
          for (const auto& st : it.steps) {
            const Graphing& X = st.side == Side::F ? f : g;
            if (!(cur & overlap[int(st.side)]).empty())
              throw ResourceError("infinite circuit family: a cycle support meets overlapping edge sources");
            cur = BitMap{X.edges[st.edge].branches}.apply(cur);
          }
          if (primitive(it.steps) && canonical_rotation(it.steps)) {
            auto& slot = found[key_of(it.steps)];
            slot.first.steps = it.steps;
            slot.first.weight = it.weight;
            slot.second.insert(slot.second.end(), fix.begin(), fix.end());
            if (stop_on_infinite && (*stop_on_infinite)(it.weight).is_inf()) return finish();
          }
          live.clear();
          CellSet rest = CellSet({it.comp.guard}) - CellSet(fix);
          for (const auto& c : rest.cells())
            if (auto r = it.comp.restrict(c)) live.push_back({it.steps, std::move(*r), it.weight});
        }
      }
      for (const auto& l : live) {
        if (l.steps.back().side == Side::F) extend(l, I, g, Side::G, next);
        else extend(l, I, f, Side::F, next);
      }
    }
    frontier = std::move(next);
  }
  return finish();
}

ExtReal measure_graphing(const Graphing& F, const Graphing& G, const Quantifier& m, Fuel fuel) {
  ExtReal total(0);
  for (const auto& c : circuits_graphing(F, G, fuel, &m)) {
    Rational lam = c.support.measure();
    if (lam == 0) continue;
    total += ExtReal(lam) * m(c.weight);
  }
  return total * ExtReal(Rational(1, F.dialect_size() * G.dialect_size()));
}

Graphing normalize_ae(const Graphing& F) {
  std::vector<Piece> ps;
  for (const auto& e : F.edges)
    for (const auto& b : e.branches) ps.push_back({e.weight, b});
  Graphing out;
  out.carrier = F.carrier;
  out.dialect = F.dialect;
  auto R = normalize_pieces(ps);
  for (size_t i = 0; i < R.size(); ++i) out.edges.push_back({"n" + std::to_string(i), R[i].weight, {R[i].b}});
  return out;
}

Graphing normalize_edges(const Graphing& F) {
  Graphing out = F;
  for (auto& e : out.edges) e.branches = normalize_branches(e.branches);
  std::sort(out.edges.begin(), out.edges.end(), [](const GEdge& a, const GEdge& b) { return a.id < b.id; });
  return out;
}

bool ae_equal(const Graphing& a, const Graphing& b) {
  Graphing x = normalize_ae(a), y = normalize_ae(b);
  if (!(x.carrier == y.carrier) || x.dialect != y.dialect || x.edges.size() != y.edges.size()) return false;
  for (size_t i = 0; i < x.edges.size(); ++i)
    if (x.edges[i].weight != y.edges[i].weight || !(x.edges[i].branches == y.edges[i].branches)) return false;
  return true;
}

Graphing graphing_union(const Graphing& F, const Graphing& G) {
  if (F.dialect != G.dialect) throw std::invalid_argument("graphing_union: dialects differ");
  Graphing out = F;
  out.carrier = F.carrier | G.carrier;
  std::set<std::string> ids;
  for (const auto& e : F.edges) ids.insert(e.id);
  for (const auto& e : G.edges) {
    if (ids.count(e.id)) throw std::invalid_argument("graphing_union: edge id " + e.id + " on both sides");
    out.edges.push_back(e);
  }
  return out;
}

Graphing relocate(const Graphing& F, const std::map<int64_t, int64_t>& moves) {
  auto mv = [&](int64_t b) {
    auto it = moves.find(b);
    return it == moves.end() ? b : it->second;
  };
  Graphing out;
  out.dialect = F.dialect;
  std::vector<Cell> cs;
  for (auto c : F.carrier.cells()) {
    c.base = mv(c.base);
    cs.push_back(std::move(c));
  }
  out.carrier = CellSet(std::move(cs));
  for (const auto& e : F.edges) {
    GEdge ne{e.id, e.weight, {}};
    for (auto b : e.branches) {
      b.guard.base = mv(b.guard.base);
      b.out_base = mv(b.out_base);
      ne.branches.push_back(std::move(b));
    }
    out.edges.push_back(std::move(ne));
  }
  return out;
}

namespace {

uint64_t tag_index(const Tag& t, const Dims& dims, size_t from, size_t to) {
  uint64_t idx = 0;
  for (size_t i = from; i < to; ++i) idx = idx * dims[i] + t.at(i);
  return idx;
}

uint64_t index_bits(const Dims& dims, size_t from, size_t to) {
  uint64_t n = 1;
  for (size_t i = from; i < to; ++i) n *= dims[i];
  return log2_exact(pad_pow2(uint32_t(n)));
}

}  // namespace

DialectEncoding DialectEncoding::flat(const Dims& dims) {
  uint64_t L = index_bits(dims, 0, dims.size());
  return {[dims, L](const Tag& t) {
            uint64_t idx = tag_index(t, dims, 0, dims.size());
            Bits b;
            for (uint64_t j = 1; j <= L; ++j) b[track_slot(0, j)] = (idx >> (L - j)) & 1;
            return b;
          },
          "flat"};
}

DialectEncoding DialectEncoding::interleaved(const Dims& dims, size_t split) {
  if (split > dims.size()) throw std::invalid_argument("interleaved encoding: split out of range");
  uint64_t L1 = index_bits(dims, 0, split), L2 = index_bits(dims, split, dims.size());
  return {[dims, split, L1, L2](const Tag& t) {
            uint64_t i1 = tag_index(t, dims, 0, split), i2 = tag_index(t, dims, split, dims.size());
            Bits b;
            for (uint64_t j = 1; j <= L1; ++j) b[track_slot(0, 2 * j - 1)] = (i1 >> (L1 - j)) & 1;
            for (uint64_t j = 1; j <= L2; ++j) b[track_slot(0, 2 * j)] = (i2 >> (L2 - j)) & 1;
            return b;
          },
          "interleaved"};
}

Graphing embed_dialect(const Graphing& A, const DialectEncoding& enc) {
  for (const auto& c : A.carrier.cells())
    if (c.space != Space::Line) throw std::invalid_argument("embed_dialect: expects a Line graphing");
  std::set<uint64_t> slots;
  uint64_t max_slot = 0;
  for (const auto& t : dialect_elements(A.dialect))
    for (const auto& [p, v] : enc.bits(t)) {
      slots.insert(p);
      max_slot = std::max(max_slot, p);
    }
  auto lift_cell = [&](const Cell& c, bool with_tag) {
    Cell out{Space::LineTimesInterval, c.base, {}, {}};
    for (const auto& [q, v] : c.bits) out.bits[2 * q - 1] = v;
    if (with_tag)
      for (const auto& [p, v] : enc.bits(c.tag)) out.bits[2 * p] = v;
    return out;
  };
  Graphing out;
  std::vector<Cell> cs;
  for (const auto& c : A.carrier.cells()) cs.push_back(lift_cell(c, false));
  out.carrier = CellSet(std::move(cs));
  for (const auto& e : A.edges) {
    GEdge ne{e.id, e.weight, {}};
    for (const auto& b : e.branches) {
      Branch nb;
      nb.guard = lift_cell(b.guard, true);
      nb.out_space = Space::LineTimesInterval;
      nb.out_base = b.out_base;
      for (const auto& [q, v] : b.writes) nb.writes[2 * q - 1] = v;
      for (const auto& [p, v] : enc.bits(b.out_tag)) nb.writes[2 * p] = v;
      const PosMap& S = b.src;
      nb.src = PosMap::from_function(
          [&](uint64_t c) -> std::optional<uint64_t> {
            if (c % 2) {
              auto s = S.at((c + 1) / 2);
              if (!s) return std::nullopt;
              return 2 * *s - 1;
            }
            if (slots.count(c / 2)) return std::nullopt;
            return c;
          },
          2 * S.modulus(), std::max<uint64_t>(2 * S.bound(), 2 * max_slot + 2) + 1);
      nb.canonicalize();
      ne.branches.push_back(std::move(nb));
    }
    out.edges.push_back(std::move(ne));
  }
  return out;
}

Graphing omega_collapse(const Graphing& A) {
  Graphing out;
  out.dialect = A.dialect;
  std::vector<Cell> cs;
  for (auto c : A.carrier.cells()) {
    c.space = Space::Line;
    cs.push_back(std::move(c));
  }
  out.carrier = CellSet(std::move(cs));
  for (const auto& e : A.edges) {
    GEdge ne{e.id, e.weight, {}};
    for (auto b : e.branches) {
      b.guard.space = Space::Line;
      b.out_space = Space::Line;
      ne.branches.push_back(std::move(b));
    }
    out.edges.push_back(std::move(ne));
  }
  return out;
}

std::string graphing_to_dot(const Graphing& G, const std::string& name) {
  std::ostringstream os;
  os << "digraph \"" << name << "\" {\n";
  for (auto b : G.carrier.bases()) os << "  \"" << b << "\" [label=\"[" << b << "," << b + 1 << ")\"];\n";
  for (const auto& e : G.edges)
    for (const auto& b : e.branches)
      os << "  \"" << b.guard.base << "\" -> \"" << b.out_base << "\" [label=\"" << e.id << " ("
         << format_rational(e.weight) << ") " << b.guard.str() << "\"];\n";
  os << "}\n";
  return os.str();
}

}  // namespace goi
