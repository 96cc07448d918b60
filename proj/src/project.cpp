#include "goi/project.hpp"

#include <set>
#include <stdexcept>

namespace goi {

Rational Project::unit() const {
  Rational u = 0;
  for (const auto& [a, g] : slices) u += a;
  return u;
}

bool Project::balanced() const { return wager.is_zero() && slices.size() == 1 && slices[0].first == 1; }

void Project::validate() const {
  for (const auto& [a, g] : slices) {
    if (!(g.carrier == carrier)) throw std::invalid_argument("slice carrier differs from the project carrier");
    g.validate();
  }
}

ExtReal interaction_wager(const Project& a, const Project& b, const Quantifier& m, Fuel fuel) {
  ExtReal w = a.wager * ExtReal(b.unit()) + b.wager * ExtReal(a.unit());
  for (const auto& [alpha, A] : a.slices)
    for (const auto& [beta, B] : b.slices) {
      Rational c = alpha * beta;
      if (c == 0) continue;
      w += ExtReal(c) * measure_graphing(A, B, m, fuel);
    }
  return w;
}

ExtReal pairing(const Project& a, const Project& b, const Quantifier& m, Fuel fuel) {
  if (!(a.carrier == b.carrier)) throw std::invalid_argument("pairing: carriers differ");
  return interaction_wager(a, b, m, fuel);
}

bool orthogonal(const Project& a, const Project& b, const Quantifier& m, Fuel fuel) {
  return orthogonal_value(pairing(a, b, m, fuel));
}

Project execute_project(const Project& a, const Project& b, const Quantifier& m, Fuel fuel) {
  Project out;
  out.wager = interaction_wager(a, b, m, fuel);
  out.carrier = (a.carrier - b.carrier) | (b.carrier - a.carrier);
  for (const auto& [alpha, A] : a.slices)
    for (const auto& [beta, B] : b.slices) {
      Graphing g = execute_graphing(A, B, fuel);
      g.carrier = out.carrier;
      out.slices.emplace_back(alpha * beta, std::move(g));
    }
  return out;
}

namespace {

Graphing union_lifted(const Graphing& A, const Graphing& B) {
  Graphing l = lift_graphing(A, B.dialect, Lift::Dagger);
  Graphing r = lift_graphing(B, A.dialect, Lift::Ddagger);
  std::set<std::string> ids;
  for (const auto& e : l.edges) ids.insert(e.id);
  bool clash = false;
  for (const auto& e : r.edges) clash = clash || ids.count(e.id);
  if (clash) {
    for (auto& e : l.edges) e.id = "1." + e.id;
    for (auto& e : r.edges) e.id = "2." + e.id;
  }
  return graphing_union(l, r);
}

}  // namespace

Project tensor_project(const Project& a, const Project& b) {
  if (!(a.carrier & b.carrier).empty()) throw std::invalid_argument("tensor: carriers overlap");
  Project out;
  out.wager = a.wager * ExtReal(b.unit()) + b.wager * ExtReal(a.unit());
  out.carrier = a.carrier | b.carrier;
  for (const auto& [alpha, A] : a.slices)
    for (const auto& [beta, B] : b.slices) {
      Graphing g = union_lifted(A, B);
      g.carrier = out.carrier;
      out.slices.emplace_back(alpha * beta, std::move(g));
    }
  return out;
}

Project extend_project(const Project& a, const CellSet& V) {
  if (!(a.carrier - V).empty()) throw std::invalid_argument("extend: the new carrier must contain the old one");
  Project out = a;
  out.carrier = V;
  for (auto& [c, g] : out.slices) g.carrier = V;
  return out;
}

Project sum_projects(const Project& a, const Project& b) {
  if (!(a.carrier == b.carrier)) throw std::invalid_argument("sum: carriers differ");
  Project out = a;
  out.wager = a.wager + b.wager;
  out.slices.insert(out.slices.end(), b.slices.begin(), b.slices.end());
  return out;
}

Project scale_project(const Project& a, const Rational& lambda) {
  Project out = a;
  out.wager = a.wager * ExtReal(lambda);
  for (auto& [c, g] : out.slices) c *= lambda;
  return out;
}

namespace {

Project single(const CellSet& carrier, Graphing g) {
  Project p;
  p.carrier = carrier;
  g.carrier = carrier;
  p.slices.emplace_back(Rational(1), std::move(g));
  return p;
}

void check_disjoint(const std::vector<std::vector<int64_t>>& groups, const char* what) {
  std::set<int64_t> seen;
  for (const auto& g : groups)
    for (auto b : g)
      if (!seen.insert(b).second)
        throw std::invalid_argument(std::string(what) + ": unit interval " + std::to_string(b) + " used twice");
}

}  // namespace

Project fax_project(const std::vector<std::pair<int64_t, int64_t>>& moves) {
  std::vector<int64_t> from, to;
  for (const auto& [a, b] : moves) { from.push_back(a); to.push_back(b); }
  check_disjoint({from, to}, "fax");
  Graphing g;
  auto& e = g.add_edge("fax");
  for (const auto& [a, b] : moves) {
    Branch br = Branch::identity_on(Cell::unit(a));
    br.out_base = b;
    e.branches.push_back(std::move(br));
  }
  GEdge inv{"fax*", 1, BitMap{e.branches}.inverse().branches};
  g.edges.push_back(std::move(inv));
  std::vector<int64_t> all = from;
  all.insert(all.end(), to.begin(), to.end());
  return single(CellSet::units(all), std::move(g));
}

Project inflating_fax_project(const std::vector<int64_t>& sources, int64_t target, bool compensate) {
  check_disjoint({sources, {target}}, "inflating fax");
  BitMap m = inflating_fax_map(sources, target);
  Rational w = compensate ? pow2(-long(log2_exact(pad_pow2(uint32_t(sources.size()))))) : Rational(1);
  Graphing g;
  g.edges.push_back({"infl", w, m.branches});
  g.edges.push_back({"infl*", w, m.inverse().branches});
  std::vector<int64_t> all = sources;
  all.push_back(target);
  return single(CellSet::units(all), std::move(g));
}

Project daemon_project(const Rational& lambda, const CellSet& V) {
  Project p = single(V, Graphing{});
  p.wager = ExtReal(lambda);
  return p;
}

Project zero_project(const CellSet& V) { return single(V, Graphing{}); }

std::string to_string(Success s) {
  switch (s) {
    case Success::Strict: return "strict";
    case Success::Weak: return "weak";
    case Success::No: return "no";
  }
  return "no";
}

namespace {

// Disjoint union of transpositions: weight 1, edges paired with inverses,
// sources and targets of unrelated edges disjoint.
std::vector<std::string> transposition_issues(const Graphing& g) {
  std::vector<std::string> issues;
  size_t n = g.edges.size();
  std::vector<std::vector<Branch>> canon(n), inv(n);
  for (size_t i = 0; i < n; ++i) {
    if (g.edges[i].weight != 1) issues.push_back("edge " + g.edges[i].id + " has weight " + format_rational(g.edges[i].weight));
    canon[i] = normalize_branches(g.edges[i].branches);
    inv[i] = normalize_branches(BitMap{g.edges[i].branches}.inverse().branches);
  }
  std::vector<long> partner(n, -1);
  for (size_t i = 0; i < n; ++i) {
    if (partner[i] >= 0) continue;
    for (size_t j = i; j < n; ++j)
      if (partner[j] < 0 && canon[j] == inv[i]) {
        partner[i] = long(j);
        partner[j] = long(i);
        break;
      }
    if (partner[i] < 0) issues.push_back("edge " + g.edges[i].id + " has no inverse edge");
  }
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < i; ++j) {
      if (partner[i] == long(j)) continue;
      if (!(g.source(i) & g.source(j)).empty())
        issues.push_back("sources of " + g.edges[j].id + " and " + g.edges[i].id + " overlap");
      if (!(g.target(i) & g.target(j)).empty())
        issues.push_back("targets of " + g.edges[j].id + " and " + g.edges[i].id + " overlap");
    }
  return issues;
}

}  // namespace

std::vector<std::string> success_diagnostics(const Project& a) {
  std::vector<std::string> out;
  if (!a.wager.is_zero()) out.push_back("wager is " + a.wager.str());
  if (a.slices.size() != 1) out.push_back(std::to_string(a.slices.size()) + " slices");
  else if (a.slices[0].first != 1) out.push_back("coefficient " + format_rational(a.slices[0].first));
  for (size_t i = 0; i < a.slices.size(); ++i)
    for (auto& s : transposition_issues(a.slices[i].second)) out.push_back("slice " + std::to_string(i) + ": " + s);
  return out;
}

Success is_successful(const Project& a) {
  if (!a.wager.is_zero()) return Success::No;
  for (const auto& [c, g] : a.slices)
    if (c <= 0 || !transposition_issues(g).empty()) return Success::No;
  return a.balanced() ? Success::Strict : Success::Weak;
}

Project bang_project(const Project& a, const DialectEncoding* enc) {
  if (!a.balanced()) throw std::invalid_argument("bang: the project is not balanced");
  const Graphing& A = a.slices[0].second;
  DialectEncoding flat = DialectEncoding::flat(A.dialect);
  Graphing g = omega_collapse(embed_dialect(A, enc ? *enc : flat));
  CellSet carrier = g.carrier;
  return single(carrier, std::move(g));
}

Project promotion_project(const std::vector<int64_t>& A, const std::vector<int64_t>& phiA,
                          const std::vector<int64_t>& B, const std::vector<int64_t>& psiB) {
  if (A.size() != phiA.size() || B.size() != psiB.size())
    throw std::invalid_argument("promotion: location lists must match in length");
  check_disjoint({A, phiA, B, psiB}, "promotion");
  Graphing g;
  auto edge = [&](const char* id, const std::vector<int64_t>& from, const std::vector<int64_t>& to, TrackPerm kind) {
    PosMap src = track_perm_src(kind, Embedding::Product);
    GEdge e{id, 1, {}};
    for (size_t k = 0; k < from.size(); ++k) {
      Branch br = Branch::identity_on(Cell::unit(from[k]));
      br.out_base = to[k];
      br.src = src;
      e.branches.push_back(std::move(br));
    }
    GEdge inv{std::string(id) + "*", 1, BitMap{e.branches}.inverse().branches};
    g.edges.push_back(std::move(e));
    g.edges.push_back(std::move(inv));
  };
  edge("T", A, phiA, TrackPerm::TauHat);
  edge("P", B, psiB, TrackPerm::ThetaHat);
  std::vector<int64_t> all = A;
  for (const auto* v : {&phiA, &B, &psiB}) all.insert(all.end(), v->begin(), v->end());
  return single(CellSet::units(all), std::move(g));
}

Project contraction_project(const std::vector<int64_t>& L, const std::vector<int64_t>& L1,
                            const std::vector<int64_t>& L2) {
  if (L.size() != L1.size() || L.size() != L2.size())
    throw std::invalid_argument("contraction: location lists must match in length");
  check_disjoint({L, L1, L2}, "contraction");
  Graphing g;
  g.dialect = {2};
  auto edge = [&](const char* id, const std::vector<int64_t>& from, uint32_t tf, const std::vector<int64_t>& to,
                  uint32_t tt) {
    GEdge e{id, 1, {}};
    for (size_t k = 0; k < from.size(); ++k) {
      Branch br = Branch::identity_on(Cell::unit(from[k]).with_tag({tf}));
      br.out_base = to[k];
      br.out_tag = {tt};
      e.branches.push_back(std::move(br));
    }
    g.edges.push_back(std::move(e));
  };
  edge("c1o", L1, 0, L, 0);
  edge("c1i", L, 0, L1, 0);
  edge("c2o", L2, 0, L, 1);
  edge("c2i", L, 1, L2, 0);
  std::vector<int64_t> all = L;
  all.insert(all.end(), L1.begin(), L1.end());
  all.insert(all.end(), L2.begin(), L2.end());
  return single(CellSet::units(all), std::move(g));
}

Project relocate_project(const Project& a, const std::map<int64_t, int64_t>& moves) {
  Project out;
  out.wager = a.wager;
  for (const auto& [c, g] : a.slices) out.slices.emplace_back(c, relocate(g, moves));
  Graphing tmp;
  tmp.carrier = a.carrier;
  out.carrier = relocate(tmp, moves).carrier;
  return out;
}

Project normalize_project(const Project& a) {
  Project out = a;
  for (auto& [c, g] : out.slices) g = normalize_ae(g);
  return out;
}

bool project_ae_equal(const Project& a, const Project& b) {
  if (a.wager != b.wager || !(a.carrier == b.carrier) || a.slices.size() != b.slices.size()) return false;
  for (size_t i = 0; i < a.slices.size(); ++i)
    if (a.slices[i].first != b.slices[i].first || !ae_equal(a.slices[i].second, b.slices[i].second)) return false;
  return true;
}

}  // namespace goi
