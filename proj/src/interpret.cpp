#include "goi/interpret.hpp"

#include <algorithm>
#include <set>

namespace goi {

namespace {

std::vector<int64_t> units_of(const FormulaPtr& f) { return location(*f); }

Project zero_on(const std::vector<int64_t>& units) { return zero_project(CellSet::units(units)); }

int64_t max_abs(const std::vector<int64_t>& v) {
  int64_t m = 0;
  for (auto x : v) m = std::max<int64_t>(m, x < 0 ? -x : x);
  return m;
}

// prom applied once: the formula at `A` is promoted functorially against the
// rest of the carrier, then everything is moved back in place.
Project promote_once(const Project& p, const std::vector<int64_t>& A, const InterpretOptions& opt) {
  std::vector<int64_t> all = p.carrier.bases();
  std::set<int64_t> inA(A.begin(), A.end());
  std::vector<int64_t> rest;
  for (auto b : all)
    if (!inA.count(b)) rest.push_back(b);
  int64_t fresh = max_abs(all) + 1000;
  std::vector<int64_t> phiA, psiB;
  std::map<int64_t, int64_t> back;
  for (auto b : A) {
    phiA.push_back(fresh);
    back[fresh++] = b;
  }
  for (auto b : rest) {
    psiB.push_back(fresh);
    back[fresh++] = b;
  }
  Project prom = promotion_project(A, phiA, rest, psiB);
  return relocate_project(execute_project(prom, p, opt.m, opt.fuel), back);
}

Project interpret_rec(const Proof& p, const InterpretOptions& opt) {
  auto sub = [&](size_t k) { return interpret_rec(*p.premises[k], opt); };
  switch (p.rule) {
    case Rule::Ax: {
      uint32_t i = uint32_t(p.idx[0]);
      return fax_project({{variable_base(i, p.idx[1]), variable_base(i, p.idx[2])}});
    }
    case Rule::Top: return zero_on(conclusion(p).location());
    case Rule::OneR: return zero_on({});
    case Rule::Par:
    case Rule::TensorL:
    case Rule::ParR:
    case Rule::ParMix:
    case Rule::OneL:
    case Rule::Forall: return sub(0);
    case Rule::Tensor:
    case Rule::TensorR:
    case Rule::ParL:
    case Rule::TensorMix: return tensor_project(sub(0), sub(1));
    case Rule::Weak:
    case Rule::Plus1:
    case Rule::Plus2: return tensor_project(sub(0), zero_on(units_of(p.forms[0])));
    case Rule::With: {
      Sequent s0 = conclusion(*p.premises[0]), s1 = conclusion(*p.premises[1]);
      auto B1 = s0.gamma[size_t(p.idx[0])], B2 = s1.gamma[size_t(p.idx[1])];
      Project a = tensor_project(sub(0), zero_on(units_of(B2)));
      Project b = tensor_project(sub(1), zero_on(units_of(B1)));
      return sum_projects(a, b);
    }
    case Rule::Exists: {
      Project out = sub(0);
      std::vector<Project> faxes;
      for (const auto& [from, to] : witness_occurrences(p)) {
        if (from.size() == 1 && from[0] == to) continue;
        if (std::find(from.begin(), from.end(), to) != from.end())
          throw std::invalid_argument("∃: a witness occurrence overlaps the location of its variable");
        faxes.push_back(inflating_fax_project(from, to, false));
      }
      if (faxes.empty()) return out;
      Project all = faxes[0];
      for (size_t k = 1; k < faxes.size(); ++k) all = tensor_project(all, faxes[k]);
      return execute_project(out, all, opt.m, opt.fuel);
    }
    case Rule::Oc:
    case Rule::OcPol: {
      Sequent s = conclusion(*p.premises[0]);
      std::vector<FormulaPtr> context = s.delta;
      for (size_t k = 0; k < s.gamma.size(); ++k)
        if (p.rule == Rule::OcPol || int64_t(k) != p.idx[0]) context.push_back(s.gamma[k]);
      Project out = bang_project(sub(0));
      for (const auto& c : context) {
        auto A = units_of(c);
        if (!A.empty()) out = promote_once(out, A, opt);
      }
      return out;
    }
    case Rule::Ctr: {
      Sequent s = conclusion(*p.premises[0]);
      auto L1 = units_of(s.delta[size_t(p.idx[0])]), L2 = units_of(s.delta[size_t(p.idx[1])]);
      auto L = units_of(p.forms[0]);
      return execute_project(sub(0), contraction_project(L, L1, L2), opt.m, opt.fuel);
    }
    case Rule::Cut:
    case Rule::CutPol: return execute_project(sub(0), sub(1), opt.m, opt.fuel);
  }
  throw std::logic_error("unknown rule");
}

Project single_edge_project(const std::vector<int64_t>& units, const std::string& id, const Rational& w,
                            const std::function<void(int64_t, std::vector<Branch>&)>& make) {
  Graphing g;
  g.carrier = CellSet::units(units);
  auto& e = g.add_edge(id, w);
  for (auto u : units) make(u, e.branches);
  Project p;
  p.carrier = g.carrier;
  p.slices.emplace_back(Rational(1), std::move(g));
  return p;
}

// Unit interval -> variable name, for units that hold a variable occurrence.
void names_of(const Formula& f, std::map<int64_t, uint32_t>& out) {
  if (f.op == Op::Var || f.op == Op::NVar) out[variable_base(f.i, f.j)] = f.i;
  for (const auto& k : f.kids) names_of(*k, out);
}

}  // namespace

Project interpret(const Proof& p, const InterpretOptions& opt) {
  conclusion(p);  // throws on a proof that does not check
  return interpret_rec(p, opt);
}

Project flip_project(const std::vector<int64_t>& units, uint64_t digit, const Rational& weight) {
  return single_edge_project(units, "flip" + std::to_string(digit), weight, [&](int64_t u, std::vector<Branch>& bs) {
    for (bool b : {false, true}) {
      Branch br = Branch::identity_on(Cell::unit(u).with_bit(digit, b));
      br.writes[digit] = !b;
      bs.push_back(std::move(br));
    }
  });
}

Project strict_opponent(const std::vector<int64_t>& units) { return flip_project(units, 1, 1); }

std::vector<Project> Basis::standard_generators() {
  return {flip_project({0}, 1, Rational(1, 2)), flip_project({0}, 2, Rational(1, 3))};
}

const std::vector<Project>& Basis::of(uint32_t name) const {
  static const std::vector<Project> standard = standard_generators();
  auto it = generators.find(name);
  return it == generators.end() || it->second.empty() ? standard : it->second;
}

std::vector<NamedTest> test_battery(const Sequent& s, const Basis& basis) {
  std::vector<int64_t> units = s.location();
  std::sort(units.begin(), units.end());
  std::map<int64_t, uint32_t> names;
  for (const auto& f : s.delta) names_of(*f, names);
  for (const auto& f : s.gamma) names_of(*f, names);
  if (s.theta) names_of(*s.theta, names);

  std::vector<NamedTest> out;
  size_t rounds = 1;
  for (auto u : units) rounds = std::max(rounds, basis.of(names.count(u) ? names[u] : 0).size());
  for (size_t g = 0; g < rounds; ++g) {
    Project t = zero_project(CellSet{});
    for (auto u : units) {
      const auto& gens = basis.of(names.count(u) ? names[u] : 0);
      t = tensor_project(t, relocate_project(gens[g % gens.size()], {{0, u}}));
    }
    out.push_back({"basis#" + std::to_string(g), t});
  }
  if (units.size() >= 2) {
    std::vector<std::pair<int64_t, int64_t>> moves;
    for (size_t k = 0; k + 1 < units.size(); k += 2) moves.emplace_back(units[k], units[k + 1]);
    Project f = fax_project(moves);
    for (auto& e : f.slices[0].second.edges) e.weight = Rational(1, 2);
    if (units.size() % 2) f = tensor_project(f, flip_project({units.back()}, 1, Rational(1, 2)));
    out.push_back({"half-fax", f});
  }
  out.push_back({"daemon", daemon_project(1, CellSet::units(units))});
  return out;
}

bool SoundnessReport::ok() const {
  if (!checked || !error.empty()) return false;
  return success == Success::Strict || (success == Success::Weak && uses_with);
}

SoundnessReport verify_soundness(const Proof& p, const Basis& basis, const InterpretOptions& opt) {
  SoundnessReport r;
  auto chk = check_proof(p);
  r.diagnostics = chk.diagnostics;
  r.checked = chk.ok();
  if (!r.checked) return r;
  r.conclusion = chk.conclusion->str();
  r.uses_with = uses_rule(p, Rule::With);
  Project I;
  try {
    I = interpret(p, opt);
  } catch (const std::exception& e) {
    r.error = e.what();
    return r;
  }
  r.success = is_successful(I);
  r.reasons = success_diagnostics(I);
  for (const auto& t : test_battery(*chk.conclusion, basis)) {
    PairingRecord rec{t.name, "", false};
    try {
      rec.value = pairing(I, t.test, opt.m, opt.fuel).str();
    } catch (const ResourceError& e) {
      rec.value = e.what();
      rec.error = true;
    }
    r.pairings.push_back(std::move(rec));
  }
  return r;
}

}  // namespace goi
