#include "goi/proof.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>

namespace goi {

namespace {

struct RuleInfo {
  Rule rule;
  const char* keyword;
  const char* label;
  const char* signature;  // P premise, i integer, F formula
};

const std::vector<RuleInfo>& rule_table() {
  static const std::vector<RuleInfo> t = {
      {Rule::Ax, "ax", "ax", "iii"},
      {Rule::Cut, "cut", "cut", "PPii"},
      {Rule::CutPol, "cutpol", "cut^pol", "PPi"},
      {Rule::Tensor, "tensor", "⊗", "PPii"},
      {Rule::Par, "par", "⅋", "Pii"},
      {Rule::TensorL, "tensor-l", "⊗^pol_g", "Pii"},
      {Rule::TensorR, "tensor-r", "⊗^pol_d", "PP"},
      {Rule::ParR, "par-r", "⅋^pol_d", "Pi"},
      {Rule::ParL, "par-l", "⅋^pol_g", "PPi"},
      {Rule::ParMix, "par-mix", "⅋^mix", "Pii"},
      {Rule::TensorMix, "tensor-mix", "⊗^mix", "PPi"},
      {Rule::OneR, "one-r", "1_d", ""},
      {Rule::OneL, "one-l", "1_g", "P"},
      {Rule::Plus1, "plus1", "⊕_1", "PiF"},
      {Rule::Plus2, "plus2", "⊕_2", "PiF"},
      {Rule::With, "with", "&", "PPii"},
      {Rule::Top, "top", "⊤", "F"},
      {Rule::Oc, "oc", "!", "Pi"},
      {Rule::OcPol, "ocpol", "!^pol", "P"},
      {Rule::Ctr, "ctr", "ctr (B Behavior)", "PiiF"},
      {Rule::Weak, "weak", "weak", "PF"},
      {Rule::Forall, "forall", "∀ (X ∉ FV)", "Pii"},
      {Rule::Exists, "exists", "∃", "PiF"},
  };
  return t;
}

const RuleInfo& info(Rule r) {
  for (const auto& x : rule_table())
    if (x.rule == r) return x;
  throw std::logic_error("unknown rule");
}

int64_t sexp_int(const Sexp& s) {
  if (!s.atom) throw SyntaxError("expected an integer", s.line, s.col);
  try {
    size_t used = 0;
    long long v = std::stoll(s.text, &used);
    if (used == s.text.size()) return v;
  } catch (const std::exception&) {
  }
  throw SyntaxError("expected an integer, got '" + s.text + "'", s.line, s.col);
}

ProofPtr from_sexp(const Sexp& s) {
  if (s.atom && s.text == "one-r") {
    auto p = std::make_shared<Proof>();
    p->rule = Rule::OneR;
    p->line = s.line;
    p->col = s.col;
    return p;
  }
  if (s.atom || s.items.empty() || !s.items[0].atom) throw SyntaxError("expected a rule application", s.line, s.col);
  const std::string& kw = s.items[0].text;
  const RuleInfo* ri = nullptr;
  for (const auto& x : rule_table())
    if (kw == x.keyword) ri = &x;
  if (!ri) throw SyntaxError("unknown rule '" + kw + "'", s.line, s.col);
  auto p = std::make_shared<Proof>();
  p->rule = ri->rule;
  p->line = s.line;
  p->col = s.col;
  std::string sig = ri->signature;
  if (ri->rule == Rule::Top) {
    if (s.items.size() < 2) throw SyntaxError("top takes the ⊤ formula and optional contexts", s.line, s.col);
    p->forms.push_back(Formula::from_sexp(s.items[1]));
    for (size_t k = 2; k < s.items.size(); ++k) {
      const Sexp& c = s.items[k];
      if (c.atom || c.items.empty() || !c.items[0].atom)
        throw SyntaxError("expected (delta ...), (gamma ...) or (theta ...)", c.line, c.col);
      const std::string& h = c.items[0].text;
      std::vector<FormulaPtr> fs;
      for (size_t m = 1; m < c.items.size(); ++m) fs.push_back(Formula::from_sexp(c.items[m]));
      if (h == "delta") p->ctx.delta = fs;
      else if (h == "gamma") p->ctx.gamma = fs;
      else if (h == "theta" && fs.size() == 1) p->ctx.theta = fs[0];
      else throw SyntaxError("expected (delta ...), (gamma ...) or (theta F)", c.line, c.col);
    }
    return p;
  }
  if (s.items.size() != sig.size() + 1)
    throw SyntaxError(kw + " takes " + std::to_string(sig.size()) + " arguments", s.line, s.col);
  for (size_t k = 0; k < sig.size(); ++k) {
    const Sexp& a = s.items[k + 1];
    switch (sig[k]) {
      case 'P': p->premises.push_back(from_sexp(a)); break;
      case 'i': p->idx.push_back(sexp_int(a)); break;
      case 'F': p->forms.push_back(Formula::from_sexp(a)); break;
    }
  }
  return p;
}

std::string list_str(const std::vector<FormulaPtr>& fs) {
  std::string s;
  for (size_t k = 0; k < fs.size(); ++k) s += (k ? ", " : "") + fs[k]->str();
  return s;
}

}  // namespace

std::string rule_keyword(Rule r) { return info(r).keyword; }
std::string rule_label(Rule r) { return info(r).label; }

std::string Sequent::str() const {
  std::string s = list_str(delta);
  s += (delta.empty() ? "⊢ " : " ⊢ ") + list_str(gamma) + "; ";
  if (theta) s += theta->str();
  return s;
}

std::vector<int64_t> Sequent::location() const {
  std::vector<int64_t> out;
  auto add = [&](const FormulaPtr& f) {
    auto l = goi::location(*f);
    out.insert(out.end(), l.begin(), l.end());
  };
  for (const auto& f : delta) add(f);
  for (const auto& f : gamma) add(f);
  if (theta) add(theta);
  return out;
}

std::string Proof::str() const {
  if (rule == Rule::OneR) return "one-r";
  std::string s = "(" + rule_keyword(rule);
  if (rule == Rule::Top) {
    s += " " + forms[0]->str();
    auto group = [&](const char* head, const std::vector<FormulaPtr>& fs) {
      if (fs.empty()) return;
      s += std::string(" (") + head;
      for (const auto& f : fs) s += " " + f->str();
      s += ")";
    };
    group("delta", ctx.delta);
    group("gamma", ctx.gamma);
    if (ctx.theta) s += " (theta " + ctx.theta->str() + ")";
    return s + ")";
  }
  size_t np = 0, ni = 0, nf = 0;
  for (char c : std::string(info(rule).signature)) {
    if (c == 'P') s += " " + premises[np++]->str();
    if (c == 'i') s += " " + std::to_string(idx[ni++]);
    if (c == 'F') s += " " + forms[nf++]->str();
  }
  return s + ")";
}

ProofPtr parse_proof(const std::string& text) {
  auto all = parse_sexps(text);
  if (all.size() != 1) throw SyntaxError("a proof file holds exactly one derivation", 1, 1);
  return from_sexp(all[0]);
}

ProofPtr load_proof(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_proof(ss.str());
}

std::string Diagnostic::str() const {
  std::string s = "rule " + rule + " at " + position;
  if (line) s += " (line " + std::to_string(line) + ")";
  return s + ": " + message;
}

namespace {

class Fail : public std::exception {
 public:
  explicit Fail(std::string m) : msg(std::move(m)) {}
  std::string msg;
};

FormulaPtr pick(const std::vector<FormulaPtr>& fs, int64_t k, const char* side) {
  if (k < 0 || size_t(k) >= fs.size())
    throw Fail(std::string("index ") + std::to_string(k) + " out of range for " + side + " of size " +
               std::to_string(fs.size()));
  return fs[size_t(k)];
}

std::vector<FormulaPtr> drop(std::vector<FormulaPtr> fs, std::vector<int64_t> ks) {
  std::sort(ks.begin(), ks.end(), std::greater<>());
  for (auto k : ks) fs.erase(fs.begin() + k);
  return fs;
}

std::vector<FormulaPtr> cat(std::vector<FormulaPtr> a, const std::vector<FormulaPtr>& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

Kind need_kind(const FormulaPtr& f) {
  try {
    return kind_of(*f);
  } catch (const PolarityError& e) {
    throw Fail(e.what());
  }
}

void expect(bool cond, const std::string& msg) {
  if (!cond) throw Fail(msg);
}

void validate_sequent(const Sequent& s) {
  for (const auto& f : s.delta) expect(need_kind(f) == Kind::N, "left formula " + f->str() + " is not negative");
  for (const auto& f : s.gamma) expect(need_kind(f) == Kind::B, "formula " + f->str() + " is not a behavior");
  if (s.theta) expect(need_kind(s.theta) == Kind::N, "formula " + s.theta->str() + " after ';' is not negative");
  std::map<int64_t, std::string> owner;
  auto claim = [&](const FormulaPtr& f) {
    for (auto b : location(*f)) {
      auto [it, fresh] = owner.emplace(b, f->str());
      expect(fresh, "locations of " + it->second + " and " + f->str() + " overlap at [" + std::to_string(b) + "," +
                        std::to_string(b + 1) + ")");
    }
  };
  for (const auto& f : s.delta) claim(f);
  for (const auto& f : s.gamma) claim(f);
  if (s.theta) claim(s.theta);
}

bool eqf(const FormulaPtr& a, const FormulaPtr& b) { return equal(*a, *b); }

bool same_list(const std::vector<FormulaPtr>& a, const std::vector<FormulaPtr>& b) {
  if (a.size() != b.size()) return false;
  for (size_t k = 0; k < a.size(); ++k)
    if (!eqf(a[k], b[k])) return false;
  return true;
}

// Matches C against its instance D = C[A/X_i]; records each substituted
// occurrence as (location of the instance, unit of X_i(j)).
void match_instance(const FormulaPtr& C, const FormulaPtr& D, uint32_t name, bool bound,
                    std::vector<FormulaPtr>& witnesses, std::vector<std::pair<std::vector<int64_t>, int64_t>>& occ) {
  if (bound && (C->op == Op::Var || C->op == Op::NVar) && C->i == name) {
    FormulaPtr A = C->op == Op::Var ? D : dual(D);
    witnesses.push_back(A);
    occ.emplace_back(location(*D), variable_base(C->i, C->j));
    return;
  }
  expect(C->op == D->op && C->i == D->i && C->j == D->j && C->at == D->at && C->kids.size() == D->kids.size(),
         "premise formula is not an instance of the quantified formula");
  bool inner = bound && !((C->op == Op::Forall || C->op == Op::Exists) && C->i == name);
  for (size_t k = 0; k < C->kids.size(); ++k) match_instance(C->kids[k], D->kids[k], name, inner, witnesses, occ);
}

Sequent infer_node(const Proof& p, const std::vector<Sequent>& ps) {
  const auto& ix = p.idx;
  switch (p.rule) {
    case Rule::Ax: {
      expect(ix[0] >= 0 && ix[0] <= 40, "variable name out of range");
      return Sequent{{}, {mk_nvar(uint32_t(ix[0]), ix[1]), mk_var(uint32_t(ix[0]), ix[2])}, nullptr};
    }
    case Rule::Cut: {
      const auto &a = ps[0], &b = ps[1];
      auto B = pick(a.gamma, ix[0], "the left premise");
      auto Bd = pick(b.gamma, ix[1], "the right premise");
      expect(eqf(dual(B), Bd), "cut formulas " + B->str() + " and " + Bd->str() + " are not dual");
      expect(!b.theta, "the right premise of cut must have an empty Θ");
      return Sequent{cat(a.delta, b.delta), cat(drop(a.gamma, {ix[0]}), drop(b.gamma, {ix[1]})), a.theta};
    }
    case Rule::CutPol: {
      const auto &a = ps[0], &b = ps[1];
      expect(bool(a.theta), "the left premise of cut^pol must end with ; N");
      auto N = pick(b.delta, ix[0], "the left side of the right premise");
      expect(eqf(a.theta, N), "cut formulas " + a.theta->str() + " and " + N->str() + " differ");
      return Sequent{cat(a.delta, drop(b.delta, {ix[0]})), cat(a.gamma, b.gamma), b.theta};
    }
    case Rule::Tensor: {
      const auto &a = ps[0], &b = ps[1];
      auto B1 = pick(a.gamma, ix[0], "the left premise");
      auto B2 = pick(b.gamma, ix[1], "the right premise");
      expect(!b.theta, "the right premise of ⊗ must have an empty Θ");
      return Sequent{cat(a.delta, b.delta),
                     cat(cat(drop(a.gamma, {ix[0]}), drop(b.gamma, {ix[1]})), {mk_binary(Op::Tensor, B1, B2)}),
                     a.theta};
    }
    case Rule::Par: {
      const auto& a = ps[0];
      auto B1 = pick(a.gamma, ix[0], "Γ");
      auto B2 = pick(a.gamma, ix[1], "Γ");
      expect(ix[0] != ix[1], "the two ⅋ formulas must be distinct");
      return Sequent{a.delta, cat(drop(a.gamma, {ix[0], ix[1]}), {mk_binary(Op::Par, B1, B2)}), a.theta};
    }
    case Rule::TensorL: {
      const auto& a = ps[0];
      auto N1 = pick(a.delta, ix[0], "Δ");
      auto N2 = pick(a.delta, ix[1], "Δ");
      expect(ix[0] != ix[1], "the two ⊗ formulas must be distinct");
      return Sequent{cat(drop(a.delta, {ix[0], ix[1]}), {mk_binary(Op::Tensor, N1, N2)}), a.gamma, a.theta};
    }
    case Rule::TensorR: {
      const auto &a = ps[0], &b = ps[1];
      expect(a.theta && b.theta, "both premises of ⊗^pol_d must end with ; N");
      return Sequent{cat(a.delta, b.delta), cat(a.gamma, b.gamma), mk_binary(Op::Tensor, a.theta, b.theta)};
    }
    case Rule::ParR: {
      const auto& a = ps[0];
      auto P1d = pick(a.delta, ix[0], "Δ");
      expect(bool(a.theta), "the premise of ⅋^pol_d must end with ; N");
      return Sequent{drop(a.delta, {ix[0]}), a.gamma, mk_binary(Op::Par, dual(P1d), a.theta)};
    }
    case Rule::ParL: {
      const auto &a = ps[0], &b = ps[1];
      expect(bool(a.theta), "the left premise of ⅋^pol_g must end with ; P^⊥");
      auto N2 = pick(b.delta, ix[0], "Δ of the right premise");
      return Sequent{cat(cat(a.delta, drop(b.delta, {ix[0]})), {mk_binary(Op::Par, dual(a.theta), N2)}),
                     cat(a.gamma, b.gamma), b.theta};
    }
    case Rule::ParMix: {
      const auto& a = ps[0];
      auto Pd = pick(a.delta, ix[0], "Δ");
      auto B = pick(a.gamma, ix[1], "Γ");
      return Sequent{drop(a.delta, {ix[0]}), cat(drop(a.gamma, {ix[1]}), {mk_binary(Op::Par, dual(Pd), B)}),
                     a.theta};
    }
    case Rule::TensorMix: {
      const auto &a = ps[0], &b = ps[1];
      expect(bool(a.theta), "the left premise of ⊗^mix must end with ; N");
      auto B = pick(b.gamma, ix[0], "Γ of the right premise");
      return Sequent{cat(a.delta, b.delta), cat(cat(a.gamma, drop(b.gamma, {ix[0]})), {mk_binary(Op::Tensor, a.theta, B)}),
                     b.theta};
    }
    case Rule::OneR: return Sequent{{}, {}, mk_const(Op::One)};
    case Rule::OneL: return Sequent{cat(ps[0].delta, {mk_const(Op::One)}), ps[0].gamma, ps[0].theta};
    case Rule::Plus1:
    case Rule::Plus2: {
      const auto& a = ps[0];
      auto B = pick(a.gamma, ix[0], "Γ");
      auto F = p.forms[0];
      expect(need_kind(F) == Kind::B, "⊕ is introduced between behaviors only");
      auto S = p.rule == Rule::Plus1 ? mk_binary(Op::Plus, B, F) : mk_binary(Op::Plus, F, B);
      return Sequent{a.delta, cat(drop(a.gamma, {ix[0]}), {S}), a.theta};
    }
    case Rule::With: {
      const auto &a = ps[0], &b = ps[1];
      auto B1 = pick(a.gamma, ix[0], "Γ of the left premise");
      auto B2 = pick(b.gamma, ix[1], "Γ of the right premise");
      auto g = drop(a.gamma, {ix[0]});
      expect(same_list(g, drop(b.gamma, {ix[1]})) && same_list(a.delta, b.delta) &&
                 bool(a.theta) == bool(b.theta) && (!a.theta || eqf(a.theta, b.theta)),
             "the premises of & must share their context");
      return Sequent{a.delta, cat(g, {mk_binary(Op::With, B1, B2)}), a.theta};
    }
    case Rule::Top: {
      expect(p.forms[0]->op == Op::Top, "the ⊤ rule introduces a ⊤ formula");
      return Sequent{p.ctx.delta, cat(p.ctx.gamma, {p.forms[0]}), p.ctx.theta};
    }
    case Rule::Oc:
    case Rule::OcPol: {
      const auto& a = ps[0];
      std::vector<FormulaPtr> gamma = a.gamma;
      FormulaPtr main;
      if (p.rule == Rule::Oc) {
        expect(!a.theta, "the premise of ! must have an empty Θ");
        main = pick(a.gamma, ix[0], "Γ");
        gamma = drop(a.gamma, {ix[0]});
      } else {
        expect(bool(a.theta), "the premise of !^pol must end with ; N");
        main = a.theta;
      }
      std::vector<FormulaPtr> delta;
      for (const auto& d : a.delta) delta.push_back(mk_unary(Op::Oc, d));
      for (const auto& g : gamma) delta.push_back(mk_unary(Op::Oc, dual(g)));
      return Sequent{delta, {}, mk_unary(Op::Oc, main)};
    }
    case Rule::Ctr: {
      const auto& a = ps[0];
      auto X = pick(a.delta, ix[0], "Δ");
      auto Y = pick(a.delta, ix[1], "Δ");
      auto F = p.forms[0];
      expect(ix[0] != ix[1], "contraction needs two distinct formulas");
      expect(X->op == Op::Oc && Y->op == Op::Oc && F->op == Op::Oc, "contraction applies to formulas !B");
      expect(need_kind(X->kids[0]) == Kind::B,
             "the contracted formula " + X->str() + " is !" + to_string(need_kind(X->kids[0])) +
                 ", but contraction requires B to be a behavior");
      expect(same_shape(*X, *Y) && same_shape(*X, *F), "contracted formulas differ: " + X->str() + ", " + Y->str() +
                                                          " into " + F->str());
      std::set<int64_t> used;
      for (const auto& f : {X, Y})
        for (auto b : location(*f)) used.insert(b);
      for (auto b : location(*F))
        expect(!used.count(b), "the contracted formula " + F->str() + " must have a fresh location");
      return Sequent{cat(drop(a.delta, {ix[0], ix[1]}), {F}), a.gamma, a.theta};
    }
    case Rule::Weak: {
      const auto& a = ps[0];
      expect(need_kind(p.forms[0]) == Kind::N, "weakening introduces a negative formula");
      return Sequent{cat(a.delta, {p.forms[0]}), a.gamma, a.theta};
    }
    case Rule::Forall: {
      const auto& a = ps[0];
      auto C = pick(a.gamma, ix[0], "Γ");
      expect(ix[1] >= 0 && ix[1] <= 40, "variable name out of range");
      uint32_t name = uint32_t(ix[1]);
      Sequent rest{a.delta, drop(a.gamma, {ix[0]}), a.theta};
      auto check = [&](const FormulaPtr& f) {
        expect(!free_names(*f).count(name),
               "X" + std::to_string(name) + " is free in the context formula " + f->str());
      };
      for (const auto& f : rest.delta) check(f);
      for (const auto& f : rest.gamma) check(f);
      if (rest.theta) check(rest.theta);
      return Sequent{a.delta, cat(rest.gamma, {mk_quant(Op::Forall, name, C)}), a.theta};
    }
    case Rule::Exists: {
      const auto& a = ps[0];
      auto D = pick(a.gamma, ix[0], "Γ");
      auto F = p.forms[0];
      expect(F->op == Op::Exists, "the ∃ rule introduces an ∃ formula");
      std::vector<FormulaPtr> ws;
      std::vector<std::pair<std::vector<int64_t>, int64_t>> occ;
      match_instance(F->kids[0], D, F->i, true, ws, occ);
      for (const auto& w : ws) {
        expect(need_kind(w) == Kind::B, "the witness " + w->str() + " is not a behavior");
        expect(same_shape(*w, *ws[0]), "the witnesses " + ws[0]->str() + " and " + w->str() + " differ");
      }
      for (const auto& [from, to] : occ) expect(!from.empty(), "a witness occurrence has an empty location");
      return Sequent{a.delta, cat(drop(a.gamma, {ix[0]}), {F}), a.theta};
    }
  }
  throw Fail("unknown rule");
}

std::optional<Sequent> infer(const Proof& p, const std::string& pos, std::vector<Diagnostic>& out) {
  std::vector<Sequent> ps;
  bool ok = true;
  for (size_t k = 0; k < p.premises.size(); ++k) {
    auto s = infer(*p.premises[k], pos + "." + std::to_string(k), out);
    if (s) ps.push_back(std::move(*s));
    else ok = false;
  }
  if (!ok) return std::nullopt;
  try {
    if (p.rule == Rule::Top) validate_sequent(Sequent{p.ctx.delta, p.ctx.gamma, p.ctx.theta});
    Sequent s = infer_node(p, ps);
    validate_sequent(s);
    return s;
  } catch (const Fail& f) {
    out.push_back(Diagnostic{rule_label(p.rule), pos, f.msg, p.line, p.col});
    return std::nullopt;
  } catch (const std::invalid_argument& e) {
    out.push_back(Diagnostic{rule_label(p.rule), pos, e.what(), p.line, p.col});
    return std::nullopt;
  }
}

}  // namespace

CheckResult check_proof(const Proof& p) {
  CheckResult r;
  r.conclusion = infer(p, "root", r.diagnostics);
  return r;
}

Sequent conclusion(const Proof& p) {
  auto r = check_proof(p);
  if (!r.ok()) throw ProofError(r.diagnostics.front());
  return *r.conclusion;
}

std::vector<std::pair<std::vector<int64_t>, int64_t>> witness_occurrences(const Proof& p) {
  if (p.rule != Rule::Exists) throw std::invalid_argument("witness_occurrences expects an ∃ node");
  Sequent s = conclusion(*p.premises[0]);
  std::vector<FormulaPtr> ws;
  std::vector<std::pair<std::vector<int64_t>, int64_t>> occ;
  const auto& F = p.forms[0];
  try {
    match_instance(F->kids[0], s.gamma.at(size_t(p.idx[0])), F->i, true, ws, occ);
  } catch (const Fail& f) {
    throw std::invalid_argument(f.msg);
  }
  return occ;
}

bool uses_rule(const Proof& p, Rule r) { return count_rules(p, r) > 0; }

size_t count_rules(const Proof& p, Rule r) {
  size_t n = p.rule == r;
  for (const auto& q : p.premises) n += count_rules(*q, r);
  return n;
}

// ---------------------------------------------------------------------------
// Cut reduction

namespace {

int64_t index_in(const std::vector<FormulaPtr>& fs, const FormulaPtr& f) {
  for (size_t k = 0; k < fs.size(); ++k)
    if (eqf(fs[k], f)) return int64_t(k);
  throw std::logic_error("formula " + f->str() + " not found during cut reduction");
}

ProofPtr node(Rule r, std::vector<ProofPtr> ps, std::vector<int64_t> idx, std::vector<FormulaPtr> forms = {}) {
  auto p = std::make_shared<Proof>();
  p->rule = r;
  p->premises = std::move(ps);
  p->idx = std::move(idx);
  p->forms = std::move(forms);
  return p;
}

ProofPtr cut_node(const ProofPtr& a, const ProofPtr& b, const FormulaPtr& B) {
  Sequent sa = conclusion(*a), sb = conclusion(*b);
  return node(Rule::Cut, {a, b}, {index_in(sa.gamma, B), index_in(sb.gamma, dual(B))});
}

void collect_occurrences(const Formula& f, std::set<std::pair<uint32_t, int64_t>>& out) {
  if (f.op == Op::Var || f.op == Op::NVar) out.insert({f.i, f.j});
  for (const auto& k : f.kids) collect_occurrences(*k, out);
}

void collect_occurrences(const Proof& p, std::set<std::pair<uint32_t, int64_t>>& out) {
  if (p.rule == Rule::Ax) {
    out.insert({uint32_t(p.idx[0]), p.idx[1]});
    out.insert({uint32_t(p.idx[0]), p.idx[2]});
  }
  for (const auto& f : p.forms) collect_occurrences(*f, out);
  for (const auto& f : p.ctx.delta) collect_occurrences(*f, out);
  for (const auto& f : p.ctx.gamma) collect_occurrences(*f, out);
  if (p.ctx.theta) collect_occurrences(*p.ctx.theta, out);
  for (const auto& q : p.premises) collect_occurrences(*q, out);
}

ProofPtr rename_proof(const ProofPtr& p, uint32_t i, int64_t from, int64_t to) {
  auto q = std::make_shared<Proof>(*p);
  if (q->rule == Rule::Ax && q->idx[0] == int64_t(i)) {
    if (q->idx[1] == from) q->idx[1] = to;
    if (q->idx[2] == from) q->idx[2] = to;
  }
  auto ren = [&](FormulaPtr& f) {
    if (f) f = rename_occurrences(f, i, from, to);
  };
  for (auto& f : q->forms) ren(f);
  for (auto& f : q->ctx.delta) ren(f);
  for (auto& f : q->ctx.gamma) ren(f);
  ren(q->ctx.theta);
  for (auto& c : q->premises) c = rename_proof(c, i, from, to);
  return q;
}

// p with occurrence (i, from) renamed to (i, to); nullopt when (i, to) is
// already used inside p.
std::optional<ProofPtr> relocate_occurrence(const ProofPtr& p, uint32_t i, int64_t from, int64_t to) {
  std::set<std::pair<uint32_t, int64_t>> used;
  collect_occurrences(*p, used);
  if (used.count({i, to})) return std::nullopt;
  return rename_proof(p, i, from, to);
}

// Which premise list each integer argument of a rule points into.
struct Slot {
  int premise;  // -1: not an index
  char side;    // 'D' or 'G'
};

std::vector<Slot> slots_of(Rule r) {
  switch (r) {
    case Rule::Cut:
    case Rule::Tensor:
    case Rule::With: return {{0, 'G'}, {1, 'G'}};
    case Rule::CutPol:
    case Rule::ParL: return {{1, 'D'}};
    case Rule::Par: return {{0, 'G'}, {0, 'G'}};
    case Rule::TensorL:
    case Rule::Ctr: return {{0, 'D'}, {0, 'D'}};
    case Rule::ParR: return {{0, 'D'}};
    case Rule::ParMix: return {{0, 'D'}, {0, 'G'}};
    case Rule::TensorMix: return {{1, 'G'}};
    case Rule::Plus1:
    case Rule::Plus2:
    case Rule::Oc:
    case Rule::Exists: return {{0, 'G'}};
    case Rule::Forall: return {{0, 'G'}, {-1, '-'}};
    default: return {};
  }
}

// Re-resolve the indices of p after its premises changed to `now` (the same
// formulas, possibly in another order).
ProofPtr reindex(const Proof& p, const std::vector<Sequent>& before, const std::vector<ProofPtr>& now) {
  auto q = std::make_shared<Proof>(p);
  q->premises = now;
  std::vector<Sequent> after;
  for (const auto& c : now) after.push_back(conclusion(*c));
  auto slots = slots_of(p.rule);
  for (size_t k = 0; k < slots.size(); ++k) {
    auto [pr, side] = slots[k];
    if (pr < 0) continue;
    const auto& old_list = side == 'D' ? before[size_t(pr)].delta : before[size_t(pr)].gamma;
    const auto& new_list = side == 'D' ? after[size_t(pr)].delta : after[size_t(pr)].gamma;
    q->idx[k] = index_in(new_list, old_list[size_t(p.idx[k])]);
  }
  return q;
}

bool commutes(Rule r) {
  switch (r) {
    case Rule::Par:
    case Rule::TensorL:
    case Rule::ParMix:
    case Rule::OneL:
    case Rule::Weak:
    case Rule::Forall:
    case Rule::Plus1:
    case Rule::Plus2:
    case Rule::Exists: return true;
    default: return false;
  }
}

// R(sigma) cut against other: push the cut above R. `left` says whether R's
// proof is the left premise of the cut.
std::optional<ProofPtr> commute(const ProofPtr& rp, const ProofPtr& other, const FormulaPtr& cutf, bool left) {
  if (!commutes(rp->rule)) return std::nullopt;
  const ProofPtr& sigma = rp->premises[0];
  Sequent s = conclusion(*sigma);
  FormulaPtr mine = left ? cutf : dual(cutf);
  bool present = false;
  for (const auto& g : s.gamma) present = present || eqf(g, mine);
  if (!present) return std::nullopt;
  ProofPtr inner = left ? cut_node(sigma, other, cutf) : cut_node(other, sigma, cutf);
  ProofPtr out = reindex(*rp, {s}, {inner});
  if (!check_proof(*out).ok()) return std::nullopt;
  return out;
}

std::optional<ProofPtr> reduce_here(const ProofPtr& p) {
  if (p->rule == Rule::CutPol) {
    const auto &a = p->premises[0], &b = p->premises[1];
    if (a->rule == Rule::OneR && b->rule == Rule::OneL) return b->premises[0];
    return std::nullopt;
  }
  if (p->rule != Rule::Cut) return std::nullopt;
  const auto &a = p->premises[0], &b = p->premises[1];
  Sequent sa = conclusion(*a), sb = conclusion(*b);
  FormulaPtr B = sa.gamma[size_t(p->idx[0])];

  if (b->rule == Rule::Ax) {
    uint32_t i = uint32_t(b->idx[0]);
    if (B->op == Op::Var && B->j == b->idx[1]) return relocate_occurrence(a, i, b->idx[1], b->idx[2]);
    if (B->op == Op::NVar && B->j == b->idx[2]) return relocate_occurrence(a, i, b->idx[2], b->idx[1]);
  }
  if (a->rule == Rule::Ax) {
    uint32_t i = uint32_t(a->idx[0]);
    if (B->op == Op::Var && B->j == a->idx[2]) return relocate_occurrence(b, i, a->idx[2], a->idx[1]);
    if (B->op == Op::NVar && B->j == a->idx[1]) return relocate_occurrence(b, i, a->idx[1], a->idx[2]);
  }

  auto introduced_last = [](const ProofPtr& q, const Sequent& s, const FormulaPtr& f) {
    return !s.gamma.empty() && eqf(s.gamma.back(), f) && (q->rule == Rule::Tensor || q->rule == Rule::Par);
  };
  if (B->op == Op::Tensor && a->rule == Rule::Tensor && b->rule == Rule::Par && introduced_last(a, sa, B) &&
      introduced_last(b, sb, dual(B))) {
    const auto &s1 = a->premises[0], &s2 = a->premises[1], &rho = b->premises[0];
    ProofPtr inner = cut_node(rho, s2, dual(B->kids[1]));
    return cut_node(s1, inner, B->kids[0]);
  }
  if (B->op == Op::Par && a->rule == Rule::Par && b->rule == Rule::Tensor && introduced_last(a, sa, B) &&
      introduced_last(b, sb, dual(B))) {
    const auto &rho = a->premises[0], &s1 = b->premises[0], &s2 = b->premises[1];
    ProofPtr inner = cut_node(rho, s1, B->kids[0]);
    return cut_node(inner, s2, B->kids[1]);
  }

  if (auto r = commute(a, b, B, true)) return r;
  if (auto r = commute(b, a, B, false)) return r;
  return std::nullopt;
}

}  // namespace

std::optional<ProofPtr> reduce_step(const ProofPtr& p) {
  if (auto r = reduce_here(p)) return r;
  for (size_t k = 0; k < p->premises.size(); ++k)
    if (auto r = reduce_step(p->premises[k])) {
      std::vector<Sequent> before;
      for (const auto& c : p->premises) before.push_back(conclusion(*c));
      auto now = p->premises;
      now[k] = *r;
      return reindex(*p, before, now);
    }
  return std::nullopt;
}

}  // namespace goi
