#include "goi/formula.hpp"

#include <cctype>
#include <map>

namespace goi {

std::string Sexp::str() const {
  if (atom) return text;
  std::string s = "(";
  for (size_t k = 0; k < items.size(); ++k) s += (k ? " " : "") + items[k].str();
  return s + ")";
}

namespace {

class Reader {
 public:
  explicit Reader(const std::string& t) : t_(t) {}

  bool at_end() {
    skip();
    return pos_ >= t_.size();
  }

  Sexp read() {
    skip();
    if (pos_ >= t_.size()) throw SyntaxError("unexpected end of input", line_, col_);
    Sexp s;
    s.line = line_;
    s.col = col_;
    char c = t_[pos_];
    if (c == ')') throw SyntaxError("unexpected ')'", line_, col_);
    if (c == '(') {
      advance();
      while (true) {
        skip();
        if (pos_ >= t_.size()) throw SyntaxError("unclosed '('", s.line, s.col);
        if (t_[pos_] == ')') {
          advance();
          return s;
        }
        s.items.push_back(read());
      }
    }
    s.atom = true;
    while (pos_ < t_.size() && !std::isspace(static_cast<unsigned char>(t_[pos_])) && t_[pos_] != '(' &&
           t_[pos_] != ')' && t_[pos_] != ';') {
      s.text += t_[pos_];
      advance();
    }
    return s;
  }

 private:
  const std::string& t_;
  size_t pos_ = 0, line_ = 1, col_ = 1;

  void advance() {
    if (t_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }
  void skip() {
    while (pos_ < t_.size()) {
      if (t_[pos_] == ';') {
        while (pos_ < t_.size() && t_[pos_] != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(t_[pos_]))) {
        advance();
      } else {
        break;
      }
    }
  }
};

const std::map<std::string, Op>& op_names() {
  static const std::map<std::string, Op> m = {
      {"var", Op::Var},       {"nvar", Op::NVar},     {"zero", Op::Zero},     {"top", Op::Top},
      {"one", Op::One},       {"bot", Op::Bot},       {"tensor", Op::Tensor}, {"par", Op::Par},
      {"plus", Op::Plus},     {"with", Op::With},     {"oc", Op::Oc},         {"wn", Op::Wn},
      {"forall", Op::Forall}, {"exists", Op::Exists}};
  return m;
}

std::string op_name(Op op) {
  for (const auto& [k, v] : op_names())
    if (v == op) return k;
  return "?";
}

int64_t to_int(const Sexp& s) {
  if (!s.atom) throw SyntaxError("expected an integer", s.line, s.col);
  try {
    size_t used = 0;
    long long v = std::stoll(s.text, &used);
    if (used != s.text.size()) throw std::invalid_argument("");
    return v;
  } catch (const std::exception&) {
    throw SyntaxError("expected an integer, got '" + s.text + "'", s.line, s.col);
  }
}

}  // namespace

std::vector<Sexp> parse_sexps(const std::string& text) {
  Reader r(text);
  std::vector<Sexp> out;
  while (!r.at_end()) out.push_back(r.read());
  return out;
}

Sexp parse_sexp(const std::string& text) {
  auto all = parse_sexps(text);
  if (all.size() != 1) throw SyntaxError("expected exactly one expression", 1, 1);
  return all[0];
}

std::string to_string(Kind k) {
  switch (k) {
    case Kind::B: return "B";
    case Kind::N: return "N";
    case Kind::P: return "P";
  }
  return "?";
}

std::string Formula::str() const {
  switch (op) {
    case Op::Var:
    case Op::NVar: return "(" + op_name(op) + " " + std::to_string(i) + " " + std::to_string(j) + ")";
    case Op::Zero:
    case Op::Top:
    case Op::One:
    case Op::Bot: {
      if (at.empty()) return op_name(op);
      std::string s = "(" + op_name(op);
      for (auto b : at) s += " " + std::to_string(b);
      return s + ")";
    }
    case Op::Forall:
    case Op::Exists: return "(" + op_name(op) + " " + std::to_string(i) + " " + kids[0]->str() + ")";
    default: {
      std::string s = "(" + op_name(op);
      for (const auto& k : kids) s += " " + k->str();
      return s + ")";
    }
  }
}

FormulaPtr Formula::from_sexp(const Sexp& s) {
  if (s.atom) {
    auto it = op_names().find(s.text);
    if (it == op_names().end() || !(it->second == Op::Zero || it->second == Op::Top || it->second == Op::One ||
                                    it->second == Op::Bot))
      throw SyntaxError("unknown formula '" + s.text + "'", s.line, s.col);
    return mk_const(it->second);
  }
  if (s.items.empty() || !s.items[0].atom) throw SyntaxError("expected a connective", s.line, s.col);
  auto it = op_names().find(s.items[0].text);
  if (it == op_names().end()) throw SyntaxError("unknown connective '" + s.items[0].text + "'", s.line, s.col);
  Op op = it->second;
  auto arity = [&](size_t n) {
    if (s.items.size() != n + 1)
      throw SyntaxError(op_name(op) + " takes " + std::to_string(n) + " arguments", s.line, s.col);
  };
  switch (op) {
    case Op::Var:
    case Op::NVar: {
      arity(2);
      int64_t i = to_int(s.items[1]);
      if (i < 0 || i > 40) throw SyntaxError("variable name out of range", s.items[1].line, s.items[1].col);
      return op == Op::Var ? mk_var(uint32_t(i), to_int(s.items[2])) : mk_nvar(uint32_t(i), to_int(s.items[2]));
    }
    case Op::Zero:
    case Op::Top:
    case Op::One:
    case Op::Bot: {
      if ((op == Op::One || op == Op::Bot) && s.items.size() > 1)
        throw SyntaxError(op_name(op) + " has an empty location", s.line, s.col);
      std::vector<int64_t> at;
      for (size_t k = 1; k < s.items.size(); ++k) at.push_back(to_int(s.items[k]));
      return mk_const(op, std::move(at));
    }
    case Op::Oc:
    case Op::Wn: arity(1); return mk_unary(op, from_sexp(s.items[1]));
    case Op::Forall:
    case Op::Exists: {
      arity(2);
      int64_t i = to_int(s.items[1]);
      if (i < 0 || i > 40) throw SyntaxError("variable name out of range", s.items[1].line, s.items[1].col);
      return mk_quant(op, uint32_t(i), from_sexp(s.items[2]));
    }
    default: arity(2); return mk_binary(op, from_sexp(s.items[1]), from_sexp(s.items[2]));
  }
}

FormulaPtr Formula::parse(const std::string& text) { return from_sexp(parse_sexp(text)); }

FormulaPtr mk_var(uint32_t i, int64_t j) { return std::make_shared<Formula>(Formula{Op::Var, i, j, {}, {}}); }
FormulaPtr mk_nvar(uint32_t i, int64_t j) { return std::make_shared<Formula>(Formula{Op::NVar, i, j, {}, {}}); }
FormulaPtr mk_unary(Op op, FormulaPtr a) { return std::make_shared<Formula>(Formula{op, 0, 0, {}, {std::move(a)}}); }
FormulaPtr mk_binary(Op op, FormulaPtr a, FormulaPtr b) {
  return std::make_shared<Formula>(Formula{op, 0, 0, {}, {std::move(a), std::move(b)}});
}
FormulaPtr mk_quant(Op op, uint32_t i, FormulaPtr a) {
  return std::make_shared<Formula>(Formula{op, i, 0, {}, {std::move(a)}});
}
FormulaPtr mk_const(Op op, std::vector<int64_t> at) {
  return std::make_shared<Formula>(Formula{op, 0, 0, std::move(at), {}});
}

Kind kind_of(const Formula& f) {
  auto bad = [&](const std::string& why) { throw PolarityError(why + " in " + f.str()); };
  switch (f.op) {
    case Op::Var:
    case Op::NVar:
    case Op::Zero:
    case Op::Top: return Kind::B;
    case Op::One: return Kind::N;
    case Op::Bot: return Kind::P;
    case Op::Forall:
    case Op::Exists:
      if (kind_of(*f.kids[0]) != Kind::B) bad("quantifiers apply to behaviors only");
      return Kind::B;
    case Op::Oc:
      if (kind_of(*f.kids[0]) == Kind::P) bad("no production !P");
      return Kind::N;
    case Op::Wn:
      if (kind_of(*f.kids[0]) == Kind::N) bad("no production ?N");
      return Kind::P;
    default: break;
  }
  Kind a = kind_of(*f.kids[0]), b = kind_of(*f.kids[1]);
  auto pair = [&](Kind x, Kind y) { return (a == x && b == y) || (a == y && b == x); };
  switch (f.op) {
    case Op::Tensor:
      if (a == b && a != Kind::P) return a;
      if (pair(Kind::B, Kind::N)) return Kind::B;
      if (pair(Kind::N, Kind::P)) return Kind::P;
      bad("no production " + to_string(a) + "⊗" + to_string(b));
      break;
    case Op::Par:
      if (a == b && a != Kind::N) return a;
      if (pair(Kind::B, Kind::P)) return Kind::B;
      if (pair(Kind::N, Kind::P)) return Kind::N;
      bad("no production " + to_string(a) + "⅋" + to_string(b));
      break;
    case Op::Plus:
    case Op::With:
      if (a == b) return a;
      bad(std::string("no production ") + to_string(a) + (f.op == Op::Plus ? "⊕" : "&") + to_string(b));
      break;
    default: break;
  }
  bad("malformed formula");
  return Kind::B;
}

std::optional<Kind> try_kind(const Formula& f) {
  try {
    return kind_of(f);
  } catch (const PolarityError&) {
    return std::nullopt;
  }
}

FormulaPtr dual(const FormulaPtr& f) {
  switch (f->op) {
    case Op::Var: return mk_nvar(f->i, f->j);
    case Op::NVar: return mk_var(f->i, f->j);
    case Op::Zero: return mk_const(Op::Top, f->at);
    case Op::Top: return mk_const(Op::Zero, f->at);
    case Op::One: return mk_const(Op::Bot);
    case Op::Bot: return mk_const(Op::One);
    case Op::Tensor: return mk_binary(Op::Par, dual(f->kids[0]), dual(f->kids[1]));
    case Op::Par: return mk_binary(Op::Tensor, dual(f->kids[0]), dual(f->kids[1]));
    case Op::Plus: return mk_binary(Op::With, dual(f->kids[0]), dual(f->kids[1]));
    case Op::With: return mk_binary(Op::Plus, dual(f->kids[0]), dual(f->kids[1]));
    case Op::Oc: return mk_unary(Op::Wn, dual(f->kids[0]));
    case Op::Wn: return mk_unary(Op::Oc, dual(f->kids[0]));
    case Op::Forall: return mk_quant(Op::Exists, f->i, dual(f->kids[0]));
    case Op::Exists: return mk_quant(Op::Forall, f->i, dual(f->kids[0]));
  }
  return f;
}

bool equal(const Formula& a, const Formula& b) {
  if (a.op != b.op || a.i != b.i || a.j != b.j || a.at != b.at || a.kids.size() != b.kids.size()) return false;
  for (size_t k = 0; k < a.kids.size(); ++k)
    if (!equal(*a.kids[k], *b.kids[k])) return false;
  return true;
}

bool same_shape(const Formula& a, const Formula& b) {
  if (a.op != b.op || a.i != b.i || a.kids.size() != b.kids.size()) return false;
  for (size_t k = 0; k < a.kids.size(); ++k)
    if (!same_shape(*a.kids[k], *b.kids[k])) return false;
  return true;
}

int64_t variable_base(uint32_t i, int64_t j) { return (int64_t(1) << i) * (2 * j + 1); }

namespace {

void collect(const Formula& f, std::vector<int64_t>& out) {
  switch (f.op) {
    case Op::Var:
    case Op::NVar: out.push_back(variable_base(f.i, f.j)); return;
    case Op::Zero:
    case Op::Top: out.insert(out.end(), f.at.begin(), f.at.end()); return;
    default:
      for (const auto& k : f.kids) collect(*k, out);
  }
}

void collect_free(const Formula& f, std::set<uint32_t>& bound, std::set<uint32_t>& out) {
  if (f.op == Op::Var || f.op == Op::NVar) {
    if (!bound.count(f.i)) out.insert(f.i);
    return;
  }
  if (f.op == Op::Forall || f.op == Op::Exists) {
    bool fresh = bound.insert(f.i).second;
    collect_free(*f.kids[0], bound, out);
    if (fresh) bound.erase(f.i);
    return;
  }
  for (const auto& k : f.kids) collect_free(*k, bound, out);
}

}  // namespace

std::vector<int64_t> location(const Formula& f) {
  std::vector<int64_t> out;
  collect(f, out);
  return out;
}

void check_location(const Formula& f) {
  auto loc = location(f);
  std::set<int64_t> seen;
  for (auto b : loc)
    if (!seen.insert(b).second)
      throw std::invalid_argument("location [" + std::to_string(b) + "," + std::to_string(b + 1) +
                                  ") used twice in " + f.str());
}

std::set<uint32_t> free_names(const Formula& f) {
  std::set<uint32_t> bound, out;
  collect_free(f, bound, out);
  return out;
}

FormulaPtr rename_occurrences(const FormulaPtr& f, uint32_t i, int64_t from, int64_t to) {
  if ((f->op == Op::Var || f->op == Op::NVar) && f->i == i && f->j == from)
    return f->op == Op::Var ? mk_var(i, to) : mk_nvar(i, to);
  if (f->kids.empty()) return f;
  auto g = std::make_shared<Formula>(*f);
  for (auto& k : g->kids) k = rename_occurrences(k, i, from, to);
  return g;
}

}  // namespace goi
