#pragma once

// Formulas of polarized elementary linear logic with localized variables.

#include <cstdint>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace goi {

// Minimal S-expressions: atoms and lists, ';' comments to end of line.
struct Sexp {
  bool atom = false;
  std::string text;           // atom text
  std::vector<Sexp> items;    // list items
  size_t line = 1, col = 1;   // position of the first character

  std::string str() const;
};

class SyntaxError : public std::runtime_error {
 public:
  SyntaxError(const std::string& msg, size_t line, size_t col)
      : std::runtime_error(std::to_string(line) + ":" + std::to_string(col) + ": " + msg), line(line), col(col) {}
  size_t line, col;
};

/// All top-level expressions of a text.
std::vector<Sexp> parse_sexps(const std::string& text);
Sexp parse_sexp(const std::string& text);

enum class Op { Var, NVar, Zero, Top, One, Bot, Tensor, Par, Plus, With, Oc, Wn, Forall, Exists };
enum class Kind { B, N, P };
std::string to_string(Kind k);

struct Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

struct Formula {
  Op op;
  uint32_t i = 0;              // variable name (Var, NVar, Forall, Exists)
  int64_t j = 0;               // occurrence index (Var, NVar)
  std::vector<int64_t> at;     // explicit location of 0 and T
  std::vector<FormulaPtr> kids;

  std::string str() const;
  static FormulaPtr parse(const std::string& text);
  static FormulaPtr from_sexp(const Sexp& s);
};

FormulaPtr mk_var(uint32_t i, int64_t j);
FormulaPtr mk_nvar(uint32_t i, int64_t j);
FormulaPtr mk_unary(Op op, FormulaPtr a);
FormulaPtr mk_binary(Op op, FormulaPtr a, FormulaPtr b);
FormulaPtr mk_quant(Op op, uint32_t i, FormulaPtr a);
FormulaPtr mk_const(Op op, std::vector<int64_t> at = {});

class PolarityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Kind following the B/N/P grammar. Mixed products are accepted in either
/// order (B⊗N and N⊗B, B⅋P and P⅋B, and so on). Throws PolarityError naming
/// the offending construction.
Kind kind_of(const Formula& f);
std::optional<Kind> try_kind(const Formula& f);

FormulaPtr dual(const FormulaPtr& f);
bool equal(const Formula& a, const Formula& b);
/// Equal after forgetting occurrence indices and explicit locations.
bool same_shape(const Formula& a, const Formula& b);

/// Unit interval of the variable X_i(j): base 2^i (2j + 1).
int64_t variable_base(uint32_t i, int64_t j);
/// Location as unit interval bases, in left-to-right order.
std::vector<int64_t> location(const Formula& f);
/// Throws std::invalid_argument when two subformulas overlap.
void check_location(const Formula& f);

std::set<uint32_t> free_names(const Formula& f);

/// Replace X_i(j) by X_i(map(j)) everywhere (both polarities).
FormulaPtr rename_occurrences(const FormulaPtr& f, uint32_t i, int64_t from, int64_t to);

}  // namespace goi
