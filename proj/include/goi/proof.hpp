#pragma once

// Localized ELL_pol derivations: parsing, rule checking and one-step cut
// reduction. Conclusions are never written in proof files; they are computed
// from the leaves, and rules refer to formulas of their premises by index.

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "goi/formula.hpp"

namespace goi {

enum class Rule {
  Ax, Cut, CutPol, Tensor, Par, TensorL, TensorR, ParR, ParL, ParMix, TensorMix,
  OneR, OneL, Plus1, Plus2, With, Top, Oc, OcPol, Ctr, Weak, Forall, Exists
};

/// Keyword used in proof files ("ax", "tensor-l", ...).
std::string rule_keyword(Rule r);
/// Rule label as printed in the calculus, with its side condition if any.
std::string rule_label(Rule r);

struct Sequent {
  std::vector<FormulaPtr> delta;  // negative, left of the turnstile
  std::vector<FormulaPtr> gamma;  // behaviors
  FormulaPtr theta;               // at most one negative formula

  std::string str() const;
  /// Unit interval bases of every formula, Delta first.
  std::vector<int64_t> location() const;
};

struct Proof;
using ProofPtr = std::shared_ptr<const Proof>;

struct Proof {
  Rule rule;
  std::vector<ProofPtr> premises;
  std::vector<int64_t> idx;        // indices and integer parameters
  std::vector<FormulaPtr> forms;   // formula parameters
  Sequent ctx;                     // context of a top rule
  size_t line = 0, col = 0;

  std::string str() const;
};

ProofPtr parse_proof(const std::string& text);
ProofPtr load_proof(const std::string& path);

struct Diagnostic {
  std::string rule;      // rule label
  std::string position;  // path from the root, e.g. "root.0.1"
  std::string message;
  size_t line = 0, col = 0;

  std::string str() const;
};

class ProofError : public std::runtime_error {
 public:
  explicit ProofError(Diagnostic d) : std::runtime_error(d.str()), diag(std::move(d)) {}
  Diagnostic diag;
};

struct CheckResult {
  std::vector<Diagnostic> diagnostics;
  std::optional<Sequent> conclusion;
  bool ok() const { return diagnostics.empty(); }
};

/// Validates every node against its rule schema and side conditions.
CheckResult check_proof(const Proof& p);
/// Conclusion of a proof that checks; throws ProofError otherwise.
Sequent conclusion(const Proof& p);

/// For an ∃ node: every substituted occurrence as (location of the witness
/// occurrence, unit interval of the variable it becomes).
std::vector<std::pair<std::vector<int64_t>, int64_t>> witness_occurrences(const Proof& exists_node);

bool uses_rule(const Proof& p, Rule r);
size_t count_rules(const Proof& p, Rule r);

/// One cut-elimination step at the first reducible cut (pre-order), if any.
/// Covered: axiom cuts on either side, ⊗/⅋ and 1/⊥ principal cuts, and
/// commutation of a cut with a unary rule not acting on the cut formula.
std::optional<ProofPtr> reduce_step(const ProofPtr& p);

}  // namespace goi
