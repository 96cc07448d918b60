#pragma once

// Projects: a wager and a formal sum of graphings on a common carrier.

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "goi/graphing.hpp"

namespace goi {

struct Project {
  ExtReal wager = ExtReal(0);
  CellSet carrier;
  std::vector<std::pair<Rational, Graphing>> slices;

  /// 1_A, the sum of the slice coefficients.
  Rational unit() const;
  bool balanced() const;
  bool wager_free() const { return wager.is_zero(); }
  void validate() const;
};

/// a·1_B + b·1_A + Σ α_i β_j ⟦A_i, B_j⟧ (any carriers).
ExtReal interaction_wager(const Project& a, const Project& b, const Quantifier& m = Quantifier(), Fuel fuel = {});
/// ⟨a, b⟩; carriers must be equal.
ExtReal pairing(const Project& a, const Project& b, const Quantifier& m = Quantifier(), Fuel fuel = {});
bool orthogonal(const Project& a, const Project& b, const Quantifier& m = Quantifier(), Fuel fuel = {});

Project execute_project(const Project& a, const Project& b, const Quantifier& m = Quantifier(), Fuel fuel = {});
/// Carriers must be disjoint.
Project tensor_project(const Project& a, const Project& b);
Project extend_project(const Project& a, const CellSet& V);
Project sum_projects(const Project& a, const Project& b);
/// λ·a: wager and coefficients scaled.
Project scale_project(const Project& a, const Rational& lambda);

/// Translation fax: each pair moves unit interval `first` onto `second`.
Project fax_project(const std::vector<std::pair<int64_t, int64_t>>& moves);
/// k source unit intervals onto one target. With compensate the edges carry
/// weight 2^-delta (delta = ceil(log2 k)); otherwise weight 1.
Project inflating_fax_project(const std::vector<int64_t>& sources, int64_t target, bool compensate = true);
Project daemon_project(const Rational& lambda, const CellSet& V);
Project zero_project(const CellSet& V);

enum class Success { Strict, Weak, No };
std::string to_string(Success s);
Success is_successful(const Project& a);
/// Reasons a project is not successful (empty when it is strict).
std::vector<std::string> success_diagnostics(const Project& a);

Project bang_project(const Project& a, const DialectEncoding* enc = nullptr);

/// prom: T from A to phi(A) via Id x T_tau, P from B to psi(B) via Id x
/// T_theta, plus their inverses. All arguments are lists of unit interval
/// bases, matched by position.
Project promotion_project(const std::vector<int64_t>& A, const std::vector<int64_t>& phiA,
                          const std::vector<int64_t>& B, const std::vector<int64_t>& psiB);

/// Ctr: dialect {0,1}. Legs to L1 = phi(L) stay in slice 0, legs to
/// L2 = psi(L) move to slice 1.
Project contraction_project(const std::vector<int64_t>& L, const std::vector<int64_t>& L1,
                            const std::vector<int64_t>& L2);

/// Move unit intervals of carrier and graphings.
Project relocate_project(const Project& a, const std::map<int64_t, int64_t>& moves);

/// Canonical form for structural comparison (normalize_ae on each slice).
Project normalize_project(const Project& a);
bool project_ae_equal(const Project& a, const Project& b);

}  // namespace goi
