#pragma once

// Partial maps on digit positions {1, 2, 3, ...}.
//
// Every digit transformation in the engine reads output digit q from input
// digit src(q). The maps that occur (track permutations, interleavings,
// prefix shifts and all their composites) are residue-class-wise affine:
// below a bound they are an explicit table, above it they apply one affine
// rule per residue class modulo a fixed modulus. That class is closed under
// composition and inversion, and has a canonical form, so equality of
// composites is decidable.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace goi {

// Small exact fraction over int64 (slopes and offsets of the affine rules).
struct Frac {
  int64_t num = 0;
  int64_t den = 1;

  Frac() = default;
  Frac(int64_t n, int64_t d = 1);
  bool integral() const { return den == 1; }
  auto operator<=>(const Frac&) const = default;
  friend Frac operator+(Frac a, Frac b);
  friend Frac operator-(Frac a, Frac b);
  friend Frac operator*(Frac a, Frac b);
  friend Frac operator/(Frac a, Frac b);
  std::string str() const;
};

struct Affine {
  Frac a{1}, b{0};  // q -> a q + b, a > 0

  auto operator<=>(const Affine&) const = default;
  /// Value at q when it is a positive integer.
  std::optional<uint64_t> at(uint64_t q) const;
  bool identity() const { return a == Frac(1) && b == Frac(0); }
};

class PosMap {
 public:
  using Fn = std::function<std::optional<uint64_t>(uint64_t)>;

  static PosMap identity();
  static PosMap empty();
  /// Sample fn on [1, bound) and on the residue classes modulo mod above it,
  /// then check the affine guess on further points of every class.
  static PosMap from_function(const Fn& fn, uint64_t mod, uint64_t bound);

  std::optional<uint64_t> at(uint64_t q) const;
  /// The unique q with at(q) == p, if any.
  std::optional<uint64_t> preimage(uint64_t p) const;

  PosMap inverse() const;
  /// Copy with explicit values at the given points (nullopt = undefined).
  PosMap with_values(const std::vector<std::pair<uint64_t, std::optional<uint64_t>>>& vals) const;

  /// True when every rule above the bound is the identity.
  bool identity_tail() const;
  /// Positions below the bound (so finitely many), where the map is defined and moves.
  std::vector<uint64_t> moved_below_bound() const;

  uint64_t modulus() const { return mod_; }
  uint64_t bound() const { return bound_; }
  const std::vector<uint64_t>& table() const { return table_; }
  const std::vector<std::optional<Affine>>& rules() const { return rules_; }

  auto operator<=>(const PosMap&) const = default;
  std::string str() const;

  friend PosMap compose(const PosMap& f, const PosMap& g);

 private:
  // table_[q-1] = image of q for 1 <= q < bound_, 0 when undefined.
  uint64_t bound_ = 1;
  std::vector<uint64_t> table_;
  uint64_t mod_ = 1;
  std::vector<std::optional<Affine>> rules_{Affine{}};

  void canonicalize();
  uint64_t first_in_class(uint64_t r, uint64_t from) const;
  std::optional<uint64_t> rule_at(uint64_t q) const;
};

/// (f o g)(q) = f(g(q)).
PosMap compose(const PosMap& f, const PosMap& g);

}  // namespace goi
