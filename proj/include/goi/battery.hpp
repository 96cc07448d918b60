#pragma once

// Seeded property batteries shared by the CLI and the acceptance runner.
// Every battery draws its cases from SplitMix64 so runs reproduce exactly.

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "goi/project.hpp"
#include "goi/rng.hpp"
#include "goi/thick.hpp"

namespace goi {

struct BatteryResult {
  std::string name;
  uint64_t total = 0;
  uint64_t passed = 0;
  uint64_t redrawn = 0;    // draws discarded because a path or circuit set was infinite
  uint64_t infinite = 0;   // accepted cases where some side measured to infinity
  std::vector<std::string> failures;  // first few counterexamples, printable
  double seconds = 0;

  bool ok() const { return total > 0 && passed == total; }
  /// "1000/1000 exact", followed by the redraw and infinity counts.
  std::string summary() const;
};

struct BatteryOptions {
  uint64_t seed = 42;
  uint64_t iters = 100;
  Fuel fuel;
  Quantifier m;
};

/// Names accepted by run_battery, in a fixed order.
const std::vector<std::string>& battery_names();
/// Throws std::invalid_argument on an unknown name.
BatteryResult run_battery(const std::string& name, const BatteryOptions& opt);

BatteryResult battery_trefoil(const BatteryOptions& opt);
/// Normalized and unnormalized numerical trefoil plus numerical adjunction.
BatteryResult battery_trefoil_thick(const BatteryOptions& opt);
BatteryResult battery_trefoil_graphing(const BatteryOptions& opt);
BatteryResult battery_measure_preserve(const BatteryOptions& opt);
BatteryResult battery_promotion(const BatteryOptions& opt);
BatteryResult battery_contraction(const BatteryOptions& opt);
BatteryResult battery_assoc(const BatteryOptions& opt);

// ---------------------------------------------------------------- generators

/// Random weight p/q with 1 <= p < q <= 6, or 1 with probability 1/8.
Rational random_weight(SplitMix64& rng);

/// Three graphs over at most 6 vertices, each with at most 8 edges, such that
/// no vertex belongs to all three.
std::array<Graph, 3> random_graph_triple(SplitMix64& rng);

/// Three thick graphs with dialects of size at most 3. With disjoint_gh the
/// carriers of the second and third graph are disjoint; otherwise only the
/// triple intersection is empty.
std::array<ThickGraph, 3> random_thick_triple(SplitMix64& rng, bool disjoint_gh = false);

/// Three graphings over unit intervals 0..5 made of translations, track
/// permutations and bit rewrites, with no unit interval shared by all three.
std::array<Graphing, 3> random_graphing_triple(SplitMix64& rng);

/// A random cell set on the given space: 1 to 3 cells over bases 0 and 1.
CellSet random_cellset(SplitMix64& rng, Space s);

/// One instance of the promotion equation: a lives on unit 10 (dialect size
/// at most 2), f on units {0, 1} (dialect size at most 2, at most 4 edges).
struct PromotionInstance {
  Project a, f;
};
PromotionInstance random_promotion_instance(SplitMix64& rng);

struct PromotionSides {
  Project lhs, rhs;
};
/// lhs = prom ⊡ (!a ⊗ !f) and rhs = the delocated !(f ⊡ a'), where a' is a
/// moved onto unit 0 and the result is moved from unit 1 to unit 11.
PromotionSides promotion_sides(const PromotionInstance& in, Fuel fuel = {});

// ---------------------------------------------------------------- single checks

/// ⟦F,G⊡H⟧ + ⟦G,H⟧ == ⟦H,F⊡G⟧ + ⟦F,G⟧.
bool graph_trefoil_holds(const Graph& F, const Graph& G, const Graph& H, const Quantifier& m);
bool thick_trefoil_holds(const ThickGraph& F, const ThickGraph& G, const ThickGraph& H, const Quantifier& m);
/// ⟦F,G⊡H⟧' + n^F⟦G,H⟧' == ⟦H,F⊡G⟧' + n^H⟦F,G⟧'.
bool thick_trefoil_unnormalized_holds(const ThickGraph& F, const ThickGraph& G, const ThickGraph& H,
                                      const Quantifier& m);
/// ⟦F,G⊡H⟧ == ⟦H,F⊡G⟧ + ⟦F,G⟧ (carriers of G and H disjoint).
bool thick_adjunction_holds(const ThickGraph& F, const ThickGraph& G, const ThickGraph& H, const Quantifier& m);
bool graphing_trefoil_holds(const Graphing& F, const Graphing& G, const Graphing& H, const Quantifier& m,
                            Fuel fuel = {});

/// ½(φ(A) ∪ ψ(A)) + ½·(empty slice): the target of a contraction applied to A.
SlicedThickGraph contraction_target(const ThickGraph& A, const std::vector<std::pair<std::string, std::string>>& phi,
                                    const std::vector<std::pair<std::string, std::string>>& psi);
/// Rename carrier vertices through a bijection, keeping dialect and edges.
ThickGraph rename_carrier(const ThickGraph& A, const std::vector<std::pair<std::string, std::string>>& map);
/// Union of two thick graphs with the same dialect and disjoint carriers.
ThickGraph thick_union(const ThickGraph& a, const ThickGraph& b);

}  // namespace goi
