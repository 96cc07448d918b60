#pragma once

// Thick graphings over dyadic cells: execution, circuits, measurement,
// a.e. normal forms and the dialect-to-[0,1] embedding behind the exponential.

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "goi/dyadic.hpp"
#include "goi/graph.hpp"

namespace goi {

// A dialect is a product of finite coordinates; its elements are tuples. The
// trivial dialect has no coordinates and one element, the empty tuple.
using Dims = std::vector<uint32_t>;
uint64_t dialect_size(const Dims& d);
std::vector<Tag> dialect_elements(const Dims& d);

struct GEdge {
  std::string id;
  Rational weight = 1;
  std::vector<Branch> branches;  // pairwise disjoint guards
};

struct Graphing {
  CellSet carrier;  // untagged
  Dims dialect;
  std::vector<GEdge> edges;

  uint64_t dialect_size() const { return goi::dialect_size(dialect); }
  /// Throws std::invalid_argument on a malformed graphing.
  void validate() const;
  CellSet source(size_t e) const;
  CellSet target(size_t e) const;
  GEdge& add_edge(std::string id, Rational w = 1);
};

enum class Lift { Dagger, Ddagger };
/// Dagger appends the coordinates of E to every tag, Ddagger prepends them.
Graphing lift_graphing(const Graphing& F, const Dims& E, Lift side);

struct Fuel {
  uint64_t rounds = 10000;
};

Graphing execute_graphing(const Graphing& F, const Graphing& G, Fuel fuel = {});

struct GCircuit {
  std::vector<Step> steps;  // canonical rotation, first step in F
  Rational weight = 1;
  CellSet support;          // fixed points at the start of the cycle
};

/// Primitive alternating cycles with positive-measure support, aggregated by
/// edge sequence. With stop_on_infinite, enumeration stops at the first
/// circuit whose m-value is infinite (the measurement is then infinite).
std::vector<GCircuit> circuits_graphing(const Graphing& F, const Graphing& G, Fuel fuel = {},
                                        const Quantifier* stop_on_infinite = nullptr);

ExtReal measure_graphing(const Graphing& F, const Graphing& G, const Quantifier& m = Quantifier(), Fuel fuel = {});

/// Canonical representative up to refinement: edge grouping is forgotten,
/// sources are split and merged along a reduced decision tree.
Graphing normalize_ae(const Graphing& F);
/// Same normal form, keeping the edges (each edge's branches normalized).
Graphing normalize_edges(const Graphing& F);
bool ae_equal(const Graphing& a, const Graphing& b);
/// Normal form of one edge's branch family.
std::vector<Branch> normalize_branches(const std::vector<Branch>& bs);

/// Union of graphings with disjoint edge ids and equal dialects.
Graphing graphing_union(const Graphing& F, const Graphing& G);

/// Move whole unit intervals: base b goes to moves.at(b) (others stay).
Graphing relocate(const Graphing& F, const std::map<int64_t, int64_t>& moves);

/// Where a dialect element is written on the [0,1] factor.
struct DialectEncoding {
  std::function<Bits(const Tag&)> bits;  // interval positions
  std::string name;

  /// One index over the whole (padded) dialect, MSB first on track-0 slots.
  static DialectEncoding flat(const Dims& dims);
  /// The first `split` coordinates on odd track-0 slots, the rest on even ones.
  static DialectEncoding interleaved(const Dims& dims, size_t split);
};

/// [A]: dialect absorbed into the [0,1] factor. Result lives on Line x [0,1].
Graphing embed_dialect(const Graphing& A, const DialectEncoding& enc);
/// Relabel Line x [0,1] as Line through the interleaving collapse.
Graphing omega_collapse(const Graphing& A);

std::string graphing_to_dot(const Graphing& G, const std::string& name = "G");

}  // namespace goi
