#pragma once

// Thick graphs (graphs over S x D) and their formal sums.

#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "goi/graph.hpp"

namespace goi {

// Dialect elements are strings. Products keep their pair structure, written
// "(a,b)", so dagger/ddagger bookkeeping stays readable.
using DElem = std::string;
DElem dialect_pair(const DElem& a, const DElem& b);
/// Inverse of dialect_pair; throws if the element is not a pair.
std::pair<DElem, DElem> dialect_split(const DElem& d);

struct TVertex {
  std::string s;
  DElem d;
  auto operator<=>(const TVertex&) const = default;
};

struct ThickEdge {
  std::string id;
  TVertex src, dst;
  Rational weight = 1;
};

struct ThickGraph {
  std::vector<std::string> carrier;  // sorted, unique
  std::vector<DElem> dialect;        // nonempty, unique
  std::vector<ThickEdge> edges;

  ThickGraph() = default;
  ThickGraph(std::vector<std::string> S, std::vector<DElem> D);

  void validate() const;
  void add_edge(std::string id, TVertex src, TVertex dst, Rational w = 1);
  size_t dialect_size() const { return dialect.size(); }
  /// Graph over encoded vertices "s@d".
  Graph underlying() const;
};

struct SlicedThickGraph {
  std::vector<std::pair<Rational, ThickGraph>> slices;

  SlicedThickGraph() = default;
  SlicedThickGraph(ThickGraph g) { slices.emplace_back(Rational(1), std::move(g)); }
  Rational unit() const;
};

std::string encode_vertex(const TVertex& v);
TVertex decode_vertex(const std::string& s);

/// Variant along a dialect bijection phi: D -> E.
ThickGraph variant_of(const ThickGraph& G, const std::map<DElem, DElem>& phi);

enum class LiftSide { Dagger, Ddagger };
/// Dagger: dialect D x E. Ddagger: dialect E x D (through the transposition).
ThickGraph lift(const ThickGraph& G, const std::vector<DElem>& E, LiftSide side);

ThickGraph execute_thick(const ThickGraph& F, const ThickGraph& G, EnumLimits lim = {});
SlicedThickGraph execute_sliced(const SlicedThickGraph& F, const SlicedThickGraph& G, EnumLimits lim = {});

enum class Normalization { Normalized, Unnormalized };
ExtReal measure_thick(const ThickGraph& F, const ThickGraph& G, const Quantifier& m,
                      Normalization norm = Normalization::Normalized, EnumLimits lim = {});
ExtReal measure_thick(const SlicedThickGraph& F, const SlicedThickGraph& G, const Quantifier& m,
                      Normalization norm = Normalization::Normalized, EnumLimits lim = {});

/// Sum of α_i F_i with α_i = α n_i / n becomes α times one thick graph over
/// the disjoint union of the dialects (elements "(i,d)").
std::pair<Rational, ThickGraph> flatten_sliced(const SlicedThickGraph& F);

bool universal_equiv(const SlicedThickGraph& F, const SlicedThickGraph& G,
                     const std::vector<SlicedThickGraph>& tests, const Quantifier& m, EnumLimits lim = {});

/// Ctr: dialect {1,2}; the phi-legs stay in slice 1, the psi-legs change slice.
ThickGraph contraction_graph(const std::vector<std::pair<std::string, std::string>>& phi,
                             const std::vector<std::pair<std::string, std::string>>& psi);

/// Equality up to edge renaming (same carrier, dialect and edge multiset).
bool thick_equal(const ThickGraph& a, const ThickGraph& b);

/// Rename dialect elements through fn (used for reassociation checks).
ThickGraph map_dialect(const ThickGraph& G, const std::function<DElem(const DElem&)>& fn);

/// ((a,b),c) -> (a,(b,c)).
DElem reassociate(const DElem& d);

}  // namespace goi
