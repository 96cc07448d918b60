#pragma once

// Finite directed weighted graphs: alternating paths, execution, 1-circuits
// and measurement.

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "goi/rational.hpp"

namespace goi {

struct Edge {
  std::string id;
  std::string src;
  std::string dst;
  Rational weight = 1;
};

struct Graph {
  std::set<std::string> vertices;
  std::vector<Edge> edges;

  /// Throws std::invalid_argument when an endpoint is missing, an id repeats
  /// or a weight is not positive.
  void validate() const;
  void add_vertex(const std::string& v) { vertices.insert(v); }
  void add_edge(std::string id, std::string src, std::string dst, Rational w = 1);
};

enum class Side : uint8_t { F = 0, G = 1 };

struct Step {
  Side side;
  size_t edge;  // index into the edge list of that side
  bool operator==(const Step&) const = default;
};

struct Path {
  std::vector<Step> steps;
  std::string src, dst;
  Rational weight = 1;
};

struct Circuit {
  std::vector<Step> steps;  // canonical (least) rotation
  Rational weight = 1;
};

struct EnumLimits {
  uint64_t max_paths = 1000000;
};

/// Every alternating path of F and G whose source and target lie in V,
/// sorted lexicographically on (edge id, side) sequences.
std::vector<Path> alternating_paths(const Graph& F, const Graph& G, const std::set<std::string>& V,
                                    EnumLimits lim = {});

/// F ⊡ G: vertices V^F Δ V^G, one edge per alternating path between them.
Graph execute(const Graph& F, const Graph& G, EnumLimits lim = {});

/// Primitive alternating cycles up to rotation.
std::vector<Circuit> one_circuits(const Graph& F, const Graph& G, EnumLimits lim = {});

ExtReal measure(const Graph& F, const Graph& G, const Quantifier& m, EnumLimits lim = {});

/// Same circuits, unsorted weights only: handy for multiset comparisons.
std::multiset<Rational> circuit_weights(const Graph& F, const Graph& G, EnumLimits lim = {});

/// Union of two graphs whose edge ids are disjoint.
Graph graph_union(const Graph& F, const Graph& G);

/// Canonical relabelling: edges sorted by (src, dst, weight), ids e0, e1, ...
Graph canonical(const Graph& g);
bool equal_up_to_renaming(const Graph& a, const Graph& b);

std::string to_dot(const Graph& g, const std::string& name = "G");

/// Label of a step sequence such as "F:e.G:f", used for execution edge ids.
std::string path_label(const Graph& F, const Graph& G, const std::vector<Step>& steps);

}  // namespace goi
