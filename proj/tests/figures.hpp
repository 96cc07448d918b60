#pragma once

// Reference graphs written out edge by edge, both the inputs and the drawn
// results. Nothing here calls the engine, so the figure tests compare
// computed results against independent data.

#include <string>
#include <utility>
#include <vector>

#include "goi/thick.hpp"

namespace figures {

using goi::ThickGraph;

// a_i <-> b_j as two directed edges.
inline void both(ThickGraph& g, const std::string& id, goi::TVertex a, goi::TVertex b) {
  g.add_edge(id + ">", a, b);
  g.add_edge(id + "<", b, a);
}

inline void loop(ThickGraph& g, const std::string& id, goi::TVertex a) { g.add_edge(id, a, a); }

// "Two thick graphs G and H, both with dialect {1,2}".
inline ThickGraph two_thick_G() {
  ThickGraph g({"1", "2"}, {"1", "2"});
  both(g, "g1", {"1", "1"}, {"1", "2"});
  both(g, "g2", {"1", "2"}, {"2", "2"});
  both(g, "g3", {"1", "1"}, {"2", "1"});
  return g;
}

inline ThickGraph two_thick_H() {
  ThickGraph h({"2", "3"}, {"1", "2"});
  both(h, "h1", {"2", "2"}, {"3", "1"});
  loop(h, "h2", {"3", "2"});
  loop(h, "h3", {"2", "1"});
  return h;
}

// "The graphs G† and H‡": vertex n_{a,b} is carrier n in slice (a,b), a from
// the dialect of G and b from that of H. G is copied along b, H along a.
inline goi::TVertex pv(const char* s, int a, int b) {
  return {s, "(" + std::to_string(a) + "," + std::to_string(b) + ")"};
}

inline ThickGraph two_thick_G_dagger() {
  ThickGraph g({"1", "2"}, {"(1,1)", "(1,2)", "(2,1)", "(2,2)"});
  for (int b = 1; b <= 2; ++b) {
    std::string k = std::to_string(b);
    both(g, "g1" + k, pv("1", 1, b), pv("1", 2, b));
    both(g, "g2" + k, pv("1", 2, b), pv("2", 2, b));
    both(g, "g3" + k, pv("1", 1, b), pv("2", 1, b));
  }
  return g;
}

inline ThickGraph two_thick_H_ddagger() {
  ThickGraph h({"2", "3"}, {"(1,1)", "(1,2)", "(2,1)", "(2,2)"});
  for (int a = 1; a <= 2; ++a) {
    std::string k = std::to_string(a);
    both(h, "h1" + k, pv("2", a, 2), pv("3", a, 1));
    loop(h, "h2" + k, pv("3", a, 2));
    loop(h, "h3" + k, pv("2", a, 1));
  }
  return h;
}

// "The thick graph G⊡H represented in two dimensions". Vertex n_{a,b} is
// carrier n in slice (a,b), a from G's dialect and b from H's.
inline ThickGraph two_thick_GH() {
  auto v = [](const char* s, int a, int b) {
    return goi::TVertex{s, "(" + std::to_string(a) + "," + std::to_string(b) + ")"};
  };
  ThickGraph g({"1", "3"}, {"(1,1)", "(1,2)", "(2,1)", "(2,2)"});
  both(g, "k1", v("1", 1, 1), v("1", 2, 1));
  loop(g, "k2", v("1", 2, 1));
  loop(g, "k3", v("1", 1, 1));
  both(g, "k4", v("1", 1, 2), v("1", 2, 2));
  both(g, "k5", v("1", 2, 2), v("3", 2, 1));
  both(g, "k6", v("1", 1, 2), v("3", 1, 1));
  loop(g, "k7", v("3", 1, 2));
  loop(g, "k8", v("3", 2, 2));
  return g;
}

// "The graph of a contraction project": V^A = {1,2,3}. Slice-1 legs
// 1<->9, 2<->8, 3<->7; slice-changing legs 1_2<->4_1, 2_2<->5_1, 3_2<->6_1.
inline ThickGraph contraction_figure() {
  ThickGraph g({"1", "2", "3", "4", "5", "6", "7", "8", "9"}, {"1", "2"});
  both(g, "c1", {"1", "2"}, {"4", "1"});
  both(g, "c2", {"2", "2"}, {"5", "1"});
  both(g, "c3", {"3", "2"}, {"6", "1"});
  both(g, "c4", {"1", "1"}, {"9", "1"});
  both(g, "c5", {"2", "1"}, {"8", "1"});
  both(g, "c6", {"3", "1"}, {"7", "1"});
  return g;
}
inline const std::vector<std::pair<std::string, std::string>> kFigPhi = {{"1", "9"}, {"2", "8"}, {"3", "7"}};
inline const std::vector<std::pair<std::string, std::string>> kFigPsi = {{"1", "4"}, {"2", "5"}, {"3", "6"}};

// Plugging figure: V^A = {1,2}; phi 1->3, 2->4 keeps the slice, psi 1->5,
// 2->6 changes it.
inline const std::vector<std::pair<std::string, std::string>> kPhi = {{"1", "3"}, {"2", "4"}};
inline const std::vector<std::pair<std::string, std::string>> kPsi = {{"1", "5"}, {"2", "6"}};

// A: one slice, 1 <-> 2.
inline ThickGraph graph_a() {
  ThickGraph a({"1", "2"}, {"1"});
  both(a, "a", {"1", "1"}, {"2", "1"});
  return a;
}

// B: slice 1 has 1 <-> 2, slice 2 has loops on 1 and 2.
inline ThickGraph graph_b() {
  ThickGraph b({"1", "2"}, {"1", "2"});
  both(b, "b", {"1", "1"}, {"2", "1"});
  loop(b, "l1", {"1", "2"});
  loop(b, "l2", {"2", "2"});
  return b;
}

// Ctr⊡a as drawn: slice 1 has 3<->4 and 5<->6, slice 2 is empty.
inline ThickGraph ctr_a_figure() {
  ThickGraph g({"3", "4", "5", "6"}, {"1", "2"});
  both(g, "x", {"3", "1"}, {"4", "1"});
  both(g, "y", {"5", "1"}, {"6", "1"});
  return g;
}

// Ctr⊡b as drawn, slices 1 to 4: slice 1 has 3<->4 and 5<->6, slice 3 has a
// loop on every vertex, slices 2 and 4 are empty.
inline ThickGraph ctr_b_figure() {
  ThickGraph g({"3", "4", "5", "6"}, {"1", "2", "3", "4"});
  both(g, "x", {"3", "1"}, {"4", "1"});
  both(g, "y", {"5", "1"}, {"6", "1"});
  for (const char* v : {"3", "4", "5", "6"}) loop(g, std::string("l") + v, {v, "3"});
  return g;
}

// φ(b)⊗ψ(b) as drawn, slices 1 to 4 = (1,1), (1,2), (2,1), (2,2).
inline ThickGraph phi_b_psi_b_figure() {
  ThickGraph g({"3", "4", "5", "6"}, {"1", "2", "3", "4"});
  both(g, "x1", {"3", "1"}, {"4", "1"});
  both(g, "y1", {"5", "1"}, {"6", "1"});
  both(g, "x2", {"3", "2"}, {"4", "2"});
  loop(g, "l25", {"5", "2"});
  loop(g, "l26", {"6", "2"});
  loop(g, "l33", {"3", "3"});
  loop(g, "l34", {"4", "3"});
  both(g, "y3", {"5", "3"}, {"6", "3"});
  for (const char* v : {"3", "4", "5", "6"}) loop(g, std::string("l4") + v, {v, "4"});
  return g;
}

// "Les graphes G1 et G2": F_a = {f: 1->2, g: 2->2}, F_b = {f: 1->2, g: 1->1},
// F_c their union over the dialect {a, b}; all weights 1.
inline ThickGraph graph_Fa() {
  ThickGraph g({"1", "2"}, {"a"});
  g.add_edge("f", {"1", "a"}, {"2", "a"});
  g.add_edge("g", {"2", "a"}, {"2", "a"});
  return g;
}

inline ThickGraph graph_Fb() {
  ThickGraph g({"1", "2"}, {"b"});
  g.add_edge("f", {"1", "b"}, {"2", "b"});
  g.add_edge("g", {"1", "b"}, {"1", "b"});
  return g;
}

inline ThickGraph graph_Fc() {
  ThickGraph g({"1", "2"}, {"a", "b"});
  g.add_edge("fa", {"1", "a"}, {"2", "a"});
  g.add_edge("ga", {"2", "a"}, {"2", "a"});
  g.add_edge("fb", {"1", "b"}, {"2", "b"});
  g.add_edge("gb", {"1", "b"}, {"1", "b"});
  return g;
}

}  // namespace figures
