#pragma once

// Exact measurable sets built from dyadic cells, and the bit-level
// transformations acting on them.
//
// A point of the Line space is n + 0.b1 b2 b3 ... and digit b_q sits at code
// q. A point of Line x [0,1] is (n + 0.x1 x2 ..., 0.y1 y2 ...); its codes
// interleave the two streams: x_j at code 2j-1, y_p at code 2p. With that
// numbering the collapse Omega: Line x [0,1] -> Line is the identity on codes,
// so Interleave and Deinterleave only change the space tag.

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "goi/posmap.hpp"
#include "goi/rational.hpp"

namespace goi {

enum class Space : uint8_t { Line = 0, LineTimesInterval = 1 };

/// Dialect element as a tuple of coordinates. Empty means untagged.
using Tag = std::vector<uint32_t>;

using Bits = std::map<uint64_t, bool>;

struct Cell {
  Space space = Space::Line;
  int64_t base = 0;
  Bits bits;
  Tag tag;

  auto operator<=>(const Cell&) const = default;
  /// 2^-#bits, not weighted by the dialect.
  Rational measure() const;
  std::string str() const;
  static Cell parse(const std::string& text);
  static Cell unit(int64_t base, Space s = Space::Line) { return Cell{s, base, {}, {}}; }
  Cell with_tag(Tag t) const { Cell c = *this; c.tag = std::move(t); return c; }
  Cell with_bit(uint64_t q, bool b) const { Cell c = *this; c.bits[q] = b; return c; }
};

/// Intersection of two cells. With wild = true the tag of b is ignored
/// (b then stands for all dialect elements).
std::optional<Cell> intersect(const Cell& a, const Cell& b, bool wild = false);
/// a minus b as disjoint cells, same wildcard rule.
std::vector<Cell> difference(const Cell& a, const Cell& b, bool wild = false);

class CellSet {
 public:
  CellSet() = default;
  /// Canonical form of the union of arbitrary (possibly overlapping) cells.
  explicit CellSet(std::vector<Cell> cells);
  static CellSet units(const std::vector<int64_t>& bases);

  const std::vector<Cell>& cells() const { return cells_; }
  bool empty() const { return cells_.empty(); }
  Rational measure() const;
  std::string str() const;
  std::vector<int64_t> bases() const;

  friend CellSet operator|(const CellSet& a, const CellSet& b);
  friend CellSet operator&(const CellSet& a, const CellSet& b);
  friend CellSet operator-(const CellSet& a, const CellSet& b);
  bool operator==(const CellSet&) const = default;

  /// Cells of c lying in this set, where this set's tags are ignored.
  std::vector<Cell> restrict_wild(const Cell& c) const;
  /// Cells of c outside this set, where this set's tags are ignored.
  std::vector<Cell> subtract_wild(const Cell& c) const;

 private:
  std::vector<Cell> cells_;
};

enum class CombineKind { Union, Intersect, Difference };
CellSet cellset_combine(CombineKind kind, const CellSet& x, const CellSet& y);

// One branch of a bit map: on the guard cell, output digit q is input digit
// src(q), or the constant writes[q]. Outputs land in unit interval out_base of
// out_space, tagged out_tag. In canonical form src never reads a guard
// position (such outputs are writes instead) and src is a bijection from the
// unwritten positions onto the unguarded ones, so the branch multiplies
// measure by 2^(|guard bits| - |writes|).
struct Branch {
  Cell guard;
  Space out_space = Space::Line;
  int64_t out_base = 0;
  Tag out_tag;
  Bits writes;
  PosMap src;

  auto operator<=>(const Branch&) const = default;

  static Branch identity_on(const Cell& c);
  void canonicalize();
  /// log2 of the factor by which the branch multiplies measure.
  long inflation_log2() const { return long(guard.bits.size()) - long(writes.size()); }
  Cell target() const;

  std::optional<Cell> image(const Cell& x) const;
  std::optional<Cell> preimage(const Cell& y) const;
  /// Restriction to guard ∩ c (empty optional when disjoint).
  std::optional<Branch> restrict(const Cell& c) const;
  Branch inverse() const;
  /// Where the branch sends one point, given as a digit predicate (used by
  /// the sampling oracles). Returns the output digit at position q.
  std::optional<bool> output_digit(uint64_t q, const std::function<bool(uint64_t)>& input) const;
  std::string str() const;
};

/// outer o inner, restricted to the points inner sends into outer's guard.
std::optional<Branch> compose(const Branch& outer, const Branch& inner);

struct BitMap {
  std::vector<Branch> branches;  // pairwise disjoint guards

  CellSet domain() const;
  CellSet apply(const CellSet& X) const;
  CellSet preimage(const CellSet& Y) const;
  BitMap inverse() const;
  bool operator==(const BitMap&) const = default;
};

/// f o g.
BitMap compose_maps(const BitMap& f, const BitMap& g);

// Track convention on the [0,1] factor: position p belongs to track (p-1) mod
// 3, and slot j of track k is position 3(j-1)+k+1.
inline uint64_t track_slot(unsigned k, uint64_t j) { return 3 * (j - 1) + k + 1; }
inline unsigned track_of(uint64_t p) { return unsigned((p - 1) % 3); }

/// How a digit permutation of [0,1] is laid over the codes: directly (the
/// interval itself, code p) or as the second factor of Line x [0,1] (code 2p).
enum class Embedding { Interval, Product };

enum class TrackPerm { TauHat, ThetaHat, ThetaHatInv };

/// src map of T_tau, T_theta or T_theta^-1 in the given embedding.
PosMap track_perm_src(TrackPerm kind, Embedding emb);

/// Generators. Each acts on the unit intervals listed in `bases`.
BitMap integer_translate(const std::vector<int64_t>& bases, int64_t k, Space s = Space::Line);
BitMap track_permute(TrackPerm kind, const std::vector<int64_t>& bases, Embedding emb = Embedding::Product,
                     Space s = Space::Line);
BitMap interleave(const std::vector<int64_t>& bases);
BitMap deinterleave(const std::vector<int64_t>& bases);
/// Shift the line digits (odd codes) by delta and write `prefix` in front.
Branch prefix_write(const Cell& guard, int64_t out_base, const std::vector<bool>& prefix);
/// Inverse of prefix_write: drops the first prefix.size() line digits, which
/// the guard must fix to `prefix`.
Branch prefix_drop(const Cell& guard, int64_t out_base, size_t len);
/// k source unit intervals into one: branch i writes binary(i) on
/// ceil(log2 k) leading line digits.
BitMap inflating_fax_map(const std::vector<int64_t>& sources, int64_t target);

// Layout of a dialect on the three tracks: n[k] elements on track k, each a
// power of two.
struct TrackLayout {
  uint32_t n[3] = {1, 1, 1};
  static TrackLayout track0(uint32_t size);
};
unsigned log2_exact(uint64_t n);
uint32_t pad_pow2(uint32_t n);

/// The partition of [0,1) by a layout, as cells of the interval (code = p),
/// indexed by (i0, i1, i2) in lexicographic order.
std::vector<CellSet> partition_cells(const TrackLayout& layout);
/// Bits fixed by element (i0,i1,i2) of a layout, as interval positions.
Bits partition_bits(const TrackLayout& layout, const uint32_t idx[3]);

/// T_i^j on [0,1) cells: rewrite the track-0 slots from `from` to `to`.
BitMap slice_translate(const TrackLayout& layout, uint32_t from, uint32_t to,
                       Embedding emb = Embedding::Interval, const std::vector<int64_t>& bases = {0});

/// The fixed points of a branch, as disjoint cells (exact).
std::vector<Cell> fixed_points(const Branch& b);

/// Turn a position of the [0,1] factor into a code.
inline uint64_t embed_code(uint64_t p, Embedding emb) { return emb == Embedding::Interval ? p : 2 * p; }

}  // namespace goi
