#include <doctest.h>

#include "goi/battery.hpp"
#include "goi/dyadic.hpp"

using namespace goi;

namespace {

// mpq_class(a, b) keeps the fraction as given; comparisons need it reduced.
Rational frac(long a, long b) {
  Rational r(a, b);
  r.canonicalize();
  return r;
}

// A point of a unit interval, as an infinite digit stream indexed by code.
struct Point {
  Space space = Space::Line;
  int64_t base = 0;
  std::function<bool(uint64_t)> digit;
};

uint64_t mix(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Random point of a cell: fixed bits as the cell says, the rest pseudo-random.
Point sample(const Cell& c, uint64_t seed) {
  Bits fixed = c.bits;
  return {c.space, c.base, [fixed, seed](uint64_t q) {
            auto it = fixed.find(q);
            return it != fixed.end() ? it->second : bool(mix(seed * 1000003 + q) & 1);
          }};
}

bool member(const Point& x, const CellSet& S) {
  for (const auto& c : S.cells()) {
    if (c.space != x.space || c.base != x.base) continue;
    bool ok = true;
    for (const auto& [q, b] : c.bits) ok = ok && x.digit(q) == b;
    if (ok) return true;
  }
  return false;
}

// Exact measure by exhaustive enumeration of the first `depth` codes of each
// unit interval; valid when no cell fixes a code beyond depth.
Rational enumerated_measure(const CellSet& S, Space space, const std::vector<int64_t>& bases, unsigned depth) {
  uint64_t count = 0;
  for (auto b : bases)
    for (uint64_t w = 0; w < (uint64_t{1} << depth); ++w) {
      Point x{space, b, [w, depth](uint64_t q) { return q <= depth && ((w >> (q - 1)) & 1); }};
      if (member(x, S)) ++count;
    }
  return frac(long(count), 1L << depth);
}

// Forward form of the track maps on [0,1): digit at (x, i) goes to sigma(x, i).
uint64_t at(uint64_t x, unsigned i) { return 3 * x + i + 1; }

uint64_t tau_fwd(uint64_t p) {
  uint64_t x = (p - 1) / 3;
  switch ((p - 1) % 3) {
    case 0: return at(x, 1);
    case 1: return at(x, 0);
    default: return p;
  }
}

uint64_t theta_fwd(uint64_t p) {
  uint64_t x = (p - 1) / 3;
  switch ((p - 1) % 3) {
    case 0: return at(2 * x, 0);
    case 1: return at(2 * x + 1, 0);
    default: return x % 2 == 0 ? at(x / 2, 1) : at(x / 2, 2);
  }
}

// Output digit q of the forward map: find the input position sent to q.
bool forward_digit(const Point& x, uint64_t (*fwd)(uint64_t), uint64_t q) {
  for (uint64_t p = 1; p <= 4 * q + 6; ++p)
    if (fwd(p) == q) return x.digit(p);
  FAIL("forward map misses a position");
  return false;
}

Point apply_branch(const Branch& b, const Point& x) {
  auto in = x.digit;
  Branch copy = b;
  return {b.out_space, b.out_base, [copy, in](uint64_t q) { return *copy.output_digit(q, in); }};
}

const Branch* branch_for(const BitMap& f, const Point& x) {
  for (const auto& b : f.branches)
    if (member(x, CellSet({b.guard}))) return &b;
  return nullptr;
}

Cell C(const std::string& s) { return Cell::parse(s); }

}  // namespace

TEST_CASE("cell syntax round-trips") {
  for (const char* s : {"[0]", "[3; x:1=0, x:4=1]", "[-2 x I; x:1=1, y:2=0]", "[5; x:2=1 | 1,0]"}) {
    Cell c = C(s);
    CHECK(Cell::parse(c.str()) == c);
  }
  CHECK(C("[0 x I; y:1=1]").bits.count(2) == 1);
  CHECK_THROWS_AS(C("[0; x:=1]"), std::invalid_argument);
}

TEST_CASE("union, intersection and difference") {
  CellSet X({C("[0; x:1=0, x:3=1]")});
  CHECK((X | CellSet{}) == X);
  CellSet halves({C("[0; x:1=0]"), C("[0; x:1=1]")});
  CHECK(halves == CellSet::units({0}));
  CHECK(halves.measure() == 1);
  CHECK((halves - X).measure() == Rational(3, 4));
  CHECK((X & CellSet({C("[0; x:3=0]")})).empty());
}

TEST_CASE("measure identities against exhaustive enumeration") {
  SplitMix64 rng(3);
  for (int iter = 0; iter < 300; ++iter) {
    CellSet X = random_cellset(rng, Space::Line), Y = random_cellset(rng, Space::Line);
    CHECK(X.measure() + Y.measure() == (X | Y).measure() + (X & Y).measure());
    CHECK((X - Y).measure() == X.measure() - (X & Y).measure());
    for (const CellSet* s : {&X, &Y}) CHECK(s->measure() == enumerated_measure(*s, Space::Line, {0, 1}, 8));
    CHECK((X | Y).measure() == enumerated_measure(X | Y, Space::Line, {0, 1}, 8));
    CHECK((X & Y).measure() == enumerated_measure(X & Y, Space::Line, {0, 1}, 8));
    CHECK(cellset_combine(CombineKind::Difference, X, Y) == (X - Y));
    // Canonical form is idempotent.
    CHECK(CellSet(X.cells()) == X);
  }
}

TEST_CASE("measures of cells") {
  CHECK(C("[0; x:1=0, x:2=1, x:5=0]").measure() == Rational(1, 8));
  CHECK(CellSet{}.measure() == 0);
  std::vector<Cell> eight;
  for (int w = 0; w < 8; ++w) eight.push_back(Cell::unit(0).with_bit(1, w & 1).with_bit(2, w & 2).with_bit(3, w & 4));
  CellSet all(eight);
  CHECK(all.measure() == 1);
  CHECK(all == CellSet::units({0}));
}

TEST_CASE("identity and translations") {
  CellSet X({C("[0; x:2=1]")});
  BitMap id;
  id.branches.push_back(Branch::identity_on(Cell::unit(0)));
  CHECK(id.apply(X) == X);
  CHECK(integer_translate({0}, 5).apply(CellSet::units({0})) == CellSet::units({5}));
  CHECK(integer_translate({0}, 5).apply(X) == CellSet({C("[5; x:2=1]")}));
}

TEST_CASE("TauHat on a cell swaps the first two digits, checked on sampled points") {
  BitMap tau = track_permute(TrackPerm::TauHat, {0}, Embedding::Interval, Space::Line);
  Cell x = C("[0; x:1=1, x:2=0]");
  CellSet img = tau.apply(CellSet({x}));
  CHECK(img == CellSet({C("[0; x:1=0, x:2=1]")}));
  CHECK(img.measure() == Rational(1, 4));
  for (uint64_t s = 0; s < 200; ++s) {
    Point p = sample(x, s);
    Point q = apply_branch(*branch_for(tau, p), p);
    CHECK(member(q, img));
    for (uint64_t k = 1; k <= 30; ++k) CHECK(q.digit(k) == forward_digit(p, tau_fwd, k));
  }
}

TEST_CASE("ThetaHat agrees with its forward definition and cancels ThetaHatInv") {
  BitMap th = track_permute(TrackPerm::ThetaHat, {0}, Embedding::Interval, Space::Line);
  BitMap thi = track_permute(TrackPerm::ThetaHatInv, {0}, Embedding::Interval, Space::Line);
  BitMap both = compose_maps(th, thi);
  for (uint64_t s = 0; s < 1000; ++s) {
    Point p = sample(Cell::unit(0), s);
    Point q = apply_branch(*branch_for(th, p), p);
    for (uint64_t k = 1; k <= 24; ++k) CHECK(q.digit(k) == forward_digit(p, theta_fwd, k));
    Point r = apply_branch(*branch_for(both, p), p);
    for (uint64_t k = 1; k <= 24; ++k) CHECK(r.digit(k) == p.digit(k));
  }
  SplitMix64 rng(4);
  for (int k = 0; k < 50; ++k) {
    CellSet X = random_cellset(rng, Space::Line) & CellSet::units({0});
    CHECK(both.apply(X) == X);
    CHECK(th.apply(X).measure() == X.measure());
  }
}

TEST_CASE("inverses and involutions") {
  SplitMix64 rng(5);
  BitMap tau = track_permute(TrackPerm::TauHat, {0, 1}, Embedding::Product, Space::LineTimesInterval);
  for (int k = 0; k < 50; ++k) {
    CellSet X = random_cellset(rng, Space::LineTimesInterval);
    CHECK(compose_maps(tau, tau).apply(X) == X);
    BitMap f = slice_translate(TrackLayout::track0(4), 1, 3);
    CellSet Y = random_cellset(rng, Space::Line) & f.domain();
    CHECK_FALSE(f.domain().empty());
    CHECK(compose_maps(f.inverse(), f).apply(Y) == Y);
    CHECK(compose_maps(f, f.inverse()).apply(f.apply(Y)) == f.apply(Y));
  }
}

TEST_CASE("PrefixDrop doubles measure") {
  Branch b = prefix_drop(C("[0; x:1=0]"), 0, 1);
  CHECK(b.image(C("[0; x:1=0]")) == Cell::unit(0));
  CHECK(b.inflation_log2() == 1);
  CHECK_THROWS_AS(prefix_drop(Cell::unit(0), 0, 1), std::invalid_argument);
  Branch w = prefix_write(Cell::unit(0), 3, {true, false});
  CHECK(w.image(Cell::unit(0)) == C("[3; x:1=1, x:3=0]"));
}

TEST_CASE("interleaving digits") {
  // x = .10..., y = .10... interleave to .1100... = 0.75 within the unit.
  Cell xy = C("[0 x I; x:1=1, x:2=0, y:1=1, y:2=0]");
  CellSet out = interleave({0}).apply(CellSet({xy}));
  CHECK(out == CellSet({C("[0; x:1=1, x:2=1, x:3=0, x:4=0]")}));
  CHECK(deinterleave({0}).apply(out) == CellSet({xy}));
}

TEST_CASE("slice translation and the partition") {
  auto P = partition_cells(TrackLayout::track0(2));
  REQUIRE(P.size() == 2);
  CHECK(P[0] == CellSet({C("[0; x:1=0]")}));
  CHECK(P[1] == CellSet({C("[0; x:1=1]")}));
  BitMap t = slice_translate(TrackLayout::track0(2), 0, 1);
  CHECK(t.apply(P[0]) == P[1]);
  CHECK(P[0].measure() == Rational(1, 2));
  CHECK(P[1].measure() == Rational(1, 2));

  auto single = partition_cells(TrackLayout{});
  REQUIRE(single.size() == 1);
  CHECK(single[0] == CellSet::units({0}));

  TrackLayout l;
  l.n[0] = 4;
  l.n[1] = 2;
  auto eight = partition_cells(l);
  REQUIRE(eight.size() == 8);
  CellSet all;
  for (size_t i = 0; i < eight.size(); ++i) {
    CHECK(eight[i].measure() == Rational(1, 8));
    for (size_t j = 0; j < i; ++j) CHECK((eight[i] & eight[j]).empty());
    all = all | eight[i];
  }
  CHECK(all.measure() == 1);
}

TEST_CASE("image and preimage are adjoint, and generators preserve measure") {
  SplitMix64 rng(6);
  std::vector<BitMap> gens = {
      track_permute(TrackPerm::TauHat, {0, 1}, Embedding::Interval, Space::Line),
      track_permute(TrackPerm::ThetaHat, {0, 1}, Embedding::Interval, Space::Line),
      track_permute(TrackPerm::ThetaHatInv, {0, 1}, Embedding::Interval, Space::Line),
      slice_translate(TrackLayout::track0(2), 0, 1, Embedding::Interval, {0, 1}),
      integer_translate({0, 1}, 7),
  };
  for (int iter = 0; iter < 100; ++iter) {
    CellSet X = random_cellset(rng, Space::Line);
    for (const auto& g : gens) {
      CellSet Y = g.apply(X);
      CHECK(Y.measure() == (X & g.domain()).measure());
      CHECK(g.preimage(Y) == (X & g.domain()));
    }
  }
  BatteryOptions opt;
  opt.iters = 200;
  opt.seed = 7;
  BatteryResult r = battery_measure_preserve(opt);
  CHECK_MESSAGE(r.ok(), r.summary());
}

TEST_CASE("inflating faxes transport measure by 2^delta") {
  for (int k = 1; k <= 4; ++k) {
    std::vector<int64_t> src;
    for (int i = 0; i < k; ++i) src.push_back(i);
    BitMap f = inflating_fax_map(src, 9);
    unsigned delta = 0;
    while ((1 << delta) < k) ++delta;
    CHECK(f.apply(CellSet::units(src)).measure() == frac(k, 1L << delta));
    if (k == (1 << delta)) {
      CHECK(f.preimage(CellSet::units({9})).measure() == k);
      CellSet A({C("[9; x:5=1]")});
      CHECK(f.preimage(A).measure() == k * A.measure());
    }
  }
}

TEST_CASE("fixed points of a branch") {
  // Swapping the first two digits fixes exactly the points where they agree.
  BitMap tau = track_permute(TrackPerm::TauHat, {0}, Embedding::Interval, Space::Line);
  Branch b = tau.branches[0];
  Branch s;
  s.guard = Cell::unit(0);
  s.src = PosMap::identity().with_values({{1, 2}, {2, 1}});
  s.canonicalize();
  auto fp = fixed_points(s);
  CHECK(CellSet(fp).measure() == Rational(1, 2));
  CHECK(CellSet(fp) == CellSet({C("[0; x:1=0, x:2=0]"), C("[0; x:1=1, x:2=1]")}));
  // The full track swap has a null fixed-point set.
  CHECK(CellSet(fixed_points(b)).measure() == 0);
  // A translation has none at all.
  CHECK(fixed_points(integer_translate({0}, 1).branches[0]).empty());
}
