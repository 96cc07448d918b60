#include <doctest.h>

#include "goi/dyadic.hpp"
#include "goi/posmap.hpp"
#include "goi/rng.hpp"

using namespace goi;

namespace {

using Fn = std::function<std::optional<uint64_t>(uint64_t)>;

// Plain functions for the maps under test, evaluated pointwise.
std::optional<uint64_t> shift_odd(uint64_t c, uint64_t d) {
  if (c % 2 == 0) return c;
  if (c <= 2 * d) return std::nullopt;
  return c - 2 * d;
}

std::optional<uint64_t> swap_tracks(uint64_t p) {
  switch ((p - 1) % 3) {
    case 0: return p + 1;
    case 1: return p - 1;
    default: return p;
  }
}

struct Named {
  PosMap map;
  Fn fn;
};

std::vector<Named> generators() {
  return {
      {PosMap::identity(), [](uint64_t p) { return std::optional<uint64_t>(p); }},
      {PosMap::from_function([](uint64_t c) { return shift_odd(c, 1); }, 2, 3), [](uint64_t c) { return shift_odd(c, 1); }},
      {PosMap::from_function([](uint64_t c) { return shift_odd(c, 2); }, 2, 5), [](uint64_t c) { return shift_odd(c, 2); }},
      {PosMap::from_function(swap_tracks, 3, 1), swap_tracks},
      {track_perm_src(TrackPerm::ThetaHat, Embedding::Interval), {}},
      {track_perm_src(TrackPerm::ThetaHatInv, Embedding::Interval), {}},
  };
}

}  // namespace

TEST_CASE("identity and tabulated maps") {
  PosMap id = PosMap::identity();
  for (uint64_t q = 1; q < 50; ++q) CHECK(id.at(q) == q);
  PosMap e = PosMap::empty();
  CHECK_FALSE(e.at(3).has_value());
  PosMap s = PosMap::from_function([](uint64_t c) { return shift_odd(c, 1); }, 2, 3);
  for (uint64_t q = 1; q < 100; ++q) CHECK(s.at(q) == shift_odd(q, 1));
  CHECK(s.preimage(1) == 3u);
  CHECK(s.preimage(4) == 4u);
  CHECK_FALSE(s.preimage(0).has_value());
}

TEST_CASE("composition and inversion agree with pointwise evaluation") {
  auto gens = generators();
  SplitMix64 rng(1);
  for (int iter = 0; iter < 200; ++iter) {
    // Random word of length up to 4, evaluated both as a PosMap and pointwise.
    PosMap m = PosMap::identity();
    std::vector<const Named*> word;
    for (int k = 0, n = int(rng.range(1, 4)); k < n; ++k) {
      const Named& g = gens[rng.below(gens.size())];
      word.push_back(&g);
      m = compose(m, g.map);
    }
    for (uint64_t q = 1; q < 300; ++q) {
      std::optional<uint64_t> v = q;
      for (auto it = word.rbegin(); it != word.rend(); ++it) {  // the last factor acts first
        const Named* g = *it;
        if (!v) break;
        v = g->fn ? g->fn(*v) : g->map.at(*v);
      }
      CHECK(m.at(q) == v);
      if (v) CHECK(m.preimage(*v) == q);
    }
    PosMap inv = m.inverse();
    for (uint64_t q = 1; q < 300; ++q)
      if (auto v = m.at(q)) CHECK(inv.at(*v) == q);
  }
}

TEST_CASE("canonical form makes equal composites compare equal") {
  PosMap th = track_perm_src(TrackPerm::ThetaHat, Embedding::Interval);
  PosMap thi = track_perm_src(TrackPerm::ThetaHatInv, Embedding::Interval);
  CHECK(compose(th, thi) == PosMap::identity());
  CHECK(compose(thi, th) == PosMap::identity());
  PosMap tau = track_perm_src(TrackPerm::TauHat, Embedding::Product);
  CHECK(compose(tau, tau) == PosMap::identity());
  CHECK(tau.inverse() == tau);
  CHECK(th.inverse() == thi);
}

TEST_CASE("explicit values and moved positions") {
  PosMap m = PosMap::identity().with_values({{1, 2}, {2, 1}, {5, std::nullopt}});
  CHECK(m.at(1) == 2u);
  CHECK(m.at(2) == 1u);
  CHECK_FALSE(m.at(5).has_value());
  CHECK(m.at(9) == 9u);
  CHECK(m.identity_tail());
  CHECK(m.moved_below_bound() == std::vector<uint64_t>{1, 2});
  CHECK_FALSE(track_perm_src(TrackPerm::TauHat, Embedding::Interval).identity_tail());
}

TEST_CASE("from_function rejects maps that are not affine per residue class") {
  CHECK_THROWS(PosMap::from_function([](uint64_t p) { return std::optional<uint64_t>(p * p); }, 2, 1));
}

TEST_CASE("modulus growth past the cap is a resource error") {
  PosMap th = track_perm_src(TrackPerm::ThetaHat, Embedding::Product);
  PosMap tau = track_perm_src(TrackPerm::TauHat, Embedding::Product);
  PosMap m = PosMap::identity();
  bool hit = false;
  for (int k = 0; k < 40 && !hit; ++k) {
    try {
      m = compose(compose(m, th), tau);
    } catch (const ResourceError& e) {
      hit = true;
      CHECK(std::string(e.what()).find("4096") != std::string::npos);
    }
  }
  CHECK(hit);
}

TEST_CASE("fractions") {
  CHECK((Frac(1, 2) + Frac(1, 3)) == Frac(5, 6));
  CHECK((Frac(2, 4)) == Frac(1, 2));
  CHECK((Frac(3) / Frac(6)).str() == "1/2");
  Affine a{Frac(1, 2), Frac(1, 2)};
  CHECK(a.at(3) == 2u);
  CHECK_FALSE(a.at(2).has_value());
}
