#include "goi/dyadic.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

namespace goi {

// ---------------------------------------------------------------- cells

Rational Cell::measure() const { return pow2(-long(bits.size())); }

std::string Cell::str() const {
  std::ostringstream os;
  os << '[' << base;
  if (space == Space::LineTimesInterval) os << " x I";
  bool first = true;
  for (const auto& [q, b] : bits) {
    os << (first ? "; " : ", ");
    first = false;
    if (space == Space::Line) os << "x:" << q;
    else if (q % 2) os << "x:" << (q + 1) / 2;
    else os << "y:" << q / 2;
    os << '=' << int(b);
  }
  if (!tag.empty()) {
    os << " |";
    for (size_t i = 0; i < tag.size(); ++i) os << (i ? "," : " ") << tag[i];
  }
  os << ']';
  return os.str();
}

Cell Cell::parse(const std::string& text) {
  size_t i = 0;
  auto fail = [&](const std::string& why) -> void {
    throw std::invalid_argument("cell syntax at " + std::to_string(i) + ": " + why + " in \"" + text + "\"");
  };
  auto ws = [&] { while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i; };
  auto number = [&]() -> int64_t {
    ws();
    size_t start = i;
    if (i < text.size() && text[i] == '-') ++i;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
    if (start == i || (i == start + 1 && text[start] == '-')) fail("expected a number");
    return std::stoll(text.substr(start, i - start));
  };
  auto expect = [&](char c) {
    ws();
    if (i >= text.size() || text[i] != c) fail(std::string("expected '") + c + "'");
    ++i;
  };
  Cell c;
  expect('[');
  c.base = number();
  ws();
  if (i < text.size() && text[i] == 'x') {
    ++i;
    expect('I');
    c.space = Space::LineTimesInterval;
  }
  ws();
  if (i < text.size() && text[i] == ';') {
    ++i;
    while (true) {
      ws();
      if (i >= text.size()) fail("unterminated cell");
      char axis = text[i++];
      if (axis != 'x' && axis != 'y') fail("axis must be x or y");
      expect(':');
      int64_t p = number();
      if (p < 1) fail("positions start at 1");
      expect('=');
      int64_t b = number();
      if (b != 0 && b != 1) fail("bits are 0 or 1");
      uint64_t q;
      if (c.space == Space::Line) {
        if (axis == 'y') fail("a Line cell has no y axis");
        q = uint64_t(p);
      } else {
        q = axis == 'x' ? 2 * uint64_t(p) - 1 : 2 * uint64_t(p);
      }
      if (!c.bits.emplace(q, b == 1).second) fail("position fixed twice");
      ws();
      if (i < text.size() && text[i] == ',') { ++i; continue; }
      break;
    }
  }
  ws();
  if (i < text.size() && text[i] == '|') {
    ++i;
    while (true) {
      int64_t t = number();
      if (t < 0) fail("tags are non-negative");
      c.tag.push_back(uint32_t(t));
      ws();
      if (i < text.size() && text[i] == ',') { ++i; continue; }
      break;
    }
  }
  expect(']');
  ws();
  if (i != text.size()) fail("trailing input");
  return c;
}

std::optional<Cell> intersect(const Cell& a, const Cell& b, bool wild) {
  if (a.space != b.space || a.base != b.base) return std::nullopt;
  if (!wild && a.tag != b.tag) return std::nullopt;
  Cell c = a;
  for (const auto& [q, v] : b.bits) {
    auto [it, fresh] = c.bits.emplace(q, v);
    if (!fresh && it->second != v) return std::nullopt;
  }
  return c;
}

std::vector<Cell> difference(const Cell& a, const Cell& b, bool wild) {
  if (!intersect(a, b, wild)) return {a};
  std::vector<Cell> out;
  Cell cur = a;
  for (const auto& [q, v] : b.bits) {
    if (cur.bits.count(q)) continue;
    out.push_back(cur.with_bit(q, !v));
    cur.bits[q] = v;
  }
  return out;
}

// ---------------------------------------------------------------- cell sets

namespace {

// Reduced ordered decision diagram over the positions mentioned, flattened
// into its list of accepting paths. Equal sets give equal lists.
std::vector<Bits> canon(const std::vector<Bits>& S) {
  if (S.empty()) return {};
  uint64_t p = UINT64_MAX;
  for (const auto& s : S) {
    if (s.empty()) return {Bits{}};
    p = std::min(p, s.begin()->first);
  }
  std::vector<Bits> S0, S1;
  for (const auto& s : S) {
    auto it = s.find(p);
    if (it == s.end()) {
      S0.push_back(s);
      S1.push_back(s);
    } else {
      Bits t = s;
      t.erase(p);
      (it->second ? S1 : S0).push_back(std::move(t));
    }
  }
  auto R0 = canon(S0), R1 = canon(S1);
  if (R0 == R1) return R0;
  std::vector<Bits> out;
  for (auto& r : R0) { r[p] = false; out.push_back(std::move(r)); }
  for (auto& r : R1) { r[p] = true; out.push_back(std::move(r)); }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

CellSet::CellSet(std::vector<Cell> cells) {
  std::map<std::tuple<Space, int64_t, Tag>, std::vector<Bits>> groups;
  for (auto& c : cells) groups[{c.space, c.base, c.tag}].push_back(std::move(c.bits));
  for (auto& [key, S] : groups)
    for (auto& b : canon(S)) cells_.push_back(Cell{std::get<0>(key), std::get<1>(key), std::move(b), std::get<2>(key)});
  std::sort(cells_.begin(), cells_.end());
}

CellSet CellSet::units(const std::vector<int64_t>& bases) {
  std::vector<Cell> cs;
  for (auto b : bases) cs.push_back(Cell::unit(b));
  return CellSet(std::move(cs));
}

Rational CellSet::measure() const {
  Rational m = 0;
  for (const auto& c : cells_) m += c.measure();
  return m;
}

std::string CellSet::str() const {
  std::string s = "{";
  for (size_t i = 0; i < cells_.size(); ++i) s += (i ? ", " : "") + cells_[i].str();
  return s + "}";
}

std::vector<int64_t> CellSet::bases() const {
  std::set<int64_t> b;
  for (const auto& c : cells_) b.insert(c.base);
  return {b.begin(), b.end()};
}

CellSet operator|(const CellSet& a, const CellSet& b) {
  std::vector<Cell> cs = a.cells_;
  cs.insert(cs.end(), b.cells_.begin(), b.cells_.end());
  return CellSet(std::move(cs));
}

CellSet operator&(const CellSet& a, const CellSet& b) {
  std::vector<Cell> cs;
  for (const auto& x : a.cells_)
    for (const auto& y : b.cells_)
      if (auto z = intersect(x, y)) cs.push_back(std::move(*z));
  return CellSet(std::move(cs));
}

CellSet operator-(const CellSet& a, const CellSet& b) {
  std::vector<Cell> out;
  for (const auto& x : a.cells_) {
    std::vector<Cell> pieces{x};
    for (const auto& y : b.cells_) {
      std::vector<Cell> next;
      for (const auto& p : pieces)
        for (auto& d : difference(p, y)) next.push_back(std::move(d));
      pieces = std::move(next);
    }
    out.insert(out.end(), pieces.begin(), pieces.end());
  }
  return CellSet(std::move(out));
}

std::vector<Cell> CellSet::restrict_wild(const Cell& c) const {
  std::vector<Cell> cs;
  for (const auto& k : cells_)
    if (auto z = intersect(c, k, true)) cs.push_back(std::move(*z));
  return CellSet(std::move(cs)).cells();
}

std::vector<Cell> CellSet::subtract_wild(const Cell& c) const {
  std::vector<Cell> pieces{c};
  for (const auto& k : cells_) {
    std::vector<Cell> next;
    for (const auto& p : pieces)
      for (auto& d : difference(p, k, true)) next.push_back(std::move(d));
    pieces = std::move(next);
  }
  return CellSet(std::move(pieces)).cells();
}

CellSet cellset_combine(CombineKind kind, const CellSet& x, const CellSet& y) {
  std::set<Space> spaces;
  for (const auto* s : {&x, &y})
    for (const auto& c : s->cells()) spaces.insert(c.space);
  if (spaces.size() > 1) throw std::invalid_argument("cellset_combine: space mismatch");
  switch (kind) {
    case CombineKind::Union: return x | y;
    case CombineKind::Intersect: return x & y;
    case CombineKind::Difference: return x - y;
  }
  return {};
}

// ---------------------------------------------------------------- branches

Branch Branch::identity_on(const Cell& c) {
  Branch b;
  b.guard = c;
  b.out_space = c.space;
  b.out_base = c.base;
  b.out_tag = c.tag;
  b.canonicalize();
  return b;
}

void Branch::canonicalize() {
  std::vector<std::pair<uint64_t, std::optional<uint64_t>>> vals;
  for (const auto& [p, v] : guard.bits)
    if (auto q = src.preimage(p)) {
      writes[*q] = v;
      vals.emplace_back(*q, std::nullopt);
    }
  for (const auto& [q, v] : writes)
    if (src.at(q)) vals.emplace_back(q, std::nullopt);
  if (!vals.empty()) src = src.with_values(vals);
}

Cell Branch::target() const { return Cell{out_space, out_base, writes, out_tag}; }

std::optional<Cell> Branch::image(const Cell& x) const {
  auto c = intersect(x, guard);
  if (!c) return std::nullopt;
  Cell out{out_space, out_base, writes, out_tag};
  for (const auto& [p, v] : c->bits) {
    if (guard.bits.count(p)) continue;
    auto q = src.preimage(p);
    if (!q) throw std::logic_error("branch is not canonical: unguarded position is dropped");
    out.bits[*q] = v;
  }
  return out;
}

std::optional<Cell> Branch::preimage(const Cell& y) const {
  if (y.space != out_space || y.base != out_base || y.tag != out_tag) return std::nullopt;
  Cell c = guard;
  for (const auto& [q, v] : y.bits) {
    auto w = writes.find(q);
    if (w != writes.end()) {
      if (w->second != v) return std::nullopt;
      continue;
    }
    auto p = src.at(q);
    if (!p) throw std::logic_error("branch is not canonical: output position without source");
    auto [it, fresh] = c.bits.emplace(*p, v);
    if (!fresh && it->second != v) return std::nullopt;
  }
  return c;
}

std::optional<Branch> Branch::restrict(const Cell& c) const {
  auto g = intersect(guard, c);
  if (!g) return std::nullopt;
  Branch b = *this;
  b.guard = std::move(*g);
  b.canonicalize();
  return b;
}

Branch Branch::inverse() const {
  Branch r;
  r.guard = target();
  r.out_space = guard.space;
  r.out_base = guard.base;
  r.out_tag = guard.tag;
  r.src = src.inverse();
  for (const auto& [p, v] : guard.bits) r.writes[p] = v;
  r.canonicalize();
  return r;
}

std::optional<bool> Branch::output_digit(uint64_t q, const std::function<bool(uint64_t)>& input) const {
  auto w = writes.find(q);
  if (w != writes.end()) return w->second;
  auto p = src.at(q);
  if (!p) return std::nullopt;
  return input(*p);
}

std::string Branch::str() const {
  std::ostringstream os;
  os << guard.str() << " -> " << Cell{out_space, out_base, writes, out_tag}.str() << " src=" << src.str();
  return os.str();
}

std::optional<Branch> compose(const Branch& outer, const Branch& inner) {
  auto C = inner.preimage(outer.guard);
  if (!C) return std::nullopt;
  Branch h;
  h.guard = std::move(*C);
  h.out_space = outer.out_space;
  h.out_base = outer.out_base;
  h.out_tag = outer.out_tag;
  h.writes = outer.writes;
  for (const auto& [p, v] : inner.writes)
    if (auto q = outer.src.preimage(p)) h.writes[*q] = v;
  h.src = compose(inner.src, outer.src);
  h.canonicalize();
  return h;
}

CellSet BitMap::domain() const {
  std::vector<Cell> cs;
  for (const auto& b : branches) cs.push_back(b.guard);
  return CellSet(std::move(cs));
}

CellSet BitMap::apply(const CellSet& X) const {
  std::vector<Cell> cs;
  for (const auto& b : branches)
    for (const auto& x : X.cells())
      if (auto y = b.image(x)) cs.push_back(std::move(*y));
  return CellSet(std::move(cs));
}

CellSet BitMap::preimage(const CellSet& Y) const {
  std::vector<Cell> cs;
  for (const auto& b : branches)
    for (const auto& y : Y.cells())
      if (auto x = b.preimage(y)) cs.push_back(std::move(*x));
  return CellSet(std::move(cs));
}

BitMap BitMap::inverse() const {
  BitMap m;
  for (const auto& b : branches) m.branches.push_back(b.inverse());
  return m;
}

BitMap compose_maps(const BitMap& f, const BitMap& g) {
  BitMap h;
  for (const auto& bg : g.branches)
    for (const auto& bf : f.branches)
      if (auto b = compose(bf, bg)) h.branches.push_back(std::move(*b));
  return h;
}

// ---------------------------------------------------------------- generators

namespace {

// Digit positions of [0,1] as (x, i) with p = 3x + i + 1.
uint64_t pos(uint64_t x, unsigned i) { return 3 * x + i + 1; }

uint64_t tau_src(uint64_t p) {
  switch (track_of(p)) {
    case 0: return p + 1;
    case 1: return p - 1;
    default: return p;
  }
}

// T_theta moves the digit at (x,i) to theta(x,i), so output (x,i) reads theta^-1(x,i).
uint64_t theta_inv(uint64_t p) {
  uint64_t x = (p - 1) / 3;
  switch (track_of(p)) {
    case 0: return x % 2 == 0 ? pos(x / 2, 0) : pos(x / 2, 1);
    case 1: return pos(2 * x, 2);
    default: return pos(2 * x + 1, 2);
  }
}

// theta(x,0) = (2x,0), theta(x,1) = (2x+1,0), theta(2x,2) = (x,1), theta(2x+1,2) = (x,2).
uint64_t theta(uint64_t p) {
  uint64_t x = (p - 1) / 3;
  switch (track_of(p)) {
    case 0: return pos(2 * x, 0);
    case 1: return pos(2 * x + 1, 0);
    default: return x % 2 == 0 ? pos(x / 2, 1) : pos(x / 2, 2);
  }
}

}  // namespace

PosMap track_perm_src(TrackPerm kind, Embedding emb) {
  uint64_t (*f)(uint64_t) = kind == TrackPerm::TauHat ? tau_src : kind == TrackPerm::ThetaHat ? theta_inv : theta;
  if (emb == Embedding::Interval)
    return PosMap::from_function([f](uint64_t p) { return std::optional<uint64_t>(f(p)); }, 6, 1);
  return PosMap::from_function(
      [f](uint64_t c) { return std::optional<uint64_t>(c % 2 ? c : 2 * f(c / 2)); }, 12, 1);
}

BitMap integer_translate(const std::vector<int64_t>& bases, int64_t k, Space s) {
  BitMap m;
  for (auto b : bases) {
    Branch br = Branch::identity_on(Cell::unit(b, s));
    br.out_base = b + k;
    m.branches.push_back(std::move(br));
  }
  return m;
}

BitMap track_permute(TrackPerm kind, const std::vector<int64_t>& bases, Embedding emb, Space s) {
  PosMap src = track_perm_src(kind, emb);
  BitMap m;
  for (auto b : bases) {
    Branch br = Branch::identity_on(Cell::unit(b, s));
    br.src = src;
    m.branches.push_back(std::move(br));
  }
  return m;
}

BitMap interleave(const std::vector<int64_t>& bases) {
  BitMap m;
  for (auto b : bases) {
    Branch br = Branch::identity_on(Cell::unit(b, Space::LineTimesInterval));
    br.out_space = Space::Line;
    m.branches.push_back(std::move(br));
  }
  return m;
}

BitMap deinterleave(const std::vector<int64_t>& bases) { return interleave(bases).inverse(); }

Branch prefix_write(const Cell& guard, int64_t out_base, const std::vector<bool>& prefix) {
  const uint64_t d = prefix.size();
  Branch br;
  br.guard = guard;
  br.out_space = guard.space;
  br.out_base = out_base;
  br.out_tag = guard.tag;
  br.src = PosMap::from_function(
      [d](uint64_t c) -> std::optional<uint64_t> {
        if (c % 2 == 0) return c;
        if (c <= 2 * d) return std::nullopt;
        return c - 2 * d;
      },
      2, 2 * d + 1);
  for (uint64_t k = 1; k <= d; ++k) br.writes[2 * k - 1] = prefix[k - 1];
  br.canonicalize();
  return br;
}

Branch prefix_drop(const Cell& guard, int64_t out_base, size_t len) {
  for (uint64_t k = 1; k <= len; ++k)
    if (!guard.bits.count(2 * k - 1)) throw std::invalid_argument("prefix_drop: guard must fix the dropped digits");
  Branch br;
  br.guard = guard;
  br.out_space = guard.space;
  br.out_base = out_base;
  br.out_tag = guard.tag;
  const uint64_t d = len;
  br.src = PosMap::from_function(
      [d](uint64_t c) -> std::optional<uint64_t> { return c % 2 == 0 ? c : c + 2 * d; }, 2, 1);
  br.canonicalize();
  return br;
}

unsigned log2_exact(uint64_t n) {
  if (n == 0 || (n & (n - 1))) throw std::invalid_argument("not a power of two: " + std::to_string(n));
  unsigned k = 0;
  while ((uint64_t{1} << k) < n) ++k;
  return k;
}

uint32_t pad_pow2(uint32_t n) {
  uint32_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

BitMap inflating_fax_map(const std::vector<int64_t>& sources, int64_t target) {
  if (sources.empty()) throw std::invalid_argument("inflating fax needs at least one source");
  unsigned d = log2_exact(pad_pow2(uint32_t(sources.size())));
  BitMap m;
  for (size_t i = 0; i < sources.size(); ++i) {
    std::vector<bool> prefix;
    for (unsigned k = 0; k < d; ++k) prefix.push_back((i >> (d - 1 - k)) & 1);
    m.branches.push_back(prefix_write(Cell::unit(sources[i]), target, prefix));
  }
  return m;
}

TrackLayout TrackLayout::track0(uint32_t size) {
  log2_exact(size);
  TrackLayout l;
  l.n[0] = size;
  return l;
}

Bits partition_bits(const TrackLayout& layout, const uint32_t idx[3]) {
  Bits bits;
  for (unsigned k = 0; k < 3; ++k) {
    unsigned L = log2_exact(layout.n[k]);
    if (idx[k] >= layout.n[k]) throw std::out_of_range("partition index out of range");
    for (unsigned j = 1; j <= L; ++j) bits[track_slot(k, j)] = (idx[k] >> (L - j)) & 1;
  }
  return bits;
}

std::vector<CellSet> partition_cells(const TrackLayout& layout) {
  std::vector<CellSet> out;
  uint32_t idx[3];
  for (idx[0] = 0; idx[0] < layout.n[0]; ++idx[0])
    for (idx[1] = 0; idx[1] < layout.n[1]; ++idx[1])
      for (idx[2] = 0; idx[2] < layout.n[2]; ++idx[2])
        out.push_back(CellSet({Cell{Space::Line, 0, partition_bits(layout, idx), {}}}));
  return out;
}

BitMap slice_translate(const TrackLayout& layout, uint32_t from, uint32_t to, Embedding emb,
                       const std::vector<int64_t>& bases) {
  TrackLayout t0 = TrackLayout::track0(layout.n[0]);
  uint32_t fi[3] = {from, 0, 0}, ti[3] = {to, 0, 0};
  Bits fb = partition_bits(t0, fi), tb = partition_bits(t0, ti);
  BitMap m;
  for (auto base : bases) {
    Branch br;
    br.guard = Cell::unit(base);
    std::vector<std::pair<uint64_t, std::optional<uint64_t>>> vals;
    for (const auto& [p, v] : fb) {
      br.guard.bits[embed_code(p, emb)] = v;
      br.writes[embed_code(p, emb)] = tb.at(p);
      vals.emplace_back(embed_code(p, emb), std::nullopt);
    }
    br.out_base = base;
    br.src = PosMap::identity().with_values(vals);
    br.canonicalize();
    m.branches.push_back(std::move(br));
  }
  return m;
}

// ---------------------------------------------------------------- fixed points

std::vector<Cell> fixed_points(const Branch& b) {
  const Cell& g = b.guard;
  if (b.out_space != g.space || b.out_base != g.base || b.out_tag != g.tag) return {};
  // Infinitely many moved positions impose infinitely many independent
  // equations, so the fixed set is null.
  if (!b.src.identity_tail()) return {};

  std::map<uint64_t, uint64_t> parent;
  std::function<uint64_t(uint64_t)> find = [&](uint64_t x) -> uint64_t {
    auto it = parent.find(x);
    if (it == parent.end()) { parent[x] = x; return x; }
    if (it->second == x) return x;
    return it->second = find(it->second);
  };
  auto unite = [&](uint64_t a, uint64_t c) { parent[find(a)] = find(c); };
  for (uint64_t q : b.src.moved_below_bound()) unite(q, *b.src.at(q));
  std::vector<std::pair<uint64_t, bool>> fixed;
  for (const auto& [q, v] : b.writes) fixed.emplace_back(q, v);
  for (const auto& [p, v] : g.bits) fixed.emplace_back(p, v);
  for (const auto& [q, v] : fixed) find(q);

  std::map<uint64_t, bool> value;
  for (const auto& [q, v] : fixed) {
    auto [it, fresh] = value.emplace(find(q), v);
    if (!fresh && it->second != v) return {};
  }
  std::map<uint64_t, std::vector<uint64_t>> comps;
  for (const auto& [x, _] : parent) comps[find(x)].push_back(x);

  Cell base = g;
  std::vector<std::vector<uint64_t>> free;
  for (const auto& [root, members] : comps) {
    auto v = value.find(root);
    if (v != value.end()) {
      for (auto m : members) base.bits[m] = v->second;
    } else if (members.size() > 1) {
      free.push_back(members);
    }
  }
  if (free.size() > 20) throw ResourceError("fixed-point set splits into more than 2^20 cells");
  std::vector<Cell> out;
  for (uint64_t mask = 0; mask < (uint64_t{1} << free.size()); ++mask) {
    Cell c = base;
    for (size_t k = 0; k < free.size(); ++k)
      for (auto m : free[k]) c.bits[m] = (mask >> k) & 1;
    out.push_back(std::move(c));
  }
  return out;
}

}  // namespace goi
