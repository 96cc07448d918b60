#include "goi/posmap.hpp"

#include "goi/rational.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace goi {

namespace {

using i128 = __int128;

int64_t narrow(i128 v) {
  if (v > INT64_MAX || v < INT64_MIN) throw std::overflow_error("position map coefficient overflow");
  return static_cast<int64_t>(v);
}

Frac make(i128 n, i128 d) {
  if (d == 0) throw std::domain_error("zero denominator");
  if (d < 0) { n = -n; d = -d; }
  i128 a = n < 0 ? -n : n, b = d;
  while (b) { i128 t = a % b; a = b; b = t; }
  if (a > 1) { n /= a; d /= a; }
  Frac f;
  f.num = narrow(n);
  f.den = narrow(d);
  return f;
}

constexpr uint64_t kMaxModulus = uint64_t{1} << 12;

uint64_t lcm_checked(uint64_t a, uint64_t b) {
  uint64_t l = std::lcm(a, b);
  // Repeated τ/θ compositions make moduli grow fast; past this point the
  // branch tables no longer fit in memory, so report it as a resource limit.
  if (l > kMaxModulus)
    throw ResourceError("position map modulus " + std::to_string(l) + " exceeds " + std::to_string(kMaxModulus));
  return l;
}

}  // namespace

Frac::Frac(int64_t n, int64_t d) { *this = make(n, d); }
Frac operator+(Frac a, Frac b) { return make(i128(a.num) * b.den + i128(b.num) * a.den, i128(a.den) * b.den); }
Frac operator-(Frac a, Frac b) { return make(i128(a.num) * b.den - i128(b.num) * a.den, i128(a.den) * b.den); }
Frac operator*(Frac a, Frac b) { return make(i128(a.num) * b.num, i128(a.den) * b.den); }
Frac operator/(Frac a, Frac b) { return make(i128(a.num) * b.den, i128(a.den) * b.num); }

std::string Frac::str() const { return den == 1 ? std::to_string(num) : std::to_string(num) + "/" + std::to_string(den); }

std::optional<uint64_t> Affine::at(uint64_t q) const {
  i128 n = i128(a.num) * i128(q) * b.den + i128(b.num) * a.den;
  i128 d = i128(a.den) * b.den;
  if (n % d != 0) return std::nullopt;
  i128 v = n / d;
  if (v <= 0) return std::nullopt;
  return static_cast<uint64_t>(v);
}

PosMap PosMap::identity() { return PosMap(); }

PosMap PosMap::empty() {
  PosMap m;
  m.rules_ = {std::nullopt};
  return m;
}

uint64_t PosMap::first_in_class(uint64_t r, uint64_t from) const {
  return from + (r + mod_ - from % mod_) % mod_;
}

std::optional<uint64_t> PosMap::rule_at(uint64_t q) const {
  const auto& r = rules_[q % mod_];
  if (!r) return std::nullopt;
  return r->at(q);
}

std::optional<uint64_t> PosMap::at(uint64_t q) const {
  if (q == 0) return std::nullopt;
  if (q < bound_) {
    uint64_t v = table_[q - 1];
    if (v == 0) return std::nullopt;
    return v;
  }
  return rule_at(q);
}

void PosMap::canonicalize() {
  for (uint64_t d = 1; d < mod_; ++d) {
    if (mod_ % d) continue;
    bool ok = true;
    for (uint64_t r = d; r < mod_ && ok; ++r) ok = rules_[r] == rules_[r % d];
    if (ok) {
      rules_.resize(d);
      mod_ = d;
      break;
    }
  }
  while (bound_ > 1) {
    uint64_t q = bound_ - 1;
    const auto& r = rules_[q % mod_];
    std::optional<uint64_t> ruled;
    if (r) {
      ruled = r->at(q);
      if (!ruled) break;  // the rule is not valid this low
    }
    uint64_t t = table_[q - 1];
    if (t != ruled.value_or(0)) break;
    table_.pop_back();
    --bound_;
  }
}

PosMap PosMap::from_function(const Fn& fn, uint64_t mod, uint64_t bound) {
  if (mod == 0 || bound == 0) throw std::invalid_argument("from_function: modulus and bound must be positive");
  PosMap m;
  m.mod_ = mod;
  m.bound_ = bound;
  m.table_.assign(bound - 1, 0);
  for (uint64_t q = 1; q < bound; ++q) m.table_[q - 1] = fn(q).value_or(0);
  m.rules_.assign(mod, std::nullopt);
  for (uint64_t r = 0; r < mod; ++r) {
    uint64_t q1 = m.first_in_class(r, bound);
    auto v1 = fn(q1), v2 = fn(q1 + mod);
    if (!v1 && !v2) {
      for (uint64_t k : {2, 5, 11})
        if (fn(q1 + k * mod)) throw std::logic_error("from_function: class is only partly defined");
      continue;
    }
    if (!v1 || !v2) throw std::logic_error("from_function: class is only partly defined");
    Frac a = Frac(int64_t(*v2) - int64_t(*v1), int64_t(mod));
    Frac b = Frac(int64_t(*v1)) - a * Frac(int64_t(q1));
    if (a.num <= 0) throw std::logic_error("from_function: rule is not increasing");
    Affine rule{a, b};
    for (uint64_t k : {2, 3, 7, 13}) {
      uint64_t q = q1 + k * mod;
      if (fn(q) != rule.at(q)) throw std::logic_error("from_function: not affine on a residue class");
    }
    m.rules_[r] = rule;
  }
  m.canonicalize();
  return m;
}

PosMap compose(const PosMap& f, const PosMap& g) {
  uint64_t M = g.mod_;
  uint64_t B = std::max<uint64_t>(g.bound_, 1);
  for (const auto& r : g.rules_) {
    if (!r) continue;
    M = lcm_checked(M, uint64_t(r->a.den) * f.mod_);
    // a q + b >= f.bound for q >= B
    Frac need = (Frac(int64_t(f.bound_)) - r->b) / r->a;
    int64_t c = need.num >= 0 ? (need.num + need.den - 1) / need.den : -((-need.num) / need.den);
    if (c > int64_t(B)) B = uint64_t(c);
  }
  PosMap h;
  h.mod_ = M;
  h.bound_ = B;
  h.rules_.assign(M, std::nullopt);
  h.table_.assign(B - 1, 0);
  for (uint64_t q = 1; q < B; ++q) {
    auto p = g.at(q);
    if (p) h.table_[q - 1] = f.at(*p).value_or(0);
  }
  for (uint64_t r = 0; r < M; ++r) {
    uint64_t q0 = h.first_in_class(r, B);
    const auto& rg = g.rules_[q0 % g.mod_];
    if (!rg) continue;
    auto p0 = rg->at(q0);
    if (!p0) throw std::logic_error("compose: invalid rule value");
    const auto& rf = f.rules_[*p0 % f.mod_];
    if (!rf) continue;
    h.rules_[r] = Affine{rf->a * rg->a, rf->a * rg->b + rf->b};
  }
  h.canonicalize();
  return h;
}

PosMap PosMap::inverse() const {
  struct Cls {
    uint64_t p0, step;
    Affine rule;
  };
  std::vector<Cls> cls;
  uint64_t Mi = 1, Bi = 1;
  for (uint64_t r = 0; r < mod_; ++r) {
    if (!rules_[r]) continue;
    uint64_t q0 = first_in_class(r, bound_);
    auto p0 = rules_[r]->at(q0);
    if (!p0) throw std::logic_error("inverse: invalid rule value");
    Frac d = rules_[r]->a * Frac(int64_t(mod_));
    if (!d.integral()) throw std::logic_error("inverse: non-integral class step");
    cls.push_back({*p0, uint64_t(d.num), *rules_[r]});
    Mi = lcm_checked(Mi, uint64_t(d.num));
    Bi = std::max(Bi, *p0 + 1);
  }
  for (uint64_t v : table_) Bi = std::max(Bi, v + 1);

  PosMap inv;
  inv.mod_ = Mi;
  inv.bound_ = Bi;
  inv.rules_.assign(Mi, std::nullopt);
  inv.table_.assign(Bi - 1, 0);
  auto put = [&](uint64_t p, uint64_t q) {
    if (inv.table_[p - 1]) throw std::logic_error("inverse: map is not injective");
    inv.table_[p - 1] = q;
  };
  for (uint64_t q = 1; q < bound_; ++q)
    if (table_[q - 1]) put(table_[q - 1], q);
  for (uint64_t r = 0; r < mod_; ++r) {
    if (!rules_[r]) continue;
    for (uint64_t q = first_in_class(r, bound_);; q += mod_) {
      uint64_t p = *rules_[r]->at(q);
      if (p >= Bi) break;
      put(p, q);
    }
  }
  for (uint64_t c = 0; c < Mi; ++c) {
    uint64_t p = inv.first_in_class(c, Bi);
    const Cls* hit = nullptr;
    for (const auto& k : cls)
      if (p >= k.p0 && (p - k.p0) % k.step == 0) {
        if (hit) throw std::logic_error("inverse: map is not injective");
        hit = &k;
      }
    if (hit) {
      Frac a = Frac(1) / hit->rule.a;
      inv.rules_[c] = Affine{a, Frac(0) - hit->rule.b * a};
    }
  }
  inv.canonicalize();
  return inv;
}

std::optional<uint64_t> PosMap::preimage(uint64_t p) const {
  if (p == 0) return std::nullopt;  // 0 marks undefined table entries
  for (uint64_t q = 1; q < bound_; ++q)
    if (table_[q - 1] == p) return q;
  for (uint64_t r = 0; r < mod_; ++r) {
    if (!rules_[r]) continue;
    Frac q = (Frac(int64_t(p)) - rules_[r]->b) / rules_[r]->a;
    if (!q.integral() || q.num < int64_t(bound_) || uint64_t(q.num) % mod_ != r) continue;
    return uint64_t(q.num);
  }
  return std::nullopt;
}

PosMap PosMap::with_values(const std::vector<std::pair<uint64_t, std::optional<uint64_t>>>& vals) const {
  PosMap m = *this;
  uint64_t top = bound_;
  for (const auto& [q, v] : vals) {
    if (q == 0) throw std::invalid_argument("positions start at 1");
    top = std::max(top, q + 1);
  }
  for (uint64_t q = bound_; q < top; ++q) m.table_.push_back(rule_at(q).value_or(0));
  m.bound_ = top;
  for (const auto& [q, v] : vals) m.table_[q - 1] = v.value_or(0);
  m.canonicalize();
  return m;
}

bool PosMap::identity_tail() const {
  for (const auto& r : rules_)
    if (!r || !r->identity()) return false;
  return true;
}

std::vector<uint64_t> PosMap::moved_below_bound() const {
  std::vector<uint64_t> out;
  for (uint64_t q = 1; q < bound_; ++q)
    if (table_[q - 1] && table_[q - 1] != q) out.push_back(q);
  return out;
}

std::string PosMap::str() const {
  std::ostringstream os;
  os << "{table:[";
  for (uint64_t q = 1; q < bound_; ++q) {
    if (q > 1) os << ',';
    if (table_[q - 1]) os << table_[q - 1];
    else os << '-';
  }
  os << "],mod:" << mod_ << ",rules:[";
  for (uint64_t r = 0; r < mod_; ++r) {
    if (r) os << ',';
    if (rules_[r]) os << rules_[r]->a.str() << "q+" << rules_[r]->b.str();
    else os << '-';
  }
  os << "]}";
  return os.str();
}

}  // namespace goi
