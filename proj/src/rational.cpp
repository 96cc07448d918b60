#include "goi/rational.hpp"

#include <cctype>

namespace goi {

Rational parse_rational(const std::string& text) {
  std::string t;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) t.push_back(c);
  if (t.empty()) throw std::invalid_argument("empty rational");
  auto slash = t.find('/');
  auto check = [&](const std::string& s) {
    size_t i = (s.size() > 0 && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
    if (i == s.size()) throw std::invalid_argument("malformed rational: " + text);
    for (; i < s.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(s[i])))
        throw std::invalid_argument("malformed rational: " + text);
  };
  auto strip_plus = [](std::string s) { return (!s.empty() && s[0] == '+') ? s.substr(1) : s; };
  if (slash == std::string::npos) {
    check(t);
    return Rational(mpz_class(strip_plus(t)));
  }
  std::string num = t.substr(0, slash), den = t.substr(slash + 1);
  check(num);
  check(den);
  mpz_class d(strip_plus(den));
  if (d == 0) throw std::invalid_argument("zero denominator: " + text);
  Rational q(mpz_class(strip_plus(num)), d);
  q.canonicalize();
  return q;
}

std::string format_rational(const Rational& q) {
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Rational pow2(long k) {
  mpz_class p = 1;
  if (k >= 0) {
    mpz_mul_2exp(p.get_mpz_t(), p.get_mpz_t(), static_cast<mp_bitcnt_t>(k));
    return Rational(p);
  }
  mpz_mul_2exp(p.get_mpz_t(), p.get_mpz_t(), static_cast<mp_bitcnt_t>(-k));
  return Rational(mpz_class(1), p);
}

const Rational& ExtReal::value() const {
  if (!finite()) throw std::domain_error("value() of an infinite extended real");
  return value_;
}

ExtReal operator+(const ExtReal& a, const ExtReal& b) {
  using K = ExtReal::Kind;
  if (a.finite() && b.finite()) return ExtReal(a.value_ + b.value_);
  if ((a.kind_ == K::PosInf && b.kind_ == K::NegInf) || (a.kind_ == K::NegInf && b.kind_ == K::PosInf))
    throw std::domain_error("inf - inf is undefined");
  return a.finite() ? b : a;
}

ExtReal operator-(const ExtReal& a) {
  using K = ExtReal::Kind;
  if (a.finite()) return ExtReal(Rational(-a.value_));
  return a.kind_ == K::PosInf ? ExtReal::neg_infinity() : ExtReal::infinity();
}

ExtReal operator*(const ExtReal& a, const ExtReal& b) {
  if (a.finite() && b.finite()) return ExtReal(a.value_ * b.value_);
  if (a.is_zero() || b.is_zero()) return ExtReal(0);
  int sa = a.finite() ? sgn(a.value_) : (a.kind_ == ExtReal::Kind::PosInf ? 1 : -1);
  int sb = b.finite() ? sgn(b.value_) : (b.kind_ == ExtReal::Kind::PosInf ? 1 : -1);
  return sa * sb > 0 ? ExtReal::infinity() : ExtReal::neg_infinity();
}

bool operator==(const ExtReal& a, const ExtReal& b) {
  if (a.kind_ != b.kind_) return false;
  return !a.finite() || a.value_ == b.value_;
}

std::string ExtReal::str() const {
  switch (kind_) {
    case Kind::PosInf: return "inf";
    case Kind::NegInf: return "-inf";
    default: return format_rational(value_);
  }
}

ExtReal ExtReal::parse(const std::string& text) {
  if (text == "inf" || text == "+inf") return infinity();
  if (text == "-inf") return neg_infinity();
  return ExtReal(parse_rational(text));
}

Quantifier::Quantifier() : Quantifier(inverse_complement()) {}

Quantifier Quantifier::inverse_complement() {
  return Quantifier("inv1m", [](const Rational& w) -> ExtReal {
    if (w >= 1) return ExtReal::infinity();
    return ExtReal(Rational(1 / (1 - w)));
  });
}

Quantifier Quantifier::identity() {
  return Quantifier("identity", [](const Rational& w) { return ExtReal(w); });
}

Quantifier Quantifier::table(std::map<Rational, ExtReal> values, Quantifier fallback) {
  return Quantifier("table", [values = std::move(values), fallback](const Rational& w) {
    auto it = values.find(w);
    return it != values.end() ? it->second : fallback(w);
  });
}

}  // namespace goi
