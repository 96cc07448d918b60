#pragma once

#include <gmpxx.h>

#include <functional>
#include <map>
#include <stdexcept>
#include <string>

namespace goi {

using Rational = mpq_class;

/// Parse "p/q", "p" or a plain decimal integer. Throws std::invalid_argument.
Rational parse_rational(const std::string& text);
/// Always "p/q" (q may be 1), bit-exact.
std::string format_rational(const Rational& q);

/// 2^k for any integer k.
Rational pow2(long k);

// Non-negative or signed extended real: a rational or +-infinity.
// Multiplication follows the measurement convention 0 * inf = 0.
class ExtReal {
 public:
  enum class Kind { Finite, PosInf, NegInf };

  ExtReal() = default;
  ExtReal(const Rational& v) : kind_(Kind::Finite), value_(v) {}
  ExtReal(long v) : kind_(Kind::Finite), value_(v) {}
  static ExtReal infinity() { ExtReal r; r.kind_ = Kind::PosInf; return r; }
  static ExtReal neg_infinity() { ExtReal r; r.kind_ = Kind::NegInf; return r; }

  Kind kind() const { return kind_; }
  bool finite() const { return kind_ == Kind::Finite; }
  bool is_inf() const { return kind_ == Kind::PosInf; }
  bool is_zero() const { return finite() && value_ == 0; }
  /// Value of a finite number; throws on infinities.
  const Rational& value() const;

  friend ExtReal operator+(const ExtReal& a, const ExtReal& b);
  friend ExtReal operator-(const ExtReal& a) ;
  friend ExtReal operator-(const ExtReal& a, const ExtReal& b) { return a + (-b); }
  friend ExtReal operator*(const ExtReal& a, const ExtReal& b);
  ExtReal& operator+=(const ExtReal& o) { return *this = *this + o; }
  friend bool operator==(const ExtReal& a, const ExtReal& b);
  friend bool operator!=(const ExtReal& a, const ExtReal& b) { return !(a == b); }

  /// "p/q", "inf" or "-inf".
  std::string str() const;
  static ExtReal parse(const std::string& text);

 private:
  Kind kind_ = Kind::Finite;
  Rational value_ = 0;
};

/// Orthogonality test: a pairing value that is neither 0 nor infinite.
inline bool orthogonal_value(const ExtReal& v) { return v.finite() && v.value() != 0; }

// The map m used to measure cycles. Default instantiation: m(w) = 1/(1-w),
// with m(1) = inf.
class Quantifier {
 public:
  using Fn = std::function<ExtReal(const Rational&)>;

  Quantifier();
  Quantifier(std::string name, Fn fn) : name_(std::move(name)), fn_(std::move(fn)) {}

  static Quantifier inverse_complement();
  /// m(w) = w; finite everywhere, useful for cancellation-free checks.
  static Quantifier identity();
  /// Lookup table with a fallback rule for weights not in the table.
  static Quantifier table(std::map<Rational, ExtReal> values, Quantifier fallback = Quantifier());

  ExtReal operator()(const Rational& w) const { return fn_(w); }
  const std::string& name() const { return name_; }

 private:
  std::string name_;
  Fn fn_;
};

// Raised when an enumeration needs more work than its fuel allows, or when
// an object is infinite (infinitely many paths or circuits).
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace goi
