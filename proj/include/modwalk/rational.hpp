#pragma once

#include <gmpxx.h>

#include <compare>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

namespace modwalk {

/// A point of the circle R ∪ {∞} (the boundary of the hyperbolic plane),
/// stored as a reduced fraction num/den with den >= 0.  The single point at
/// infinity is represented canonically as 1/0.  There is no distinction
/// between +∞ and -∞: negation fixes the infinite point.
///
/// The comparison operators order ∞ as the maximum element, which gives a
/// total order suitable for sorting and map keys.  (Any total order works for
/// those purposes; this one keeps finite comparisons the usual ones.)
class ExtendedRational {
 public:
  ExtendedRational() : num_(0), den_(1) {}

  ExtendedRational(mpz_class num, mpz_class den) : num_(std::move(num)), den_(std::move(den)) {
    canonicalize();
  }

  ExtendedRational(long num, long den) : num_(num), den_(den) { canonicalize(); }

  // NOLINTNEXTLINE(google-explicit-constructor): integers embed naturally
  ExtendedRational(long value) : num_(value), den_(1) {}

  explicit ExtendedRational(const mpq_class& q) : num_(q.get_num()), den_(q.get_den()) {}

  static ExtendedRational infinity() { return ExtendedRational(mpz_class(1), mpz_class(0)); }

  bool is_infinity() const { return den_ == 0; }
  bool is_zero() const { return num_ == 0 && den_ != 0; }
  bool is_negative() const { return sgn(num_) < 0 && den_ != 0; }

  const mpz_class& num() const { return num_; }
  const mpz_class& den() const { return den_; }

  /// Throws std::domain_error when the value is ∞.
  mpq_class to_mpq() const {
    if (is_infinity()) throw std::domain_error("ExtendedRational: infinity is not a finite rational");
    mpq_class q(num_, den_);
    // num_/den_ is already reduced with den_ > 0.
    return q;
  }

  /// ∞ maps to +HUGE_VAL.
  double to_double() const;

  ExtendedRational negated() const {
    if (is_infinity()) return *this;
    return ExtendedRational(-num_, den_);
  }

  /// 0 and ∞ are swapped; otherwise 1/x.
  ExtendedRational reciprocal() const { return ExtendedRational(den_, num_); }

  ExtendedRational abs() const {
    if (is_infinity()) return *this;
    return ExtendedRational(::abs(num_), den_);
  }

  friend bool operator==(const ExtendedRational& a, const ExtendedRational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }

  friend std::strong_ordering operator<=>(const ExtendedRational& a, const ExtendedRational& b) {
    if (a.is_infinity() || b.is_infinity()) {
      if (a.is_infinity() && b.is_infinity()) return std::strong_ordering::equal;
      return a.is_infinity() ? std::strong_ordering::greater : std::strong_ordering::less;
    }
    int c = cmp(a.num_ * b.den_, b.num_ * a.den_);
    if (c < 0) return std::strong_ordering::less;
    if (c > 0) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

  /// "p/q" for non-integers, "p" for integers, "inf" for the infinite point.
  std::string str() const;

  /// Accepts the formats produced by str(), plus surrounding whitespace.
  /// Throws std::invalid_argument on malformed input (including "0/0").
  static ExtendedRational parse(std::string_view text);

 private:
  void canonicalize();

  mpz_class num_;
  mpz_class den_;
};

std::ostream& operator<<(std::ostream& os, const ExtendedRational& x);

/// Parses "p/q" or "p" into an exact rational; throws std::invalid_argument
/// on malformed input or a zero denominator.
mpq_class parse_rational(std::string_view text);

std::string rational_str(const mpq_class& q);

}  // namespace modwalk
