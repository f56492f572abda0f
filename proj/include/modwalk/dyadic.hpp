#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>

namespace modwalk {

/// Exact dyadic rational num / 2^exp, kept reduced: num is odd unless the
/// value is 0 (stored as 0 / 2^0).  num may be negative; exp >= 0.
class DyadicRational {
 public:
  DyadicRational() : num_(0), exp_(0) {}
  DyadicRational(mpz_class num, std::uint64_t exp) : num_(std::move(num)), exp_(exp) { reduce(); }

  static DyadicRational zero() { return DyadicRational(); }
  static DyadicRational one() { return DyadicRational(mpz_class(1), 0); }
  static DyadicRational half() { return DyadicRational(mpz_class(1), 1); }

  const mpz_class& num() const { return num_; }
  std::uint64_t exp() const { return exp_; }
  bool is_zero() const { return num_ == 0; }

  DyadicRational halved() const { return DyadicRational(num_, exp_ + 1); }
  DyadicRational doubled() const;
  DyadicRational negated() const { return DyadicRational(-num_, exp_); }

  friend DyadicRational operator+(const DyadicRational& a, const DyadicRational& b);
  friend DyadicRational operator-(const DyadicRational& a, const DyadicRational& b);

  friend bool operator==(const DyadicRational& a, const DyadicRational& b) {
    return a.num_ == b.num_ && a.exp_ == b.exp_;
  }
  friend std::strong_ordering operator<=>(const DyadicRational& a, const DyadicRational& b);

  mpq_class to_mpq() const;
  double to_double() const { return to_mpq().get_d(); }

  /// "num/2^exp" (integers plain, e.g. "1"); power_str() always shows the
  /// power form except for integers.
  std::string power_str() const;
  /// Ordinary fraction "p/q" with the denominator multiplied out.  Throws
  /// std::overflow_error when exp is absurdly large (> 2^24 bits).
  std::string fraction_str() const;

  /// Exact conversion of a rational whose denominator is a power of two;
  /// throws std::domain_error otherwise.
  static DyadicRational from_mpq(const mpq_class& q);

 private:
  void reduce();

  mpz_class num_;
  std::uint64_t exp_;
};

std::ostream& operator<<(std::ostream& os, const DyadicRational& d);

}  // namespace modwalk
