#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <vector>

#include "modwalk/rational.hpp"

namespace modwalk {

/// Finite continued fraction  [head; tail_1, tail_2, ..., tail_m]
///   = head + 1/(tail_1 + 1/(tail_2 + ...)).
/// head >= 0 may be arbitrarily large; tail entries are positive and capped
/// at 64 bits (a tail quotient beyond 2^64 has no representable dyadic image
/// downstream anyway).
struct ContinuedFraction {
  mpz_class head;
  std::vector<std::uint64_t> tail;

  ContinuedFraction() : head(0) {}
  ContinuedFraction(mpz_class h, std::vector<std::uint64_t> t);

  std::size_t depth() const { return tail.size(); }

  bool operator==(const ContinuedFraction&) const = default;

  /// "[k0; k1, k2]" (no tail: "[k0]").
  std::string str() const;
};

/// Euclidean expansion of a positive finite rational.  The result is
/// canonical: the last tail quotient is >= 2, except expand(1) = [0; 1].
/// Throws std::domain_error unless 0 < x < ∞, std::overflow_error if a tail
/// quotient exceeds 64 bits.
ContinuedFraction expand(const ExtendedRational& x);

/// Value of the fraction with the innermost level seeded by w:
///   evaluate([k0], w) = k0 + w,
///   evaluate([k0; k1..km], w) = k0 + 1/evaluate([k1; k2..km], w).
/// The default seed 0 gives the exact value.  w = ∞ is allowed (an infinite
/// seed at depth m contributes 0 there).
ExtendedRational evaluate(const ContinuedFraction& cf, const ExtendedRational& w = ExtendedRational(0));

/// One composition step w -> 1/(k + w).  Requires k >= 1 and w >= 0.
mpq_class apply_A(std::uint64_t k, const mpq_class& w);

/// Convergents p_n/q_n for n = 0..m, except that the head convergent is
/// omitted when head = 0 (it is the artificial 0/1).
std::vector<ExtendedRational> convergents(const ContinuedFraction& cf);

/// Tent map on tail representations:  requires head = 0 and a nonempty tail.
/// tail_1 > 1 maps [0; k1, ...] to [0; k1 - 1, ...]; tail_1 = 1 maps
/// [0; 1, k2, ...] to [0; k2, ...].  An image equal to 1 comes back as [1];
/// the input [0; 1] (the value 1, image 0) throws std::domain_error.
ContinuedFraction shift_decrement(const ContinuedFraction& cf);

/// [k0; k1, ...] -> [0; k0, k1, ...] for head >= 1, i.e. x -> 1/x on [1, ∞).
/// Throws std::domain_error when head = 0 or head does not fit a tail slot.
ContinuedFraction reciprocal_cf(const ContinuedFraction& cf);

}  // namespace modwalk
