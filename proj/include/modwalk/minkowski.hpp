#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <span>

#include "modwalk/dyadic.hpp"
#include "modwalk/rational.hpp"

namespace modwalk {

/// Minkowski's question mark function at a rational x in [0, 1]: the
/// alternating dyadic sum 2 * sum_n (-1)^{n+1} 2^{-(k_1+...+k_n)} over the
/// continued-fraction tail of x.  Exact; strictly increasing; ?(0)=0, ?(1)=1.
/// Throws std::domain_error outside [0,1].
DyadicRational qmark(const mpq_class& x);

/// Independent evaluation of ? by Stern-Brocot bisection from (0/1, 1/1):
/// the mediant of two fractions maps to the dyadic midpoint of their images.
/// Recursion depth is at most the denominator of x.
DyadicRational qmark_oracle(const mpq_class& x);

/// Exact inverse of ? on dyadic rationals in [0, 1]:
/// qmark(qmark_inverse(d)) = d.
mpq_class qmark_inverse(const DyadicRational& d);

/// The Denjoy-Minkowski function, the survival function Pr(Y > y) of the
/// modular-walk half-line law:  1 - ?(y)/2 for 0 < y <= 1, ?(1/y)/2 for
/// y >= 1.  Throws std::domain_error for y <= 0.
DyadicRational chi_half(const mpq_class& y);

/// Survival function Pr(X > x) of the symmetric boundary law:
///   chi_half(x)/2 for x > 0, 1 - chi_half(-x)/2 for x < 0, 1/2 at 0, 0 at ∞.
DyadicRational lambda_survival(const ExtendedRational& x);

/// Dyadic enclosure of ?(x) valid for every x in [0,1] whose expansion
/// starts with the given tail prefix (k_1..k_n, n >= 1).  Width is at most
/// 2 * 2^-(k_1+...+k_n).
struct ValueBracket {
  DyadicRational lo;
  DyadicRational hi;
};
ValueBracket qmark_bracket(std::span<const std::uint64_t> prefix);

/// Empirical Hoelder-quotient sup over seeded random pairs |x - x'| <= scale:
///   max |?(x) - ?(x')| / |x - x'|^alpha,  alpha = log 2 / (2 log golden).
/// Reports the observed constant only; no specific value is asserted.
double holder_modulus(std::size_t pairs, const mpq_class& scale, std::uint64_t seed = 0);

/// alpha = log 2 / (2 log golden ratio) ~ 0.7202, the sharp Hoelder exponent.
double holder_exponent();

}  // namespace modwalk
