#include "modwalk/minkowski.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "modwalk/cfrac.hpp"
#include "modwalk/errors.hpp"
#include "modwalk/rng.hpp"

namespace modwalk {

namespace {

// Exponent budget for materialized dyadics (8 MB of numerator bits).  Inputs
// beyond this (quotient sums > 2^26) are rejected rather than exhausting
// memory; unreachable for every chain state at desk scale.
constexpr std::uint64_t kMaxExponent = std::uint64_t{1} << 26;

// Alternating partial sum 2 * sum_{t=1}^{j} (-1)^{t+1} 2^{-K_t} over prefix
// sums K_t of the quotients; exact as a dyadic with exponent K_j - 1.
DyadicRational alternating_sum(std::span<const std::uint64_t> quotients) {
  std::uint64_t total = 0;
  for (std::uint64_t k : quotients) {
    if (k == 0) throw std::domain_error("quotients must be >= 1");
    if (total + k < total || total + k > kMaxExponent)
      throw ResourceError("quotient sum exceeds the dyadic exponent budget");
    total += k;
  }
  mpz_class num = 0;
  std::uint64_t running = 0;
  bool plus = true;
  for (std::uint64_t k : quotients) {
    running += k;
    mpz_class term = 1;
    mpz_mul_2exp(term.get_mpz_t(), term.get_mpz_t(), total - running);
    if (plus)
      num += term;
    else
      num -= term;
    plus = !plus;
  }
  return DyadicRational(std::move(num), total == 0 ? 0 : total - 1);
}

void check_unit_interval(const mpq_class& x) {
  if (sgn(x) < 0 || x > 1) throw std::domain_error("argument must lie in [0, 1]");
}

}  // namespace

DyadicRational qmark(const mpq_class& x) {
  check_unit_interval(x);
  if (sgn(x) == 0) return DyadicRational::zero();
  ContinuedFraction cf = expand(ExtendedRational(x));
  return alternating_sum(cf.tail);
}

DyadicRational qmark_oracle(const mpq_class& x) {
  check_unit_interval(x);
  // Raw-constructed mpq values may arrive unreduced; the bisection below
  // terminates by exact equality, so reduce first.
  mpq_class v = x;
  v.canonicalize();
  // Stern-Brocot bisection: the mediant of the current bracket maps to the
  // dyadic midpoint of the bracket's ?-images.  Every rational in (0,1) is
  // reached after at most num+den mediant steps.
  if (sgn(v) == 0) return DyadicRational::zero();
  if (v == 1) return DyadicRational::one();
  mpz_class pl = 0, ql = 1, pr = 1, qr = 1;
  DyadicRational lo = DyadicRational::zero(), hi = DyadicRational::one();
  for (;;) {
    mpz_class pm = pl + pr, qm = ql + qr;
    DyadicRational mid = (lo + hi).halved();
    int c = cmp(v.get_num() * qm, pm * v.get_den());
    if (c == 0) return mid;
    if (c < 0) {
      pr = std::move(pm);
      qr = std::move(qm);
      hi = std::move(mid);
    } else {
      pl = std::move(pm);
      ql = std::move(qm);
      lo = std::move(mid);
    }
  }
}

mpq_class qmark_inverse(const DyadicRational& d) {
  if (d < DyadicRational::zero() || DyadicRational::one() < d)
    throw std::domain_error("argument must lie in [0, 1]");
  // Peel one bit per step via the contraction identities
  //   ?(x/(1+x)) = ?(x)/2        (value <= 1/2)
  //   ?(1/(1+x)) = 1 - ?(x)/2    (value >  1/2)
  // then rebuild x innermost-out.
  const DyadicRational one = DyadicRational::one();
  const DyadicRational half = DyadicRational::half();
  std::vector<bool> upper;
  DyadicRational cur = d;
  while (!cur.is_zero() && cur != one) {
    if (cur <= half) {
      upper.push_back(false);
      cur = cur.doubled();
    } else {
      upper.push_back(true);
      cur = (one - cur).doubled();
    }
  }
  mpq_class x(cur.is_zero() ? 0 : 1);
  for (auto it = upper.rbegin(); it != upper.rend(); ++it) {
    // x/(1+x) resp. 1/(1+x); numerator and denominator stay coprime
    mpz_class den = x.get_num() + x.get_den();
    x = mpq_class(*it ? x.get_den() : x.get_num(), den);
  }
  return x;
}

DyadicRational chi_half(const mpq_class& y) {
  if (sgn(y) <= 0) throw std::domain_error("chi_half: argument must be positive");
  if (y <= 1) return DyadicRational::one() - qmark(y).halved();
  return qmark(mpq_class(y.get_den(), y.get_num())).halved();
}

DyadicRational lambda_survival(const ExtendedRational& x) {
  if (x.is_infinity()) return DyadicRational::zero();
  if (x.is_zero()) return DyadicRational::half();
  if (x.is_negative()) return DyadicRational::one() - chi_half(x.negated().to_mpq()).halved();
  return chi_half(x.to_mpq()).halved();
}

ValueBracket qmark_bracket(std::span<const std::uint64_t> prefix) {
  if (prefix.empty()) throw std::domain_error("qmark_bracket: need at least one quotient");
  DyadicRational s = alternating_sum(prefix);
  std::uint64_t total = 0;
  for (std::uint64_t k : prefix) total += k;
  // The tail remainder has sign (-1)^n and magnitude at most 2^-K_n.
  DyadicRational slack(mpz_class(1), total);
  if (prefix.size() % 2 == 1) return {s - slack, s};
  return {s, s + slack};
}

double holder_exponent() { return std::log(2.0) / (2.0 * std::log((1.0 + std::sqrt(5.0)) / 2.0)); }

double holder_modulus(std::size_t pairs, const mpq_class& scale, std::uint64_t seed) {
  if (pairs == 0) throw std::domain_error("holder_modulus: need at least one pair");
  if (sgn(scale) <= 0) throw std::domain_error("holder_modulus: scale must be positive");
  TrajectoryRng rng(seed, 0);
  const double alpha = holder_exponent();
  const mpz_class grid = mpz_class(1) << 32;
  double best = 0.0;
  for (std::size_t i = 0; i < pairs; ++i) {
    mpq_class x(mpz_class(static_cast<unsigned long>(rng.next_u64() >> 32)), grid);
    x.canonicalize();
    mpq_class t(mpz_class(static_cast<unsigned long>(rng.next_u64() >> 32)), grid);
    t.canonicalize();
    mpq_class dx = t * scale;
    if (sgn(dx) == 0) continue;  // degenerate pair, ratio undefined
    mpq_class x2 = x + dx;
    if (x2 > 1) x2 = x - dx;
    if (sgn(x2) < 0) continue;  // scale wider than the interval
    try {
      DyadicRational gap = qmark(x2) - qmark(x);
      double num = std::fabs(gap.to_double());
      double den = std::pow(std::fabs(dx.get_d()), alpha);
      best = std::max(best, num / den);
    } catch (const ResourceError&) {
      // astronomically unlucky draw (huge partial quotient); skip the pair
    }
  }
  return best;
}

}  // namespace modwalk
