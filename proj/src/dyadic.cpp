#include "modwalk/dyadic.hpp"

#include <algorithm>
#include <ostream>
#include <stdexcept>

namespace modwalk {

void DyadicRational::reduce() {
  if (num_ == 0) {
    exp_ = 0;
    return;
  }
  if (exp_ == 0) return;
  // 2-adic valuation of num_ (mpz_scan1 sees the two's-complement image for
  // negatives, which has the same trailing-zero count as |num_|)
  std::uint64_t twos = mpz_scan1(num_.get_mpz_t(), 0);
  std::uint64_t k = std::min(twos, exp_);
  if (k > 0) {
    mpz_fdiv_q_2exp(num_.get_mpz_t(), num_.get_mpz_t(), k);
    exp_ -= k;
  }
}

DyadicRational DyadicRational::doubled() const {
  if (exp_ > 0) return DyadicRational(num_, exp_ - 1);
  mpz_class n = num_ * 2;
  return DyadicRational(std::move(n), 0);
}

namespace {
mpz_class shifted(const mpz_class& n, std::uint64_t k) {
  mpz_class r;
  mpz_mul_2exp(r.get_mpz_t(), n.get_mpz_t(), k);
  return r;
}
}  // namespace

DyadicRational operator+(const DyadicRational& a, const DyadicRational& b) {
  std::uint64_t e = std::max(a.exp_, b.exp_);
  mpz_class n = shifted(a.num_, e - a.exp_) + shifted(b.num_, e - b.exp_);
  return DyadicRational(std::move(n), e);
}

DyadicRational operator-(const DyadicRational& a, const DyadicRational& b) {
  std::uint64_t e = std::max(a.exp_, b.exp_);
  mpz_class n = shifted(a.num_, e - a.exp_) - shifted(b.num_, e - b.exp_);
  return DyadicRational(std::move(n), e);
}

std::strong_ordering operator<=>(const DyadicRational& a, const DyadicRational& b) {
  std::uint64_t e = std::max(a.exp_, b.exp_);
  int c = cmp(shifted(a.num_, e - a.exp_), shifted(b.num_, e - b.exp_));
  if (c < 0) return std::strong_ordering::less;
  if (c > 0) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

mpq_class DyadicRational::to_mpq() const {
  mpz_class den = 1;
  mpz_mul_2exp(den.get_mpz_t(), den.get_mpz_t(), exp_);
  return mpq_class(num_, den);  // already reduced
}

std::string DyadicRational::power_str() const {
  if (exp_ == 0) return num_.get_str();
  return num_.get_str() + "/2^" + std::to_string(exp_);
}

std::string DyadicRational::fraction_str() const {
  if (exp_ == 0) return num_.get_str();
  if (exp_ > (std::uint64_t{1} << 24)) throw std::overflow_error("dyadic denominator too large to print");
  mpz_class den = 1;
  mpz_mul_2exp(den.get_mpz_t(), den.get_mpz_t(), exp_);
  return num_.get_str() + "/" + den.get_str();
}

DyadicRational DyadicRational::from_mpq(const mpq_class& q) {
  const mpz_class& den = q.get_den();
  if (den == 1) return DyadicRational(q.get_num(), 0);
  // q is canonical, so den > 0; a power of two has a single set bit
  std::uint64_t low = mpz_scan1(den.get_mpz_t(), 0);
  if (mpz_sizeinbase(den.get_mpz_t(), 2) != low + 1)
    throw std::domain_error("not a dyadic rational: " + q.get_str());
  return DyadicRational(q.get_num(), low);
}

std::ostream& operator<<(std::ostream& os, const DyadicRational& d) { return os << d.power_str(); }

}  // namespace modwalk
