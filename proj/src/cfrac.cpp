#include "modwalk/cfrac.hpp"

#include <limits>
#include <sstream>
#include <stdexcept>

namespace modwalk {

ContinuedFraction::ContinuedFraction(mpz_class h, std::vector<std::uint64_t> t)
    : head(std::move(h)), tail(std::move(t)) {
  if (sgn(head) < 0) throw std::domain_error("ContinuedFraction: head must be >= 0");
  for (std::uint64_t k : tail)
    if (k == 0) throw std::domain_error("ContinuedFraction: tail quotients must be >= 1");
}

std::string ContinuedFraction::str() const {
  std::ostringstream os;
  os << "[" << head.get_str();
  for (std::size_t i = 0; i < tail.size(); ++i) os << (i == 0 ? "; " : ", ") << tail[i];
  os << "]";
  return os.str();
}

ContinuedFraction expand(const ExtendedRational& x) {
  if (x.is_infinity() || sgn(x.num()) <= 0) throw std::domain_error("expand: requires 0 < x < inf");
  if (x.num() == x.den()) return ContinuedFraction(0, {1});

  mpz_class p = x.num(), q = x.den();
  mpz_class head = p / q;  // floor: p, q > 0
  mpz_class r = p - head * q;
  std::vector<std::uint64_t> tail;
  while (r != 0) {
    // invert the remainder r/q and split off the next quotient
    std::swap(p, q);
    q = r;
    mpz_class k = p / q;
    if (!k.fits_ulong_p()) throw std::overflow_error("expand: tail quotient exceeds 64 bits");
    tail.push_back(k.get_ui());
    r = p - k * q;
  }
  return ContinuedFraction(std::move(head), std::move(tail));
}

ExtendedRational evaluate(const ContinuedFraction& cf, const ExtendedRational& w) {
  if (w.is_negative()) throw std::domain_error("evaluate: seed must be >= 0");
  // backward recurrence on the reversed tail; v = p/q throughout
  mpz_class p = w.num(), q = w.den();
  for (auto it = cf.tail.rbegin(); it != cf.tail.rend(); ++it) {
    // v -> 1/(k + v) = q / (k*q + p)
    mpz_class np = q;
    q = mpz_class(static_cast<unsigned long>(*it)) * q + p;
    p = std::move(np);
  }
  p += cf.head * q;
  return ExtendedRational(std::move(p), std::move(q));
}

mpq_class apply_A(std::uint64_t k, const mpq_class& w) {
  if (k == 0) throw std::domain_error("apply_A: quotient must be >= 1");
  if (sgn(w) < 0) throw std::domain_error("apply_A: seed must be >= 0");
  mpz_class kz(static_cast<unsigned long>(k));
  mpq_class r(w.get_den(), kz * w.get_den() + w.get_num());
  r.canonicalize();
  return r;
}

std::vector<ExtendedRational> convergents(const ContinuedFraction& cf) {
  std::vector<ExtendedRational> out;
  mpz_class h_prev = 1, k_prev = 0;  // p_{-1}/q_{-1}
  mpz_class h = cf.head, k = 1;      // p_0/q_0
  if (cf.head != 0) out.emplace_back(h, k);
  for (std::uint64_t a : cf.tail) {
    mpz_class az(static_cast<unsigned long>(a));
    mpz_class h_next = az * h + h_prev;
    mpz_class k_next = az * k + k_prev;
    h_prev = std::move(h);
    k_prev = std::move(k);
    h = std::move(h_next);
    k = std::move(k_next);
    out.emplace_back(h, k);
  }
  return out;
}

ContinuedFraction shift_decrement(const ContinuedFraction& cf) {
  if (cf.head != 0 || cf.tail.empty())
    throw std::domain_error("shift_decrement: requires head 0 and a nonempty tail");
  std::vector<std::uint64_t> t = cf.tail;
  if (t.front() > 1) {
    --t.front();
  } else {
    t.erase(t.begin());
    if (t.empty()) throw std::domain_error("shift_decrement: degenerate input (value was 1)");
  }
  if (t.size() == 1 && t.front() == 1) return ContinuedFraction(1, {});  // image is the value 1
  return ContinuedFraction(0, std::move(t));
}

ContinuedFraction reciprocal_cf(const ContinuedFraction& cf) {
  if (cf.head < 1) throw std::domain_error("reciprocal_cf: requires head >= 1");
  if (!cf.head.fits_ulong_p()) throw std::domain_error("reciprocal_cf: head exceeds a tail slot");
  std::vector<std::uint64_t> t;
  t.reserve(cf.tail.size() + 1);
  t.push_back(cf.head.get_ui());
  t.insert(t.end(), cf.tail.begin(), cf.tail.end());
  return ContinuedFraction(0, std::move(t));
}

}  // namespace modwalk
