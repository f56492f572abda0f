#include "modwalk/rational.hpp"

#include <cmath>
#include <ostream>

namespace modwalk {

void ExtendedRational::canonicalize() {
  if (den_ == 0) {
    if (num_ == 0) throw std::invalid_argument("ExtendedRational: 0/0 is not a point");
    num_ = 1;
    return;
  }
  if (sgn(den_) < 0) {
    num_ = -num_;
    den_ = -den_;
  }
  mpz_class g = gcd(num_, den_);
  if (g > 1) {
    num_ /= g;
    den_ /= g;
  }
}

double ExtendedRational::to_double() const {
  if (is_infinity()) return HUGE_VAL;
  return mpq_class(num_, den_).get_d();
}

std::string ExtendedRational::str() const {
  if (is_infinity()) return "inf";
  if (den_ == 1) return num_.get_str();
  return num_.get_str() + "/" + den_.get_str();
}

ExtendedRational ExtendedRational::parse(std::string_view text) {
  size_t begin = text.find_first_not_of(" \t");
  size_t end = text.find_last_not_of(" \t");
  if (begin == std::string_view::npos) throw std::invalid_argument("empty rational literal");
  std::string s(text.substr(begin, end - begin + 1));
  if (s == "inf" || s == "+inf" || s == "-inf") return infinity();
  mpq_class q;
  if (mpq_set_str(q.get_mpq_t(), s.c_str(), 10) != 0)
    throw std::invalid_argument("malformed rational literal: " + s);
  if (q.get_den() == 0) {
    if (q.get_num() == 0) throw std::invalid_argument("0/0 is not a point");
    return infinity();
  }
  q.canonicalize();
  return ExtendedRational(q);
}

std::ostream& operator<<(std::ostream& os, const ExtendedRational& x) { return os << x.str(); }

mpq_class parse_rational(std::string_view text) {
  ExtendedRational x = ExtendedRational::parse(text);
  if (x.is_infinity()) throw std::invalid_argument("expected a finite rational");
  return x.to_mpq();
}

std::string rational_str(const mpq_class& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_str();
}

}  // namespace modwalk
