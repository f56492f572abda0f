#pragma once

#include <gmpxx.h>

#include <array>
#include <compare>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <utility>

#include "modwalk/rational.hpp"

namespace modwalk {

/// An element of the modular group: an integer matrix [[a, b], [c, d]] with
/// determinant 1, identified with its negative.  The stored representative is
/// the one with c > 0, or c = 0 and d > 0.
class ProjectiveMatrix {
 public:
  ProjectiveMatrix() : a_(1), b_(0), c_(0), d_(1) {}

  ProjectiveMatrix(mpz_class a, mpz_class b, mpz_class c, mpz_class d)
      : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)), d_(std::move(d)) {
    if (a_ * d_ - b_ * c_ != 1) throw std::domain_error("ProjectiveMatrix: determinant must be 1");
    canonicalize();
  }

  ProjectiveMatrix(long a, long b, long c, long d)
      : ProjectiveMatrix(mpz_class(a), mpz_class(b), mpz_class(c), mpz_class(d)) {}

  static ProjectiveMatrix identity() { return ProjectiveMatrix(); }

  const mpz_class& a() const { return a_; }
  const mpz_class& b() const { return b_; }
  const mpz_class& c() const { return c_; }
  const mpz_class& d() const { return d_; }

  bool is_identity() const { return a_ == 1 && b_ == 0 && c_ == 0 && d_ == 1; }

  /// a^2 + b^2 + c^2 + d^2, the squared Frobenius norm (sign-independent).
  mpz_class norm_squared() const { return a_ * a_ + b_ * b_ + c_ * c_ + d_ * d_; }

  bool operator==(const ProjectiveMatrix& o) const = default;
  friend std::strong_ordering operator<=>(const ProjectiveMatrix& x, const ProjectiveMatrix& y);

  /// "a,b,c,d" of the canonical representative; usable as a stable key/label.
  std::string label() const;

 private:
  void canonicalize();

  mpz_class a_, b_, c_, d_;
};

std::ostream& operator<<(std::ostream& os, const ProjectiveMatrix& m);

ProjectiveMatrix multiply(const ProjectiveMatrix& x, const ProjectiveMatrix& y);
inline ProjectiveMatrix operator*(const ProjectiveMatrix& x, const ProjectiveMatrix& y) {
  return multiply(x, y);
}
ProjectiveMatrix inverse(const ProjectiveMatrix& m);

inline constexpr int kGeneratorCount = 9;

/// The nine nonidentity elements of squared norm <= 3, indexed 0..8.
/// Index 0 is the single norm-2 element x -> -1/x; 1..8 have norm 3.
const ProjectiveMatrix& generator(int index);

/// True iff m is one of the nine generators: norm_squared() <= 3 and
/// m is not the identity.
bool is_unit_neighbor(const ProjectiveMatrix& m);

/// Fractional linear action on the boundary circle:
///   x -> (a x + b) / (c x + d),  with  ∞ -> a/c  and  -d/c -> ∞.
ExtendedRational mobius_real(const ProjectiveMatrix& m, const ExtendedRational& x);

/// A point of the open upper half plane; construction checks im > 0.
template <class Scalar>
struct HalfPlanePoint {
  Scalar re;
  Scalar im;

  HalfPlanePoint(Scalar r, Scalar i) : re(std::move(r)), im(std::move(i)) {
    if (!(im > 0)) throw std::domain_error("HalfPlanePoint: im must be positive");
  }

  bool operator==(const HalfPlanePoint&) const = default;
};

/// Fractional linear action on the upper half plane.  With z = x + iy and
/// den = (cx + d)^2 + (cy)^2:
///   re' = ((ax + b)(cx + d) + a c y^2) / den,   im' = y / den.
/// im' > 0 is automatic when y > 0 and den > 0; a vanishing denominator
/// (only possible in floating point) throws std::domain_error.
template <class Scalar>
HalfPlanePoint<Scalar> mobius_complex(const ProjectiveMatrix& m, const HalfPlanePoint<Scalar>& z);

namespace detail {
template <class Scalar>
Scalar scalar_from(const mpz_class& v);
template <>
inline mpq_class scalar_from<mpq_class>(const mpz_class& v) {
  return mpq_class(v);
}
template <>
inline double scalar_from<double>(const mpz_class& v) {
  return v.get_d();
}
}  // namespace detail

template <class Scalar>
HalfPlanePoint<Scalar> mobius_complex(const ProjectiveMatrix& m, const HalfPlanePoint<Scalar>& z) {
  Scalar a = detail::scalar_from<Scalar>(m.a());
  Scalar b = detail::scalar_from<Scalar>(m.b());
  Scalar c = detail::scalar_from<Scalar>(m.c());
  Scalar d = detail::scalar_from<Scalar>(m.d());
  Scalar cx_d = c * z.re + d;
  Scalar cy = c * z.im;
  Scalar den = cx_d * cx_d + cy * cy;
  if (!(den > 0)) throw std::domain_error("mobius_complex: denominator vanished");
  Scalar re = ((a * z.re + b) * cx_d + a * c * z.im * z.im) / den;
  Scalar im = z.im / den;
  return HalfPlanePoint<Scalar>(std::move(re), std::move(im));
}

}  // namespace modwalk
