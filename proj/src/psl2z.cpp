#include "modwalk/psl2z.hpp"

#include <ostream>

namespace modwalk {

void ProjectiveMatrix::canonicalize() {
  int sc = sgn(c_);
  if (sc < 0 || (sc == 0 && sgn(d_) < 0)) {
    a_ = -a_;
    b_ = -b_;
    c_ = -c_;
    d_ = -d_;
  }
}

std::strong_ordering operator<=>(const ProjectiveMatrix& x, const ProjectiveMatrix& y) {
  for (auto [p, q] : {std::pair{&x.a_, &y.a_}, {&x.b_, &y.b_}, {&x.c_, &y.c_}, {&x.d_, &y.d_}}) {
    int c = cmp(*p, *q);
    if (c < 0) return std::strong_ordering::less;
    if (c > 0) return std::strong_ordering::greater;
  }
  return std::strong_ordering::equal;
}

std::string ProjectiveMatrix::label() const {
  return a_.get_str() + "," + b_.get_str() + "," + c_.get_str() + "," + d_.get_str();
}

std::ostream& operator<<(std::ostream& os, const ProjectiveMatrix& m) {
  return os << "[" << m.a() << ", " << m.b() << "; " << m.c() << ", " << m.d() << "]";
}

ProjectiveMatrix multiply(const ProjectiveMatrix& x, const ProjectiveMatrix& y) {
  return ProjectiveMatrix(x.a() * y.a() + x.b() * y.c(), x.a() * y.b() + x.b() * y.d(),
                          x.c() * y.a() + x.d() * y.c(), x.c() * y.b() + x.d() * y.d());
}

ProjectiveMatrix inverse(const ProjectiveMatrix& m) {
  return ProjectiveMatrix(m.d(), -m.b(), -m.c(), m.a());
}

const ProjectiveMatrix& generator(int index) {
  // Inverse pairs: 0 is self-inverse, (1,2), (3,8), (4,7), (5,6); 3 and 4
  // have order three (3*3 = 8, 4*4 = 7).
  static const std::array<ProjectiveMatrix, kGeneratorCount> table = {
      ProjectiveMatrix(0, -1, 1, 0),   // 0: -1/x
      ProjectiveMatrix(1, 1, 0, 1),    // 1: x + 1
      ProjectiveMatrix(1, -1, 0, 1),   // 2: x - 1
      ProjectiveMatrix(1, -1, 1, 0),   // 3: (x-1)/x
      ProjectiveMatrix(-1, -1, 1, 0),  // 4: -(x+1)/x
      ProjectiveMatrix(1, 0, 1, 1),    // 5: x/(x+1)
      ProjectiveMatrix(-1, 0, 1, -1),  // 6: x/(1-x) (canonical form of [[1,0],[-1,1]])
      ProjectiveMatrix(0, -1, 1, 1),   // 7: -1/(x+1)
      ProjectiveMatrix(0, -1, 1, -1),  // 8: -1/(x-1)
  };
  if (index < 0 || index >= kGeneratorCount) throw std::out_of_range("generator index out of range");
  return table[index];
}

bool is_unit_neighbor(const ProjectiveMatrix& m) {
  return !m.is_identity() && m.norm_squared() <= 3;
}

ExtendedRational mobius_real(const ProjectiveMatrix& m, const ExtendedRational& x) {
  return ExtendedRational(m.a() * x.num() + m.b() * x.den(), m.c() * x.num() + m.d() * x.den());
}

}  // namespace modwalk
