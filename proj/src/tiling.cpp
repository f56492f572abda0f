#include "modwalk/tiling.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include "modwalk/errors.hpp"

namespace modwalk {

namespace {

constexpr std::size_t kMaxBallVertices = std::size_t{1} << 15;
constexpr int kMaxReductionSteps = 1 << 20;

ProjectiveMatrix translation(const mpz_class& n) {
  return ProjectiveMatrix(mpz_class(1), n, mpz_class(0), mpz_class(1));
}

mpz_class floor_of(const mpq_class& q) {
  mpz_class out;
  mpz_fdiv_q(out.get_mpz_t(), q.get_num().get_mpz_t(), q.get_den().get_mpz_t());
  return out;
}

}  // namespace

Reduction<mpq_class> reduce_to_fundamental(const HalfPlanePoint<mpq_class>& z) {
  mpq_class re = z.re;
  mpq_class im = z.im;
  // acc maps the original point to the current one; the tile is its inverse.
  ProjectiveMatrix acc;
  const ProjectiveMatrix flip = generator(0);
  for (int iter = 0; iter < kMaxReductionSteps; ++iter) {
    mpz_class n = floor_of(re + mpq_class(1, 2));
    if (n != 0) {
      re -= mpq_class(n);
      acc = translation(-n) * acc;
    }
    mpq_class norm2 = re * re + im * im;
    if (norm2 >= 1) {
      bool boundary = norm2 == 1 || re * 2 == 1 || re * 2 == -1;
      return {inverse(acc), HalfPlanePoint<mpq_class>(re, im), boundary};
    }
    mpq_class new_re = -re / norm2;
    im /= norm2;
    re = new_re;
    acc = flip * acc;
  }
  throw ResourceError("reduce_to_fundamental: step budget exceeded");
}

Reduction<double> reduce_to_fundamental(const HalfPlanePoint<double>& z) {
  constexpr double kGuard = 1e-9;
  double re = z.re;
  double im = z.im;
  if (!std::isfinite(re) || !std::isfinite(im))
    throw std::domain_error("reduce_to_fundamental: non-finite coordinate");
  ProjectiveMatrix acc;
  const ProjectiveMatrix flip = generator(0);
  for (int iter = 0; iter < kMaxReductionSteps; ++iter) {
    double n = std::floor(re + 0.5);
    if (n != 0) {
      re -= n;
      acc = translation(mpz_class(-n)) * acc;
    }
    double norm2 = re * re + im * im;
    if (norm2 <= 0) throw std::domain_error("reduce_to_fundamental: coordinates underflowed");
    if (norm2 >= 1) {
      bool boundary =
          std::abs(std::sqrt(norm2) - 1.0) < kGuard || std::abs(std::abs(re) - 0.5) < kGuard;
      return {inverse(acc), HalfPlanePoint<double>(re, im), boundary};
    }
    double new_re = -re / norm2;
    im /= norm2;
    re = new_re;
    acc = flip * acc;
  }
  throw ResourceError("reduce_to_fundamental: step budget exceeded");
}

std::array<ProjectiveMatrix, kGeneratorCount> neighbors(const ProjectiveMatrix& m) {
  std::array<ProjectiveMatrix, kGeneratorCount> out;
  for (int i = 0; i < kGeneratorCount; ++i) out[i] = m * generator(i);
  return out;
}

std::size_t TilingGraph::degree(std::size_t vertex) const {
  std::size_t d = 0;
  for (const auto& e : edges) {
    if (e.first == vertex || e.second == vertex) ++d;
  }
  return d;
}

TilingGraph cayley_ball(unsigned radius) {
  TilingGraph g;
  g.radius = radius;
  std::map<ProjectiveMatrix, std::size_t> index;
  g.vertices.push_back(ProjectiveMatrix::identity());
  g.distance.push_back(0);
  index.emplace(g.vertices.front(), 0);
  for (std::size_t head = 0; head < g.vertices.size(); ++head) {
    if (g.distance[head] == radius) continue;
    const ProjectiveMatrix current = g.vertices[head];
    unsigned next_distance = g.distance[head] + 1;
    for (const auto& nb : neighbors(current)) {
      if (index.find(nb) != index.end()) continue;
      if (g.vertices.size() >= kMaxBallVertices)
        throw ResourceError("cayley_ball: vertex budget exceeded");
      index.emplace(nb, g.vertices.size());
      g.vertices.push_back(nb);
      g.distance.push_back(next_distance);
    }
  }
  std::set<std::pair<std::size_t, std::size_t>> edges;
  for (std::size_t i = 0; i < g.vertices.size(); ++i) {
    for (const auto& nb : neighbors(g.vertices[i])) {
      auto it = index.find(nb);
      if (it == index.end() || it->second == i) continue;
      edges.insert({std::min(i, it->second), std::max(i, it->second)});
    }
  }
  g.edges.assign(edges.begin(), edges.end());
  return g;
}

std::string to_dot(const TilingGraph& g) {
  std::ostringstream os;
  os << "graph tiling {\n";
  for (std::size_t i = 0; i < g.vertices.size(); ++i)
    os << "  v" << i << " [label=\"" << g.vertices[i].label() << "\"];\n";
  for (const auto& e : g.edges) os << "  v" << e.first << " -- v" << e.second << ";\n";
  os << "}\n";
  return os.str();
}

std::string to_json(const TilingGraph& g) {
  std::ostringstream os;
  os << "{\"radius\":" << g.radius << ",\"vertices\":[";
  for (std::size_t i = 0; i < g.vertices.size(); ++i) {
    const auto& m = g.vertices[i];
    if (i) os << ",";
    os << "[\"" << m.a() << "\",\"" << m.b() << "\",\"" << m.c() << "\",\"" << m.d() << "\"]";
  }
  os << "],\"edges\":[";
  for (std::size_t i = 0; i < g.edges.size(); ++i) {
    if (i) os << ",";
    os << "[" << g.edges[i].first << "," << g.edges[i].second << "]";
  }
  os << "]}";
  return os.str();
}

namespace {

template <class Scalar>
WalkProjection project_points(const std::vector<HalfPlanePoint<Scalar>>& trajectory) {
  WalkProjection out;
  out.tiles.reserve(trajectory.size());
  out.boundary.reserve(trajectory.size());
  for (const auto& z : trajectory) {
    auto red = reduce_to_fundamental(z);
    out.tiles.push_back(red.tile);
    out.boundary.push_back(red.boundary);
  }
  return out;
}

}  // namespace

WalkProjection project_walk(const std::vector<HalfPlanePoint<mpq_class>>& trajectory) {
  return project_points(trajectory);
}

WalkProjection project_walk(const std::vector<HalfPlanePoint<double>>& trajectory) {
  return project_points(trajectory);
}

}  // namespace modwalk
