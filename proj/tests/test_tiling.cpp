#include <gmpxx.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <set>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "modwalk/chains.hpp"
#include "modwalk/errors.hpp"
#include "modwalk/psl2z.hpp"
#include "modwalk/rng.hpp"
#include "modwalk/tiling.hpp"

using namespace modwalk;

namespace {

HalfPlanePoint<mpq_class> point(long re_num, long re_den, long im_num, long im_den) {
  return HalfPlanePoint<mpq_class>(mpq_class(re_num, re_den), mpq_class(im_num, im_den));
}

bool adjacent_or_equal(const ProjectiveMatrix& a, const ProjectiveMatrix& b) {
  return a == b || is_unit_neighbor(inverse(a) * b);
}

}  // namespace

TEST_CASE("reduction of points already in the fundamental domain") {
  auto r = reduce_to_fundamental(point(0, 1, 2, 1));
  CHECK(r.tile == ProjectiveMatrix::identity());
  CHECK(r.point.re == 0);
  CHECK(r.point.im == 2);
  CHECK_FALSE(r.boundary);
}

TEST_CASE("reduction undoes translations and inversions") {
  auto r = reduce_to_fundamental(point(2, 1, 2, 1));
  CHECK(r.tile == generator(1) * generator(1));
  CHECK(r.point.re == 0);
  CHECK(r.point.im == 2);
  CHECK_FALSE(r.boundary);

  auto s = reduce_to_fundamental(point(0, 1, 1, 2));
  CHECK(s.tile == generator(0));
  CHECK(s.point.re == 0);
  CHECK(s.point.im == 2);
  CHECK_FALSE(s.boundary);
}

TEST_CASE("reduction flags boundary points exactly") {
  auto r = reduce_to_fundamental(point(0, 1, 1, 1));
  CHECK(r.tile == ProjectiveMatrix::identity());
  CHECK(r.boundary);

  auto s = reduce_to_fundamental(point(1, 2, 1, 1));
  CHECK(s.tile == generator(1));
  CHECK(s.point.re == mpq_class(-1, 2));
  CHECK(s.point.im == 1);
  CHECK(s.boundary);

  auto t = reduce_to_fundamental(point(3, 5, 4, 5));
  CHECK(t.point.re == mpq_class(-1, 2));
  CHECK(t.point.im == 1);
  CHECK(t.boundary);
}

TEST_CASE("reduction inverts random words exactly") {
  HalfPlanePoint<mpq_class> z0(mpq_class(0), mpq_class(3, 2));
  TrajectoryRng rng(41, 0);
  for (int t = 0; t < 100; ++t) {
    ProjectiveMatrix word;
    std::uint64_t len = rng.next_u64() % 7;
    for (std::uint64_t k = 0; k < len; ++k) word = word * generator(rng.next_generator_index());
    auto z = mobius_complex(word, z0);
    auto red = reduce_to_fundamental(z);
    CHECK(mobius_complex(red.tile, red.point) == z);
    CHECK_FALSE(red.boundary);
    CHECK(red.tile == word);
    CHECK(red.point == z0);
  }
}

TEST_CASE("float reduction mirrors the exact one") {
  auto r = reduce_to_fundamental(HalfPlanePoint<double>(0.5, 1.0));
  CHECK(r.tile == generator(1));
  CHECK(r.point.re == doctest::Approx(-0.5));
  CHECK(r.boundary);

  auto s = reduce_to_fundamental(HalfPlanePoint<double>(1e9 + 0.25, 2.0));
  CHECK(s.tile.b() == 1000000000);
  CHECK(s.point.re == doctest::Approx(0.25));

  HalfPlanePoint<mpq_class> z0(mpq_class(1, 4), mpq_class(1, 2));
  auto exact = reduce_to_fundamental(z0);
  auto approx = reduce_to_fundamental(HalfPlanePoint<double>(0.25, 0.5));
  CHECK(approx.tile == exact.tile);
  CHECK(approx.point.re == doctest::Approx(exact.point.re.get_d()).epsilon(1e-12));
  CHECK(approx.point.im == doctest::Approx(exact.point.im.get_d()).epsilon(1e-12));

  CHECK_THROWS_AS(
      reduce_to_fundamental(HalfPlanePoint<double>(std::numeric_limits<double>::quiet_NaN(), 1.0)),
      std::domain_error);
  CHECK_THROWS_AS(reduce_to_fundamental(HalfPlanePoint<double>(0.0, 1e-200)), std::domain_error);
}

TEST_CASE("neighbor lists are the right-multiplied generator set") {
  auto around_identity = neighbors(ProjectiveMatrix::identity());
  std::set<ProjectiveMatrix> seen(around_identity.begin(), around_identity.end());
  CHECK(seen.size() == 9);
  for (int i = 0; i < 9; ++i) CHECK(around_identity[i] == generator(i));

  auto around_shift = neighbors(generator(1));
  CHECK(std::count(around_shift.begin(), around_shift.end(), ProjectiveMatrix::identity()) == 1);
  std::set<ProjectiveMatrix> distinct(around_shift.begin(), around_shift.end());
  CHECK(distinct.size() == 9);

  // adjacency is symmetric: the generator set is closed under inverses
  for (const auto& m : around_identity) {
    auto back = neighbors(m);
    CHECK(std::count(back.begin(), back.end(), ProjectiveMatrix::identity()) == 1);
  }
}

TEST_CASE("balls of small radius") {
  auto b0 = cayley_ball(0);
  CHECK(b0.vertices.size() == 1);
  CHECK(b0.edges.empty());
  CHECK(b0.radius == 0);

  auto b1 = cayley_ball(1);
  CHECK(b1.vertices.size() == 10);
  CHECK(b1.distance[0] == 0);
  for (std::size_t i = 1; i < 10; ++i) CHECK(b1.distance[i] == 1);
  CHECK(b1.degree(0) == 9);

  std::set<std::pair<std::size_t, std::size_t>> expected;
  for (std::size_t i = 0; i < 10; ++i)
    for (std::size_t j = i + 1; j < 10; ++j)
      if (is_unit_neighbor(inverse(b1.vertices[i]) * b1.vertices[j])) expected.insert({i, j});
  std::set<std::pair<std::size_t, std::size_t>> actual(b1.edges.begin(), b1.edges.end());
  CHECK(actual == expected);
  CHECK(std::is_sorted(b1.edges.begin(), b1.edges.end()));
}

TEST_CASE("radius two ball matches brute-force products") {
  auto b2 = cayley_ball(2);
  std::set<ProjectiveMatrix> brute;
  brute.insert(ProjectiveMatrix::identity());
  for (int i = 0; i < 9; ++i) {
    brute.insert(generator(i));
    for (int j = 0; j < 9; ++j) brute.insert(generator(i) * generator(j));
  }
  std::set<ProjectiveMatrix> enumerated(b2.vertices.begin(), b2.vertices.end());
  CHECK(enumerated == brute);
  for (std::size_t v = 0; v < b2.vertices.size(); ++v) {
    unsigned expected = b2.vertices[v].is_identity()            ? 0u
                        : is_unit_neighbor(b2.vertices[v])      ? 1u
                                                                : 2u;
    CHECK(b2.distance[v] == expected);
  }
}

TEST_CASE("interior vertices have full degree") {
  auto b3 = cayley_ball(3);
  for (std::size_t v = 0; v < b3.vertices.size(); ++v)
    if (b3.distance[v] <= 2) CHECK(b3.degree(v) == 9);
}

TEST_CASE("ball enumeration stops at the vertex budget") {
  CHECK_THROWS_AS(cayley_ball(13), ResourceError);
}

TEST_CASE("graph serialization is deterministic") {
  auto b0 = cayley_ball(0);
  CHECK(to_dot(b0) == "graph tiling {\n  v0 [label=\"1,0,0,1\"];\n}\n");
  CHECK(to_json(b0) == "{\"radius\":0,\"vertices\":[[\"1\",\"0\",\"0\",\"1\"]],\"edges\":[]}");

  auto b2 = cayley_ball(2);
  std::string dot = to_dot(b2);
  CHECK(dot == to_dot(cayley_ball(2)));
  CHECK(dot.substr(0, 15) == "graph tiling {\n");
  CHECK(dot.find("  v0 -- v1;\n") != std::string::npos);
  CHECK(to_json(b2) == to_json(cayley_ball(2)));
}

TEST_CASE("walk projection labels a short trajectory") {
  HalfPlanePoint<mpq_class> z0(mpq_class(0), mpq_class(6, 5));
  std::vector<HalfPlanePoint<mpq_class>> traj = {z0, mobius_complex(generator(1), z0)};
  auto proj = project_walk(traj);
  REQUIRE(proj.tiles.size() == 2);
  CHECK(proj.tiles[0] == ProjectiveMatrix::identity());
  CHECK(proj.tiles[1] == generator(1));
  CHECK_FALSE(proj.boundary[0]);
  CHECK_FALSE(proj.boundary[1]);
}

TEST_CASE("projected orbit walk moves to adjacent tiles") {
  HalfPlanePoint<mpq_class> z0(mpq_class(0), mpq_class(6, 5));
  WalkConfig cfg{.seed = 42, .steps = 20, .trajectories = 2};
  auto paths = simulate_V_exact(z0, cfg);
  for (const auto& path : paths) {
    auto proj = project_walk(path);
    REQUIRE(proj.tiles.size() == path.size());
    for (std::size_t n = 0; n + 1 < proj.tiles.size(); ++n)
      CHECK(adjacent_or_equal(proj.tiles[n], proj.tiles[n + 1]));
    for (bool flag : proj.boundary) CHECK_FALSE(flag);
  }
}
