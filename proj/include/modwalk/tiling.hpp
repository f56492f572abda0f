#pragma once

#include <gmpxx.h>

#include <array>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "modwalk/psl2z.hpp"

namespace modwalk {

/// A point of H moved into the fundamental domain {|z| >= 1, |Re z| <= 1/2}:
/// the original point equals h_tile(point) with point in the closed domain.
/// boundary marks reduced points on the domain boundary, where the tile
/// label is one of several valid choices.
template <class Scalar>
struct Reduction {
  ProjectiveMatrix tile;
  HalfPlanePoint<Scalar> point;
  bool boundary = false;
};

/// Exact reduction for rational coordinates; boundary hits are detected by
/// exact comparison (|Re| = 1/2 or |z| = 1).
Reduction<mpq_class> reduce_to_fundamental(const HalfPlanePoint<mpq_class>& z);

/// Floating-point reduction; boundary is flagged whenever the reduced point
/// lies within 1e-9 of the domain boundary.
Reduction<double> reduce_to_fundamental(const HalfPlanePoint<double>& z);

/// The nine canonical products m * E_i, i = 0..8, pairwise distinct.  Two
/// tiles m, m' are adjacent iff inverse(m) * m' is a unit neighbor, so this
/// is exactly the adjacency list of m in the tiling graph.
std::array<ProjectiveMatrix, kGeneratorCount> neighbors(const ProjectiveMatrix& m);

/// Ball of the tiling graph around the identity tile.  Vertices appear in
/// BFS discovery order (deterministic: generator index order within each
/// frontier); edges join enumerated vertices at word distance 1 and are
/// stored as index pairs with first < second, sorted.
struct TilingGraph {
  std::vector<ProjectiveMatrix> vertices;
  std::vector<unsigned> distance;
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  unsigned radius = 0;

  std::size_t degree(std::size_t vertex) const;
};

/// BFS closure of {identity} to the given depth.  Throws ResourceError when
/// the vertex budget (2^15 vertices, radius ~12) is exceeded.
TilingGraph cayley_ball(unsigned radius);

std::string to_dot(const TilingGraph& g);
std::string to_json(const TilingGraph& g);

/// Tile labels of a half-plane trajectory, one per point, with per-point
/// boundary-ambiguity flags.  Consecutive labels of a nearest-neighbor walk
/// are equal or adjacent.
struct WalkProjection {
  std::vector<ProjectiveMatrix> tiles;
  std::vector<bool> boundary;
};

WalkProjection project_walk(const std::vector<HalfPlanePoint<mpq_class>>& trajectory);
WalkProjection project_walk(const std::vector<HalfPlanePoint<double>>& trajectory);

}  // namespace modwalk
