// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "sausage/point4.hpp"

namespace sausage {

struct Ball {
  Point4 center;
  double radius;

  /// Throws PreconditionError unless radius > 0.
  Ball(const Point4& c, double r);

  bool contains(const Point4& p) const { return dist2(p, center) <= radius * radius; }
};

/// Finite union of closed balls sharing one radius, with a k-d tree over
/// the centers. Every query is exact: the tree only prunes subtrees whose
/// bounding box is provably farther than the current best, so results are
/// bitwise identical to a brute-force scan. Immutable after construction.
class BallUnion {
 public:
  struct Nearest {
    std::size_t index;  ///< position in centers()
    double center_dist;  ///< |p - c|
  };

  /// The empty union.
  BallUnion() = default;
  /// Centers are stored in index order (a permutation of the input).
  BallUnion(std::vector<Point4> centers, double radius);

  bool empty() const noexcept { return centers_.empty(); }
  std::size_t size() const noexcept { return centers_.size(); }
  double radius() const noexcept { return radius_; }
  std::span<const Point4> centers() const noexcept { return centers_; }

  /// max |c| + radius over all centers; 0 for the empty union.
  double bounding_radius() const noexcept { return bounding_radius_; }

  /// Signed distance min_i |p - c_i| - radius (negative inside). The empty
  /// union returns +infinity.
  double dist(const Point4& p) const;
  /// Same value by linear scan; used as the oracle for dist().
  double dist_brute_force(const Point4& p) const;

  /// Nearest center; nullopt for the empty union.
  std::optional<Nearest> nearest(const Point4& p) const;

  bool contains(const Point4& p) const { return any_within(p, radius_); }
  /// True if some center lies within distance r of p.
  bool any_within(const Point4& p, double r) const;
  /// Number of centers within distance r of p.
  std::size_t count_within(const Point4& p, double r) const;

  /// Union of the same centers with a different common radius.
  BallUnion with_radius(double radius) const;

 private:
  struct Node {
    Point4 lo;
    Point4 hi;
    std::uint32_t begin;
    std::uint32_t end;
    std::int32_t left = -1;
    std::int32_t right = -1;
  };

  static constexpr std::uint32_t kLeafSize = 16;

  std::int32_t build(std::uint32_t begin, std::uint32_t end);
  double nearest_d2(const Point4& p, std::size_t* index) const;

  std::vector<Point4> centers_;
  std::vector<Node> nodes_;
  double radius_ = 1.0;
  double max_center_norm_ = 0.0;
  double bounding_radius_ = 0.0;
};

}  // namespace sausage
