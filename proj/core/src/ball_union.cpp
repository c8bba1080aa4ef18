// SPDX-License-Identifier: Apache-2.0
#include "sausage/ball_union.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "sausage/errors.hpp"

namespace sausage {
namespace {

// Squared distance from p to an axis-aligned box, accumulated in the same
// order as dist2() so that it never exceeds dist2(p, c) for c in the box.
inline double box_d2(const Point4& p, const Point4& lo, const Point4& hi) {
  double s = 0.0;
  for (std::size_t i = 0; i < 4; ++i) {
    double g = 0.0;
    if (p[i] < lo[i]) {
      g = lo[i] - p[i];
    } else if (p[i] > hi[i]) {
      g = p[i] - hi[i];
    }
    s += g * g;
  }
  return s;
}

}  // namespace

Ball::Ball(const Point4& c, double r) : center(c), radius(r) {
  if (!(r > 0.0)) throw PreconditionError("Ball: radius must be positive");
}

BallUnion::BallUnion(std::vector<Point4> centers, double radius)
    : centers_(std::move(centers)), radius_(radius) {
  if (!(radius > 0.0)) throw PreconditionError("BallUnion: radius must be positive");
  if (centers_.size() >= std::numeric_limits<std::uint32_t>::max()) {
    throw PreconditionError("BallUnion: too many centers");
  }
  double max_norm2 = 0.0;
  for (const auto& c : centers_) max_norm2 = std::max(max_norm2, norm2(c));
  max_center_norm_ = std::sqrt(max_norm2);
  bounding_radius_ = centers_.empty() ? 0.0 : max_center_norm_ + radius_;
  if (!centers_.empty()) {
    nodes_.reserve(2 * (centers_.size() / kLeafSize + 1));
    build(0, static_cast<std::uint32_t>(centers_.size()));
  }
}

std::int32_t BallUnion::build(std::uint32_t begin, std::uint32_t end) {
  Node node;
  node.begin = begin;
  node.end = end;
  node.lo = centers_[begin];
  node.hi = centers_[begin];
  for (std::uint32_t i = begin + 1; i < end; ++i) {
    for (std::size_t k = 0; k < 4; ++k) {
      node.lo[k] = std::min(node.lo[k], centers_[i][k]);
      node.hi[k] = std::max(node.hi[k], centers_[i][k]);
    }
  }
  const auto id = static_cast<std::int32_t>(nodes_.size());
  nodes_.push_back(node);
  if (end - begin <= kLeafSize) return id;

  std::size_t axis = 0;
  double widest = -1.0;
  for (std::size_t k = 0; k < 4; ++k) {
    const double w = node.hi[k] - node.lo[k];
    if (w > widest) {
      widest = w;
      axis = k;
    }
  }
  if (widest <= 0.0) return id;  // all centers coincide

  const std::uint32_t mid = begin + (end - begin) / 2;
  std::nth_element(centers_.begin() + begin, centers_.begin() + mid, centers_.begin() + end,
                   [axis](const Point4& a, const Point4& b) { return a[axis] < b[axis]; });
  const std::int32_t left = build(begin, mid);
  const std::int32_t right = build(mid, end);
  nodes_[static_cast<std::size_t>(id)].left = left;
  nodes_[static_cast<std::size_t>(id)].right = right;
  return id;
}

double BallUnion::nearest_d2(const Point4& p, std::size_t* index) const {
  double best = std::numeric_limits<double>::infinity();
  std::size_t best_index = 0;
  std::int32_t stack[128];
  int top = 0;
  stack[top++] = 0;
  while (top > 0) {
    const Node& n = nodes_[static_cast<std::size_t>(stack[--top])];
    if (box_d2(p, n.lo, n.hi) > best) continue;
    if (n.left < 0) {
      for (std::uint32_t i = n.begin; i < n.end; ++i) {
        const double d2 = dist2(p, centers_[i]);
        if (d2 < best) {
          best = d2;
          best_index = i;
        }
      }
      continue;
    }
    const Node& l = nodes_[static_cast<std::size_t>(n.left)];
    const Node& r = nodes_[static_cast<std::size_t>(n.right)];
    const double dl = box_d2(p, l.lo, l.hi);
    const double dr = box_d2(p, r.lo, r.hi);
    // Push the farther child first so the nearer one is explored first.
    if (dl <= dr) {
      if (dr <= best) stack[top++] = n.right;
      if (dl <= best) stack[top++] = n.left;
    } else {
      if (dl <= best) stack[top++] = n.left;
      if (dr <= best) stack[top++] = n.right;
    }
  }
  if (index != nullptr) *index = best_index;
  return best;
}

double BallUnion::dist(const Point4& p) const {
  if (centers_.empty()) return std::numeric_limits<double>::infinity();
  return std::sqrt(nearest_d2(p, nullptr)) - radius_;
}

double BallUnion::dist_brute_force(const Point4& p) const {
  if (centers_.empty()) return std::numeric_limits<double>::infinity();
  double best = std::numeric_limits<double>::infinity();
  for (const auto& c : centers_) best = std::min(best, dist2(p, c));
  return std::sqrt(best) - radius_;
}

std::optional<BallUnion::Nearest> BallUnion::nearest(const Point4& p) const {
  if (centers_.empty()) return std::nullopt;
  std::size_t index = 0;
  const double d2 = nearest_d2(p, &index);
  return Nearest{index, std::sqrt(d2)};
}

bool BallUnion::any_within(const Point4& p, double r) const {
  if (centers_.empty()) return false;
  const double r2 = r * r;
  std::int32_t stack[128];
  int top = 0;
  stack[top++] = 0;
  while (top > 0) {
    const Node& n = nodes_[static_cast<std::size_t>(stack[--top])];
    if (box_d2(p, n.lo, n.hi) > r2) continue;
    if (n.left < 0) {
      for (std::uint32_t i = n.begin; i < n.end; ++i) {
        if (dist2(p, centers_[i]) <= r2) return true;
      }
      continue;
    }
    stack[top++] = n.right;
    stack[top++] = n.left;
  }
  return false;
}

std::size_t BallUnion::count_within(const Point4& p, double r) const {
  if (centers_.empty()) return 0;
  const double r2 = r * r;
  std::size_t count = 0;
  std::int32_t stack[128];
  int top = 0;
  stack[top++] = 0;
  while (top > 0) {
    const Node& n = nodes_[static_cast<std::size_t>(stack[--top])];
    if (box_d2(p, n.lo, n.hi) > r2) continue;
    if (n.left < 0) {
      for (std::uint32_t i = n.begin; i < n.end; ++i) {
        if (dist2(p, centers_[i]) <= r2) ++count;
      }
      continue;
    }
    stack[top++] = n.right;
    stack[top++] = n.left;
  }
  return count;
}

BallUnion BallUnion::with_radius(double radius) const {
  BallUnion out;
  if (!(radius > 0.0)) throw PreconditionError("BallUnion: radius must be positive");
  out.centers_ = centers_;
  out.nodes_ = nodes_;
  out.radius_ = radius;
  out.max_center_norm_ = max_center_norm_;
  out.bounding_radius_ = centers_.empty() ? 0.0 : max_center_norm_ + radius;
  return out;
}

}  // namespace sausage
