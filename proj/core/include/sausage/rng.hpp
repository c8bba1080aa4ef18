// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cstdint>
#include <string_view>

#include "sausage/point4.hpp"

namespace sausage {

/// Philox4x32-10 block function (Salmon et al., SC'11).
std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> ctr,
                                        std::array<std::uint32_t, 2> key);

std::uint64_t splitmix64(std::uint64_t x);

/// Counter-based random stream. The output sequence is a pure function of
/// (seed, stream_id), so every sampler is reproducible regardless of the
/// thread that runs it. Streams are cheap value types: copy one to fork an
/// identical sequence, derive() to get an independent child.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed, std::uint64_t stream_id = 0, std::uint64_t counter = 0);

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t stream_id() const noexcept { return stream_id_; }
  std::uint64_t counter() const noexcept { return counter_; }

  /// Independent child stream; same (parent, index) always yields the same child.
  RngStream derive(std::uint64_t index) const;

  std::uint32_t next_u32();
  std::uint64_t next_u64();

  /// Uniform on [0, 1) with 53 random bits.
  double uniform();
  /// Uniform on (0, 1).
  double uniform_open();
  /// Standard normal (Marsaglia polar method).
  double normal();
  /// Four independent standard normals.
  Point4 normal4();

 private:
  void refill();

  std::uint64_t seed_;
  std::uint64_t stream_id_;
  std::uint64_t counter_;
  std::array<std::uint32_t, 4> block_{};
  unsigned used_ = 4;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

/// Stream id for a named work unit; used by the experiment runner to key
/// (experiment, t, index) triples.
std::uint64_t hash_stream_id(std::string_view tag, double t, std::uint64_t index);

/// Uniform point on the sphere of radius rho around center.
Point4 sphere_sample(RngStream& rng, const Point4& center, double rho);

/// Uniform point in the closed ball of radius rho around center.
Point4 ball_sample(RngStream& rng, const Point4& center, double rho);

}  // namespace sausage
