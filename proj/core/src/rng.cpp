// SPDX-License-Identifier: Apache-2.0
#include "sausage/rng.hpp"

#include <bit>
#include <cmath>
#include <cstring>

#include "sausage/errors.hpp"

namespace sausage {
namespace {

constexpr std::uint32_t kPhiloxM0 = 0xD2511F53u;
constexpr std::uint32_t kPhiloxM1 = 0xCD9E8D57u;
constexpr std::uint32_t kPhiloxW0 = 0x9E3779B9u;
constexpr std::uint32_t kPhiloxW1 = 0xBB67AE85u;

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi, std::uint32_t& lo) {
  const std::uint64_t p = static_cast<std::uint64_t>(a) * b;
  hi = static_cast<std::uint32_t>(p >> 32);
  lo = static_cast<std::uint32_t>(p);
}

}  // namespace

std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> c,
                                        std::array<std::uint32_t, 2> k) {
  for (int round = 0; round < 10; ++round) {
    std::uint32_t hi0, lo0, hi1, lo1;
    mulhilo(kPhiloxM0, c[0], hi0, lo0);
    mulhilo(kPhiloxM1, c[2], hi1, lo1);
    c = {hi1 ^ c[1] ^ k[0], lo1, hi0 ^ c[3] ^ k[1], lo0};
    k[0] += kPhiloxW0;
    k[1] += kPhiloxW1;
  }
  return c;
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

RngStream::RngStream(std::uint64_t seed, std::uint64_t stream_id, std::uint64_t counter)
    : seed_(seed), stream_id_(stream_id), counter_(counter) {}

RngStream RngStream::derive(std::uint64_t index) const {
  return RngStream(seed_, splitmix64(splitmix64(stream_id_) ^ splitmix64(index + 0x632BE59BD9B4E019ull)));
}

void RngStream::refill() {
  const std::array<std::uint32_t, 4> ctr{
      static_cast<std::uint32_t>(counter_), static_cast<std::uint32_t>(counter_ >> 32),
      static_cast<std::uint32_t>(stream_id_), static_cast<std::uint32_t>(stream_id_ >> 32)};
  const std::array<std::uint32_t, 2> key{static_cast<std::uint32_t>(seed_),
                                         static_cast<std::uint32_t>(seed_ >> 32)};
  block_ = philox4x32(ctr, key);
  ++counter_;
  used_ = 0;
}

std::uint32_t RngStream::next_u32() {
  if (used_ == 4) refill();
  return block_[used_++];
}

std::uint64_t RngStream::next_u64() {
  const std::uint64_t hi = next_u32();
  const std::uint64_t lo = next_u32();
  return (hi << 32) | lo;
}

double RngStream::uniform() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double RngStream::uniform_open() {
  return (static_cast<double>(next_u64() >> 12) + 0.5) * 0x1.0p-52;
}

double RngStream::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  double u, v, s;
  do {
    u = 2.0 * uniform() - 1.0;
    v = 2.0 * uniform() - 1.0;
    s = u * u + v * v;
  } while (s >= 1.0 || s == 0.0);
  const double f = std::sqrt(-2.0 * std::log(s) / s);
  spare_ = v * f;
  has_spare_ = true;
  return u * f;
}

Point4 RngStream::normal4() {
  const double a = normal();
  const double b = normal();
  const double c = normal();
  const double d = normal();
  return {a, b, c, d};
}

std::uint64_t hash_stream_id(std::string_view tag, double t, std::uint64_t index) {
  std::uint64_t h = 0xCBF29CE484222325ull;
  for (unsigned char ch : tag) h = (h ^ ch) * 0x100000001B3ull;
  h = splitmix64(h ^ std::bit_cast<std::uint64_t>(t));
  return splitmix64(h ^ splitmix64(index));
}

Point4 sphere_sample(RngStream& rng, const Point4& center, double rho) {
  if (!(rho > 0.0)) throw PreconditionError("sphere_sample: radius must be positive");
  Point4 g;
  double n2;
  do {
    g = rng.normal4();
    n2 = norm2(g);
  } while (n2 < 1e-300);
  return center + g * (rho / std::sqrt(n2));
}

Point4 ball_sample(RngStream& rng, const Point4& center, double rho) {
  if (!(rho > 0.0)) throw PreconditionError("ball_sample: radius must be positive");
  // Radius law in R^4: P(R <= r) = r^4.
  const double radial = rho * std::sqrt(std::sqrt(rng.uniform()));
  const Point4 dir = sphere_sample(rng, Point4{}, 1.0);
  return center + dir * radial;
}

}  // namespace sausage
