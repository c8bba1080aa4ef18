// SPDX-License-Identifier: Apache-2.0
#include "sausage/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "sausage/errors.hpp"

namespace sausage {

ConfigError::ConfigError(std::vector<std::string> problems)
    : std::runtime_error([&] {
        std::string msg = "invalid configuration:";
        for (const auto& p : problems) msg += "\n  - " + p;
        return msg;
      }()),
      problems_(std::move(problems)) {}

IoError::IoError(const std::string& path, const std::string& what)
    : std::runtime_error(path + ": " + what), path_(path) {}

double green_radial(double rho) {
  if (!(rho > 0.0)) throw DomainError("green_g: pole at the origin");
  return 1.0 / (kTwoPiSq * rho * rho);
}

double green_g(const Point4& x) {
  const double r2 = norm2(x);
  if (!(r2 > 0.0)) throw DomainError("green_g: pole at the origin");
  return 1.0 / (kTwoPiSq * r2);
}

double gstar(double rho) {
  if (rho < 0.0 || std::isnan(rho)) throw DomainError("gstar: negative radius");
  if (rho <= 1.0) return 0.5 - 0.25 * rho * rho;
  return 0.25 / (rho * rho);
}

double ball_hit_prob(const Point4& z, double r) {
  if (!(r > 0.0)) throw DomainError("ball_hit_prob: radius must be positive");
  const double z2 = norm2(z);
  const double r2 = r * r;
  if (z2 <= r2) return 1.0;
  return r2 / z2;
}

double cond_hit_bound(const Point4& /*z*/, double cap_estimate, double dist) {
  if (!(dist > 0.0)) throw DomainError("cond_hit_bound: distance must be positive");
  return std::max(cap_estimate, 0.0) / (kTwoPiSq * dist * dist);
}

}  // namespace sausage
