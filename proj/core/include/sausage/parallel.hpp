// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <functional>

namespace sausage {

/// Runs body(i) for i in [0, n) on up to `workers` threads. Tasks are
/// claimed dynamically; callers write results into slot i and fold them in
/// index order afterwards, which makes the output independent of the
/// worker count. The first exception thrown by any task is rethrown.
void parallel_for(std::size_t n, unsigned workers, const std::function<void(std::size_t)>& body);

/// Worker count used when a caller passes 0.
unsigned default_workers();

}  // namespace sausage
