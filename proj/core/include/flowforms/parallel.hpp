#pragma once

#include <cstddef>
#include <functional>

namespace flowforms {

// Static-partition parallel loop.  Each index is processed exactly once and
// writers own disjoint slots, so results never depend on scheduling.
// threads == 0 picks hardware_concurrency.
void parallel_for(std::size_t n, int threads,
                  const std::function<void(std::size_t)>& body);

}  // namespace flowforms
