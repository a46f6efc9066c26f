#pragma once

#include <cstddef>
#include <functional>

namespace liouville {

/// Process-wide worker count. Initialised from LIOUVILLE_WORKERS, else 1.
unsigned worker_count();
void set_worker_count(unsigned n);

/// Runs body(i) for i in [0, n). Work is split into contiguous static
/// chunks and every index writes only its own output slot, so results do
/// not depend on the number of workers.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace liouville
