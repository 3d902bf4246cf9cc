#ifndef HCT_PARALLEL_HPP
#define HCT_PARALLEL_HPP

#include <functional>

namespace hct {

// Worker count: min(hardware_concurrency, HCT_THREADS) with HCT_THREADS read
// from the environment once; at least 1.
int worker_count();

// Runs fn(i) for i in [0, n). Work is split into contiguous index chunks, one
// per worker; callers get determinism by writing results to disjoint slots and
// reducing serially afterwards.
void parallel_for(int n, const std::function<void(int)>& fn);

}  // namespace hct

#endif
