#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace epstein {

/// Worker count used by parallel loops. Defaults to the EPSTEIN_THREADS
/// environment variable when set, otherwise 1.
int thread_count();
void set_thread_count(int n);

/// Calls fn(i) for i in [0, n) on up to thread_count() threads. Work is split
/// into contiguous blocks; fn must only write to slots owned by index i.
/// The first exception thrown by any worker is rethrown.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

/// Pairwise tree sum with a fixed shape, independent of thread count.
double pairwise_sum(const double* x, std::size_t n);
inline double pairwise_sum(const std::vector<double>& x) { return pairwise_sum(x.data(), x.size()); }

}  // namespace epstein
