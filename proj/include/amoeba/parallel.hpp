#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace amoeba {

/// Caps the number of worker threads used by parallel_for (minimum 1).
void set_max_threads(unsigned n);
unsigned max_threads();

/// Calls body(i) for i in [0, n). Work is spread over up to max_threads()
/// workers; calls made from inside a worker run serially. If any body throws,
/// the exception from the smallest index is rethrown after all workers join.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

/// Pairwise (cascade) summation; the result depends only on the input order.
double pairwise_sum(std::span<const double> values);

}  // namespace amoeba
