#pragma once

#include <cstddef>
#include <functional>
#include <span>

namespace vlab {

/// Worker count: VEKUA_LAB_THREADS when set and positive, otherwise the
/// hardware concurrency (at least 1).
int worker_count();

/// Runs body(i) for i in [0, count). Each index is handled by exactly one
/// worker, so per-index results never depend on the worker count.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

/// Sum with a fixed pairwise tree (leaf blocks of 8, left-to-right).
double pairwise_sum(std::span<const double> values);

}  // namespace vlab
