#pragma once

#include <cstddef>
#include <functional>

namespace tensorlab {

/// Worker count: TENSORLAB_THREADS if set to a positive integer, otherwise
/// the number of logical cores (at least 1).
std::size_t thread_budget();

/// Runs body(i) for i in [0, count) on up to thread_budget() threads. Bodies
/// must write only to their own slot of any shared output. The first
/// exception thrown (lowest index) is rethrown after all workers finish.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace tensorlab
