#pragma once

#include <cstddef>
#include <functional>

namespace cslab {

// Worker count: CSLAB_THREADS when set, else hardware concurrency.
int thread_cap();

// Runs body(i) for i in [0, n); results must not depend on scheduling.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace cslab
