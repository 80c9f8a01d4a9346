#pragma once

#include <cstddef>
#include <functional>

namespace khoszul {

// Worker count: KHOSZUL_THREADS when set to a positive integer, otherwise
// the hardware concurrency.
std::size_t thread_cap();

// Runs fn(0..n-1) on up to thread_cap() threads. The first exception thrown
// by any task is rethrown after all workers stop.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace khoszul
