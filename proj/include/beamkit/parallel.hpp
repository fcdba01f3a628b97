#pragma once

// Index-parallel loop with deterministic result placement.

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdlib>
#include <exception>
#include <string>
#include <thread>
#include <vector>

#include "beamkit/errors.hpp"

namespace beamkit {

/// Worker count: hardware concurrency, capped by BEAMKIT_THREADS when set.
inline unsigned worker_count() {
  unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  const char* env = std::getenv("BEAMKIT_THREADS");
  if (env == nullptr || *env == '\0') return hw;
  std::size_t used = 0;
  long cap = 0;
  try {
    cap = std::stol(env, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != std::string(env).size() || cap < 1) {
    throw DomainError("BEAMKIT_THREADS must be a positive integer");
  }
  return std::min<unsigned long>(hw, static_cast<unsigned long>(cap));
}

/**
 * Calls body(i) for i in [0, n) on up to `threads` workers. Indices are
 * handed out dynamically; the body must write only to slot i. If any call
 * throws, the exception of the lowest failing index is rethrown.
 */
template <class Body>
void parallel_for(std::size_t n, Body&& body, unsigned threads) {
  threads = static_cast<unsigned>(std::clamp<std::size_t>(threads, 1, std::max<std::size_t>(n, 1)));
  std::vector<std::exception_ptr> errors(n);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        body(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (unsigned k = 0; k < threads; ++k) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace beamkit
