// SPDX-FileCopyrightText: (c) 2026 nullshaper contributors
//
// SPDX-License-Identifier: Apache-2.0

#include "nullshaper/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace nullshaper {

namespace {

std::atomic<std::size_t> g_override{0};

std::size_t default_threads() {
  std::size_t n = std::max(1u, std::thread::hardware_concurrency());
  if (const char *env = std::getenv("NULLSHAPER_THREADS")) {
    try {
      const long cap = std::stol(env);
      if (cap > 0)
        n = std::min<std::size_t>(n, static_cast<std::size_t>(cap));
    } catch (const std::exception &) {
      // unparsable value: keep the hardware default
    }
  }
  return n;
}

} // namespace

std::size_t thread_count() {
  const std::size_t o = g_override.load();
  return o > 0 ? o : default_threads();
}

void set_thread_count(std::size_t n) { g_override.store(n); }

void parallel_for(std::size_t n, const std::function<void(std::size_t)> &body) {
  const std::size_t workers = std::min(thread_count(), n);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i)
      body(i);
    return;
  }

  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto run = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= n)
        return;
      try {
        body(i);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error)
          error = std::current_exception();
        next.store(n);
        return;
      }
    }
  };
  {
    std::vector<std::jthread> pool;
    pool.reserve(workers - 1);
    for (std::size_t t = 1; t < workers; ++t)
      pool.emplace_back(run);
    run();
  }
  if (error)
    std::rethrow_exception(error);
}

} // namespace nullshaper
