// SPDX-FileCopyrightText: (c) 2026 nullshaper contributors
//
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <functional>

namespace nullshaper {

// Worker cap for parallel loops. Defaults to the hardware concurrency,
// limited by the NULLSHAPER_THREADS environment variable when set.
std::size_t thread_count();

// Overrides the worker cap; 0 restores the default.
void set_thread_count(std::size_t n);

// Runs body(i) for i in [0, n). Each index is processed exactly once and
// results must be written to index-addressed storage, so the outcome never
// depends on the number of workers.
void parallel_for(std::size_t n, const std::function<void(std::size_t)> &body);

} // namespace nullshaper
