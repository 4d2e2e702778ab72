// Copyright (c) 2026 The polydg authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <functional>

namespace polydg {

/// Number of worker threads: min(hardware concurrency, POLYDG_THREADS).
int thread_count();

/// Runs fn(i) for i in [0, n). Chunks the range over thread_count() threads.
/// Callers must only write to disjoint locations per index; under that
/// contract the result is bitwise independent of the schedule.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace polydg
