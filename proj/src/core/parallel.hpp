/*
Copyright 2026 the ksz authors

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

                http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
*/

#pragma once

#include <functional>

#include "core/common.hpp"

namespace ksz {

/// Global worker count for parallel_for; 0 means hardware concurrency.
void set_thread_count(int n);
int thread_count();

/// Runs fn(0), ..., fn(count - 1) across the configured workers. Each
/// index is visited exactly once; callers keep determinism by writing
/// results into per-index slots. The first exception, if any, is
/// rethrown on the calling thread after all workers join.
void parallel_for(i64 count, const std::function<void(i64)>& fn);

}  // namespace ksz
