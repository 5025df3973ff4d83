// Copyright 2026 The qrpd Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <functional>

namespace qrpd {

// Worker count: QRPD_THREADS if set and positive, else the hardware
// concurrency (QRPD_THREADS=0 also means auto).
int default_thread_count();

// Calls fn(i) for i in [0, n) on up to `threads` workers (0 = default).
// Indices are claimed dynamically; callers must write results by index so
// the outcome does not depend on scheduling. The first exception thrown by
// fn is rethrown after all workers stop.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn, int threads = 0);

}  // namespace qrpd
