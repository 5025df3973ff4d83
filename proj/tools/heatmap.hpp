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

#include <iosfwd>

#include "qrpd/nash.hpp"

namespace qrpd::cli {

// Self-contained SVG: epsilon on the horizontal axis, w upwards. FIRST
// yellow, SECOND blue, BOTH green, NEITHER white.
void write_heatmap_svg(const ScanGrid& grid, std::ostream& out);

}  // namespace qrpd::cli
