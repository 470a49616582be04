// Copyright 2026 The spinent Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Optimal symmetric gains for the CV GHZ and EPR networks over a squeezing
// grid, printed as a table.

#include <cstdio>
#include <vector>

#include "spinent/spinent.hpp"

int main() {
  using namespace spinent;
  const std::vector<double> rs{0.0, 0.5, 1.0, 1.5, 2.0, 3.0};
  for (const char* name : {"cv_ghz", "cv_epr"}) {
    const auto table = optimize::sweep(presets::moment_source(name, {}), rs);
    std::printf("%s\n%6s %9s %9s %9s\n", name, "r", "h", "g", "ratio");
    for (const auto& row : table.rows)
      std::printf("%6.2f %9.4f %9.4f %9.5f\n", row.r, row.h(), row.g(), row.ratio);
  }
  return 0;
}
