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

// Inference-variance sums for the three-qubit GHZ and W states.

#include <cstdio>

#include "spinent/spinent.hpp"

int main() {
  using namespace spinent;
  const auto ghz = qudit::criterion5_evaluate(qudit::ghz_state(3), qudit::ghz_strategy(), 1.0);
  const auto w = qudit::criterion5_evaluate(qudit::w_state(3), qudit::w_strategy(), 1.0);
  for (const auto& [name, res] : {std::pair{"GHZ", ghz}, std::pair{"W", w}}) {
    std::printf("%-3s B = (%.3f, %.3f, %.3f) sum %.3f  genuine %d  full inseparability %d\n", name, res.b[0],
                res.b[1], res.b[2], res.sum(), res.genuine(), res.full_inseparability());
  }
  return 0;
}
