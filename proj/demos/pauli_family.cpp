// Copyright 2026 The Semigroup Forge Authors
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

// Walks the diagonal qubit family and prints, for a few rate triples, the
// complete-positivity verdict next to the weaker positivity-only criterion.
// The triple (1, 1, -1) passes the latter and fails the former.

#include "sgforge/equation_zoo.hpp"
#include "sgforge/semigroup.hpp"

#include <cstdio>

int main() {
  using namespace sgforge;
  const double triples[][3] = {
      {1.0, 1.0, 1.0}, {1.0, 1.0, 0.0}, {1.0, 1.0, -1.0}, {1.0, -1.0, -1.0},
  };
  std::printf("%8s %8s %8s   %-6s %12s   %-10s %12s\n", "g1", "g2", "g3", "gkls",
              "min eig C", "positivity", "min value");
  for (const auto& g : triples) {
    GksGenerator gen = pauli_example_generator(g[0], g[1], g[2]);
    GklsVerdict cp = is_gkls(gen);
    PositivityCheckResult pos =
        kossakowski_positivity_check(gks_to_superop(gen), 16, 1);
    std::printf("%8.2f %8.2f %8.2f   %-6s %12.4e   %-10s %12.4e\n", g[0], g[1], g[2],
                cp.passes ? "yes" : "no", cp.min_eigenvalue,
                pos.min_value >= -1e-9 ? "passes" : "fails", pos.min_value);
  }
  return 0;
}
