// Copyright 2026 The PolyPA Authors
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

#pragma once

#include <cstdint>
#include <string>

#include "polypa/errors.hpp"
#include "polypa/graph.hpp"
#include "polypa/weight.hpp"

namespace polypa {

// Parameters of one generation request: add `nodes` nodes to a seed graph,
// each linked to `ell` distinct hosts chosen with probability proportional
// to f(degree).
struct GenConfig {
  std::uint64_t nodes = 0;
  std::uint32_t ell = 1;
  WeightFunction f = WeightFunction::polynomial(1.0);
  std::uint64_t seed = 0;
  unsigned workers = 1;
};

// Checks shared by every generator. `require_monotone` is set by the
// proposal-list based generators, which need a non-decreasing f.
inline void validate(const Graph& seed, const GenConfig& cfg,
                     bool require_monotone) {
  if (cfg.ell == 0) throw InvalidConfig("ell must be at least 1");
  if (seed.num_nodes() == 0) throw InvalidConfig("seed graph has no nodes");
  if (cfg.ell > seed.num_nodes()) {
    throw InvalidConfig("ell = " + std::to_string(cfg.ell) +
                        " exceeds the seed node count " +
                        std::to_string(seed.num_nodes()));
  }
  if (seed.num_nodes() + cfg.nodes >= 0xffffffffULL) {
    throw InvalidConfig("node count exceeds 32-bit ids");
  }
  for (auto d : seed.degrees()) {
    if (d == 0) throw InvalidConfig("seed graph contains an isolated node");
  }
  if (require_monotone && !cfg.f.is_non_decreasing()) {
    throw InvalidConfig("weight function must be non-decreasing");
  }
}

}  // namespace polypa
