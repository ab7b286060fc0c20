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

#include <stdexcept>
#include <string>
#include <string_view>

#include "polypa/config.hpp"
#include "polypa/errors.hpp"
#include "polypa/gen_em.hpp"
#include "polypa/gen_par.hpp"
#include "polypa/gen_seq.hpp"
#include "polypa/graph.hpp"
#include "polypa/random.hpp"
#include "polypa/reference.hpp"

namespace polypa {

enum class Algorithm { kSeq, kPar, kEm, kRef };

inline Algorithm parse_algorithm(std::string_view name) {
  if (name == "seq") return Algorithm::kSeq;
  if (name == "par") return Algorithm::kPar;
  if (name == "em") return Algorithm::kEm;
  if (name == "ref") return Algorithm::kRef;
  throw InvalidConfig("unknown algorithm '" + std::string(name) + "'");
}

inline const char* algorithm_name(Algorithm a) {
  switch (a) {
    case Algorithm::kSeq: return "seq";
    case Algorithm::kPar: return "par";
    case Algorithm::kEm: return "em";
    case Algorithm::kRef: return "ref";
  }
  return "?";
}

// Runs one generator with cfg.seed as its master seed. `threaded` only
// affects par; both modes give the same graph.
inline Graph run_algorithm(Algorithm a, const Graph& seed,
                           const GenConfig& cfg, bool threaded = true) {
  switch (a) {
    case Algorithm::kSeq:
      return generate_seq(seed, cfg);
    case Algorithm::kPar:
      return generate_par(seed, cfg, ParOptions{.threaded = threaded});
    case Algorithm::kEm:
      return generate_em(seed, cfg).graph;
    case Algorithm::kRef: {
      RandomSource rng(cfg.seed);
      return ref_generate(seed, cfg, rng);
    }
  }
  throw LogicError("unhandled algorithm");
}

}  // namespace polypa
