// Copyright 2026 The nfvchain Authors
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

#ifndef NFVCHAIN_VERIFY_H_
#define NFVCHAIN_VERIFY_H_

#include <string>
#include <vector>

#include "nfvchain/ilp_model.h"
#include "nfvchain/topology.h"

namespace nfvchain {

struct Verdict {
  bool ok = true;
  std::vector<std::string> violations;
};

// Re-derives feasibility of a decoded solution straight from the scenario:
// route validity, chain order along each route, role-appropriate hosts,
// link loads, per-node cores and memory. Shares no code with Compile.
Verdict VerifySolution(const Scenario& scenario, const Strategy& strategy,
                       const PlacementSolution& solution);

}  // namespace nfvchain

#endif  // NFVCHAIN_VERIFY_H_
