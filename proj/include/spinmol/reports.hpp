// Copyright 2026 The spinmol Authors
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

#include <json.hpp>

#include "spinmol/chain.hpp"
#include "spinmol/readout.hpp"
#include "spinmol/register.hpp"
#include "spinmol/species.hpp"
#include "spinmol/window.hpp"

namespace spinmol {

// JSON reports. Keys carry unit suffixes; angular frequencies are rad/s.

nlohmann::json chain_report(const IonSpecies& species, const TrapConfig& trap, const ChainSolution& chain,
                            const CouplingMatrix& coupling, const GradientWindow& window);

nlohmann::json coupling_report(const TrapConfig& trap, const CouplingMatrix& coupling);

nlohmann::json breit_rabi_report(const IonSpecies& species, const TrapConfig& trap, const ChainSolution& chain);

nlohmann::json window_report(const IonSpecies& species, const TrapConfig& trap, const ChainSolution& chain,
                             const GradientWindow& window);

/// Row-major [re, im] pairs; a diagonal unitary is dumped as its diagonal.
nlohmann::json unitary_json(const RegisterUnitary& u);

nlohmann::json readout_json(const ReadoutResult& result);

}  // namespace spinmol
