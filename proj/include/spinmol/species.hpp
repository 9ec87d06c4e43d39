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

#include <string>
#include <string_view>

#include <json.hpp>

namespace spinmol {

/// Physical constants of one ion type. Frequencies are angular (rad/s).
struct IonSpecies {
  std::string name;
  double mass_kg = 0.0;
  double charge_c = 0.0;
  double g_j = 0.0;
  /// Nuclear g-factor in Bohr-magneton units; zero neglects the nuclear Zeeman term.
  double g_i = 0.0;
  double hyperfine_a = 0.0;
  double nuclear_spin = 0.5;

  /// Throws InvalidArgument unless mass, charge and hyperfine constant are positive.
  void validate() const;
};

/// 171Yb+ with the nuclear Zeeman term neglected.
IonSpecies yb171();

/// Parses one registry entry:
/// {"name", "mass_amu", "charge_e", "g_J", "g_I", "hyperfine_A_hz", optional "nuclear_spin"}.
IonSpecies species_from_json(const nlohmann::json& entry);
nlohmann::json species_to_json(const IonSpecies& species);

/// Loads a registry file holding either one entry or an array of entries and
/// returns the entry called `name` (or the only entry when `name` is empty).
IonSpecies load_species(const std::string& path, std::string_view name = {});

/// Built-in species by name ("yb171").
IonSpecies builtin_species(std::string_view name);

struct TrapConfig {
  int n_ions = 1;
  double nu1 = 0.0;  // axial trap angular frequency, rad/s
  double b0 = 0.0;   // field offset, T
  double b = 0.0;    // field gradient, T/m

  void validate() const;
};

}  // namespace spinmol
