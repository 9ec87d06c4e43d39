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

#include "spinmol/species.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "spinmol/constants.hpp"
#include "spinmol/error.hpp"

namespace spinmol {

using nlohmann::json;

void IonSpecies::validate() const {
  if (!(mass_kg > 0.0) || !std::isfinite(mass_kg)) {
    throw InvalidArgument("species '" + name + "': mass must be positive");
  }
  if (!(charge_c > 0.0) || !std::isfinite(charge_c)) {
    throw InvalidArgument("species '" + name + "': charge must be positive");
  }
  if (!(hyperfine_a > 0.0) || !std::isfinite(hyperfine_a)) {
    throw InvalidArgument("species '" + name + "': hyperfine constant must be positive");
  }
  if (!std::isfinite(g_j) || !std::isfinite(g_i)) {
    throw InvalidArgument("species '" + name + "': g-factors must be finite");
  }
}

IonSpecies yb171() {
  IonSpecies s;
  s.name = "yb171";
  s.mass_kg = 170.936 * constants::kAtomicMassUnit;
  s.charge_c = constants::kElementaryCharge;
  s.g_j = 2.0;
  s.g_i = 0.0;
  s.hyperfine_a = constants::kTwoPi * 12.6e9;
  s.nuclear_spin = 0.5;
  return s;
}

IonSpecies species_from_json(const json& entry) {
  if (!entry.is_object()) throw InvalidArgument("species entry must be a JSON object");
  auto number = [&](const char* key, bool required, double fallback) {
    auto it = entry.find(key);
    if (it == entry.end()) {
      if (required) throw InvalidArgument(std::string("species entry missing key '") + key + "'");
      return fallback;
    }
    if (!it->is_number()) throw InvalidArgument(std::string("species key '") + key + "' must be a number");
    return it->get<double>();
  };
  IonSpecies s;
  s.name = entry.value("name", std::string{});
  s.mass_kg = number("mass_amu", true, 0.0) * constants::kAtomicMassUnit;
  s.charge_c = number("charge_e", true, 0.0) * constants::kElementaryCharge;
  s.g_j = number("g_J", true, 0.0);
  s.g_i = number("g_I", false, 0.0);
  s.hyperfine_a = constants::kTwoPi * number("hyperfine_A_hz", true, 0.0);
  s.nuclear_spin = number("nuclear_spin", false, 0.5);
  s.validate();
  return s;
}

json species_to_json(const IonSpecies& s) {
  return json{{"name", s.name},
              {"mass_amu", s.mass_kg / constants::kAtomicMassUnit},
              {"charge_e", s.charge_c / constants::kElementaryCharge},
              {"g_J", s.g_j},
              {"g_I", s.g_i},
              {"hyperfine_A_hz", s.hyperfine_a / constants::kTwoPi},
              {"nuclear_spin", s.nuclear_spin}};
}

IonSpecies load_species(const std::string& path, std::string_view name) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open species file '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  json doc;
  try {
    doc = json::parse(buffer.str());
  } catch (const json::parse_error& e) {
    throw InvalidArgument("species file '" + path + "': " + e.what());
  }
  if (doc.is_object()) doc = json::array({doc});
  if (!doc.is_array() || doc.empty()) {
    throw InvalidArgument("species file '" + path + "' holds no entries");
  }
  if (name.empty()) {
    if (doc.size() != 1) throw InvalidArgument("species file has several entries; pick one by name");
    return species_from_json(doc.front());
  }
  for (const auto& entry : doc) {
    if (entry.is_object() && entry.value("name", std::string{}) == name) {
      return species_from_json(entry);
    }
  }
  throw InvalidArgument("species '" + std::string(name) + "' not found in '" + path + "'");
}

IonSpecies builtin_species(std::string_view name) {
  if (name == "yb171") return yb171();
  throw UnsupportedSpecies("unknown built-in species '" + std::string(name) + "'");
}

void TrapConfig::validate() const {
  if (n_ions < 1) throw InvalidArgument("n_ions must be at least 1");
  if (!(nu1 > 0.0) || !std::isfinite(nu1)) throw InvalidArgument("trap frequency must be positive");
  if (!(b >= 0.0) || !std::isfinite(b)) throw InvalidArgument("field gradient must be non-negative");
  if (!std::isfinite(b0)) throw InvalidArgument("field offset must be finite");
}

}  // namespace spinmol
