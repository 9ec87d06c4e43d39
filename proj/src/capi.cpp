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

#include "spinmol/spinmol.h"

#include <cstring>
#include <exception>
#include <memory>
#include <new>
#include <string>

#include "spinmol/chain.hpp"
#include "spinmol/constants.hpp"
#include "spinmol/error.hpp"
#include "spinmol/program.hpp"
#include "spinmol/readout.hpp"
#include "spinmol/reports.hpp"
#include "spinmol/species.hpp"
#include "spinmol/synthesis.hpp"
#include "spinmol/window.hpp"

struct spinmol_species {
  spinmol::IonSpecies species;
};

struct spinmol_chain {
  spinmol::IonSpecies species;
  spinmol::TrapConfig trap;
  spinmol::ChainSolution chain;
  spinmol::CouplingMatrix coupling;
};

struct spinmol_program {
  spinmol::PulseProgram program;
};

struct spinmol_unitary {
  spinmol::RegisterUnitary u;
};

namespace {

thread_local std::string g_last_error;

spinmol_status fail(spinmol_status status, const char* message) {
  g_last_error = message;
  return status;
}

template <class Fn>
spinmol_status guarded(Fn&& fn) {
  try {
    g_last_error.clear();
    return fn();
  } catch (const spinmol::ParseError& e) {
    return fail(SPINMOL_PARSE_ERROR, e.what());
  } catch (const spinmol::UnsupportedSpecies& e) {
    return fail(SPINMOL_UNSUPPORTED_SPECIES, e.what());
  } catch (const spinmol::ConvergenceError& e) {
    return fail(SPINMOL_CONVERGENCE_ERROR, e.what());
  } catch (const spinmol::StructuralError& e) {
    return fail(SPINMOL_STRUCTURAL_ERROR, e.what());
  } catch (const spinmol::IoError& e) {
    return fail(SPINMOL_IO_ERROR, e.what());
  } catch (const spinmol::InvalidArgument& e) {
    return fail(SPINMOL_INVALID_ARGUMENT, e.what());
  } catch (const std::bad_alloc&) {
    return fail(SPINMOL_INTERNAL_ERROR, "out of memory");
  } catch (const std::exception& e) {
    return fail(SPINMOL_INTERNAL_ERROR, e.what());
  } catch (...) {
    return fail(SPINMOL_INTERNAL_ERROR, "unknown error");
  }
}

spinmol_status null_argument(const char* what) {
  return fail(SPINMOL_INVALID_ARGUMENT, (std::string("null argument: ") + what).c_str());
}

char* copy_string(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

spinmol_status write_json(const nlohmann::json& doc, char** json_out) {
  *json_out = copy_string(doc.dump(2) + "\n");
  return SPINMOL_OK;
}

}  // namespace

extern "C" {

const char* spinmol_version(void) { return "1.0.0"; }

const char* spinmol_status_string(spinmol_status status) {
  switch (status) {
    case SPINMOL_OK: return "ok";
    case SPINMOL_INVALID_ARGUMENT: return "invalid argument";
    case SPINMOL_UNSUPPORTED_SPECIES: return "unsupported species";
    case SPINMOL_CONVERGENCE_ERROR: return "convergence error";
    case SPINMOL_STRUCTURAL_ERROR: return "structural error";
    case SPINMOL_PARSE_ERROR: return "parse error";
    case SPINMOL_IO_ERROR: return "i/o error";
    case SPINMOL_VERIFICATION_FAILED: return "verification failed";
    case SPINMOL_INTERNAL_ERROR: return "internal error";
  }
  return "unknown status";
}

const char* spinmol_last_error(void) { return g_last_error.c_str(); }

void spinmol_string_free(char* s) { delete[] s; }

spinmol_status spinmol_species_builtin(const char* name, spinmol_species** out) {
  if (!name) return null_argument("name");
  if (!out) return null_argument("out");
  return guarded([&] {
    *out = new spinmol_species{spinmol::builtin_species(name)};
    return SPINMOL_OK;
  });
}

spinmol_status spinmol_species_load(const char* path, const char* name, spinmol_species** out) {
  if (!path) return null_argument("path");
  if (!out) return null_argument("out");
  return guarded([&] {
    *out = new spinmol_species{spinmol::load_species(path, name ? name : "")};
    return SPINMOL_OK;
  });
}

spinmol_status spinmol_species_json(const spinmol_species* species, char** json_out) {
  if (!species) return null_argument("species");
  if (!json_out) return null_argument("json_out");
  return guarded([&] { return write_json(spinmol::species_to_json(species->species), json_out); });
}

void spinmol_species_free(spinmol_species* species) { delete species; }

spinmol_status spinmol_chain_create(const spinmol_species* species, const spinmol_trap* trap, spinmol_chain** out) {
  if (!species) return null_argument("species");
  if (!trap) return null_argument("trap");
  if (!out) return null_argument("out");
  return guarded([&] {
    spinmol::TrapConfig config;
    config.n_ions = trap->n_ions;
    config.nu1 = spinmol::constants::kTwoPi * trap->nu1_hz;
    config.b0 = trap->b0_tesla;
    config.b = trap->gradient_tesla_per_m;
    config.validate();
    auto handle = std::make_unique<spinmol_chain>();
    handle->species = species->species;
    handle->trap = config;
    handle->chain = spinmol::solve_chain(species->species, config);
    handle->coupling = spinmol::coupling_matrix(handle->chain, species->species, config);
    *out = handle.release();
    return SPINMOL_OK;
  });
}

void spinmol_chain_free(spinmol_chain* chain) { delete chain; }

int spinmol_chain_size(const spinmol_chain* chain) { return chain ? chain->chain.size() : 0; }

spinmol_status spinmol_chain_position(const spinmol_chain* chain, int ion, double* u, double* z_m) {
  if (!chain) return null_argument("chain");
  if (ion < 0 || ion >= chain->chain.size()) return fail(SPINMOL_INVALID_ARGUMENT, "ion index out of range");
  if (u) *u = chain->chain.u[static_cast<std::size_t>(ion)];
  if (z_m) *z_m = chain->chain.z0[static_cast<std::size_t>(ion)];
  return SPINMOL_OK;
}

spinmol_status spinmol_chain_mode_frequency(const spinmol_chain* chain, int mode, double* rad_s) {
  if (!chain) return null_argument("chain");
  if (!rad_s) return null_argument("rad_s");
  if (mode < 0 || mode >= chain->chain.size()) return fail(SPINMOL_INVALID_ARGUMENT, "mode index out of range");
  *rad_s = chain->chain.mode_freqs(mode);
  return SPINMOL_OK;
}

spinmol_status spinmol_chain_coupling(const spinmol_chain* chain, int ion_a, int ion_b, double* rad_s) {
  if (!chain) return null_argument("chain");
  if (!rad_s) return null_argument("rad_s");
  const int n = chain->coupling.size();
  if (ion_a < 0 || ion_b < 0 || ion_a >= n || ion_b >= n) {
    return fail(SPINMOL_INVALID_ARGUMENT, "ion index out of range");
  }
  *rad_s = chain->coupling.j(ion_a, ion_b);
  return SPINMOL_OK;
}

spinmol_status spinmol_chain_report_json(const spinmol_chain* chain, double epsilon_m, char** json_out) {
  if (!chain) return null_argument("chain");
  if (!json_out) return null_argument("json_out");
  return guarded([&] {
    const auto window = spinmol::gradient_window(chain->species, chain->trap, epsilon_m);
    return write_json(spinmol::chain_report(chain->species, chain->trap, chain->chain, chain->coupling, window),
                      json_out);
  });
}

spinmol_status spinmol_coupling_report_json(const spinmol_chain* chain, char** json_out) {
  if (!chain) return null_argument("chain");
  if (!json_out) return null_argument("json_out");
  return guarded([&] { return write_json(spinmol::coupling_report(chain->trap, chain->coupling), json_out); });
}

spinmol_status spinmol_breitrabi_report_json(const spinmol_chain* chain, char** json_out) {
  if (!chain) return null_argument("chain");
  if (!json_out) return null_argument("json_out");
  return guarded([&] {
    return write_json(spinmol::breit_rabi_report(chain->species, chain->trap, chain->chain), json_out);
  });
}

spinmol_status spinmol_window_report_json(const spinmol_chain* chain, double epsilon_m, char** json_out) {
  if (!chain) return null_argument("chain");
  if (!json_out) return null_argument("json_out");
  return guarded([&] {
    const auto window = spinmol::gradient_window(chain->species, chain->trap, epsilon_m);
    return write_json(spinmol::window_report(chain->species, chain->trap, chain->chain, window), json_out);
  });
}

spinmol_status spinmol_program_parse(const char* text, int n_qutrits, spinmol_program** out) {
  if (!text) return null_argument("text");
  if (!out) return null_argument("out");
  return guarded([&] {
    *out = new spinmol_program{spinmol::parse_program(text, n_qutrits)};
    return SPINMOL_OK;
  });
}

void spinmol_program_free(spinmol_program* program) { delete program; }

int spinmol_program_qutrits(const spinmol_program* program) { return program ? program->program.n_qutrits : 0; }

int spinmol_program_has_measure(const spinmol_program* program) {
  return program && program->program.has_measure() ? 1 : 0;
}

int spinmol_program_needs_coupling(const spinmol_program* program) {
  return program && program->program.needs_coupling() ? 1 : 0;
}

spinmol_status spinmol_program_bind_chain(spinmol_program* program, const spinmol_chain* chain) {
  if (!program) return null_argument("program");
  if (!chain) return null_argument("chain");
  return guarded([&] {
    if (chain->coupling.size() != program->program.n_qutrits) {
      throw spinmol::InvalidArgument("chain has " + std::to_string(chain->coupling.size()) +
                                     " ions but the program has " + std::to_string(program->program.n_qutrits) +
                                     " qutrits");
    }
    program->program.bind_coupling(chain->coupling);
    return SPINMOL_OK;
  });
}

spinmol_status spinmol_program_json(const spinmol_program* program, char** json_out) {
  if (!program) return null_argument("program");
  if (!json_out) return null_argument("json_out");
  return guarded([&] { return write_json(spinmol::program_to_json(program->program), json_out); });
}

spinmol_status spinmol_program_run(const spinmol_program* program, spinmol_unitary** out) {
  if (!program) return null_argument("program");
  if (!out) return null_argument("out");
  return guarded([&] {
    *out = new spinmol_unitary{spinmol::run_program(program->program)};
    return SPINMOL_OK;
  });
}

spinmol_status spinmol_program_measure(const spinmol_program* program, int shots, uint64_t seed, char** json_out) {
  if (!program) return null_argument("program");
  if (!json_out) return null_argument("json_out");
  return guarded([&] {
    const auto state =
        spinmol::apply_program(program->program, spinmol::RegisterState::basis(program->program.n_qutrits));
    return write_json(spinmol::readout_json(spinmol::measure_register(state, shots, seed)), json_out);
  });
}

void spinmol_unitary_free(spinmol_unitary* unitary) { delete unitary; }

int spinmol_unitary_qutrits(const spinmol_unitary* unitary) { return unitary ? unitary->u.qutrits() : 0; }

long long spinmol_unitary_dimension(const spinmol_unitary* unitary) {
  return unitary ? static_cast<long long>(unitary->u.dimension()) : 0;
}

int spinmol_unitary_is_diagonal(const spinmol_unitary* unitary) {
  return unitary && unitary->u.is_diagonal() ? 1 : 0;
}

spinmol_status spinmol_unitary_entry(const spinmol_unitary* unitary, long long row, long long col, double* re,
                                     double* im) {
  if (!unitary) return null_argument("unitary");
  const long long dim = static_cast<long long>(unitary->u.dimension());
  if (row < 0 || col < 0 || row >= dim || col >= dim) return fail(SPINMOL_INVALID_ARGUMENT, "entry out of range");
  const auto v = unitary->u(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col));
  if (re) *re = v.real();
  if (im) *im = v.imag();
  return SPINMOL_OK;
}

spinmol_status spinmol_unitary_json(const spinmol_unitary* unitary, char** json_out) {
  if (!unitary) return null_argument("unitary");
  if (!json_out) return null_argument("json_out");
  return guarded([&] { return write_json(spinmol::unitary_json(unitary->u), json_out); });
}

spinmol_status spinmol_verify(const char* which, double theta, uint64_t seed, int restarts, char** json_out) {
  if (!which) return null_argument("which");
  if (!json_out) return null_argument("json_out");
  return guarded([&] {
    const std::string name = which;
    spinmol::VerificationReport report;
    if (name == "xor") {
      report = spinmol::verify_xor();
    } else if (name == "refocus") {
      report = spinmol::verify_refocus(theta);
    } else if (name == "phasegate") {
      spinmol::OptimizeOptions options;
      options.seed = seed;
      options.restarts = restarts;
      report = spinmol::verify_phase_gate(options);
    } else if (name == "qubit-refocus") {
      report = spinmol::qubit_refocus_demo(theta);
    } else {
      throw spinmol::InvalidArgument("unknown verification '" + name +
                                     "' (expected xor, refocus, phasegate or qubit-refocus)");
    }
    write_json(report.to_json(), json_out);
    if (!report.passed()) {
      std::string msg = "verification '" + name + "' failed:";
      for (const auto& c : report.checks) {
        if (!c.passed) msg += " " + c.name + " measured " + nlohmann::json(c.measured).dump();
      }
      return fail(SPINMOL_VERIFICATION_FAILED, msg.c_str());
    }
    return SPINMOL_OK;
  });
}

spinmol_status spinmol_optimize_phase(uint64_t seed, int restarts, double tol, char** json_out) {
  if (!json_out) return null_argument("json_out");
  return guarded([&] {
    spinmol::OptimizeOptions options;
    options.seed = seed;
    options.restarts = restarts;
    options.tol = tol;
    return write_json(spinmol::optimize_phase_angles(options).to_json(), json_out);
  });
}

spinmol_status spinmol_reference_angle_json(char** json_out) {
  if (!json_out) return null_argument("json_out");
  return guarded([&] { return write_json(spinmol::reference_angle_json(spinmol::reference_angle_report()), json_out); });
}

}  // extern "C"
