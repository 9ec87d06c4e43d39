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

#ifndef SPINMOL_SPINMOL_H_
#define SPINMOL_SPINMOL_H_

/* C interface to the spinmol library. Objects are opaque handles released
 * with their *_free function. Every call returns a status; on failure the
 * message is available from spinmol_last_error() on the same thread.
 * Strings returned through char** are owned by the caller and released with
 * spinmol_string_free(). Frequencies cross this boundary in Hz, fields in T,
 * gradients in T/m; JSON reports carry unit suffixes in their keys. */

#include <stdint.h>

#if defined(_WIN32)
#if defined(SPINMOL_BUILDING)
#define SPINMOL_API __declspec(dllexport)
#else
#define SPINMOL_API __declspec(dllimport)
#endif
#else
#define SPINMOL_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum spinmol_status {
  SPINMOL_OK = 0,
  SPINMOL_INVALID_ARGUMENT = 1,
  SPINMOL_UNSUPPORTED_SPECIES = 2,
  SPINMOL_CONVERGENCE_ERROR = 3,
  SPINMOL_STRUCTURAL_ERROR = 4,
  SPINMOL_PARSE_ERROR = 5,
  SPINMOL_IO_ERROR = 6,
  SPINMOL_VERIFICATION_FAILED = 7,
  SPINMOL_INTERNAL_ERROR = 99
} spinmol_status;

typedef struct spinmol_species spinmol_species;
typedef struct spinmol_chain spinmol_chain;
typedef struct spinmol_program spinmol_program;
typedef struct spinmol_unitary spinmol_unitary;

typedef struct spinmol_trap {
  int n_ions;
  double nu1_hz; /* axial frequency, converted to rad/s internally */
  double b0_tesla;
  double gradient_tesla_per_m;
} spinmol_trap;

SPINMOL_API const char* spinmol_version(void);
SPINMOL_API const char* spinmol_status_string(spinmol_status status);
SPINMOL_API const char* spinmol_last_error(void);
SPINMOL_API void spinmol_string_free(char* s);

/* Species. */
SPINMOL_API spinmol_status spinmol_species_builtin(const char* name, spinmol_species** out);
/* name may be NULL when the file holds a single entry. */
SPINMOL_API spinmol_status spinmol_species_load(const char* path, const char* name, spinmol_species** out);
SPINMOL_API spinmol_status spinmol_species_json(const spinmol_species* species, char** json_out);
SPINMOL_API void spinmol_species_free(spinmol_species* species);

/* Chain: equilibrium, modes and couplings for one trap configuration. */
SPINMOL_API spinmol_status spinmol_chain_create(const spinmol_species* species, const spinmol_trap* trap,
                                                spinmol_chain** out);
SPINMOL_API void spinmol_chain_free(spinmol_chain* chain);
SPINMOL_API int spinmol_chain_size(const spinmol_chain* chain);
SPINMOL_API spinmol_status spinmol_chain_position(const spinmol_chain* chain, int ion, double* u, double* z_m);
SPINMOL_API spinmol_status spinmol_chain_mode_frequency(const spinmol_chain* chain, int mode, double* rad_s);
SPINMOL_API spinmol_status spinmol_chain_coupling(const spinmol_chain* chain, int ion_a, int ion_b, double* rad_s);
SPINMOL_API spinmol_status spinmol_chain_report_json(const spinmol_chain* chain, double epsilon_m, char** json_out);
SPINMOL_API spinmol_status spinmol_coupling_report_json(const spinmol_chain* chain, char** json_out);
SPINMOL_API spinmol_status spinmol_breitrabi_report_json(const spinmol_chain* chain, char** json_out);
SPINMOL_API spinmol_status spinmol_window_report_json(const spinmol_chain* chain, double epsilon_m, char** json_out);

/* Pulse programs. n_qutrits = 0 infers the register size. */
SPINMOL_API spinmol_status spinmol_program_parse(const char* text, int n_qutrits, spinmol_program** out);
SPINMOL_API void spinmol_program_free(spinmol_program* program);
SPINMOL_API int spinmol_program_qutrits(const spinmol_program* program);
SPINMOL_API int spinmol_program_has_measure(const spinmol_program* program);
SPINMOL_API int spinmol_program_needs_coupling(const spinmol_program* program);
/* Binds the chain's coupling matrix to every MMALL op. */
SPINMOL_API spinmol_status spinmol_program_bind_chain(spinmol_program* program, const spinmol_chain* chain);
SPINMOL_API spinmol_status spinmol_program_json(const spinmol_program* program, char** json_out);

SPINMOL_API spinmol_status spinmol_program_run(const spinmol_program* program, spinmol_unitary** out);
/* Runs the program on |0...0> and samples the two-step readout. */
SPINMOL_API spinmol_status spinmol_program_measure(const spinmol_program* program, int shots, uint64_t seed,
                                                   char** json_out);

SPINMOL_API void spinmol_unitary_free(spinmol_unitary* unitary);
SPINMOL_API int spinmol_unitary_qutrits(const spinmol_unitary* unitary);
SPINMOL_API long long spinmol_unitary_dimension(const spinmol_unitary* unitary);
SPINMOL_API int spinmol_unitary_is_diagonal(const spinmol_unitary* unitary);
SPINMOL_API spinmol_status spinmol_unitary_entry(const spinmol_unitary* unitary, long long row, long long col,
                                                 double* re, double* im);
SPINMOL_API spinmol_status spinmol_unitary_json(const spinmol_unitary* unitary, char** json_out);

/* Verification: which is "xor", "refocus", "phasegate" or "qubit-refocus".
 * Returns SPINMOL_VERIFICATION_FAILED (with the report still written) when
 * a check misses its tolerance. */
SPINMOL_API spinmol_status spinmol_verify(const char* which, double theta, uint64_t seed, int restarts,
                                          char** json_out);

/* Phase gate angle search; writes the solution JSON. */
SPINMOL_API spinmol_status spinmol_optimize_phase(uint64_t seed, int restarts, double tol, char** json_out);

SPINMOL_API spinmol_status spinmol_reference_angle_json(char** json_out);

#ifdef __cplusplus
}
#endif

#endif /* SPINMOL_SPINMOL_H_ */
