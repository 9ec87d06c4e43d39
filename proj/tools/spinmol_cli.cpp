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

// spinmol command-line front end. Talks to the library only through the C
// interface in spinmol/spinmol.h.

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <iterator>
#include <memory>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "spinmol/spinmol.h"

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitVerificationFailed = 1;
constexpr int kExitUsage = 2;
constexpr int kExitRuntime = 3;

struct Options {
  std::string out = "json";
  std::string species_file;
  std::string species = "yb171";
  std::uint64_t seed = 0;
  std::string output;

  int ions = 0;
  double nu1_hz = 200e3;
  double b0 = 0.45;
  double b = 0.0;
  double epsilon_m = 0.01;

  std::string program_path;
  int qutrits = 0;
  int shots = 10000;

  std::string which;
  double theta = 1.0;
  int restarts = 64;
  double tol = 1e-10;
};

class CliError : public std::runtime_error {
 public:
  CliError(int code, const std::string& message) : std::runtime_error(message), code_(code) {}
  int code() const { return code_; }

 private:
  int code_;
};

int exit_code_for(spinmol_status status) {
  switch (status) {
    case SPINMOL_OK: return kExitOk;
    case SPINMOL_VERIFICATION_FAILED: return kExitVerificationFailed;
    case SPINMOL_INVALID_ARGUMENT:
    case SPINMOL_UNSUPPORTED_SPECIES:
    case SPINMOL_PARSE_ERROR:
    case SPINMOL_IO_ERROR: return kExitUsage;
    default: return kExitRuntime;
  }
}

void check(spinmol_status status) {
  if (status != SPINMOL_OK) {
    throw CliError(exit_code_for(status), std::string(spinmol_status_string(status)) + ": " + spinmol_last_error());
  }
}

struct StringDeleter {
  void operator()(char* s) const { spinmol_string_free(s); }
};
struct SpeciesDeleter {
  void operator()(spinmol_species* s) const { spinmol_species_free(s); }
};
struct ChainDeleter {
  void operator()(spinmol_chain* c) const { spinmol_chain_free(c); }
};
struct ProgramDeleter {
  void operator()(spinmol_program* p) const { spinmol_program_free(p); }
};
struct UnitaryDeleter {
  void operator()(spinmol_unitary* u) const { spinmol_unitary_free(u); }
};

using OwnedString = std::unique_ptr<char, StringDeleter>;
using Species = std::unique_ptr<spinmol_species, SpeciesDeleter>;
using Chain = std::unique_ptr<spinmol_chain, ChainDeleter>;
using Program = std::unique_ptr<spinmol_program, ProgramDeleter>;
using Unitary = std::unique_ptr<spinmol_unitary, UnitaryDeleter>;

std::string take(char* raw) {
  OwnedString owned(raw);
  return owned ? std::string(owned.get()) : std::string();
}

Species load_species(const Options& o) {
  spinmol_species* raw = nullptr;
  if (!o.species_file.empty()) {
    check(spinmol_species_load(o.species_file.c_str(), o.species.c_str(), &raw));
  } else {
    check(spinmol_species_builtin(o.species.c_str(), &raw));
  }
  return Species(raw);
}

Chain make_chain(const Options& o, int n_ions) {
  const Species species = load_species(o);
  const spinmol_trap trap{n_ions, o.nu1_hz, o.b0, o.b};
  spinmol_chain* raw = nullptr;
  check(spinmol_chain_create(species.get(), &trap, &raw));
  return Chain(raw);
}

std::string read_program_text(const std::string& path) {
  if (path == "-") return std::string(std::istreambuf_iterator<char>(std::cin), {});
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CliError(kExitUsage, "cannot open program file '" + path + "'");
  return std::string(std::istreambuf_iterator<char>(in), {});
}

Program load_program(const Options& o) {
  const std::string text = read_program_text(o.program_path);
  spinmol_program* raw = nullptr;
  const spinmol_status status = spinmol_program_parse(text.c_str(), o.qutrits, &raw);
  if (status != SPINMOL_OK) {
    throw CliError(kExitUsage, o.program_path + ": " + spinmol_last_error());
  }
  Program program(raw);
  if (spinmol_program_needs_coupling(program.get())) {
    const int n = spinmol_program_qutrits(program.get());
    if (o.ions != 0 && o.ions != n) {
      throw CliError(kExitUsage, "--ions " + std::to_string(o.ions) + " does not match the " + std::to_string(n) +
                                     "-qutrit program");
    }
    const Chain chain = make_chain(o, n);
    check(spinmol_program_bind_chain(program.get(), chain.get()));
  }
  return program;
}

// CSV output.

std::string num(const json& v) { return v.is_null() ? std::string() : v.dump(); }

std::string csv_matrix(const json& rows) {
  std::ostringstream out;
  for (const auto& row : rows) {
    for (std::size_t c = 0; c < row.size(); ++c) out << (c ? "," : "") << num(row[c]);
    out << '\n';
  }
  return out.str();
}

void flatten(const json& v, const std::string& prefix, std::ostringstream& out) {
  if (v.is_object()) {
    for (const auto& [key, child] : v.items()) flatten(child, prefix.empty() ? key : prefix + "." + key, out);
  } else if (v.is_array()) {
    for (std::size_t i = 0; i < v.size(); ++i) flatten(v[i], prefix + "." + std::to_string(i), out);
  } else {
    out << prefix << ',' << (v.is_string() ? v.get<std::string>() : num(v)) << '\n';
  }
}

std::string csv_key_value(const json& doc) {
  std::ostringstream out;
  out << "key,value\n";
  flatten(doc, "", out);
  return out.str();
}

std::string csv_chain(const json& doc) {
  std::ostringstream out;
  out << "ion,u,z0_m,mode_freq_rad_s\n";
  for (std::size_t i = 0; i < doc["u"].size(); ++i) {
    out << i << ',' << num(doc["u"][i]) << ',' << num(doc["z0_m"][i]) << ',' << num(doc["mode_freqs_rad_s"][i])
        << '\n';
  }
  return out.str();
}

std::string csv_breitrabi(const json& doc) {
  std::ostringstream out;
  out << "ion,z_m,B_T,omega01_rad_s,omega12_rad_s,m0,m1,m2\n";
  std::size_t i = 0;
  for (const auto& ion : doc["ions"]) {
    out << i++ << ',' << num(ion["z_m"]) << ',' << num(ion["B_T"]) << ',' << num(ion["omega01_rad_s"]) << ','
        << num(ion["omega12_rad_s"]) << ',' << num(ion["m_diag"][0]) << ',' << num(ion["m_diag"][1]) << ','
        << num(ion["m_diag"][2]) << '\n';
  }
  return out.str();
}

std::string csv_unitary(const json& doc) {
  std::ostringstream out;
  out << "row,col,re,im\n";
  if (doc.contains("diagonal")) {
    std::size_t i = 0;
    for (const auto& e : doc["diagonal"]) {
      out << i << ',' << i << ',' << num(e[0]) << ',' << num(e[1]) << '\n';
      ++i;
    }
  } else {
    std::size_t r = 0;
    for (const auto& row : doc["matrix"]) {
      std::size_t c = 0;
      for (const auto& e : row) out << r << ',' << c++ << ',' << num(e[0]) << ',' << num(e[1]) << '\n';
      ++r;
    }
  }
  return out.str();
}

std::string csv_readout(const json& doc) {
  std::ostringstream out;
  out << "ion,count0,count1,count2\n";
  for (const auto& ion : doc["ions"]) {
    out << num(ion["ion"]) << ',' << num(ion["counts"][0]) << ',' << num(ion["counts"][1]) << ','
        << num(ion["counts"][2]) << '\n';
  }
  return out.str();
}

std::string csv_verify(const json& doc) {
  std::ostringstream out;
  out << "name,bound,tolerance,measured,passed\n";
  for (const auto& c : doc["checks"]) {
    out << c["name"].get<std::string>() << ',' << c["bound"].get<std::string>() << ',' << num(c["tolerance"]) << ','
        << num(c["measured"]) << ',' << (c["passed"].get<bool>() ? "true" : "false") << '\n';
  }
  return out.str();
}

std::string csv_solution(const json& doc) {
  std::ostringstream out;
  out << "index,alpha_pi\n";
  for (std::size_t i = 0; i < doc["alphas_pi"].size(); ++i) out << i + 1 << ',' << num(doc["alphas_pi"][i]) << '\n';
  return out.str();
}

// Writes to a temporary next to the target, then renames over it.
void write_atomically(const std::string& path, const std::string& content) {
  const std::filesystem::path target(path);
  std::filesystem::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw CliError(kExitUsage, "cannot write '" + tmp.string() + "'");
    out << content;
    out.flush();
    if (!out) throw CliError(kExitRuntime, "write failed for '" + tmp.string() + "'");
  }
  std::error_code ec;
  std::filesystem::rename(tmp, target, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw CliError(kExitRuntime, "cannot move output into place at '" + path + "'");
  }
}

void emit(const Options& o, const std::string& json_text, std::string (*to_csv)(const json&)) {
  std::string content = json_text;
  if (o.out == "csv") content = to_csv(json::parse(json_text));
  if (o.output.empty()) {
    std::cout << content;
    std::cout.flush();
  } else {
    write_atomically(o.output, content);
  }
}

void require_ions(const Options& o) {
  if (o.ions < 1) throw CliError(kExitUsage, "--ions must be at least 1");
}

int cmd_chain(const Options& o) {
  require_ions(o);
  const Chain chain = make_chain(o, o.ions);
  char* raw = nullptr;
  check(spinmol_chain_report_json(chain.get(), o.epsilon_m, &raw));
  emit(o, take(raw), csv_chain);
  return kExitOk;
}

int cmd_jmatrix(const Options& o) {
  require_ions(o);
  const Chain chain = make_chain(o, o.ions);
  char* raw = nullptr;
  check(spinmol_coupling_report_json(chain.get(), &raw));
  emit(o, take(raw), [](const json& doc) { return csv_matrix(doc["j_matrix_rad_s"]); });
  return kExitOk;
}

int cmd_breitrabi(const Options& o) {
  require_ions(o);
  const Chain chain = make_chain(o, o.ions);
  char* raw = nullptr;
  check(spinmol_breitrabi_report_json(chain.get(), &raw));
  emit(o, take(raw), csv_breitrabi);
  return kExitOk;
}

int cmd_bounds(const Options& o) {
  require_ions(o);
  const Chain chain = make_chain(o, o.ions);
  char* raw = nullptr;
  check(spinmol_window_report_json(chain.get(), o.epsilon_m, &raw));
  emit(o, take(raw), csv_key_value);
  return kExitOk;
}

int cmd_measure(const Options& o) {
  const Program program = load_program(o);
  char* raw = nullptr;
  check(spinmol_program_measure(program.get(), o.shots, o.seed, &raw));
  emit(o, take(raw), csv_readout);
  return kExitOk;
}

int cmd_simulate(const Options& o) {
  const Program program = load_program(o);
  if (spinmol_program_has_measure(program.get())) return cmd_measure(o);
  spinmol_unitary* raw_u = nullptr;
  check(spinmol_program_run(program.get(), &raw_u));
  const Unitary u(raw_u);
  char* raw = nullptr;
  check(spinmol_unitary_json(u.get(), &raw));
  emit(o, take(raw), csv_unitary);
  return kExitOk;
}

int cmd_verify(const Options& o) {
  char* raw = nullptr;
  const spinmol_status status = spinmol_verify(o.which.c_str(), o.theta, o.seed, o.restarts, &raw);
  if (status != SPINMOL_OK && status != SPINMOL_VERIFICATION_FAILED) check(status);
  const std::string message = status == SPINMOL_VERIFICATION_FAILED ? spinmol_last_error() : "";
  emit(o, take(raw), csv_verify);
  if (status == SPINMOL_VERIFICATION_FAILED) {
    std::cerr << "spinmol: " << message << '\n';
    return kExitVerificationFailed;
  }
  return kExitOk;
}

int cmd_optimize_phase(const Options& o) {
  if (!(o.tol > 0.0)) throw CliError(kExitUsage, "--tol must be positive");
  char* raw = nullptr;
  check(spinmol_optimize_phase(o.seed, o.restarts, o.tol, &raw));
  emit(o, take(raw), csv_solution);
  return kExitOk;
}

CLI::Option* add_trap_options(CLI::App* cmd, Options& o, bool ions_required, double default_b) {
  o.b = default_b;
  auto* ions = cmd->add_option("--ions", o.ions, "Number of ions");
  if (ions_required) ions->required();
  cmd->add_option("--nu1-hz", o.nu1_hz, "Axial trap frequency in Hz")->capture_default_str();
  cmd->add_option("--b0", o.b0, "Offset field at the trap centre in T")->capture_default_str();
  cmd->add_option("--b", o.b, "Field gradient in T/m")->capture_default_str();
  return ions;
}

}  // namespace

int main(int argc, char** argv) {
  Options o;
  CLI::App app{"spinmol: trapped-ion qutrit chain toolkit"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--out", o.out, "Output format")->check(CLI::IsMember({"json", "csv"}))->capture_default_str();
  app.add_option("--species-file", o.species_file, "Species registry JSON file");
  app.add_option("--species", o.species, "Species name")->capture_default_str();
  app.add_option("--seed", o.seed, "Random seed")->capture_default_str();
  app.add_option("--output", o.output, "Write the result to this file instead of stdout");

  int code = kExitOk;
  auto* chain = app.add_subcommand("chain", "Equilibrium positions, modes, couplings and gradient window");
  add_trap_options(chain, o, true, 0.0);
  chain->add_option("--epsilon-m", o.epsilon_m, "Accepted spread of the middle M entry")->capture_default_str();
  chain->callback([&] { code = cmd_chain(o); });

  auto* jmatrix = app.add_subcommand("jmatrix", "Spin-spin coupling matrix");
  add_trap_options(jmatrix, o, true, 0.0);
  jmatrix->callback([&] { code = cmd_jmatrix(o); });

  auto* breitrabi = app.add_subcommand("breitrabi", "Per-ion qutrit transition frequencies");
  auto* breitrabi_ions = add_trap_options(breitrabi, o, false, 0.0);
  breitrabi_ions->description("Number of ions (default 1)");
  breitrabi->callback([&] {
    if (breitrabi_ions->count() == 0) o.ions = 1;
    code = cmd_breitrabi(o);
  });

  auto* bounds = app.add_subcommand("bounds", "Field gradient window");
  add_trap_options(bounds, o, true, 0.0);
  bounds->add_option("--epsilon-m", o.epsilon_m, "Accepted spread of the middle M entry")->capture_default_str();
  bounds->callback([&] { code = cmd_bounds(o); });

  auto* simulate = app.add_subcommand("simulate", "Run a pulse program and print its unitary");
  simulate->add_option("program", o.program_path, "Program file, '-' for stdin")->required();
  simulate->add_option("--qutrits", o.qutrits, "Register size (default: from the program)");
  simulate->add_option("--shots", o.shots, "Shots when the program ends in MEASURE")->capture_default_str();
  add_trap_options(simulate, o, false, 0.0);
  simulate->callback([&] { code = cmd_simulate(o); });

  auto* measure = app.add_subcommand("measure", "Run a pulse program on |0...0> and sample the readout");
  measure->add_option("program", o.program_path, "Program file, '-' for stdin")->required();
  measure->add_option("--qutrits", o.qutrits, "Register size (default: from the program)");
  measure->add_option("--shots", o.shots, "Number of shots")->capture_default_str();
  add_trap_options(measure, o, false, 0.0);
  measure->callback([&] { code = cmd_measure(o); });

  auto* verify = app.add_subcommand("verify", "Check a gate identity");
  verify->add_option("which", o.which, "xor, refocus, phasegate or qubit-refocus")
      ->required()
      ->check(CLI::IsMember({"xor", "refocus", "phasegate", "qubit-refocus"}));
  verify->add_option("--theta", o.theta, "Coupling angle per period in rad")->capture_default_str();
  verify->add_option("--restarts", o.restarts, "Optimizer restarts for phasegate")->capture_default_str();
  verify->callback([&] { code = cmd_verify(o); });

  auto* optimize = app.add_subcommand("optimize-phase", "Search the phase gate pulse angles");
  optimize->add_option("--restarts", o.restarts, "Number of restarts")->capture_default_str();
  optimize->add_option("--tol", o.tol, "Target infidelity")->capture_default_str();
  optimize->callback([&] { code = cmd_optimize_phase(o); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  } catch (const CliError& e) {
    std::cerr << "spinmol: " << e.what() << '\n';
    return e.code();
  } catch (const std::exception& e) {
    std::cerr << "spinmol: " << e.what() << '\n';
    return kExitRuntime;
  }
  return code;
}
