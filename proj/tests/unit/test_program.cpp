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

#include <doctest.h>

#include <cmath>

#include "spinmol/constants.hpp"
#include "spinmol/error.hpp"
#include "spinmol/program.hpp"

using namespace spinmol;
using constants::kPi;

TEST_CASE("angle tokens") {
  CHECK(*parse_angle("0.25pi") == doctest::Approx(kPi / 4).epsilon(1e-15));
  CHECK(*parse_angle("pi") == doctest::Approx(kPi).epsilon(1e-15));
  CHECK(*parse_angle("-pi") == doctest::Approx(-kPi).epsilon(1e-15));
  CHECK(*parse_angle("0.785398rad") == doctest::Approx(0.785398).epsilon(1e-15));
  CHECK(*parse_angle("0.3") == doctest::Approx(0.3).epsilon(1e-15));
  CHECK_FALSE(parse_angle("").has_value());
  CHECK_FALSE(parse_angle("abc").has_value());
  CHECK_FALSE(parse_angle("0.25pix").has_value());
}

TEST_CASE("line format covers every op") {
  const PulseProgram p = parse_program(
      "# phase gate fragment\n"
      "X 01 0\n"
      "U 12 1 0.5pi 0.25pi   # comment\n"
      "\n"
      "z 02 2 -0.3rad\n"
      "MM 0 2 0.125pi\n"
      "MMALL 1e-4\n"
      "MEASURE\n");
  CHECK(p.n_qutrits == 3);
  REQUIRE(p.ops.size() == 6);
  const auto& x = std::get<SingleQutritOp>(p.ops[0]);
  CHECK(x.transition == Transition::k01);
  CHECK(x.theta == doctest::Approx(kPi / 2));
  CHECK(x.phi == 0.0);
  const auto& u = std::get<SingleQutritOp>(p.ops[1]);
  CHECK(u.ion == 1);
  CHECK(u.transition == Transition::k12);
  const auto& z = std::get<ZPhaseOp>(p.ops[2]);
  CHECK(z.transition == Transition::k02);
  CHECK(z.rho == doctest::Approx(-0.3));
  const auto& mm = std::get<MMPairOp>(p.ops[3]);
  CHECK(mm.ion_a == 0);
  CHECK(mm.ion_b == 2);
  CHECK(std::get<MMChainOp>(p.ops[4]).duration == doctest::Approx(1e-4));
  CHECK(std::holds_alternative<MeasureOp>(p.ops[5]));
  CHECK(p.has_measure());
  CHECK(p.needs_coupling());
}

TEST_CASE("explicit register size") {
  CHECK(parse_program("X 01 0\n", 4).n_qutrits == 4);
  CHECK_THROWS_AS(parse_program("X 01 3\n", 2), InvalidArgument);
  CHECK(parse_program("").ops.empty());
}

TEST_CASE("errors carry line and column") {
  const auto error_at = [](const char* text, int line, int column) {
    try {
      parse_program(text);
      FAIL("expected a parse error for: " << text);
    } catch (const ParseError& e) {
      CHECK(e.line() == line);
      CHECK(e.column() == column);
    }
  };
  error_at("X 01 0\nFOO 1\n", 2, 1);
  error_at("X 01 0\n  U 13 0 pi 0\n", 2, 5);
  error_at("Z 01 0 abc\n", 1, 8);
  error_at("X 01 -1\n", 1, 6);
  error_at("X 01 0 0\n", 1, 8);
  error_at("MM 1 1 pi\n", 1, 6);
  error_at("MMALL -1\n", 1, 7);
  error_at("{\"ops\": [\n  {\"op\": \"X\",, }]}", 2, 14);
  error_at("{\"ops\": [{\"op\": \"NOPE\"}]}", 1, 1);
}

TEST_CASE("MEASURE is only allowed last") {
  CHECK_THROWS_AS(parse_program("MEASURE\nX 01 0\n"), InvalidArgument);
  CHECK_NOTHROW(parse_program("X 01 0\nMEASURE\n"));
}

TEST_CASE("JSON mirror matches the line format") {
  const char* text = "X 12 1\nU 01 0 0.5pi 1.0\nZ 12 1 0.3\nMM 0 1 0.2pi\nMMALL 2e-4\n";
  const PulseProgram a = parse_program(text);
  const PulseProgram b = parse_program(
      "{\"ops\": [{\"op\": \"X\", \"ij\": \"12\", \"ion\": 1},"
      " {\"op\": \"U\", \"ij\": \"01\", \"ion\": 0, \"theta\": \"0.5pi\", \"phi\": 1.0},"
      " {\"op\": \"Z\", \"ij\": \"12\", \"ion\": 1, \"rho\": 0.3},"
      " {\"op\": \"MM\", \"ion_a\": 0, \"ion_b\": 1, \"theta\": \"0.2pi\"},"
      " {\"op\": \"MMALL\", \"duration_s\": 2e-4}]}");
  CHECK(program_to_json(a) == program_to_json(b));
  CHECK(program_to_json(program_from_json(program_to_json(a))) == program_to_json(a));
}

TEST_CASE("text round trip is exact") {
  PulseProgram p;
  p.n_qutrits = 3;
  p.ops = {SingleQutritOp{2, Transition::k02, 0.1234567890123, -2.5}, ZPhaseOp{0, Transition::k12, 1.0 / 3.0},
           MMPairOp{1, 2, kPi / 7}, MMChainOp{3.3e-5, std::nullopt}, MeasureOp{}};
  const PulseProgram q = parse_program(program_to_text(p), 3);
  CHECK(program_to_json(p) == program_to_json(q));
}

TEST_CASE("MMALL needs a bound coupling") {
  PulseProgram p = parse_program("MMALL 1e-4\n", 2);
  CHECK_THROWS_AS(run_program(p), InvalidArgument);
  CouplingMatrix j{Eigen::MatrixXd::Zero(2, 2)};
  j.j(0, 1) = j.j(1, 0) = 1000.0;
  p.bind_coupling(j);
  CHECK(max_deviation(run_program(p), mm_pair(0.1, 0, 1, 2)) <= 1e-15);
  CHECK_THROWS_AS(p.bind_coupling(CouplingMatrix{Eigen::MatrixXd::Zero(3, 3)}), InvalidArgument);
}

TEST_CASE("validate rejects bad ops") {
  PulseProgram p;
  p.n_qutrits = 2;
  p.ops = {MMPairOp{0, 0, 1.0}};
  CHECK_THROWS_AS(p.validate(), InvalidArgument);
  p.ops = {ZPhaseOp{2, Transition::k01, 1.0}};
  CHECK_THROWS_AS(p.validate(), InvalidArgument);
  p.n_qutrits = 0;
  p.ops.clear();
  CHECK_THROWS_AS(p.validate(), InvalidArgument);
}
