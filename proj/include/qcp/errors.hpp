/* Copyright 2026 The qcpart authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 *
 */

#pragma once

#include <stdexcept>
#include <string>

namespace qcp {

struct QcpError : std::runtime_error {
  explicit QcpError(const std::string& msg) : std::runtime_error(msg) {}
};

struct UnsupportedGate : QcpError {
  std::string gate;
  int line;
  UnsupportedGate(std::string name, int ln)
      : QcpError("unsupported gate '" + name + "' at line " + std::to_string(ln)),
        gate(std::move(name)),
        line(ln) {}
};

struct MalformedProgram : QcpError {
  int line;
  MalformedProgram(const std::string& what, int ln)
      : QcpError("malformed program at line " + std::to_string(ln) + ": " + what), line(ln) {}
};

struct MultipleQuantumRegisters : QcpError {
  MultipleQuantumRegisters() : QcpError("multiple quantum registers are not supported") {}
};

struct InsufficientCapacity : QcpError {
  explicit InsufficientCapacity(const std::string& msg) : QcpError(msg) {}
};

struct CapacityViolation : QcpError {
  explicit CapacityViolation(const std::string& msg) : QcpError(msg) {}
};

struct InvalidLayer : QcpError {
  explicit InvalidLayer(const std::string& msg) : QcpError(msg) {}
};

struct TooManyWires : QcpError {
  explicit TooManyWires(int live, int cap)
      : QcpError("simulation needs " + std::to_string(live) + " live wires, cap is " +
                 std::to_string(cap)) {}
};

struct NonUnitaryAngle : QcpError {
  NonUnitaryAngle() : QcpError("gate angle is not a finite number") {}
};

}  // namespace qcp
