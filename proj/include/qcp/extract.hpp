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

#include <cstdint>
#include <string>
#include <vector>

#include "qcp/cost.hpp"
#include "qcp/hypergraph.hpp"

namespace qcp {

// Physical wire: slots below the QPU's data capacity are data slots, the
// ones above are communication slots.
struct Wire {
  int qpu = -1;
  int slot = -1;

  friend bool operator==(const Wire& a, const Wire& b) {
    return a.qpu == b.qpu && a.slot == b.slot;
  }
  friend bool operator!=(const Wire& a, const Wire& b) { return !(a == b); }
};

enum class OpKind : std::uint8_t {
  EbitGen,    // Bell pair on wires a (qpu of a) and b
  StartProc,  // cat-entangle wire a onto each wire in ws (one e-bit each)
  EndProc,    // disentangle; ws released by measurement, state survives on a
  LocalU,     // single-qubit U(theta, phi, lambda) on a
  LocalCP,    // controlled-phase theta between a and b
  CondX,      // X on a when classical bit fired
  CondZ,      // Z on a when classical bit fired
  MeasureZ,   // computational-basis measurement of a into bit
};

struct DistOp {
  OpKind kind = OpKind::LocalU;
  Wire a;
  Wire b;
  std::vector<Wire> ws;
  double theta = 0.0;
  double phi = 0.0;
  double lambda = 0.0;
  int bit = -1;
  // EndProc whose sink is not yet part of the entangled set; decomposition
  // first extends the state onto the sink with a local CX.
  bool extend_sink = false;
};

struct DistributedCircuit {
  int num_qpus = 0;
  std::vector<int> data_cap;
  int num_qubits = 0;
  int num_bits = 0;
  bool gate_level = false;
  std::vector<DistOp> ops;
  std::vector<Wire> initial_wires;  // wire holding each logical qubit at t = 0
  std::vector<Wire> final_wires;    // wire holding each logical qubit at the end

  long long ebit_count() const;
};

// Converts a partitioned graph into teleportation primitives plus local
// gates. One starting-process link per partition reached by the group's
// roots or receivers outside its home, nested state teleportation along cut
// root state edges, re-opened links when a root revisits a partition, and
// X corrections on linked wires for anti-diagonal root gates. The number of
// e-bits equals the assignment's entanglement cost by construction.
DistributedCircuit extract(const TemporalHypergraph& g, const Assignment& phi);

// Lowers StartProc/EndProc into e-bit generation, local CX in the U/CP
// basis, measurements and classically controlled corrections.
DistributedCircuit decompose_primitives(const DistributedCircuit& dc);

struct ExtractionReport {
  long long ebits = 0;
  int depth = 0;
  std::vector<int> comm_high_water;  // per QPU
};

// Depth is ASAP layering of the gate-level stream: every op takes one layer
// on the wires it touches (e-bit generation included) and a classically
// controlled correction may share earliest placement with its measurement's
// successor layer. Communication high-water is the maximum number of live
// comm slots per QPU over the op sequence.
ExtractionReport report(const DistributedCircuit& dc);

bool ebit_conservation_check(const TemporalHypergraph& g, const Assignment& phi,
                             const DistributedCircuit& extracted);

// Original circuit as a single-QPU gate-level stream, for simulation.
DistributedCircuit to_local_distributed(const LayeredCircuit& lc);

// Instruction stream as JSON (schema 1); parse reverses it.
std::string to_json(const DistributedCircuit& dc);
DistributedCircuit distributed_from_json(const std::string& text);

// OpenQASM 2 text with `// EPR a b` pragmas marking e-bit generation.
std::string to_qasm_pragmas(const DistributedCircuit& dc);

}  // namespace qcp
