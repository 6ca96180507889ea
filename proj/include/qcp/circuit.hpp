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

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

namespace qcp {

inline constexpr double kPi = 3.14159265358979323846;

// Tolerance for angle comparisons modulo 2*pi (diagonality tests).
inline constexpr double kAngleTol = 1e-9;

enum class GateKind : std::uint8_t { SingleU, ControlledPhase, Measure, Barrier };

// A gate in the two-gate target basis. SingleU carries (theta, phi, lambda);
// ControlledPhase carries the phase in theta. Measure/Barrier are markers
// that survive transpilation but are dropped before graph construction.
struct Gate {
  GateKind kind = GateKind::SingleU;
  int q0 = -1;
  int q1 = -1;  // second qubit for ControlledPhase, -1 otherwise
  double theta = 0.0;
  double phi = 0.0;
  double lambda = 0.0;

  static Gate single(int q, double th, double ph, double la) {
    Gate g;
    g.kind = GateKind::SingleU;
    g.q0 = q;
    g.theta = th;
    g.phi = ph;
    g.lambda = la;
    return g;
  }
  static Gate cp(int a, int b, double th) {
    Gate g;
    g.kind = GateKind::ControlledPhase;
    g.q0 = a;
    g.q1 = b;
    g.theta = th;
    return g;
  }
  static Gate measure(int q) {
    Gate g;
    g.kind = GateKind::Measure;
    g.q0 = q;
    return g;
  }

  bool is_two_qubit() const { return kind == GateKind::ControlledPhase; }
};

// Gate layers with no qubit repeated inside a layer.
struct LayeredCircuit {
  int num_qubits = 0;
  std::vector<std::vector<Gate>> layers;

  int depth() const { return static_cast<int>(layers.size()); }
  int two_qubit_count() const;
  int gate_count() const;
  std::vector<Gate> flatten() const;
};

// A gate as read from QASM, before lowering into the U/CP basis.
struct RawGate {
  std::string name;
  std::vector<int> qubits;
  std::vector<double> params;
  int line = 0;
};

struct ParsedProgram {
  int num_qubits = 0;
  std::vector<RawGate> gates;
};

// --- parsing / transpilation -------------------------------------------

ParsedProgram parse_qasm(const std::string& text);

// Lowers named gates to SingleU/ControlledPhase and merges adjacent
// single-qubit gates on the same qubit. Measure/barrier pass through.
std::vector<Gate> transpile_to_ucp(const std::vector<RawGate>& gates);

// Merge step alone, for gate lists already in the U/CP basis.
std::vector<Gate> merge_single_qubit_runs(const std::vector<Gate>& gates);

// ASAP layering: each gate goes into the earliest layer after every earlier
// gate that shares one of its qubits.
LayeredCircuit schedule_layers(const std::vector<Gate>& gates, int num_qubits);

// Drops Measure/Barrier markers; graph construction uses only U/CP content.
LayeredCircuit drop_markers(const LayeredCircuit& lc);

// --- generators ----------------------------------------------------------

LayeredCircuit gen_cp_fraction(int num_qubits, int depth, double p, std::uint64_t seed);
LayeredCircuit gen_qft(int num_qubits);
LayeredCircuit gen_qaoa(int num_qubits, double edge_prob, int layers, std::uint64_t seed);
LayeredCircuit gen_qv(int num_qubits, int layers, std::uint64_t seed);

// --- small matrix helpers ------------------------------------------------

using cd = std::complex<double>;

struct Mat2 {
  cd m00, m01, m10, m11;

  static Mat2 identity() { return {1.0, 0.0, 0.0, 1.0}; }
  Mat2 operator*(const Mat2& o) const {
    return {m00 * o.m00 + m01 * o.m10, m00 * o.m01 + m01 * o.m11,
            m10 * o.m00 + m11 * o.m10, m10 * o.m01 + m11 * o.m11};
  }
};

Mat2 u_matrix(double theta, double phi, double lambda);

// Recovers (theta, phi, lambda) from a 2x2 unitary up to global phase.
// At the theta -> 0 degeneracy phi is set to 0 and the whole phase goes
// into lambda; the mirrored rule applies at theta -> pi.
void angles_from_unitary(const Mat2& u, double& theta, double& phi, double& lambda);

enum class Diagonality { Diagonal, AntiDiagonal, Neither };

// theta == 2*n*pi -> Diagonal, theta == (2n+1)*pi -> AntiDiagonal,
// compared modulo 2*pi with tolerance kAngleTol.
Diagonality diagonality(double theta);

}  // namespace qcp
