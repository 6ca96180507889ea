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

#include <vector>

#include "qcp/circuit.hpp"
#include "qcp/errors.hpp"

namespace qcp {
namespace {

void emit_single(std::vector<Gate>& out, int q, double th, double ph, double la) {
  out.push_back(Gate::single(q, th, ph, la));
}

void emit_h(std::vector<Gate>& out, int q) { emit_single(out, q, kPi / 2, 0.0, kPi); }

// cx(c,t) = H(t) CP(pi)(c,t) H(t); control stays the first operand of the CP.
void emit_cx(std::vector<Gate>& out, int c, int t) {
  emit_h(out, t);
  out.push_back(Gate::cp(c, t, kPi));
  emit_h(out, t);
}

void lower(const RawGate& g, std::vector<Gate>& out) {
  const std::string& n = g.name;
  if (n == "measure") {
    out.push_back(Gate::measure(g.qubits[0]));
    return;
  }
  if (n == "barrier") {
    Gate b;
    b.kind = GateKind::Barrier;
    b.q0 = g.qubits.empty() ? 0 : g.qubits[0];
    out.push_back(b);
    return;
  }
  int q = g.qubits[0];
  if (n == "h") return emit_h(out, q);
  if (n == "x") return emit_single(out, q, kPi, 0.0, kPi);
  if (n == "y") return emit_single(out, q, kPi, kPi / 2, kPi / 2);
  if (n == "z") return emit_single(out, q, 0.0, 0.0, kPi);
  if (n == "s") return emit_single(out, q, 0.0, 0.0, kPi / 2);
  if (n == "sdg") return emit_single(out, q, 0.0, 0.0, -kPi / 2);
  if (n == "t") return emit_single(out, q, 0.0, 0.0, kPi / 4);
  if (n == "tdg") return emit_single(out, q, 0.0, 0.0, -kPi / 4);
  if (n == "rx") return emit_single(out, q, g.params[0], -kPi / 2, kPi / 2);
  if (n == "ry") return emit_single(out, q, g.params[0], 0.0, 0.0);
  if (n == "rz" || n == "u1" || n == "p") return emit_single(out, q, 0.0, 0.0, g.params[0]);
  if (n == "u2") return emit_single(out, q, kPi / 2, g.params[0], g.params[1]);
  if (n == "u3" || n == "u")
    return emit_single(out, q, g.params[0], g.params[1], g.params[2]);
  int r = g.qubits[1];
  if (n == "cz") {
    out.push_back(Gate::cp(q, r, kPi));
    return;
  }
  if (n == "cp" || n == "cu1") {
    out.push_back(Gate::cp(q, r, g.params[0]));
    return;
  }
  if (n == "cx") return emit_cx(out, q, r);
  if (n == "swap") {
    emit_cx(out, q, r);
    emit_cx(out, r, q);
    emit_cx(out, q, r);
    return;
  }
  throw UnsupportedGate(n, g.line);
}

}  // namespace

std::vector<Gate> merge_single_qubit_runs(const std::vector<Gate>& gates) {
  std::vector<Gate> out;
  out.reserve(gates.size());
  // Index of the pending mergeable SingleU per qubit, -1 when none.
  std::vector<int> pending;
  auto pending_for = [&](int q) -> int& {
    if (q >= static_cast<int>(pending.size())) pending.resize(q + 1, -1);
    return pending[q];
  };
  for (const Gate& g : gates) {
    switch (g.kind) {
      case GateKind::SingleU: {
        int& slot = pending_for(g.q0);
        if (slot >= 0) {
          Gate& prev = out[static_cast<std::size_t>(slot)];
          Mat2 combined =
              u_matrix(g.theta, g.phi, g.lambda) * u_matrix(prev.theta, prev.phi, prev.lambda);
          angles_from_unitary(combined, prev.theta, prev.phi, prev.lambda);
        } else {
          slot = static_cast<int>(out.size());
          out.push_back(g);
        }
        break;
      }
      case GateKind::ControlledPhase:
        pending_for(g.q0) = -1;
        pending_for(g.q1) = -1;
        out.push_back(g);
        break;
      case GateKind::Measure:
        pending_for(g.q0) = -1;
        out.push_back(g);
        break;
      case GateKind::Barrier:
        for (auto& s : pending) s = -1;
        out.push_back(g);
        break;
    }
  }
  return out;
}

std::vector<Gate> transpile_to_ucp(const std::vector<RawGate>& gates) {
  std::vector<Gate> lowered;
  lowered.reserve(gates.size() * 2);
  for (const RawGate& g : gates) lower(g, lowered);
  return merge_single_qubit_runs(lowered);
}

}  // namespace qcp
