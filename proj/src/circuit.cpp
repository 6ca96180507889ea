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

#include "qcp/circuit.hpp"

#include <algorithm>
#include <cmath>

namespace qcp {

int LayeredCircuit::two_qubit_count() const {
  int n = 0;
  for (const auto& layer : layers)
    for (const auto& g : layer)
      if (g.is_two_qubit()) ++n;
  return n;
}

int LayeredCircuit::gate_count() const {
  int n = 0;
  for (const auto& layer : layers) n += static_cast<int>(layer.size());
  return n;
}

std::vector<Gate> LayeredCircuit::flatten() const {
  std::vector<Gate> out;
  out.reserve(gate_count());
  for (const auto& layer : layers)
    for (const auto& g : layer) out.push_back(g);
  return out;
}

LayeredCircuit schedule_layers(const std::vector<Gate>& gates, int num_qubits) {
  LayeredCircuit lc;
  lc.num_qubits = num_qubits;
  std::vector<int> ready(num_qubits, 0);  // earliest free layer per qubit
  for (const Gate& g : gates) {
    int layer = 0;
    if (g.kind == GateKind::Barrier) {
      // A barrier orders everything across all qubits it names; ours span
      // the full register.
      for (int q = 0; q < num_qubits; ++q) layer = std::max(layer, ready[q]);
      if (layer >= static_cast<int>(lc.layers.size())) lc.layers.resize(layer + 1);
      lc.layers[layer].push_back(g);
      for (int q = 0; q < num_qubits; ++q) ready[q] = layer + 1;
      continue;
    }
    layer = ready[g.q0];
    if (g.q1 >= 0) layer = std::max(layer, ready[g.q1]);
    if (layer >= static_cast<int>(lc.layers.size())) lc.layers.resize(layer + 1);
    lc.layers[layer].push_back(g);
    ready[g.q0] = layer + 1;
    if (g.q1 >= 0) ready[g.q1] = layer + 1;
  }
  return lc;
}

LayeredCircuit drop_markers(const LayeredCircuit& lc) {
  LayeredCircuit out;
  out.num_qubits = lc.num_qubits;
  for (const auto& layer : lc.layers) {
    std::vector<Gate> kept;
    for (const auto& g : layer)
      if (g.kind == GateKind::SingleU || g.kind == GateKind::ControlledPhase)
        kept.push_back(g);
    // Layers made of markers alone (trailing measurements, barriers) vanish
    // entirely; genuinely idle layers stay so depth reflects the circuit.
    if (!kept.empty() || layer.empty()) out.layers.push_back(std::move(kept));
  }
  return out;
}

Mat2 u_matrix(double theta, double phi, double lambda) {
  const double c = std::cos(theta / 2.0);
  const double s = std::sin(theta / 2.0);
  return {cd(c, 0.0), -std::exp(cd(0.0, lambda)) * s,
          std::exp(cd(0.0, phi)) * s, std::exp(cd(0.0, phi + lambda)) * c};
}

void angles_from_unitary(const Mat2& u, double& theta, double& phi, double& lambda) {
  const double a00 = std::abs(u.m00);
  const double a10 = std::abs(u.m10);
  theta = 2.0 * std::atan2(a10, a00);
  constexpr double eps = 1e-12;
  if (a10 < eps) {
    phi = 0.0;
    lambda = std::arg(u.m11) - std::arg(u.m00);
  } else if (a00 < eps) {
    phi = 0.0;
    lambda = std::arg(-u.m01) - std::arg(u.m10);
  } else {
    phi = std::arg(u.m10) - std::arg(u.m00);
    lambda = std::arg(-u.m01) - std::arg(u.m00);
  }
}

Diagonality diagonality(double theta) {
  double r = std::fmod(theta, 2.0 * kPi);
  if (r < 0) r += 2.0 * kPi;
  if (r <= kAngleTol || 2.0 * kPi - r <= kAngleTol) return Diagonality::Diagonal;
  if (std::abs(r - kPi) <= kAngleTol) return Diagonality::AntiDiagonal;
  return Diagonality::Neither;
}

}  // namespace qcp
