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

#include <cmath>
#include <vector>

#include "qcp/circuit.hpp"
#include "qcp/rng.hpp"

namespace qcp {

// Layers are emitted directly so the circuit keeps exactly `depth` layers;
// rescheduling would compact idle qubits away and change the instance family.
LayeredCircuit gen_cp_fraction(int num_qubits, int depth, double p, std::uint64_t seed) {
  Rng rng(seed);
  LayeredCircuit lc;
  lc.num_qubits = num_qubits;
  lc.layers.resize(static_cast<std::size_t>(depth));
  for (int t = 0; t < depth; ++t) {
    auto& layer = lc.layers[static_cast<std::size_t>(t)];
    std::vector<int> pool;
    for (int q = 0; q < num_qubits; ++q) {
      if (rng.bernoulli(1.0 - p)) {
        layer.push_back(Gate::single(q, rng.uniform(0, 2 * kPi), rng.uniform(0, 2 * kPi),
                                     rng.uniform(0, 2 * kPi)));
      } else {
        pool.push_back(q);
      }
    }
    rng.shuffle(pool);
    for (std::size_t i = 0; i + 1 < pool.size(); i += 2)
      layer.push_back(Gate::cp(pool[i], pool[i + 1], rng.uniform(0, 2 * kPi)));
    // An odd qubit left in the pool idles this layer.
  }
  return lc;
}

LayeredCircuit gen_qft(int num_qubits) {
  std::vector<Gate> gates;
  for (int i = num_qubits - 1; i >= 0; --i) {
    gates.push_back(Gate::single(i, kPi / 2, 0.0, kPi));  // H
    for (int k = i - 1; k >= 0; --k)
      gates.push_back(Gate::cp(i, k, kPi / std::pow(2.0, i - k)));
  }
  return schedule_layers(gates, num_qubits);
}

LayeredCircuit gen_qaoa(int num_qubits, double edge_prob, int layers, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < num_qubits; ++i)
    for (int j = i + 1; j < num_qubits; ++j)
      if (rng.bernoulli(edge_prob)) edges.emplace_back(i, j);

  std::vector<Gate> gates;
  for (int l = 0; l < layers; ++l) {
    double gamma = rng.uniform(0, 2 * kPi);
    // MaxCut cost unitary per edge: exp(-i gamma Z_i Z_j) up to global phase
    // is P(2 gamma) on both qubits followed by CP(-4 gamma).
    for (auto [i, j] : edges) {
      gates.push_back(Gate::single(i, 0.0, 0.0, 2 * gamma));
      gates.push_back(Gate::single(j, 0.0, 0.0, 2 * gamma));
      gates.push_back(Gate::cp(i, j, -4 * gamma));
    }
    double beta = rng.uniform(0, 2 * kPi);
    for (int q = 0; q < num_qubits; ++q)
      gates.push_back(Gate::single(q, beta, -kPi / 2, kPi / 2));  // RX mixer
  }
  return schedule_layers(merge_single_qubit_runs(gates), num_qubits);
}

namespace {

// theta guaranteed away from {0, pi} so the block never offers grouping.
double non_diagonal_theta(Rng& rng) { return rng.uniform(0.3, kPi - 0.3); }

void emit_su4_block(std::vector<Gate>& gates, int a, int b, Rng& rng) {
  auto pair_layer = [&] {
    gates.push_back(Gate::single(a, non_diagonal_theta(rng), rng.uniform(0, 2 * kPi),
                                 rng.uniform(0, 2 * kPi)));
    gates.push_back(Gate::single(b, non_diagonal_theta(rng), rng.uniform(0, 2 * kPi),
                                 rng.uniform(0, 2 * kPi)));
  };
  pair_layer();
  for (int r = 0; r < 3; ++r) {
    gates.push_back(Gate::cp(a, b, rng.uniform(0.1, 2 * kPi - 0.1)));
    pair_layer();
  }
}

}  // namespace

LayeredCircuit gen_qv(int num_qubits, int layers, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<Gate> gates;
  std::vector<int> perm(static_cast<std::size_t>(num_qubits));
  for (int q = 0; q < num_qubits; ++q) perm[static_cast<std::size_t>(q)] = q;
  for (int l = 0; l < layers; ++l) {
    rng.shuffle(perm);
    for (int i = 0; i + 1 < num_qubits; i += 2)
      emit_su4_block(gates, perm[static_cast<std::size_t>(i)],
                     perm[static_cast<std::size_t>(i + 1)], rng);
  }
  return schedule_layers(gates, num_qubits);
}

}  // namespace qcp
