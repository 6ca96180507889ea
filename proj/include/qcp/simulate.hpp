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
#include <map>
#include <string>

#include "qcp/extract.hpp"

namespace qcp {

// Probabilities (or empirical frequencies) over data-qubit outcomes.
// Outcome bit q is logical qubit q.
struct Distribution {
  int num_qubits = 0;
  long long shots = 0;  // 0 in exact mode
  std::map<std::uint64_t, double> p;

  static std::string bitstring(std::uint64_t outcome, int num_qubits);
};

struct SimOptions {
  int wire_cap = 22;
  double prune = 1e-12;
  // OpenMP gate kernels for large states; the serial path is the reference
  // implementation and both produce identical amplitudes.
  bool parallel_kernels = false;
  bool branch_one_first = false;  // test hook: flips exact-mode branch order
};

// Exact mode: branch on every mid-circuit measurement with amplitude-squared
// weights and accumulate the marginal distribution over the data qubits;
// communication wires and classical bits are traced out.
Distribution simulate_exact(const DistributedCircuit& dc, const SimOptions& opts = {});

// Sampled mode: independent per-shot trajectories with derived seeds; shots
// run in parallel under OpenMP and merge deterministically.
Distribution simulate_sampled(const DistributedCircuit& dc, long long shots,
                              std::uint64_t seed, const SimOptions& opts = {});

// Total variation distance over the union support.
double tvd(const Distribution& a, const Distribution& b);

enum class SimMode { Exact, Sampled };

struct EquivalenceReport {
  bool pass = false;
  double tvd = 0.0;
  double tol = 0.0;
};

// Compares the output distributions of two gate-level circuits. Negative tol
// picks the default: 1e-6 exact, 3.84/sqrt(shots) sampled (0.06 at 4096).
EquivalenceReport check_equivalence(const DistributedCircuit& original,
                                    const DistributedCircuit& extracted, SimMode mode,
                                    double tol = -1.0, long long shots = 4096,
                                    std::uint64_t seed = 1,
                                    const SimOptions& opts = {});

}  // namespace qcp
