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

#include <string>
#include <vector>

#include "qcp/fm.hpp"
#include "qcp/hypergraph.hpp"

namespace qcp {

// graphs[0] is the finest; layer_maps[i] sends layers of graphs[i] to layers
// of graphs[i+1].
struct Hierarchy {
  std::vector<TemporalHypergraph> graphs;
  std::vector<std::vector<int>> layer_maps;
};

// Merges layer s into layer t (s must be t+1 after relabeling); state edges
// between the merged nodes contract away, other memberships retime, and
// duplicate nodes inside one root or receiver set collapse. `layer_map` (old
// layer -> new layer) is filled when given.
TemporalHypergraph contract_time(const TemporalHypergraph& g, int s, int t,
                                 std::vector<int>* layer_map = nullptr);

Hierarchy coarsen_window(const TemporalHypergraph& g, int levels);
Hierarchy coarsen_blocks(const TemporalHypergraph& g, int levels);
Hierarchy coarsen_recursive(const TemporalHypergraph& g);

// phi_fine(t, q) = phi_coarse(layer_map[t], q).
Assignment project_assignment(const Assignment& coarse, const std::vector<int>& layer_map);

enum class Method { Flat, Window, Block, Recursive };

Method method_from_string(const std::string& s);
const char* method_name(Method m);

struct MlSchedule {
  int passes_per_level = 10;
  bool alternate = true;
  int move_cap = -1;        // -1: n_q at multilevel levels, 0.125*n for flat
  int window_levels = 0;    // 0: log2(depth) for window/block
  std::uint64_t seed = 0;
};

struct MlResult {
  Assignment best;
  long long cost = 0;
  std::vector<TracePoint> trace;
};

// Coarsen, statically seed the coarsest level, then refine level by level
// while projecting assignments down the hierarchy.
MlResult multilevel_partition(const TemporalHypergraph& g, Method method, int num_parts,
                              const std::vector<int>& cap, const MlSchedule& schedule);

// Independent seeded runs merged by minimum cost (ties to the lowest run
// index). Runs execute in parallel when OpenMP is enabled.
MlResult best_of_restarts(const TemporalHypergraph& g, Method method, int num_parts,
                          const std::vector<int>& cap, const MlSchedule& schedule,
                          int restarts);

}  // namespace qcp
