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

#include "qcp/multilevel.hpp"

#include <algorithm>
#include <cmath>

#include "qcp/errors.hpp"

namespace qcp {

TemporalHypergraph contract_time(const TemporalHypergraph& g, int s, int t,
                                 std::vector<int>* layer_map) {
  const int d = g.depth();
  if (s < 0 || s >= d || t < 0 || t >= d || s != t + 1)
    throw InvalidLayer("contract_time expects s == t + 1 inside the graph, got s=" +
                       std::to_string(s) + " t=" + std::to_string(t));
  std::vector<int> map(static_cast<std::size_t>(d));
  for (int l = 0; l < d; ++l) map[static_cast<std::size_t>(l)] = l < s ? l : l - 1;
  if (layer_map) *layer_map = map;

  TemporalHypergraph out(g.num_qubits(), d - 1);
  auto retime = [&](NodeRef v) {
    return NodeRef{v.qubit, map[static_cast<std::size_t>(v.time)]};
  };
  for (const Edge& e : g.edges()) {
    Edge ne;
    ne.kind = e.kind;
    for (const NodeRef& v : e.roots) {
      const NodeRef w = retime(v);
      if (std::find(ne.roots.begin(), ne.roots.end(), w) == ne.roots.end())
        ne.roots.push_back(w);
    }
    for (std::size_t i = 0; i < e.recs.size(); ++i) {
      const NodeRef w = retime(e.recs[i]);
      if (std::find(ne.recs.begin(), ne.recs.end(), w) == ne.recs.end()) {
        ne.recs.push_back(w);
        if (i < e.rec_phase.size()) ne.rec_phase.push_back(e.rec_phase[i]);
      }
    }
    // A state edge between the merged layers becomes a self-loop and is gone.
    if (ne.roots.size() == 1 && ne.recs.size() == 1 && ne.roots[0] == ne.recs[0]) continue;
    out.add_edge(std::move(ne));
  }
  return out;
}

namespace {

void compose_into(std::vector<int>& level_map, const std::vector<int>& step_map) {
  for (int& m : level_map) m = step_map[static_cast<std::size_t>(m)];
}

std::vector<int> identity_map(int d) {
  std::vector<int> m(static_cast<std::size_t>(d));
  for (int i = 0; i < d; ++i) m[static_cast<std::size_t>(i)] = i;
  return m;
}

}  // namespace

Hierarchy coarsen_window(const TemporalHypergraph& g, int levels) {
  Hierarchy h;
  h.graphs.push_back(g);
  const int d0 = g.depth();
  const int w = std::max(1, levels > 0 ? d0 / levels : 1);
  while (h.graphs.back().depth() > 1) {
    TemporalHypergraph cur = h.graphs.back();
    std::vector<int> level_map = identity_map(cur.depth());
    const int k = std::min(w, cur.depth() - 1);
    for (int i = 0; i < k; ++i) {
      std::vector<int> step;
      cur = contract_time(cur, cur.depth() - 1, cur.depth() - 2, &step);
      compose_into(level_map, step);
    }
    h.layer_maps.push_back(std::move(level_map));
    h.graphs.push_back(std::move(cur));
  }
  return h;
}

Hierarchy coarsen_blocks(const TemporalHypergraph& g, int levels) {
  Hierarchy h;
  h.graphs.push_back(g);
  const int d0 = g.depth();
  const int b = std::max(1, levels > 0 ? d0 / levels : 1);
  // Contiguous blocks of at most b layers; one contraction per block per
  // level, then a final merge down to a single layer.
  std::vector<int> block_sizes;
  for (int start = 0; start < d0; start += b)
    block_sizes.push_back(std::min(b, d0 - start));

  while (true) {
    TemporalHypergraph cur = h.graphs.back();
    std::vector<int> level_map = identity_map(cur.depth());
    bool contracted = false;
    int start_of_next = 0;
    std::vector<int> starts(block_sizes.size());
    for (std::size_t i = 0; i < block_sizes.size(); ++i) {
      starts[i] = start_of_next;
      start_of_next += block_sizes[i];
    }
    for (std::size_t i = block_sizes.size(); i > 0; --i) {
      const std::size_t bi = i - 1;
      if (block_sizes[bi] < 2) continue;
      const int tail = starts[bi] + block_sizes[bi] - 1;
      std::vector<int> step;
      cur = contract_time(cur, tail, tail - 1, &step);
      compose_into(level_map, step);
      --block_sizes[bi];
      contracted = true;
    }
    if (!contracted) break;
    h.layer_maps.push_back(std::move(level_map));
    h.graphs.push_back(std::move(cur));
  }
  // Final merge of the remaining one-layer blocks.
  if (h.graphs.back().depth() > 1) {
    TemporalHypergraph cur = h.graphs.back();
    std::vector<int> level_map = identity_map(cur.depth());
    while (cur.depth() > 1) {
      std::vector<int> step;
      cur = contract_time(cur, cur.depth() - 1, cur.depth() - 2, &step);
      compose_into(level_map, step);
    }
    h.layer_maps.push_back(std::move(level_map));
    h.graphs.push_back(std::move(cur));
  }
  return h;
}

Hierarchy coarsen_recursive(const TemporalHypergraph& g) {
  Hierarchy h;
  h.graphs.push_back(g);
  while (h.graphs.back().depth() > 1) {
    TemporalHypergraph cur = h.graphs.back();
    std::vector<int> level_map = identity_map(cur.depth());
    const int pairs = cur.depth() / 2;
    for (int k = 0; k < pairs; ++k) {
      std::vector<int> step;
      cur = contract_time(cur, k + 1, k, &step);
      compose_into(level_map, step);
    }
    h.layer_maps.push_back(std::move(level_map));
    h.graphs.push_back(std::move(cur));
  }
  return h;
}

Assignment project_assignment(const Assignment& coarse, const std::vector<int>& layer_map) {
  Assignment fine;
  fine.num_layers = static_cast<int>(layer_map.size());
  fine.num_qubits = coarse.num_qubits;
  fine.num_parts = coarse.num_parts;
  fine.cap = coarse.cap;
  fine.phi.resize(static_cast<std::size_t>(fine.num_layers) * fine.num_qubits);
  for (int t = 0; t < fine.num_layers; ++t)
    for (int q = 0; q < fine.num_qubits; ++q)
      fine.set(t, q, coarse.at(layer_map[static_cast<std::size_t>(t)], q));
  return fine;
}

Method method_from_string(const std::string& s) {
  if (s == "flat") return Method::Flat;
  if (s == "window") return Method::Window;
  if (s == "block") return Method::Block;
  if (s == "recursive") return Method::Recursive;
  throw QcpError("unknown method '" + s + "' (expected flat|window|block|recursive)");
}

const char* method_name(Method m) {
  switch (m) {
    case Method::Flat: return "flat";
    case Method::Window: return "window";
    case Method::Block: return "block";
    case Method::Recursive: return "recursive";
  }
  return "?";
}

MlResult multilevel_partition(const TemporalHypergraph& g, Method method, int num_parts,
                              const std::vector<int>& cap, const MlSchedule& schedule) {
  const CostTable table = build_cost_table(num_parts);
  const int default_levels =
      std::max(1, static_cast<int>(std::ceil(std::log2(std::max(2, g.depth())))));

  Hierarchy h;
  switch (method) {
    case Method::Flat:
      h.graphs.push_back(g);
      break;
    case Method::Window:
      h = coarsen_window(g, schedule.window_levels > 0 ? schedule.window_levels
                                                       : default_levels);
      break;
    case Method::Block:
      h = coarsen_blocks(g, schedule.window_levels > 0 ? schedule.window_levels
                                                       : default_levels);
      break;
    case Method::Recursive:
      h = coarsen_recursive(g);
      break;
  }

  const int levels = static_cast<int>(h.graphs.size());
  Assignment phi = make_static_assignment(g.num_qubits(), h.graphs.back().depth(),
                                          num_parts, cap);
  MlResult out;
  for (int i = levels - 1; i >= 0; --i) {
    const TemporalHypergraph& cur = h.graphs[static_cast<std::size_t>(i)];
    FmSchedule fs;
    fs.passes = schedule.passes_per_level;
    fs.alternate = schedule.alternate;
    fs.seed = Rng::derive(schedule.seed, static_cast<std::uint64_t>(i));
    if (schedule.move_cap > 0)
      fs.move_cap = schedule.move_cap;
    else if (method == Method::Flat)
      fs.move_cap = std::max(1, static_cast<int>(std::lround(0.125 * cur.num_nodes())));
    else
      fs.move_cap = cur.num_qubits();

    std::vector<std::uint8_t> frozen;
    if (method == Method::Window && i + 1 < levels) {
      // Layers already at final resolution in the previous (coarser) level
      // were refined there; the moving window only touches the newly split
      // ones.
      const std::vector<int>& m = h.layer_maps[static_cast<std::size_t>(i)];
      std::vector<int> class_size(static_cast<std::size_t>(
                                      h.graphs[static_cast<std::size_t>(i + 1)].depth()),
                                  0);
      for (int l = 0; l < cur.depth(); ++l) ++class_size[static_cast<std::size_t>(m[l])];
      frozen.assign(static_cast<std::size_t>(cur.num_nodes()), 0);
      for (int t = 0; t < cur.depth(); ++t)
        if (class_size[static_cast<std::size_t>(m[t])] == 1)
          for (int q = 0; q < cur.num_qubits(); ++q)
            frozen[static_cast<std::size_t>(t) * cur.num_qubits() + q] = 1;
    }

    RunResult rr = run_fm(cur, phi, fs, table, i, frozen.empty() ? nullptr : &frozen);
    for (const TracePoint& tp : rr.trace) out.trace.push_back(tp);
    if (i > 0)
      phi = project_assignment(rr.best, h.layer_maps[static_cast<std::size_t>(i - 1)]);
    else
      phi = rr.best;
  }
  out.best = phi;
  out.cost = total_cost(g, phi, table);
  return out;
}

MlResult best_of_restarts(const TemporalHypergraph& g, Method method, int num_parts,
                          const std::vector<int>& cap, const MlSchedule& schedule,
                          int restarts) {
  std::vector<MlResult> results(static_cast<std::size_t>(restarts));
#pragma omp parallel for schedule(dynamic)
  for (int r = 0; r < restarts; ++r) {
    MlSchedule s = schedule;
    s.seed = Rng::derive(schedule.seed, 1000 + static_cast<std::uint64_t>(r));
    results[static_cast<std::size_t>(r)] = multilevel_partition(g, method, num_parts, cap, s);
  }
  std::size_t best = 0;
  for (std::size_t r = 1; r < results.size(); ++r)
    if (results[r].cost < results[best].cost) best = r;
  return results[best];
}

}  // namespace qcp
