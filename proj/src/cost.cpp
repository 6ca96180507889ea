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

#include "qcp/cost.hpp"

#include <numeric>

#include "qcp/errors.hpp"

namespace qcp {

bool Assignment::feasible() const {
  std::vector<int> occ(static_cast<std::size_t>(num_parts));
  for (int t = 0; t < num_layers; ++t) {
    std::fill(occ.begin(), occ.end(), 0);
    for (int q = 0; q < num_qubits; ++q) ++occ[static_cast<std::size_t>(at(t, q))];
    for (int p = 0; p < num_parts; ++p)
      if (occ[static_cast<std::size_t>(p)] > cap[static_cast<std::size_t>(p)]) return false;
  }
  return true;
}

Assignment make_static_assignment(int num_qubits, int num_layers, int num_parts,
                                  const std::vector<int>& cap) {
  if (std::accumulate(cap.begin(), cap.end(), 0) < num_qubits)
    throw InsufficientCapacity("total capacity " +
                               std::to_string(std::accumulate(cap.begin(), cap.end(), 0)) +
                               " cannot hold " + std::to_string(num_qubits) + " qubits");
  Assignment a;
  a.num_layers = num_layers;
  a.num_qubits = num_qubits;
  a.num_parts = num_parts;
  a.cap = cap;
  a.phi.assign(static_cast<std::size_t>(num_layers) * num_qubits, 0);
  int part = 0;
  int used = 0;
  for (int q = 0; q < num_qubits; ++q) {
    while (used >= cap[static_cast<std::size_t>(part)]) {
      ++part;
      used = 0;
    }
    for (int t = 0; t < num_layers; ++t) a.set(t, q, part);
    ++used;
  }
  return a;
}

CostTable::CostTable(int num_parts, int precompute_threshold) : num_parts_(num_parts) {
  if (num_parts < 1 || num_parts > 64)
    throw QcpError("partition count must be in [1, 64], got " + std::to_string(num_parts));
  precomputed_ = num_parts <= precompute_threshold;
  if (precomputed_) {
    dense_.resize(std::size_t{1} << num_parts);
    for (std::size_t i = 0; i < dense_.size(); ++i)
      dense_[i] = static_cast<std::uint8_t>(popcount(i));
  }
}

CostTable build_cost_table(int num_parts, int precompute_threshold) {
  return CostTable(num_parts, precompute_threshold);
}

namespace detail {

void collect_edge_members(const Edge& e, std::vector<std::pair<NodeRef, std::uint8_t>>& out) {
  for (const NodeRef& v : e.roots) out.emplace_back(v, kRoleRoot);
  for (const NodeRef& v : e.recs) {
    bool merged = false;
    for (auto& [u, roles] : out) {
      if (u == v) {
        roles |= kRoleRec;
        merged = true;
        break;
      }
    }
    if (!merged) out.emplace_back(v, kRoleRec);
  }
}

}  // namespace detail

namespace {

std::uint64_t edge_cfg(const Edge& e, const Assignment& phi) {
  std::uint64_t root_mask = 0;
  std::uint64_t rec_mask = 0;
  for (const NodeRef& v : e.roots) root_mask |= 1ULL << phi.at(v);
  for (const NodeRef& v : e.recs) rec_mask |= 1ULL << phi.at(v);
  return rec_mask & ~root_mask;
}

}  // namespace

int edge_cost(const Edge& e, const Assignment& phi, const CostTable& table) {
  return table.lookup(edge_cfg(e, phi));
}

long long total_cost(const TemporalHypergraph& g, const Assignment& phi,
                     const CostTable& table) {
  long long sum = 0;
  for (const Edge& e : g.edges()) sum += edge_cost(e, phi, table);
  return sum;
}

EdgeCostStates init_edge_states(const TemporalHypergraph& g, const Assignment& phi,
                                const CostTable& table) {
  const int K = table.num_parts();
  const std::size_t ne = g.edges().size();
  EdgeCostStates s;
  s.num_parts = K;
  s.root_counts.assign(ne * K, 0);
  s.rec_counts.assign(ne * K, 0);
  s.cfg.assign(ne, 0);
  s.cost.assign(ne, 0);
  for (std::size_t i = 0; i < ne; ++i) {
    const Edge& e = g.edges()[i];
    for (const NodeRef& v : e.roots) ++s.root_counts[i * K + phi.at(v)];
    for (const NodeRef& v : e.recs) ++s.rec_counts[i * K + phi.at(v)];
    std::uint64_t cfg = 0;
    for (int p = 0; p < K; ++p)
      if (s.rec_counts[i * K + p] > 0 && s.root_counts[i * K + p] == 0) cfg |= 1ULL << p;
    s.cfg[i] = cfg;
    s.cost[i] = table.lookup(cfg);
    s.total += s.cost[i];
  }
  return s;
}

int gain(const TemporalHypergraph& g, const EdgeCostStates& states, const CostTable& table,
         const Assignment& phi, NodeRef v, int p) {
  const int src = phi.at(v);
  int sum = 0;
  for (const IncidentEdge& ie : g.incidence(v)) {
    const int e = ie.edge;
    const int now = states.cost[static_cast<std::size_t>(e)];
    const int then = detail::cost_if_moved(
        table, states.cfg[static_cast<std::size_t>(e)], states.root_count(e, src),
        states.rec_count(e, src), states.root_count(e, p), states.rec_count(e, p),
        ie.roles, src, p);
    sum += then - now;
  }
  return sum;
}

namespace {

template <bool WithSnapshots>
void apply_move_impl(const TemporalHypergraph& g, EdgeCostStates& states,
                     const CostTable& table, Assignment& phi, NodeRef v, int p,
                     MoveApplication* out) {
  const int K = states.num_parts;
  const int src = phi.at(v);
  for (const IncidentEdge& ie : g.incidence(v)) {
    const std::size_t e = static_cast<std::size_t>(ie.edge);
    int* rc = &states.root_counts[e * K];
    int* sc = &states.rec_counts[e * K];
    if constexpr (WithSnapshots) {
      EdgeSnapshot snap;
      snap.edge = ie.edge;
      snap.moved_roles = ie.roles;
      snap.cfg_before = states.cfg[e];
      snap.cost_before = states.cost[e];
      snap.root_src_before = rc[src];
      snap.root_dst_before = rc[p];
      snap.rec_src_before = sc[src];
      snap.rec_dst_before = sc[p];
      out->snaps.push_back(snap);
    }
    if (ie.roles & kRoleRoot) {
      --rc[src];
      ++rc[p];
    }
    if (ie.roles & kRoleRec) {
      --sc[src];
      ++sc[p];
    }
    std::uint64_t cfg = states.cfg[e];
    cfg = (sc[src] > 0 && rc[src] == 0) ? (cfg | (1ULL << src)) : (cfg & ~(1ULL << src));
    cfg = (sc[p] > 0 && rc[p] == 0) ? (cfg | (1ULL << p)) : (cfg & ~(1ULL << p));
    states.cfg[e] = cfg;
    const int nc = table.lookup(cfg);
    states.total += nc - states.cost[e];
    states.cost[e] = nc;
  }
  phi.set(v.time, v.qubit, p);
}

}  // namespace

MoveApplication apply_move(const TemporalHypergraph& g, EdgeCostStates& states,
                           const CostTable& table, Assignment& phi, NodeRef v, int p) {
  MoveApplication mv;
  mv.v = v;
  mv.src = phi.at(v);
  mv.dst = p;
  apply_move_impl<true>(g, states, table, phi, v, p, &mv);
  return mv;
}

void apply_move_fast(const TemporalHypergraph& g, EdgeCostStates& states,
                     const CostTable& table, Assignment& phi, NodeRef v, int p) {
  apply_move_impl<false>(g, states, table, phi, v, p, nullptr);
}

}  // namespace qcp
