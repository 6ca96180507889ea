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
#include <unordered_map>
#include <vector>

#include "qcp/hypergraph.hpp"

namespace qcp {

// Per-time-step map from qubits to partitions, with per-partition data-qubit
// capacities that hold at every time step.
struct Assignment {
  int num_layers = 0;
  int num_qubits = 0;
  int num_parts = 0;
  std::vector<int> cap;
  std::vector<std::uint8_t> phi;  // [t * num_qubits + q]

  int at(int t, int q) const {
    return phi[static_cast<std::size_t>(t) * num_qubits + q];
  }
  void set(int t, int q, int p) {
    phi[static_cast<std::size_t>(t) * num_qubits + q] = static_cast<std::uint8_t>(p);
  }
  int at(NodeRef v) const { return at(v.time, v.qubit); }

  bool feasible() const;
};

// Fills partitions to capacity in qubit-index order, identically at every
// time step. Throws InsufficientCapacity when the caps cannot hold n_q.
Assignment make_static_assignment(int num_qubits, int num_layers, int num_parts,
                                  const std::vector<int>& cap);

// Cost of a configuration word is its population count. Dense precompute for
// small K, lazy cache beyond; K is limited to the 64-bit word width.
class CostTable {
 public:
  CostTable() = default;
  CostTable(int num_parts, int precompute_threshold);

  int num_parts() const { return num_parts_; }
  bool precomputed() const { return precomputed_; }

  int lookup(std::uint64_t cfg) const {
    if (precomputed_) return dense_[cfg];
    auto it = cache_.find(cfg);
    if (it != cache_.end()) return it->second;
    int c = popcount(cfg);
    cache_.emplace(cfg, c);
    return c;
  }

  static int popcount(std::uint64_t x) { return __builtin_popcountll(x); }

 private:
  int num_parts_ = 0;
  bool precomputed_ = true;
  std::vector<std::uint8_t> dense_;
  mutable std::unordered_map<std::uint64_t, int> cache_;
};

CostTable build_cost_table(int num_parts, int precompute_threshold = 16);

// Root/receiver partition counts, configuration word and cached cost per
// edge, kept consistent across incremental moves.
struct EdgeCostStates {
  int num_parts = 0;
  std::vector<int> root_counts;       // [edge * K + p]
  std::vector<int> rec_counts;        // [edge * K + p]
  std::vector<std::uint64_t> cfg;     // [edge]
  std::vector<int> cost;              // [edge]
  long long total = 0;

  int root_count(int e, int p) const {
    return root_counts[static_cast<std::size_t>(e) * num_parts + p];
  }
  int rec_count(int e, int p) const {
    return rec_counts[static_cast<std::size_t>(e) * num_parts + p];
  }
};

EdgeCostStates init_edge_states(const TemporalHypergraph& g, const Assignment& phi,
                                const CostTable& table);

// Single-edge cost straight from the assignment (configuration route).
int edge_cost(const Edge& e, const Assignment& phi, const CostTable& table);

// Entanglement cost: sum of edge costs, computed from scratch.
long long total_cost(const TemporalHypergraph& g, const Assignment& phi,
                     const CostTable& table);

// Gain of moving v to partition p (negative improves), from current states.
int gain(const TemporalHypergraph& g, const EdgeCostStates& states,
         const CostTable& table, const Assignment& phi, NodeRef v, int p);

// Count entries an edge had at the move's source/destination before the
// move, enough to re-evaluate hypothetical costs of the pre-move state.
struct EdgeSnapshot {
  int edge = 0;
  std::uint8_t moved_roles = 0;
  std::uint64_t cfg_before = 0;
  int cost_before = 0;
  int root_src_before = 0;
  int root_dst_before = 0;
  int rec_src_before = 0;
  int rec_dst_before = 0;
};

struct MoveApplication {
  NodeRef v;
  int src = 0;
  int dst = 0;
  std::vector<EdgeSnapshot> snaps;
};

// Applies the move to states and phi, maintaining counts, configurations,
// cached costs and the running total; returns what delta-gain needs.
MoveApplication apply_move(const TemporalHypergraph& g, EdgeCostStates& states,
                           const CostTable& table, Assignment& phi, NodeRef v, int p);

// Same update without snapshots; used for pass rollback.
void apply_move_fast(const TemporalHypergraph& g, EdgeCostStates& states,
                     const CostTable& table, Assignment& phi, NodeRef v, int p);

// Invokes fn(u, p, delta) for every gain-table entry affected by the move
// just applied (neighbours of mv.v through shared edges, all destinations).
// Deltas follow g(u,p)_after = g(u,p)_before + delta.
template <typename Fn>
void for_each_delta_gain(const TemporalHypergraph& g, const EdgeCostStates& states,
                         const CostTable& table, const Assignment& phi_after,
                         const MoveApplication& mv, Fn&& fn);

namespace detail {

// Cost the edge would have if node-with-roles moved src -> dst, given the
// edge's configuration and count entries at those two partitions.
inline int cost_if_moved(const CostTable& table, std::uint64_t cfg, int r_src, int s_src,
                         int r_dst, int s_dst, std::uint8_t roles, int src, int dst) {
  if (roles & kRoleRoot) {
    --r_src;
    ++r_dst;
  }
  if (roles & kRoleRec) {
    --s_src;
    ++s_dst;
  }
  std::uint64_t ncfg = cfg;
  ncfg = (s_src > 0 && r_src == 0) ? (ncfg | (1ULL << src)) : (ncfg & ~(1ULL << src));
  ncfg = (s_dst > 0 && r_dst == 0) ? (ncfg | (1ULL << dst)) : (ncfg & ~(1ULL << dst));
  return table.lookup(ncfg);
}

void collect_edge_members(const Edge& e, std::vector<std::pair<NodeRef, std::uint8_t>>& out);

}  // namespace detail

template <typename Fn>
void for_each_delta_gain(const TemporalHypergraph& g, const EdgeCostStates& states,
                         const CostTable& table, const Assignment& phi_after,
                         const MoveApplication& mv, Fn&& fn) {
  const int K = states.num_parts;
  std::vector<std::pair<NodeRef, std::uint8_t>> members;
  for (const EdgeSnapshot& snap : mv.snaps) {
    const Edge& e = g.edge(snap.edge);
    members.clear();
    detail::collect_edge_members(e, members);
    const std::uint64_t cfg_after = states.cfg[static_cast<std::size_t>(snap.edge)];
    const int cost_after = states.cost[static_cast<std::size_t>(snap.edge)];
    for (const auto& [u, roles] : members) {
      if (u == mv.v) continue;
      const int u_src = phi_after.at(u);
      for (int p = 0; p < K; ++p) {
        if (p == u_src) continue;
        // After-state counts at (u_src, p) read directly; before-state counts
        // equal the after-state except at the moved node's src/dst rows.
        int ra_src = states.root_count(snap.edge, u_src);
        int ra_dst = states.root_count(snap.edge, p);
        int sa_src = states.rec_count(snap.edge, u_src);
        int sa_dst = states.rec_count(snap.edge, p);
        const int after_if =
            detail::cost_if_moved(table, cfg_after, ra_src, sa_src, ra_dst, sa_dst,
                                  roles, u_src, p);
        int rb_src = ra_src, rb_dst = ra_dst, sb_src = sa_src, sb_dst = sa_dst;
        if (snap.moved_roles & kRoleRoot) {
          if (u_src == mv.src) rb_src = snap.root_src_before;
          if (u_src == mv.dst) rb_src = snap.root_dst_before;
          if (p == mv.src) rb_dst = snap.root_src_before;
          if (p == mv.dst) rb_dst = snap.root_dst_before;
        }
        if (snap.moved_roles & kRoleRec) {
          if (u_src == mv.src) sb_src = snap.rec_src_before;
          if (u_src == mv.dst) sb_src = snap.rec_dst_before;
          if (p == mv.src) sb_dst = snap.rec_src_before;
          if (p == mv.dst) sb_dst = snap.rec_dst_before;
        }
        const int before_if =
            detail::cost_if_moved(table, snap.cfg_before, rb_src, sb_src, rb_dst, sb_dst,
                                  roles, u_src, p);
        const int delta = (after_if - cost_after) - (before_if - snap.cost_before);
        if (delta != 0) fn(u, p, delta);
      }
    }
  }
}

}  // namespace qcp
