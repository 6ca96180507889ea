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

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qcp/circuit.hpp"

namespace qcp {

// One node per (qubit, time layer). Layers are 0-based.
struct NodeRef {
  int qubit = 0;
  int time = 0;

  friend bool operator==(const NodeRef& a, const NodeRef& b) {
    return a.qubit == b.qubit && a.time == b.time;
  }
  friend bool operator<(const NodeRef& a, const NodeRef& b) {
    return a.time != b.time ? a.time < b.time : a.qubit < b.qubit;
  }
};

enum class EdgeKind : std::uint8_t { State, Gate, Group };

// Directed hyper-edge with a root ("tail") set and receiver ("head") set.
// State edges: root (q,t), receiver (q,t+1). Gate edges: root is the first
// program operand of the CP gate. Group edges: all root nodes lie on one
// qubit and form a contiguous time interval.
struct Edge {
  EdgeKind kind = EdgeKind::State;
  std::vector<NodeRef> roots;
  std::vector<NodeRef> recs;
  // CP phase per receiver; one entry for gate edges, one per grouped gate,
  // empty for state edges. Meaningful only on level-0 graphs.
  std::vector<double> rec_phase;
};

inline constexpr std::uint8_t kRoleRoot = 1;
inline constexpr std::uint8_t kRoleRec = 2;

struct IncidentEdge {
  int edge = 0;
  std::uint8_t roles = 0;
};

class TemporalHypergraph {
 public:
  TemporalHypergraph() = default;
  TemporalHypergraph(int num_qubits, int depth)
      : num_qubits_(num_qubits),
        depth_(depth),
        attrs_(static_cast<std::size_t>(num_qubits) * depth),
        incidence_(static_cast<std::size_t>(num_qubits) * depth) {}

  int num_qubits() const { return num_qubits_; }
  int depth() const { return depth_; }
  int num_nodes() const { return num_qubits_ * depth_; }
  int node_index(NodeRef v) const { return v.time * num_qubits_ + v.qubit; }

  const std::optional<std::array<double, 3>>& attr(NodeRef v) const {
    return attrs_[static_cast<std::size_t>(node_index(v))];
  }
  void set_attr(NodeRef v, double th, double ph, double la) {
    attrs_[static_cast<std::size_t>(node_index(v))] = {th, ph, la};
  }

  int add_edge(Edge e);
  const std::vector<Edge>& edges() const { return edges_; }
  const Edge& edge(int id) const { return edges_[static_cast<std::size_t>(id)]; }

  // A(v): every edge containing v, with its role(s) in that edge.
  const std::vector<IncidentEdge>& incidence(NodeRef v) const {
    return incidence_[static_cast<std::size_t>(node_index(v))];
  }

  int two_qubit_gate_count() const;

  // Line-oriented edge dump used as a test fixture format.
  std::string dump() const;

 private:
  int num_qubits_ = 0;
  int depth_ = 0;
  std::vector<std::optional<std::array<double, 3>>> attrs_;
  std::vector<Edge> edges_;
  std::vector<std::vector<IncidentEdge>> incidence_;
};

// State edges along each qubit wire plus one gate edge per CP gate; single
// qubit gates become node attributes. Expects a circuit in the U/CP basis
// (markers are dropped first).
TemporalHypergraph build_temporal_graph(const LayeredCircuit& lc);

}  // namespace qcp
