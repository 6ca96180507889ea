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

#include "qcp/hypergraph.hpp"

#include <cstdio>

namespace qcp {

int TemporalHypergraph::add_edge(Edge e) {
  const int id = static_cast<int>(edges_.size());
  for (const NodeRef& v : e.roots) {
    auto& inc = incidence_[static_cast<std::size_t>(node_index(v))];
    if (!inc.empty() && inc.back().edge == id)
      inc.back().roles |= kRoleRoot;
    else
      inc.push_back({id, kRoleRoot});
  }
  for (const NodeRef& v : e.recs) {
    auto& inc = incidence_[static_cast<std::size_t>(node_index(v))];
    if (!inc.empty() && inc.back().edge == id)
      inc.back().roles |= kRoleRec;
    else
      inc.push_back({id, kRoleRec});
  }
  edges_.push_back(std::move(e));
  return id;
}

int TemporalHypergraph::two_qubit_gate_count() const {
  int n = 0;
  for (const Edge& e : edges_)
    if (e.kind != EdgeKind::State) n += static_cast<int>(e.recs.size());
  return n;
}

std::string TemporalHypergraph::dump() const {
  std::string out;
  char buf[64];
  auto put_nodes = [&](const std::vector<NodeRef>& vs) {
    out += '[';
    for (std::size_t i = 0; i < vs.size(); ++i) {
      std::snprintf(buf, sizeof buf, "(%d,%d)", vs[i].qubit, vs[i].time);
      out += buf;
      if (i + 1 < vs.size()) out += ' ';
    }
    out += ']';
  };
  for (const Edge& e : edges_) {
    switch (e.kind) {
      case EdgeKind::State: out += "state root:"; break;
      case EdgeKind::Gate: out += "gate root:"; break;
      case EdgeKind::Group: out += "group root:"; break;
    }
    put_nodes(e.roots);
    out += " rec:";
    put_nodes(e.recs);
    if (!e.rec_phase.empty()) {
      out += " attr:";
      for (std::size_t i = 0; i < e.rec_phase.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%.9g", e.rec_phase[i]);
        out += buf;
        if (i + 1 < e.rec_phase.size()) out += ',';
      }
    }
    out += '\n';
  }
  return out;
}

TemporalHypergraph build_temporal_graph(const LayeredCircuit& lc_in) {
  const LayeredCircuit lc = drop_markers(lc_in);
  const int d = lc.depth();
  const int nq = lc.num_qubits;
  TemporalHypergraph g(nq, d);

  for (int q = 0; q < nq; ++q)
    for (int t = 0; t + 1 < d; ++t) {
      Edge e;
      e.kind = EdgeKind::State;
      e.roots = {{q, t}};
      e.recs = {{q, t + 1}};
      g.add_edge(std::move(e));
    }

  for (int t = 0; t < d; ++t) {
    for (const Gate& gate : lc.layers[static_cast<std::size_t>(t)]) {
      if (gate.kind == GateKind::SingleU) {
        g.set_attr({gate.q0, t}, gate.theta, gate.phi, gate.lambda);
      } else if (gate.kind == GateKind::ControlledPhase) {
        Edge e;
        e.kind = EdgeKind::Gate;
        e.roots = {{gate.q0, t}};
        e.recs = {{gate.q1, t}};
        e.rec_phase = {gate.theta};
        g.add_edge(std::move(e));
      }
    }
  }
  return g;
}

}  // namespace qcp
