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

#include "qcp/grouping.hpp"

#include <algorithm>
#include <optional>

namespace qcp {
namespace {

struct OpenGroup {
  int first_t = 0;
  int last_t = 0;
  std::vector<NodeRef> recs;
  std::vector<double> phases;
  // Original gate edges, kept so single-receiver groups restore verbatim.
  std::vector<int> member_edges;
};

}  // namespace

TemporalHypergraph greedy_grouping(const TemporalHypergraph& g) {
  const int nq = g.num_qubits();
  const int d = g.depth();

  // Gate edges indexed by layer, in edge-id order.
  std::vector<std::vector<int>> gate_at(static_cast<std::size_t>(d));
  for (int id = 0; id < static_cast<int>(g.edges().size()); ++id) {
    const Edge& e = g.edge(id);
    if (e.kind == EdgeKind::Gate)
      gate_at[static_cast<std::size_t>(e.roots[0].time)].push_back(id);
  }

  std::vector<std::optional<OpenGroup>> open(static_cast<std::size_t>(nq));
  std::vector<Edge> emitted;

  auto close_group = [&](int q) {
    OpenGroup& grp = *open[static_cast<std::size_t>(q)];
    if (grp.recs.size() >= 2) {
      Edge e;
      e.kind = EdgeKind::Group;
      for (int t = grp.first_t; t <= grp.last_t; ++t) e.roots.push_back({q, t});
      e.recs = grp.recs;
      e.rec_phase = grp.phases;
      emitted.push_back(std::move(e));
    } else if (grp.recs.size() == 1) {
      emitted.push_back(g.edge(grp.member_edges[0]));
    }
    open[static_cast<std::size_t>(q)].reset();
  };

  for (int t = 0; t < d; ++t) {
    for (int id : gate_at[static_cast<std::size_t>(t)]) {
      const Edge& e = g.edge(id);
      const NodeRef u = e.roots[0];
      const NodeRef v = e.recs[0];
      auto size_of = [&](int q) {
        const auto& og = open[static_cast<std::size_t>(q)];
        return og ? og->recs.size() : std::size_t{0};
      };
      const bool root_on_u = size_of(u.qubit) >= size_of(v.qubit);
      const int root_q = root_on_u ? u.qubit : v.qubit;
      const NodeRef rec = root_on_u ? v : u;

      auto& grp = open[static_cast<std::size_t>(root_q)];
      if (!grp) grp.emplace(OpenGroup{t, t, {}, {}, {}});
      grp->recs.push_back(rec);
      grp->phases.push_back(e.rec_phase[0]);
      grp->member_edges.push_back(id);
      grp->last_t = t;

      // A receiver role interrupts the other endpoint's control chain.
      const int other_q = root_on_u ? v.qubit : u.qubit;
      if (open[static_cast<std::size_t>(other_q)]) close_group(other_q);
    }
    for (int q = 0; q < nq; ++q) {
      const auto& attr = g.attr({q, t});
      if (!attr) continue;
      if (diagonality((*attr)[0]) == Diagonality::Neither &&
          open[static_cast<std::size_t>(q)])
        close_group(q);
    }
  }
  for (int q = 0; q < nq; ++q)
    if (open[static_cast<std::size_t>(q)]) close_group(q);

  // Pre-existing group edges (regrouping an already grouped graph) pass
  // through and are ordered together with the emissions, so the edge order
  // is canonical and grouping is idempotent.
  for (const Edge& e : g.edges())
    if (e.kind == EdgeKind::Group) emitted.push_back(e);
  std::stable_sort(emitted.begin(), emitted.end(), [](const Edge& a, const Edge& b) {
    if (!(a.roots[0] == b.roots[0])) return a.roots[0] < b.roots[0];
    return a.recs[0] < b.recs[0];
  });

  TemporalHypergraph out(nq, d);
  for (int t = 0; t < d; ++t)
    for (int q = 0; q < nq; ++q) {
      const auto& attr = g.attr({q, t});
      if (attr) out.set_attr({q, t}, (*attr)[0], (*attr)[1], (*attr)[2]);
    }
  for (const Edge& e : g.edges())
    if (e.kind == EdgeKind::State) out.add_edge(e);
  for (Edge& e : emitted) out.add_edge(std::move(e));
  return out;
}

}  // namespace qcp
