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

#include <doctest.h>

#include "oracles.hpp"
#include "qcp/errors.hpp"
#include "qcp/grouping.hpp"
#include "qcp/multilevel.hpp"

using namespace qcp;

namespace {

std::vector<int> layer_counts(const Hierarchy& h) {
  std::vector<int> counts;
  for (const TemporalHypergraph& g : h.graphs) counts.push_back(g.depth());
  return counts;
}

LayeredCircuit wires_only(int nq, int d) {
  LayeredCircuit lc;
  lc.num_qubits = nq;
  lc.layers.resize(static_cast<std::size_t>(d));
  return lc;
}

}  // namespace

TEST_CASE("contracting a wire-only two-layer graph removes everything") {
  const TemporalHypergraph g = build_temporal_graph(wires_only(3, 2));
  const TemporalHypergraph c = contract_time(g, 1, 0);
  CHECK(c.depth() == 1);
  CHECK(c.edges().empty());
}

TEST_CASE("gate edges survive contraction with retimed endpoints") {
  LayeredCircuit lc;
  lc.num_qubits = 2;
  lc.layers.resize(2);
  lc.layers[1].push_back(Gate::cp(0, 1, 0.4));
  const TemporalHypergraph g = build_temporal_graph(lc);
  const TemporalHypergraph c = contract_time(g, 1, 0);
  REQUIRE(c.edges().size() == 1);
  CHECK(c.edges()[0].kind == EdgeKind::Gate);
  CHECK(c.edges()[0].roots[0] == NodeRef{0, 0});
  CHECK(c.edges()[0].recs[0] == NodeRef{1, 0});
  CHECK_THROWS_AS(contract_time(g, 0, 1), InvalidLayer);
}

TEST_CASE("contraction preserves cost of layer-copied assignments") {
  Rng rng(19);
  const CostTable table = build_cost_table(2);
  for (int rep = 0; rep < 5; ++rep) {
    const TemporalHypergraph g =
        greedy_grouping(build_temporal_graph(gen_cp_fraction(5, 6, 0.6, 900 + rep)));
    const int s = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(g.depth() - 1)));
    std::vector<int> map;
    const TemporalHypergraph c = contract_time(g, s, s - 1, &map);
    for (int i = 0; i < 20; ++i) {
      const Assignment coarse =
          oracle::random_feasible_assignment(c, 2, {3, 3}, rng);
      const Assignment fine = project_assignment(coarse, map);
      CHECK(total_cost(c, coarse, table) == total_cost(g, fine, table));
      CHECK(oracle::naive_total_cost(c, coarse) == oracle::naive_total_cost(g, fine));
    }
  }
}

TEST_CASE("window hierarchy layer counts") {
  CHECK(layer_counts(coarsen_window(build_temporal_graph(wires_only(2, 9)), 3)) ==
        std::vector<int>{9, 6, 3, 1});
  CHECK(layer_counts(coarsen_window(build_temporal_graph(wires_only(2, 4)), 2)) ==
        std::vector<int>{4, 2, 1});
  // levels >= depth degrades to one layer per level.
  CHECK(layer_counts(coarsen_window(build_temporal_graph(wires_only(2, 3)), 8)) ==
        std::vector<int>{3, 2, 1});
}

TEST_CASE("block hierarchy layer counts") {
  CHECK(layer_counts(coarsen_blocks(build_temporal_graph(wires_only(2, 6)), 2)) ==
        std::vector<int>{6, 4, 2, 1});
  CHECK(layer_counts(coarsen_blocks(build_temporal_graph(wires_only(2, 9)), 3)) ==
        std::vector<int>{9, 6, 3, 1});
  // Block size 1: nothing to contract inside blocks, one final merge.
  CHECK(layer_counts(coarsen_blocks(build_temporal_graph(wires_only(2, 5)), 5)) ==
        std::vector<int>{5, 1});
}

TEST_CASE("recursive hierarchy layer counts") {
  CHECK(layer_counts(coarsen_recursive(build_temporal_graph(wires_only(2, 8)))) ==
        std::vector<int>{8, 4, 2, 1});
  CHECK(layer_counts(coarsen_recursive(build_temporal_graph(wires_only(2, 5)))) ==
        std::vector<int>{5, 3, 2, 1});
  CHECK(layer_counts(coarsen_recursive(build_temporal_graph(wires_only(2, 1)))) ==
        std::vector<int>{1});
}

TEST_CASE("projection through identity and static assignments") {
  const TemporalHypergraph g = build_temporal_graph(wires_only(3, 4));
  std::vector<int> identity = {0, 1, 2, 3};
  Assignment phi = make_static_assignment(3, 4, 2, {2, 2});
  CHECK(project_assignment(phi, identity).phi == phi.phi);

  const Hierarchy h = coarsen_recursive(g);
  Assignment coarse = make_static_assignment(3, 1, 2, {2, 2});
  Assignment fine = coarse;
  for (std::size_t i = h.layer_maps.size(); i > 0; --i)
    fine = project_assignment(fine, h.layer_maps[i - 1]);
  CHECK(fine.num_layers == 4);
  const Assignment direct = make_static_assignment(3, 4, 2, {2, 2});
  CHECK(fine.phi == direct.phi);
}

TEST_CASE("hierarchy cost consistency across all strategies") {
  Rng rng(23);
  const CostTable table = build_cost_table(2);
  const TemporalHypergraph g =
      greedy_grouping(build_temporal_graph(gen_cp_fraction(4, 9, 0.5, 31)));
  for (const Hierarchy& h :
       {coarsen_window(g, 3), coarsen_blocks(g, 3), coarsen_recursive(g)}) {
    for (std::size_t lev = 0; lev + 1 < h.graphs.size(); ++lev) {
      for (int i = 0; i < 10; ++i) {
        const Assignment coarse = oracle::random_feasible_assignment(
            h.graphs[lev + 1], 2, {3, 3}, rng);
        const Assignment fine = project_assignment(coarse, h.layer_maps[lev]);
        CHECK(total_cost(h.graphs[lev + 1], coarse, table) ==
              total_cost(h.graphs[lev], fine, table));
        CHECK(fine.feasible());
      }
    }
  }
}

TEST_CASE("flat method equals plain FM") {
  const TemporalHypergraph g =
      greedy_grouping(build_temporal_graph(gen_cp_fraction(6, 8, 0.5, 47)));
  const CostTable table = build_cost_table(2);
  MlSchedule sched;
  sched.passes_per_level = 6;
  sched.seed = 99;
  const MlResult ml = multilevel_partition(g, Method::Flat, 2, {4, 4}, sched);

  FmSchedule fs;
  fs.passes = 6;
  fs.alternate = sched.alternate;
  fs.seed = Rng::derive(99, 0);
  fs.move_cap = std::max(1, static_cast<int>(std::lround(0.125 * g.num_nodes())));
  const Assignment phi0 = make_static_assignment(6, g.depth(), 2, {4, 4});
  const RunResult rr = run_fm(g, phi0, fs, table);
  CHECK(ml.cost == rr.best_cost);
  CHECK(ml.best.phi == rr.best.phi);
}

TEST_CASE("depth-one input degenerates all methods to the same search") {
  const TemporalHypergraph g = build_temporal_graph(gen_cp_fraction(6, 1, 1.0, 5));
  MlSchedule sched;
  sched.passes_per_level = 4;
  sched.seed = 7;
  long long costs[4];
  int i = 0;
  for (Method m : {Method::Flat, Method::Window, Method::Block, Method::Recursive}) {
    MlSchedule s = sched;
    s.move_cap = 6;
    costs[i++] = multilevel_partition(g, m, 2, {4, 4}, s).cost;
  }
  CHECK(costs[0] == costs[1]);
  CHECK(costs[1] == costs[2]);
  CHECK(costs[2] == costs[3]);
}

TEST_CASE("small instances reach the enumerated optimum") {
  int hits = 0;
  for (std::uint64_t seed = 0; seed < 8; ++seed) {
    const TemporalHypergraph g =
        greedy_grouping(build_temporal_graph(gen_cp_fraction(3, 3, 0.6, 3000 + seed)));
    const long long best = oracle::enumerate_optimum(g, 2, {2, 2});
    MlSchedule sched;
    sched.passes_per_level = 10;
    sched.seed = seed;
    const MlResult r = best_of_restarts(g, Method::Recursive, 2, {2, 2}, sched, 10);
    CHECK(r.cost >= best);
    if (r.cost == best) ++hits;
  }
  CHECK(hits >= 7);
}

TEST_CASE("window locking keeps refined layers fixed but stays feasible") {
  const TemporalHypergraph g =
      greedy_grouping(build_temporal_graph(gen_cp_fraction(6, 9, 0.6, 71)));
  MlSchedule sched;
  sched.passes_per_level = 6;
  sched.seed = 3;
  const MlResult r = multilevel_partition(g, Method::Window, 2, {4, 4}, sched);
  CHECK(r.best.feasible());
  CHECK(r.cost == total_cost(g, r.best, build_cost_table(2)));
}
