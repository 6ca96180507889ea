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

#include "qcp/fm.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

namespace qcp {

void GainBuckets::insert(std::uint32_t code, int g) {
  auto& vec = buckets_[g];
  pos_[code] = {g, static_cast<int>(vec.size())};
  vec.push_back(code);
}

void GainBuckets::erase(std::uint32_t code) {
  auto it = pos_.find(code);
  if (it == pos_.end()) return;
  auto [g, idx] = it->second;
  pos_.erase(it);
  auto bit = buckets_.find(g);
  auto& vec = bit->second;
  const std::uint32_t moved = vec.back();
  vec[static_cast<std::size_t>(idx)] = moved;
  vec.pop_back();
  if (moved != code) pos_[moved].second = idx;
  if (vec.empty()) buckets_.erase(bit);
}

void GainBuckets::update(std::uint32_t code, int g) {
  auto it = pos_.find(code);
  if (it == pos_.end()) {
    insert(code, g);
    return;
  }
  if (it->second.first == g) return;
  erase(code);
  insert(code, g);
}

namespace {

struct UndoEntry {
  NodeRef v;
  int from;
};

}  // namespace

PassResult fm_pass(const TemporalHypergraph& g, EdgeCostStates& states,
                   const CostTable& table, Assignment& phi, int move_cap,
                   bool exploratory, Rng& rng, const std::vector<std::uint8_t>* frozen) {
  const int K = phi.num_parts;
  const int nq = g.num_qubits();
  const int n = g.num_nodes();
  auto code_of = [K, nq](NodeRef v, int p) {
    return static_cast<std::uint32_t>((v.time * nq + v.qubit) * K + p);
  };
  auto node_of = [K, nq](std::uint32_t code) {
    const int ni = static_cast<int>(code) / K;
    return NodeRef{ni % nq, ni / nq};
  };

  std::vector<int> gains(static_cast<std::size_t>(n) * K, 0);
  std::vector<std::uint8_t> locked(static_cast<std::size_t>(n), 0);
  std::vector<int> occ(static_cast<std::size_t>(phi.num_layers) * K, 0);
  for (int t = 0; t < phi.num_layers; ++t)
    for (int q = 0; q < nq; ++q) ++occ[static_cast<std::size_t>(t) * K + phi.at(t, q)];

  GainBuckets buckets;
  for (int t = 0; t < phi.num_layers; ++t)
    for (int q = 0; q < nq; ++q) {
      const NodeRef v{q, t};
      const int ni = t * nq + q;
      if (frozen && (*frozen)[static_cast<std::size_t>(ni)]) continue;
      const int src = phi.at(v);
      for (int p = 0; p < K; ++p) {
        if (p == src) continue;
        const int gv = gain(g, states, table, phi, v, p);
        gains[static_cast<std::size_t>(ni) * K + p] = gv;
        buckets.insert(code_of(v, p), gv);
      }
    }

  std::vector<UndoEntry> undo;
  std::vector<long long> cum;
  long long running = 0;
  if (move_cap < 0) move_cap = n;

  while (static_cast<int>(undo.size()) < move_cap) {
    auto picked = buckets.pick_min(
        rng,
        [&](std::uint32_t code) {
          return locked[static_cast<std::size_t>(code / static_cast<std::uint32_t>(K))] != 0;
        },
        [&](std::uint32_t code) {
          const NodeRef v = node_of(code);
          const int p = static_cast<int>(code) % K;
          return occ[static_cast<std::size_t>(v.time) * K + p] <
                 phi.cap[static_cast<std::size_t>(p)];
        });
    if (!picked) break;
    const auto [code, gsel] = *picked;
    const NodeRef v = node_of(code);
    const int p = static_cast<int>(code) % K;
    const int ni = v.time * nq + v.qubit;
    const int src = phi.at(v);

    MoveApplication mv = apply_move(g, states, table, phi, v, p);
    --occ[static_cast<std::size_t>(v.time) * K + src];
    ++occ[static_cast<std::size_t>(v.time) * K + p];
    locked[static_cast<std::size_t>(ni)] = 1;
    undo.push_back({v, src});
    running += gsel;
    cum.push_back(running);

    for_each_delta_gain(g, states, table, phi, mv, [&](NodeRef u, int pp, int delta) {
      const int ui = u.time * nq + u.qubit;
      if (frozen && (*frozen)[static_cast<std::size_t>(ui)]) return;
      if (pp == phi.at(u)) return;
      int& entry = gains[static_cast<std::size_t>(ui) * K + pp];
      entry += delta;
      const std::uint32_t ucode = code_of(u, pp);
      if (buckets.contains(ucode))
        buckets.update(ucode, entry);
      else if (!locked[static_cast<std::size_t>(ui)])
        buckets.insert(ucode, entry);
    });
    // The moved node's own row is stale relative to its new source; recompute
    // so bucket keys always equal scratch gains.
    for (int pp = 0; pp < K; ++pp) {
      if (pp == p) {
        buckets.erase(code_of(v, pp));
        continue;
      }
      const int gv = gain(g, states, table, phi, v, pp);
      gains[static_cast<std::size_t>(ni) * K + pp] = gv;
      if (buckets.contains(code_of(v, pp))) buckets.update(code_of(v, pp), gv);
    }
  }

  PassResult res;
  res.moves = static_cast<int>(undo.size());
  if (exploratory) {
    res.accepted_gain = running;
    return res;
  }
  // Roll back to the iteration of minimum cumulative gain (possibly zero
  // moves kept).
  long long best = 0;
  std::size_t keep = 0;
  for (std::size_t i = 0; i < cum.size(); ++i)
    if (cum[i] < best) {
      best = cum[i];
      keep = i + 1;
    }
  for (std::size_t i = undo.size(); i > keep; --i)
    apply_move_fast(g, states, table, phi, undo[i - 1].v, undo[i - 1].from);
  res.accepted_gain = best;
  res.moves = static_cast<int>(keep);
  return res;
}

RunResult run_fm(const TemporalHypergraph& g, const Assignment& phi0,
                 const FmSchedule& schedule, const CostTable& table, int level_tag,
                 const std::vector<std::uint8_t>* frozen) {
  Rng rng(schedule.seed);
  Assignment phi = phi0;
  EdgeCostStates states = init_edge_states(g, phi, table);

  RunResult out;
  out.best = phi;
  out.best_cost = states.total;

  int move_cap = schedule.move_cap;
  if (move_cap < 0)
    move_cap = std::max(1, static_cast<int>(std::lround(0.125 * g.num_nodes())));

  const auto t0 = std::chrono::steady_clock::now();
  for (int pass = 0; pass < schedule.passes; ++pass) {
    const bool exploratory = schedule.alternate && (pass % 2 == 0);
    fm_pass(g, states, table, phi, move_cap, exploratory, rng, frozen);
    if (states.total < out.best_cost) {
      out.best_cost = states.total;
      out.best = phi;
    }
    const auto now = std::chrono::steady_clock::now();
    out.trace.push_back(
        {level_tag, pass, states.total,
         std::chrono::duration<double, std::milli>(now - t0).count()});
  }
  return out;
}

}  // namespace qcp
