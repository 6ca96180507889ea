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
#include <optional>
#include <unordered_map>
#include <vector>

#include "qcp/cost.hpp"
#include "qcp/rng.hpp"

namespace qcp {

// Moves (node, destination) bucketed by gain. Ordered keys give the lowest
// bucket in O(log B); membership removal and uniformly random picks inside a
// bucket are O(1) through the position index.
class GainBuckets {
 public:
  void insert(std::uint32_t code, int g);
  void erase(std::uint32_t code);
  void update(std::uint32_t code, int g);
  bool contains(std::uint32_t code) const { return pos_.count(code) != 0; }
  int gain_of(std::uint32_t code) const { return pos_.at(code).first; }
  bool empty() const { return buckets_.empty(); }
  std::size_t size() const { return pos_.size(); }

  // Uniformly random admissible move from the lowest-gain bucket holding
  // one. Entries failing `drop` (locked nodes) are removed permanently;
  // entries failing `admissible` (capacity) are skipped for this call only.
  template <typename DropFn, typename AdmissibleFn>
  std::optional<std::pair<std::uint32_t, int>> pick_min(Rng& rng, DropFn&& drop,
                                                        AdmissibleFn&& admissible);

 private:
  std::map<int, std::vector<std::uint32_t>> buckets_;
  std::unordered_map<std::uint32_t, std::pair<int, int>> pos_;  // code -> (gain, index)
};

template <typename DropFn, typename AdmissibleFn>
std::optional<std::pair<std::uint32_t, int>> GainBuckets::pick_min(Rng& rng, DropFn&& drop,
                                                                   AdmissibleFn&& admissible) {
  for (auto it = buckets_.begin(); it != buckets_.end();) {
    auto& vec = it->second;
    // Sample without replacement: skipped entries migrate behind `limit`.
    std::size_t limit = vec.size();
    while (limit > 0) {
      const std::size_t k = static_cast<std::size_t>(rng.below(limit));
      const std::uint32_t code = vec[k];
      if (drop(code)) {
        pos_.erase(code);
        const std::size_t last_untried = limit - 1;
        if (k != last_untried) {
          vec[k] = vec[last_untried];
          pos_[vec[k]].second = static_cast<int>(k);
        }
        const std::size_t last = vec.size() - 1;
        if (last_untried != last) {
          vec[last_untried] = vec[last];
          pos_[vec[last_untried]].second = static_cast<int>(last_untried);
        }
        vec.pop_back();
        --limit;
        continue;
      }
      if (admissible(code)) {
        const int g = it->first;
        pos_.erase(code);
        const std::size_t last = vec.size() - 1;
        if (k != last) {
          vec[k] = vec[last];
          pos_[vec[k]].second = static_cast<int>(k);
        }
        vec.pop_back();
        if (vec.empty()) buckets_.erase(it);
        return std::make_pair(code, g);
      }
      std::swap(vec[k], vec[limit - 1]);
      pos_[vec[k]].second = static_cast<int>(k);
      pos_[vec[limit - 1]].second = static_cast<int>(limit - 1);
      --limit;
    }
    if (vec.empty())
      it = buckets_.erase(it);
    else
      ++it;
  }
  return std::nullopt;
}

struct TracePoint {
  int level = 0;
  int pass = 0;
  long long cost = 0;
  double elapsed_ms = 0.0;
};

struct FmSchedule {
  int passes = 10;
  bool alternate = true;   // exploratory/exploitative alternation, exploratory first
  int move_cap = -1;       // -1: 0.125 * node count (flat-FM default)
  std::uint64_t seed = 0;
};

struct PassResult {
  long long accepted_gain = 0;
  int moves = 0;
};

// One Fiduccia-Mattheyses pass: repeatedly applies the admissible move of
// minimum gain (random tie-break), locks moved nodes, updates neighbour
// gains through the per-edge delta rule, then rolls back to the prefix of
// minimum cumulative gain. `exploratory` keeps the final state instead.
PassResult fm_pass(const TemporalHypergraph& g, EdgeCostStates& states,
                   const CostTable& table, Assignment& phi, int move_cap,
                   bool exploratory, Rng& rng,
                   const std::vector<std::uint8_t>* frozen = nullptr);

struct RunResult {
  Assignment best;
  long long best_cost = 0;
  std::vector<TracePoint> trace;
};

// Executes the pass schedule from phi0, tracking the best assignment seen.
RunResult run_fm(const TemporalHypergraph& g, const Assignment& phi0,
                 const FmSchedule& schedule, const CostTable& table, int level_tag = 0,
                 const std::vector<std::uint8_t>* frozen = nullptr);

}  // namespace qcp
