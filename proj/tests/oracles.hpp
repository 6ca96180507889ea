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

// Independent reference implementations used only by tests. They follow the
// set-difference cost definition and brute-force search directly, with no
// shared code paths with the incremental engine they check.

#pragma once

#include <algorithm>
#include <complex>
#include <set>
#include <vector>

#include "qcp/circuit.hpp"
#include "qcp/cost.hpp"
#include "qcp/hypergraph.hpp"
#include "qcp/rng.hpp"

namespace oracle {

using qcp::cd;

inline int naive_edge_cost(const qcp::Edge& e, const qcp::Assignment& phi) {
  std::set<int> rec_parts;
  std::set<int> root_parts;
  for (const qcp::NodeRef& v : e.recs) rec_parts.insert(phi.at(v));
  for (const qcp::NodeRef& v : e.roots) root_parts.insert(phi.at(v));
  int n = 0;
  for (int p : rec_parts)
    if (!root_parts.count(p)) ++n;
  return n;
}

inline long long naive_total_cost(const qcp::TemporalHypergraph& g,
                                  const qcp::Assignment& phi) {
  long long sum = 0;
  for (const qcp::Edge& e : g.edges()) sum += naive_edge_cost(e, phi);
  return sum;
}

// Exhaustive minimum over all capacity-feasible assignments.
inline long long enumerate_optimum(const qcp::TemporalHypergraph& g, int num_parts,
                                   const std::vector<int>& cap) {
  const int n = g.num_nodes();
  qcp::Assignment phi;
  phi.num_layers = g.depth();
  phi.num_qubits = g.num_qubits();
  phi.num_parts = num_parts;
  phi.cap = cap;
  phi.phi.assign(static_cast<std::size_t>(n), 0);
  long long best = -1;
  while (true) {
    if (phi.feasible()) {
      const long long c = naive_total_cost(g, phi);
      if (best < 0 || c < best) best = c;
    }
    int i = 0;
    for (; i < n; ++i) {
      if (phi.phi[static_cast<std::size_t>(i)] + 1 < num_parts) {
        ++phi.phi[static_cast<std::size_t>(i)];
        std::fill(phi.phi.begin(), phi.phi.begin() + i, 0);
        break;
      }
    }
    if (i == n) break;
  }
  return best;
}

inline qcp::Assignment random_feasible_assignment(const qcp::TemporalHypergraph& g,
                                                  int num_parts, const std::vector<int>& cap,
                                                  qcp::Rng& rng) {
  qcp::Assignment phi;
  phi.num_layers = g.depth();
  phi.num_qubits = g.num_qubits();
  phi.num_parts = num_parts;
  phi.cap = cap;
  phi.phi.assign(static_cast<std::size_t>(g.num_nodes()), 0);
  std::vector<int> qubits(static_cast<std::size_t>(g.num_qubits()));
  for (int q = 0; q < g.num_qubits(); ++q) qubits[static_cast<std::size_t>(q)] = q;
  for (int t = 0; t < g.depth(); ++t) {
    rng.shuffle(qubits);
    std::vector<int> room = cap;
    for (int q : qubits) {
      int p = static_cast<int>(rng.below(static_cast<std::uint64_t>(num_parts)));
      while (room[static_cast<std::size_t>(p)] == 0) p = (p + 1) % num_parts;
      --room[static_cast<std::size_t>(p)];
      phi.set(t, q, p);
    }
  }
  return phi;
}

// Dense unitary of a gate list over n qubits, built column by column.
class DenseUnitary {
 public:
  explicit DenseUnitary(int n) : n_(n), dim_(std::size_t{1} << n) {
    m_.assign(dim_ * dim_, cd(0.0, 0.0));
    for (std::size_t i = 0; i < dim_; ++i) m_[i * dim_ + i] = 1.0;
  }

  void apply(const qcp::Gate& g) {
    if (g.kind == qcp::GateKind::SingleU) {
      const qcp::Mat2 u = qcp::u_matrix(g.theta, g.phi, g.lambda);
      const std::size_t mask = std::size_t{1} << g.q0;
      for (std::size_t col = 0; col < dim_; ++col)
        for (std::size_t i = 0; i < dim_; ++i) {
          if (i & mask) continue;
          const cd lo = m_[i * dim_ + col];
          const cd hi = m_[(i | mask) * dim_ + col];
          m_[i * dim_ + col] = u.m00 * lo + u.m01 * hi;
          m_[(i | mask) * dim_ + col] = u.m10 * lo + u.m11 * hi;
        }
    } else if (g.kind == qcp::GateKind::ControlledPhase) {
      const std::size_t m1 = std::size_t{1} << g.q0;
      const std::size_t m2 = std::size_t{1} << g.q1;
      const cd phase = std::exp(cd(0.0, g.theta));
      for (std::size_t col = 0; col < dim_; ++col)
        for (std::size_t i = 0; i < dim_; ++i)
          if ((i & m1) && (i & m2)) m_[i * dim_ + col] *= phase;
    }
  }

  // Max elementwise distance after removing the global phase.
  double distance_up_to_phase(const DenseUnitary& other) const {
    std::size_t ref = 0;
    double best = 0.0;
    for (std::size_t i = 0; i < m_.size(); ++i)
      if (std::abs(m_[i]) > best) {
        best = std::abs(m_[i]);
        ref = i;
      }
    if (std::abs(other.m_[ref]) < 1e-12) return 1.0;
    const cd phase = m_[ref] / other.m_[ref];
    double d = 0.0;
    for (std::size_t i = 0; i < m_.size(); ++i)
      d = std::max(d, std::abs(m_[i] - phase * other.m_[i]));
    return d;
  }

 private:
  int n_;
  std::size_t dim_;
  std::vector<cd> m_;
};

inline double gate_lists_distance(const std::vector<qcp::Gate>& a,
                                  const std::vector<qcp::Gate>& b, int n) {
  DenseUnitary ua(n);
  for (const qcp::Gate& g : a) ua.apply(g);
  DenseUnitary ub(n);
  for (const qcp::Gate& g : b) ub.apply(g);
  return ua.distance_up_to_phase(ub);
}

// Random circuit already in the U/CP basis.
inline qcp::LayeredCircuit random_ucp_circuit(int n, int gates, qcp::Rng& rng) {
  std::vector<qcp::Gate> flat;
  for (int i = 0; i < gates; ++i) {
    if (n >= 2 && rng.bernoulli(0.4)) {
      int a = static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
      int b = static_cast<int>(rng.below(static_cast<std::uint64_t>(n - 1)));
      if (b >= a) ++b;
      flat.push_back(qcp::Gate::cp(a, b, rng.uniform(0, 2 * qcp::kPi)));
    } else {
      flat.push_back(qcp::Gate::single(static_cast<int>(rng.below(static_cast<std::uint64_t>(n))),
                                       rng.uniform(0, 2 * qcp::kPi), rng.uniform(0, 2 * qcp::kPi),
                                       rng.uniform(0, 2 * qcp::kPi)));
    }
  }
  return qcp::schedule_layers(flat, n);
}

}  // namespace oracle
