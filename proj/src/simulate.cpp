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

#include "qcp/simulate.hpp"

#include <cmath>
#include <unordered_map>

#include "qcp/errors.hpp"
#include "qcp/rng.hpp"

namespace qcp {

std::string Distribution::bitstring(std::uint64_t outcome, int num_qubits) {
  std::string s(static_cast<std::size_t>(num_qubits), '0');
  for (int q = 0; q < num_qubits; ++q)
    if ((outcome >> q) & 1ULL) s[static_cast<std::size_t>(q)] = '1';
  return s;
}

namespace {

std::uint64_t wire_key(Wire w) {
  return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(w.qpu)) << 32) |
         static_cast<std::uint32_t>(w.slot);
}

constexpr std::size_t kParallelThreshold = std::size_t{1} << 14;

class StateVector {
 public:
  StateVector(int wire_cap, bool parallel) : cap_(wire_cap), parallel_(parallel) {
    amps_ = {cd(1.0, 0.0)};
  }

  int live_wires() const { return n_; }

  int pos_of(Wire w) const {
    auto it = pos_.find(wire_key(w));
    if (it == pos_.end()) throw QcpError("operation on a wire that is not live");
    return it->second;
  }

  void alloc(Wire w) {
    if (pos_.count(wire_key(w))) throw QcpError("wire allocated twice");
    if (n_ + 1 > cap_) throw TooManyWires(n_ + 1, cap_);
    pos_[wire_key(w)] = n_;
    ++n_;
    amps_.resize(std::size_t{1} << n_, cd(0.0, 0.0));
  }

  void apply_u(int pos, const Mat2& m) {
    const std::size_t mask = std::size_t{1} << pos;
    const std::size_t size = amps_.size();
    cd* a = amps_.data();
    if (parallel_ && size >= kParallelThreshold) {
#pragma omp parallel for schedule(static)
      for (std::size_t i = 0; i < size; ++i) {
        if (i & mask) continue;
        const cd lo = a[i];
        const cd hi = a[i | mask];
        a[i] = m.m00 * lo + m.m01 * hi;
        a[i | mask] = m.m10 * lo + m.m11 * hi;
      }
    } else {
      for (std::size_t i = 0; i < size; ++i) {
        if (i & mask) continue;
        const cd lo = a[i];
        const cd hi = a[i | mask];
        a[i] = m.m00 * lo + m.m01 * hi;
        a[i | mask] = m.m10 * lo + m.m11 * hi;
      }
    }
  }

  void apply_cp(int p1, int p2, double theta) {
    const std::size_t m1 = std::size_t{1} << p1;
    const std::size_t m2 = std::size_t{1} << p2;
    const cd phase = std::exp(cd(0.0, theta));
    const std::size_t size = amps_.size();
    cd* a = amps_.data();
    if (parallel_ && size >= kParallelThreshold) {
#pragma omp parallel for schedule(static)
      for (std::size_t i = 0; i < size; ++i)
        if ((i & m1) && (i & m2)) a[i] *= phase;
    } else {
      for (std::size_t i = 0; i < size; ++i)
        if ((i & m1) && (i & m2)) a[i] *= phase;
    }
  }

  void apply_cx(int control, int target) {
    const std::size_t mc = std::size_t{1} << control;
    const std::size_t mt = std::size_t{1} << target;
    const std::size_t size = amps_.size();
    cd* a = amps_.data();
    for (std::size_t i = 0; i < size; ++i)
      if ((i & mc) && !(i & mt)) std::swap(a[i], a[i | mt]);
  }

  // Deterministic serial reduction, independent of the kernel mode.
  double prob_one(int pos) const {
    const std::size_t mask = std::size_t{1} << pos;
    double p = 0.0;
    for (std::size_t i = 0; i < amps_.size(); ++i)
      if (i & mask) p += std::norm(amps_[i]);
    return p;
  }

  // Collapse the wire at `pos` to `outcome` (probability `prob`) and drop it
  // from the register.
  void project_out(int pos, int outcome, double prob) {
    const std::size_t mask = std::size_t{1} << pos;
    const double norm = std::sqrt(prob);
    std::vector<cd> next(amps_.size() >> 1);
    const std::size_t low_mask = mask - 1;
    for (std::size_t i = 0; i < amps_.size(); ++i) {
      if (((i & mask) != 0) != (outcome != 0)) continue;
      const std::size_t j = (i & low_mask) | ((i >> (pos + 1)) << pos);
      next[j] = amps_[i] / norm;
    }
    amps_ = std::move(next);
    --n_;
    for (auto it = pos_.begin(); it != pos_.end();) {
      if (it->second == pos) {
        it = pos_.erase(it);
      } else {
        if (it->second > pos) --it->second;
        ++it;
      }
    }
  }

  const std::vector<cd>& amps() const { return amps_; }

 private:
  std::vector<cd> amps_;
  std::unordered_map<std::uint64_t, int> pos_;
  int n_ = 0;
  int cap_;
  bool parallel_;
};

struct SimFrame {
  StateVector state;
  std::vector<std::uint8_t> bits;
  std::size_t op_index = 0;
  double weight = 1.0;
};

void check_angles(const DistOp& op) {
  if (!std::isfinite(op.theta) || !std::isfinite(op.phi) || !std::isfinite(op.lambda))
    throw NonUnitaryAngle();
}

// Applies ops until the next measurement; returns its index or ops.size().
std::size_t advance(SimFrame& f, const DistributedCircuit& dc) {
  while (f.op_index < dc.ops.size()) {
    const DistOp& op = dc.ops[f.op_index];
    switch (op.kind) {
      case OpKind::LocalU: {
        check_angles(op);
        f.state.apply_u(f.state.pos_of(op.a), u_matrix(op.theta, op.phi, op.lambda));
        break;
      }
      case OpKind::LocalCP: {
        check_angles(op);
        f.state.apply_cp(f.state.pos_of(op.a), f.state.pos_of(op.b), op.theta);
        break;
      }
      case OpKind::EbitGen: {
        f.state.alloc(op.a);
        f.state.alloc(op.b);
        const int pa = f.state.pos_of(op.a);
        f.state.apply_u(pa, u_matrix(kPi / 2, 0.0, kPi));  // H
        f.state.apply_cx(pa, f.state.pos_of(op.b));
        break;
      }
      case OpKind::CondX: {
        if (f.bits[static_cast<std::size_t>(op.bit)])
          f.state.apply_u(f.state.pos_of(op.a), u_matrix(kPi, 0.0, kPi));
        break;
      }
      case OpKind::CondZ: {
        if (f.bits[static_cast<std::size_t>(op.bit)])
          f.state.apply_u(f.state.pos_of(op.a), u_matrix(0.0, 0.0, kPi));
        break;
      }
      case OpKind::MeasureZ:
        return f.op_index;
      case OpKind::StartProc:
      case OpKind::EndProc:
        throw QcpError("simulation requires a gate-level stream");
    }
    ++f.op_index;
  }
  return f.op_index;
}

void accumulate_marginal(const SimFrame& f, const DistributedCircuit& dc,
                         std::map<std::uint64_t, double>& out) {
  std::vector<int> data_pos(static_cast<std::size_t>(dc.num_qubits));
  for (int q = 0; q < dc.num_qubits; ++q)
    data_pos[static_cast<std::size_t>(q)] =
        f.state.pos_of(dc.final_wires[static_cast<std::size_t>(q)]);
  const auto& amps = f.state.amps();
  for (std::size_t i = 0; i < amps.size(); ++i) {
    const double w = f.weight * std::norm(amps[i]);
    if (w < 1e-15) continue;  // rounding dirt from complex phases
    std::uint64_t outcome = 0;
    for (int q = 0; q < dc.num_qubits; ++q)
      if ((i >> data_pos[static_cast<std::size_t>(q)]) & 1ULL)
        outcome |= 1ULL << q;
    out[outcome] += w;
  }
}

SimFrame make_root_frame(const DistributedCircuit& dc, const SimOptions& opts,
                         bool parallel) {
  SimFrame f{StateVector(opts.wire_cap, parallel), {}, 0, 1.0};
  f.bits.assign(static_cast<std::size_t>(dc.num_bits), 0);
  for (const Wire& w : dc.initial_wires) f.state.alloc(w);
  return f;
}

}  // namespace

Distribution simulate_exact(const DistributedCircuit& dc, const SimOptions& opts) {
  Distribution dist;
  dist.num_qubits = dc.num_qubits;
  std::vector<SimFrame> stack;
  stack.push_back(make_root_frame(dc, opts, opts.parallel_kernels));
  while (!stack.empty()) {
    SimFrame f = std::move(stack.back());
    stack.pop_back();
    const std::size_t at = advance(f, dc);
    if (at == dc.ops.size()) {
      accumulate_marginal(f, dc, dist.p);
      continue;
    }
    const DistOp& op = dc.ops[at];
    const int pos = f.state.pos_of(op.a);
    const double p1 = f.state.prob_one(pos);
    const double probs[2] = {1.0 - p1, p1};
    const int order[2] = {opts.branch_one_first ? 1 : 0, opts.branch_one_first ? 0 : 1};
    for (int oi = 0; oi < 2; ++oi) {
      const int m = order[oi];
      const double branch = f.weight * probs[m];
      if (branch < opts.prune) continue;
      SimFrame child = f;
      child.state.project_out(pos, m, probs[m]);
      child.bits[static_cast<std::size_t>(op.bit)] = static_cast<std::uint8_t>(m);
      child.weight = branch;
      child.op_index = at + 1;
      stack.push_back(std::move(child));
    }
  }
  return dist;
}

Distribution simulate_sampled(const DistributedCircuit& dc, long long shots,
                              std::uint64_t seed, const SimOptions& opts) {
  Distribution dist;
  dist.num_qubits = dc.num_qubits;
  dist.shots = shots;
  std::map<std::uint64_t, long long> counts;
  bool failed = false;
  std::string error;
#pragma omp parallel
  {
    std::map<std::uint64_t, long long> local;
#pragma omp for schedule(static)
    for (long long s = 0; s < shots; ++s) {
      if (failed) continue;
      try {
        Rng rng(Rng::derive(seed, static_cast<std::uint64_t>(s)));
        // Per-shot states are small; serial kernels avoid nested parallelism.
        SimFrame f = make_root_frame(dc, opts, false);
        while (true) {
          const std::size_t at = advance(f, dc);
          if (at == dc.ops.size()) break;
          const DistOp& op = dc.ops[at];
          const int pos = f.state.pos_of(op.a);
          const double p1 = f.state.prob_one(pos);
          const int m = rng.uniform() < p1 ? 1 : 0;
          f.state.project_out(pos, m, m ? p1 : 1.0 - p1);
          f.bits[static_cast<std::size_t>(op.bit)] = static_cast<std::uint8_t>(m);
          f.op_index = at + 1;
        }
        // Sample the joint outcome of the surviving register.
        const auto& amps = f.state.amps();
        double r = rng.uniform();
        std::size_t chosen = amps.size() - 1;
        for (std::size_t i = 0; i < amps.size(); ++i) {
          r -= std::norm(amps[i]);
          if (r <= 0.0) {
            chosen = i;
            break;
          }
        }
        std::uint64_t outcome = 0;
        for (int q = 0; q < dc.num_qubits; ++q) {
          const int pos = f.state.pos_of(dc.final_wires[static_cast<std::size_t>(q)]);
          if ((chosen >> pos) & 1ULL) outcome |= 1ULL << q;
        }
        ++local[outcome];
      } catch (const std::exception& e) {
#pragma omp critical
        {
          failed = true;
          error = e.what();
        }
      }
    }
#pragma omp critical
    for (const auto& [k, v] : local) counts[k] += v;
  }
  if (failed) throw QcpError(error);
  for (const auto& [k, v] : counts)
    dist.p[k] = static_cast<double>(v) / static_cast<double>(shots);
  return dist;
}

double tvd(const Distribution& a, const Distribution& b) {
  double sum = 0.0;
  auto ia = a.p.begin();
  auto ib = b.p.begin();
  while (ia != a.p.end() || ib != b.p.end()) {
    if (ib == b.p.end() || (ia != a.p.end() && ia->first < ib->first)) {
      sum += std::abs(ia->second);
      ++ia;
    } else if (ia == a.p.end() || ib->first < ia->first) {
      sum += std::abs(ib->second);
      ++ib;
    } else {
      sum += std::abs(ia->second - ib->second);
      ++ia;
      ++ib;
    }
  }
  return 0.5 * sum;
}

EquivalenceReport check_equivalence(const DistributedCircuit& original,
                                    const DistributedCircuit& extracted, SimMode mode,
                                    double tol, long long shots, std::uint64_t seed,
                                    const SimOptions& opts) {
  EquivalenceReport rep;
  if (mode == SimMode::Exact) {
    rep.tol = tol < 0 ? 1e-6 : tol;
    rep.tvd = tvd(simulate_exact(original, opts), simulate_exact(extracted, opts));
  } else {
    rep.tol = tol < 0 ? 3.84 / std::sqrt(static_cast<double>(shots)) : tol;
    rep.tvd = tvd(simulate_sampled(original, shots, Rng::derive(seed, 11), opts),
                  simulate_sampled(extracted, shots, Rng::derive(seed, 23), opts));
  }
  rep.pass = rep.tvd <= rep.tol;
  return rep;
}

}  // namespace qcp
