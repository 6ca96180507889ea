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

#include "qcp/extract.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "qcp/errors.hpp"

namespace qcp {

// Pairs generated across QPUs; a Bell pair inside one QPU is a local
// resource (used to materialise fresh wires) and costs nothing.
long long DistributedCircuit::ebit_count() const {
  long long n = 0;
  for (const DistOp& op : ops) {
    if (op.kind == OpKind::EbitGen && op.a.qpu != op.b.qpu) ++n;
    if (!gate_level && op.kind == OpKind::StartProc)
      n += static_cast<long long>(op.ws.size());
  }
  return n;
}

namespace {

std::uint64_t wire_key(Wire w) {
  return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(w.qpu)) << 32) |
         static_cast<std::uint32_t>(w.slot);
}

struct CommPool {
  int data_cap = 0;
  std::set<int> free_slots;
  int next = 0;

  int alloc() {
    if (!free_slots.empty()) {
      int s = *free_slots.begin();
      free_slots.erase(free_slots.begin());
      return s;
    }
    return data_cap + next++;
  }
  void release(int slot) { free_slots.insert(slot); }
};

struct GroupPlan {
  int edge = -1;
  int root_q = 0;
  int first_t = 0;
  int last_t = 0;
  int home = 0;
  int final_part = 0;
  std::vector<int> linked;              // ascending partitions beyond home
  std::map<int, int> last_use;          // partition -> last layer needing it
  bool local = true;
};

struct ActiveGroup {
  const GroupPlan* plan = nullptr;
  std::map<int, Wire> wire_at;  // open clone wires
  std::map<int, int> entries;   // root entry count per partition
};

class Extractor {
 public:
  Extractor(const TemporalHypergraph& g, const Assignment& phi) : g_(g), phi_(phi) {
    K_ = phi.num_parts;
    nq_ = g.num_qubits();
    d_ = g.depth();
    dc_.num_qpus = K_;
    dc_.data_cap = phi.cap;
    dc_.num_qubits = nq_;
    comm_.resize(static_cast<std::size_t>(K_));
    for (int p = 0; p < K_; ++p)
      comm_[static_cast<std::size_t>(p)].data_cap = phi.cap[static_cast<std::size_t>(p)];
  }

  DistributedCircuit run() {
    compute_slots();
    plan_groups();
    init_wires();
    for (int t = 0; t < d_; ++t) {
      if (t > 0) process_transitions(t);
      process_group_starts(t);
      process_gates(t);
      process_singles(t);
      process_closes(t);
    }
    dc_.final_wires = wire_of_;
    dc_.initial_wires.resize(static_cast<std::size_t>(nq_));
    for (int q = 0; q < nq_; ++q)
      dc_.initial_wires[static_cast<std::size_t>(q)] = {
          phi_.at(0, q), slot_of_[0][static_cast<std::size_t>(q)]};
    return std::move(dc_);
  }

 private:
  // Data slot of every qubit at every layer, following the assignment; a
  // qubit keeps its slot while it stays, departures free slots before
  // arrivals claim them.
  void compute_slots() {
    slot_of_.assign(static_cast<std::size_t>(d_),
                    std::vector<int>(static_cast<std::size_t>(nq_), -1));
    std::vector<std::vector<std::uint8_t>> used(static_cast<std::size_t>(K_));
    for (int p = 0; p < K_; ++p)
      used[static_cast<std::size_t>(p)].assign(
          static_cast<std::size_t>(phi_.cap[static_cast<std::size_t>(p)]), 0);
    auto lowest_free = [&](int p) {
      auto& u = used[static_cast<std::size_t>(p)];
      for (std::size_t s = 0; s < u.size(); ++s)
        if (!u[s]) return static_cast<int>(s);
      throw CapacityViolation("no free data slot in partition " + std::to_string(p));
    };
    for (int q = 0; q < nq_; ++q) {
      const int p = phi_.at(0, q);
      const int s = lowest_free(p);
      used[static_cast<std::size_t>(p)][static_cast<std::size_t>(s)] = 1;
      slot_of_[0][static_cast<std::size_t>(q)] = s;
    }
    for (int t = 1; t < d_; ++t) {
      slot_of_[static_cast<std::size_t>(t)] = slot_of_[static_cast<std::size_t>(t - 1)];
      for (int q = 0; q < nq_; ++q)
        if (phi_.at(t, q) != phi_.at(t - 1, q)) {
          used[static_cast<std::size_t>(phi_.at(t - 1, q))]
              [static_cast<std::size_t>(slot_of_[static_cast<std::size_t>(t - 1)]
                                            [static_cast<std::size_t>(q)])] = 0;
        }
      for (int q = 0; q < nq_; ++q)
        if (phi_.at(t, q) != phi_.at(t - 1, q)) {
          const int p = phi_.at(t, q);
          const int s = lowest_free(p);
          used[static_cast<std::size_t>(p)][static_cast<std::size_t>(s)] = 1;
          slot_of_[static_cast<std::size_t>(t)][static_cast<std::size_t>(q)] = s;
        }
    }
  }

  void plan_groups() {
    starts_at_.assign(static_cast<std::size_t>(d_), {});
    gate_events_.assign(static_cast<std::size_t>(d_), {});
    for (int id = 0; id < static_cast<int>(g_.edges().size()); ++id) {
      const Edge& e = g_.edge(id);
      if (e.kind == EdgeKind::State) continue;
      for (std::size_t ri = 0; ri < e.recs.size(); ++ri)
        gate_events_[static_cast<std::size_t>(e.recs[ri].time)].push_back(
            {id, static_cast<int>(ri)});
      if (e.kind != EdgeKind::Group) continue;

      GroupPlan gp;
      gp.edge = id;
      gp.root_q = e.roots[0].qubit;
      gp.first_t = e.roots.front().time;
      gp.last_t = e.roots.back().time;
      gp.home = phi_.at(e.roots.front());
      gp.final_part = phi_.at(e.roots.back());
      std::set<int> parts;
      for (const NodeRef& v : e.roots) parts.insert(phi_.at(v));
      for (const NodeRef& v : e.recs) parts.insert(phi_.at(v));
      for (int p : parts)
        if (p != gp.home) gp.linked.push_back(p);
      gp.local = gp.linked.empty();
      for (const NodeRef& v : e.roots) {
        auto [it, ok] = gp.last_use.emplace(phi_.at(v), v.time);
        if (!ok) it->second = std::max(it->second, v.time);
      }
      for (const NodeRef& v : e.recs) {
        auto [it, ok] = gp.last_use.emplace(phi_.at(v), v.time);
        if (!ok) it->second = std::max(it->second, v.time);
      }
      if (!gp.local) starts_at_[static_cast<std::size_t>(gp.first_t)].push_back(id);
      plans_.emplace(id, std::move(gp));
    }
  }

  void init_wires() {
    wire_of_.resize(static_cast<std::size_t>(nq_));
    for (int q = 0; q < nq_; ++q) {
      wire_of_[static_cast<std::size_t>(q)] = {phi_.at(0, q),
                                               slot_of_[0][static_cast<std::size_t>(q)]};
      live_data_.insert(wire_key(wire_of_[static_cast<std::size_t>(q)]));
    }
  }

  ActiveGroup* active_root_group(int q, int t) {
    auto it = active_by_root_.find(q);
    if (it == active_by_root_.end()) return nullptr;
    ActiveGroup& ag = active_.at(it->second);
    return t <= ag.plan->last_t ? &ag : nullptr;
  }

  // Control-side wire for qubit q at layer t: mid-group roots act through
  // their clone in the qubit's current partition.
  Wire wire_for(int q, int t) {
    if (ActiveGroup* ag = active_root_group(q, t)) {
      auto it = ag->wire_at.find(phi_.at(t, q));
      if (it != ag->wire_at.end()) return it->second;
    }
    return wire_of_[static_cast<std::size_t>(q)];
  }

  void emit_local_u(Wire w, double th, double ph, double la) {
    DistOp op;
    op.kind = OpKind::LocalU;
    op.a = w;
    op.theta = th;
    op.phi = ph;
    op.lambda = la;
    dc_.ops.push_back(op);
  }

  void emit_cp(Wire a, Wire b, double th) {
    DistOp op;
    op.kind = OpKind::LocalCP;
    op.a = a;
    op.b = b;
    op.theta = th;
    dc_.ops.push_back(op);
  }

  void emit_start(Wire root, std::vector<Wire> comms) {
    DistOp op;
    op.kind = OpKind::StartProc;
    op.a = root;
    op.ws = std::move(comms);
    dc_.ops.push_back(op);
  }

  void emit_end(Wire sink, std::vector<Wire> released, bool extend) {
    DistOp op;
    op.kind = OpKind::EndProc;
    op.a = sink;
    op.ws = std::move(released);
    op.extend_sink = extend;
    dc_.ops.push_back(op);
  }

  // Full teleport of the state on src onto dst (one e-bit).
  void emit_teleport(Wire src, Wire dst) {
    emit_start(src, {dst});
    emit_end(dst, {src}, false);
  }

  // Local hand-off: extends the state onto dst, then measures src out.
  void emit_drain(Wire src, Wire dst) { emit_end(dst, {src}, true); }

  void process_transitions(int t) {
    struct Pending {
      int q;
      Wire src;
      Wire dst;
    };
    std::vector<Pending> pending;
    for (int q = 0; q < nq_; ++q) {
      const int x = phi_.at(t - 1, q);
      const int y = phi_.at(t, q);
      if (x == y) continue;
      if (ActiveGroup* ag = active_root_group(q, t)) {
        nested_move(*ag, q, t, x, y);
        continue;
      }
      const Wire dst{y, slot_of_[static_cast<std::size_t>(t)][static_cast<std::size_t>(q)]};
      pending.push_back({q, wire_of_[static_cast<std::size_t>(q)], dst});
    }
    // Departures free slots for arrivals; simultaneous cyclic exchanges
    // bounce through a comm wire and drain once the cycle resolves.
    std::vector<std::pair<int, Wire>> drains;  // (qubit, temp wire)
    std::vector<bool> done(pending.size(), false);
    std::size_t remaining = pending.size();
    while (remaining > 0) {
      bool progress = false;
      for (std::size_t i = 0; i < pending.size(); ++i) {
        if (done[i] || live_data_.count(wire_key(pending[i].dst))) continue;
        emit_teleport(pending[i].src, pending[i].dst);
        live_data_.erase(wire_key(pending[i].src));
        live_data_.insert(wire_key(pending[i].dst));
        wire_of_[static_cast<std::size_t>(pending[i].q)] = pending[i].dst;
        done[i] = true;
        --remaining;
        progress = true;
      }
      if (progress) continue;
      for (std::size_t i = 0; i < pending.size(); ++i) {
        if (done[i]) continue;
        const Wire temp{pending[i].dst.qpu,
                        comm_[static_cast<std::size_t>(pending[i].dst.qpu)].alloc()};
        emit_teleport(pending[i].src, temp);
        live_data_.erase(wire_key(pending[i].src));
        drains.emplace_back(pending[i].q, temp);
        done[i] = true;
        --remaining;
        break;
      }
    }
    for (auto& [q, temp] : drains) {
      const Wire dst{phi_.at(t, q),
                     slot_of_[static_cast<std::size_t>(t)][static_cast<std::size_t>(q)]};
      emit_drain(temp, dst);
      comm_[static_cast<std::size_t>(temp.qpu)].release(temp.slot);
      live_data_.insert(wire_key(dst));
      wire_of_[static_cast<std::size_t>(q)] = dst;
    }
  }

  // Cut root state edge inside a group span: nested state teleportation.
  // Leaving a partition migrates a data-resident clone onto a comm wire so
  // the data slot empties exactly when the assignment says the qubit left.
  // Re-entering a partition consumes one e-bit, matching the edge cost
  // charged for the cut state edge (the first entry was paid by the
  // starting process).
  void nested_move(ActiveGroup& ag, int q, int t, int x, int y) {
    (void)q;
    (void)t;
    auto wx = ag.wire_at.find(x);
    if (wx != ag.wire_at.end() && wx->second.slot < dc_.data_cap[static_cast<std::size_t>(x)]) {
      const Wire fresh{x, comm_[static_cast<std::size_t>(x)].alloc()};
      emit_drain(wx->second, fresh);
      live_data_.erase(wire_key(wx->second));
      wx->second = fresh;
    }
    int& entered = ag.entries[y];
    ++entered;
    if (entered == 1) return;  // covered by the group's starting process
    // Each re-entry is charged one e-bit by the cut state edge. Closed link:
    // re-open from a live anchor. Still-open link: extend to a fresh wire
    // from a remote anchor and fold the old one in, or burn a pair outright
    // when the group has no other live wire to anchor on.
    auto wy = ag.wire_at.find(y);
    if (wy == ag.wire_at.end()) {
      const Wire fresh{y, comm_[static_cast<std::size_t>(y)].alloc()};
      emit_start(ag.wire_at.at(ag.plan->final_part), {fresh});
      ag.wire_at[y] = fresh;
      return;
    }
    Wire anchor{-1, -1};
    for (const auto& [p, w] : ag.wire_at)
      if (p != y) anchor = w;
    if (anchor.qpu >= 0) {
      const Wire fresh{y, comm_[static_cast<std::size_t>(y)].alloc()};
      emit_start(anchor, {fresh});
      emit_end(fresh, {wy->second}, false);
      comm_[static_cast<std::size_t>(y)].release(wy->second.slot);
      wy->second = fresh;
    } else {
      const Wire a{y, comm_[static_cast<std::size_t>(y)].alloc()};
      const int other = (y + 1) % K_;
      const Wire b{other, comm_[static_cast<std::size_t>(other)].alloc()};
      DistOp eb;
      eb.kind = OpKind::EbitGen;
      eb.a = a;
      eb.b = b;
      dc_.ops.push_back(eb);
      DistOp mza;
      mza.kind = OpKind::MeasureZ;
      mza.a = a;
      dc_.ops.push_back(mza);
      DistOp mzb;
      mzb.kind = OpKind::MeasureZ;
      mzb.a = b;
      dc_.ops.push_back(mzb);
      comm_[static_cast<std::size_t>(y)].release(a.slot);
      comm_[static_cast<std::size_t>(other)].release(b.slot);
    }
  }

  void process_group_starts(int t) {
    for (int id : starts_at_[static_cast<std::size_t>(t)]) {
      const GroupPlan& gp = plans_.at(id);
      ActiveGroup ag;
      ag.plan = &gp;
      const Wire home_wire = wire_of_[static_cast<std::size_t>(gp.root_q)];
      ag.wire_at[gp.home] = home_wire;
      ag.entries[gp.home] = 1;
      std::vector<Wire> comms;
      for (int p : gp.linked) {
        const Wire w{p, comm_[static_cast<std::size_t>(p)].alloc()};
        ag.wire_at[p] = w;
        comms.push_back(w);
      }
      emit_start(home_wire, std::move(comms));
      active_.emplace(id, std::move(ag));
      active_by_root_[gp.root_q] = id;
    }
  }

  void process_gates(int t) {
    for (const auto& [id, ri] : gate_events_[static_cast<std::size_t>(t)]) {
      const Edge& e = g_.edge(id);
      const NodeRef rec = e.recs[static_cast<std::size_t>(ri)];
      const double theta = e.rec_phase[static_cast<std::size_t>(ri)];
      if (e.kind == EdgeKind::Group) {
        auto it = active_.find(id);
        if (it == active_.end()) {
          // Fully local group: both sides in the home partition throughout.
          emit_cp(wire_for(e.roots[0].qubit, t), wire_for(rec.qubit, t), theta);
          continue;
        }
        const Wire clone = it->second.wire_at.at(phi_.at(rec));
        emit_cp(clone, wire_for(rec.qubit, t), theta);
        continue;
      }
      const NodeRef root = e.roots[0];
      const Wire wu = wire_for(root.qubit, t);
      const Wire wv = wire_for(rec.qubit, t);
      if (phi_.at(root) == phi_.at(rec)) {
        emit_cp(wu, wv, theta);
        continue;
      }
      // Lone non-local gate: single-gate teleportation rooted on the edge's
      // root operand.
      const int tp = phi_.at(rec);
      const Wire w{tp, comm_[static_cast<std::size_t>(tp)].alloc()};
      emit_start(wu, {w});
      emit_cp(w, wv, theta);
      emit_end(wu, {w}, false);
      comm_[static_cast<std::size_t>(tp)].release(w.slot);
    }
  }

  void process_singles(int t) {
    for (int q = 0; q < nq_; ++q) {
      const auto& attr = g_.attr({q, t});
      if (!attr) continue;
      const auto [th, ph, la] = *attr;
      ActiveGroup* ag = active_root_group(q, t);
      if (!ag || t < ag->plan->first_t) {
        emit_local_u(wire_for(q, t), th, ph, la);
        continue;
      }
      const int here = phi_.at(t, q);
      emit_local_u(ag->wire_at.at(here), th, ph, la);
      if (diagonality(th) == Diagonality::AntiDiagonal) {
        for (const auto& [p, w] : ag->wire_at)
          if (p != here) emit_local_u(w, kPi, 0.0, kPi);  // X correction
      }
    }
  }

  void process_closes(int t) {
    std::vector<int> finished;
    for (auto& [id, ag] : active_) {
      const GroupPlan& gp = *ag.plan;
      std::vector<int> to_close;
      for (const auto& [p, w] : ag.wire_at) {
        if (p == gp.final_part) continue;
        if (t == gp.last_t || gp.last_use.at(p) == t) to_close.push_back(p);
      }
      const Wire sink = ag.wire_at.at(gp.final_part);
      for (int p : to_close) {
        const Wire w = ag.wire_at.at(p);
        emit_end(sink, {w}, false);
        if (w.slot >= dc_.data_cap[static_cast<std::size_t>(p)])
          comm_[static_cast<std::size_t>(p)].release(w.slot);
        else
          live_data_.erase(wire_key(w));
        ag.wire_at.erase(p);
      }
      if (t == gp.last_t) {
        Wire survivor = ag.wire_at.at(gp.final_part);
        if (survivor.slot >= dc_.data_cap[static_cast<std::size_t>(gp.final_part)]) {
          const Wire dst{gp.final_part,
                         slot_of_[static_cast<std::size_t>(gp.last_t)]
                                 [static_cast<std::size_t>(gp.root_q)]};
          emit_drain(survivor, dst);
          comm_[static_cast<std::size_t>(gp.final_part)].release(survivor.slot);
          live_data_.insert(wire_key(dst));
          survivor = dst;
        }
        wire_of_[static_cast<std::size_t>(gp.root_q)] = survivor;
        finished.push_back(id);
      }
    }
    for (int id : finished) {
      active_by_root_.erase(active_.at(id).plan->root_q);
      active_.erase(id);
    }
  }

  const TemporalHypergraph& g_;
  const Assignment& phi_;
  int K_ = 0, nq_ = 0, d_ = 0;

  DistributedCircuit dc_;
  std::vector<std::vector<int>> slot_of_;
  std::vector<Wire> wire_of_;
  std::set<std::uint64_t> live_data_;
  std::vector<CommPool> comm_;
  std::map<int, GroupPlan> plans_;
  std::map<int, ActiveGroup> active_;
  std::map<int, int> active_by_root_;
  std::vector<std::vector<int>> starts_at_;
  std::vector<std::vector<std::pair<int, int>>> gate_events_;
};

}  // namespace

DistributedCircuit extract(const TemporalHypergraph& g, const Assignment& phi) {
  if (!phi.feasible()) throw CapacityViolation("assignment exceeds data capacities");
  return Extractor(g, phi).run();
}

DistributedCircuit to_local_distributed(const LayeredCircuit& lc_in) {
  const LayeredCircuit lc = drop_markers(lc_in);
  DistributedCircuit dc;
  dc.num_qpus = 1;
  dc.data_cap = {lc.num_qubits};
  dc.num_qubits = lc.num_qubits;
  dc.gate_level = true;
  for (const auto& layer : lc.layers)
    for (const Gate& g : layer) {
      DistOp op;
      if (g.kind == GateKind::SingleU) {
        op.kind = OpKind::LocalU;
        op.a = {0, g.q0};
        op.theta = g.theta;
        op.phi = g.phi;
        op.lambda = g.lambda;
      } else {
        op.kind = OpKind::LocalCP;
        op.a = {0, g.q0};
        op.b = {0, g.q1};
        op.theta = g.theta;
      }
      dc.ops.push_back(op);
    }
  dc.final_wires.resize(static_cast<std::size_t>(lc.num_qubits));
  for (int q = 0; q < lc.num_qubits; ++q) dc.final_wires[static_cast<std::size_t>(q)] = {0, q};
  dc.initial_wires = dc.final_wires;
  return dc;
}

namespace {

void lower_cx(std::vector<DistOp>& out, Wire control, Wire target) {
  DistOp h;
  h.kind = OpKind::LocalU;
  h.a = target;
  h.theta = kPi / 2;
  h.lambda = kPi;
  out.push_back(h);
  DistOp cp;
  cp.kind = OpKind::LocalCP;
  cp.a = control;
  cp.b = target;
  cp.theta = kPi;
  out.push_back(cp);
  out.push_back(h);
}

}  // namespace

DistributedCircuit decompose_primitives(const DistributedCircuit& dc) {
  DistributedCircuit out;
  out.num_qpus = dc.num_qpus;
  out.data_cap = dc.data_cap;
  out.num_qubits = dc.num_qubits;
  out.initial_wires = dc.initial_wires;
  out.final_wires = dc.final_wires;
  out.gate_level = true;
  int bits = 0;

  // The local e-bit half of a starting process lives only between its
  // generation and measurement; one dedicated comm slot per QPU above
  // everything extraction used can host all of them in turn.
  std::vector<int> transient_slot(static_cast<std::size_t>(dc.num_qpus));
  for (int p = 0; p < dc.num_qpus; ++p)
    transient_slot[static_cast<std::size_t>(p)] = dc.data_cap[static_cast<std::size_t>(p)];
  auto bump = [&](Wire w) {
    auto& ts = transient_slot[static_cast<std::size_t>(w.qpu)];
    ts = std::max(ts, w.slot + 1);
  };
  for (const DistOp& op : dc.ops) {
    bump(op.a);
    if (op.b.qpu >= 0) bump(op.b);
    for (const Wire& w : op.ws) bump(w);
  }

  auto measure = [&](Wire w) {
    DistOp mz;
    mz.kind = OpKind::MeasureZ;
    mz.a = w;
    mz.bit = bits++;
    out.ops.push_back(mz);
    return mz.bit;
  };
  auto h_gate = [&](Wire w) {
    DistOp h;
    h.kind = OpKind::LocalU;
    h.a = w;
    h.theta = kPi / 2;
    h.lambda = kPi;
    out.ops.push_back(h);
  };

  for (const DistOp& op : dc.ops) {
    switch (op.kind) {
      case OpKind::StartProc:
        for (const Wire& w : op.ws) {
          const Wire a{op.a.qpu, transient_slot[static_cast<std::size_t>(op.a.qpu)]};
          DistOp eb;
          eb.kind = OpKind::EbitGen;
          eb.a = a;
          eb.b = w;
          out.ops.push_back(eb);
          lower_cx(out.ops, op.a, a);
          const int m = measure(a);
          DistOp cx;
          cx.kind = OpKind::CondX;
          cx.a = w;
          cx.bit = m;
          out.ops.push_back(cx);
        }
        break;
      case OpKind::EndProc: {
        if (op.extend_sink) {
          // The sink is a fresh wire: materialise it in |0> from a local
          // Bell pair, then extend the state onto it with a local CX.
          const Wire tr{op.a.qpu, transient_slot[static_cast<std::size_t>(op.a.qpu)]};
          DistOp eb;
          eb.kind = OpKind::EbitGen;
          eb.a = tr;
          eb.b = op.a;
          out.ops.push_back(eb);
          const int m = measure(tr);
          DistOp cx;
          cx.kind = OpKind::CondX;
          cx.a = op.a;
          cx.bit = m;
          out.ops.push_back(cx);
          lower_cx(out.ops, op.ws[0], op.a);
        }
        for (const Wire& w : op.ws) {
          h_gate(w);  // X-basis measurement
          const int m = measure(w);
          DistOp cz;
          cz.kind = OpKind::CondZ;
          cz.a = op.a;
          cz.bit = m;
          out.ops.push_back(cz);
        }
        break;
      }
      case OpKind::MeasureZ: {
        DistOp mz = op;
        if (mz.bit < 0) mz.bit = bits++;
        out.ops.push_back(mz);
        break;
      }
      default:
        out.ops.push_back(op);
        break;
    }
  }
  out.num_bits = bits;
  return out;
}

ExtractionReport report(const DistributedCircuit& dc_in) {
  const DistributedCircuit dc = dc_in.gate_level ? dc_in : decompose_primitives(dc_in);
  ExtractionReport rep;
  rep.ebits = dc.ebit_count();
  rep.comm_high_water.assign(static_cast<std::size_t>(dc.num_qpus), 0);

  std::map<std::uint64_t, int> wire_layer;
  std::vector<int> bit_layer(static_cast<std::size_t>(dc.num_bits), 0);
  std::map<std::uint64_t, bool> live_comm;
  std::vector<int> comm_count(static_cast<std::size_t>(dc.num_qpus), 0);

  auto is_comm = [&](Wire w) {
    return w.slot >= dc.data_cap[static_cast<std::size_t>(w.qpu)];
  };
  auto touch = [&](std::vector<Wire> ws, int bit_dep, int* out_bit) {
    int layer = 0;
    for (const Wire& w : ws) {
      auto it = wire_layer.find(wire_key(w));
      if (it != wire_layer.end()) layer = std::max(layer, it->second);
    }
    layer += 1;
    if (bit_dep >= 0)
      layer = std::max(layer, bit_layer[static_cast<std::size_t>(bit_dep)]);
    for (const Wire& w : ws) wire_layer[wire_key(w)] = layer;
    if (out_bit) *out_bit = layer;
    return layer;
  };

  int depth = 0;
  for (const DistOp& op : dc.ops) {
    int layer = 0;
    switch (op.kind) {
      case OpKind::EbitGen: {
        layer = touch({op.a, op.b}, -1, nullptr);
        for (const Wire& w : {op.a, op.b})
          if (is_comm(w) && !live_comm[wire_key(w)]) {
            live_comm[wire_key(w)] = true;
            int& c = comm_count[static_cast<std::size_t>(w.qpu)];
            ++c;
            rep.comm_high_water[static_cast<std::size_t>(w.qpu)] =
                std::max(rep.comm_high_water[static_cast<std::size_t>(w.qpu)], c);
          }
        break;
      }
      case OpKind::MeasureZ: {
        int blayer = 0;
        layer = touch({op.a}, -1, &blayer);
        bit_layer[static_cast<std::size_t>(op.bit)] = blayer;
        if (is_comm(op.a) && live_comm[wire_key(op.a)]) {
          live_comm[wire_key(op.a)] = false;
          --comm_count[static_cast<std::size_t>(op.a.qpu)];
        }
        break;
      }
      case OpKind::CondX:
      case OpKind::CondZ:
        layer = touch({op.a}, op.bit, nullptr);
        break;
      case OpKind::LocalCP:
        layer = touch({op.a, op.b}, -1, nullptr);
        break;
      case OpKind::LocalU:
        layer = touch({op.a}, -1, nullptr);
        break;
      case OpKind::StartProc:
      case OpKind::EndProc:
        break;
    }
    depth = std::max(depth, layer);
  }
  rep.depth = depth;
  return rep;
}

bool ebit_conservation_check(const TemporalHypergraph& g, const Assignment& phi,
                             const DistributedCircuit& extracted) {
  const CostTable table = build_cost_table(phi.num_parts);
  return extracted.ebit_count() == total_cost(g, phi, table);
}

}  // namespace qcp
