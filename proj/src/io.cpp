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

#include "qcp/io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "qcp/errors.hpp"
#include "qcp/extract.hpp"

namespace qcp {

using nlohmann::json;

namespace {

json wire_json(Wire w) { return json::array({w.qpu, w.slot}); }

Wire wire_from(const json& j) { return {j.at(0).get<int>(), j.at(1).get<int>()}; }

}  // namespace

std::string to_json(const DistributedCircuit& dc) {
  json j;
  j["schema"] = 1;
  j["num_qpus"] = dc.num_qpus;
  j["data_cap"] = dc.data_cap;
  j["num_qubits"] = dc.num_qubits;
  j["num_bits"] = dc.num_bits;
  j["gate_level"] = dc.gate_level;
  json init = json::array();
  for (Wire w : dc.initial_wires) init.push_back(wire_json(w));
  j["initial_wires"] = std::move(init);
  json fin = json::array();
  for (Wire w : dc.final_wires) fin.push_back(wire_json(w));
  j["final_wires"] = std::move(fin);

  json ops = json::array();
  for (const DistOp& op : dc.ops) {
    json o;
    switch (op.kind) {
      case OpKind::LocalU:
        o["op"] = "u";
        o["wire"] = wire_json(op.a);
        o["theta"] = op.theta;
        o["phi"] = op.phi;
        o["lambda"] = op.lambda;
        break;
      case OpKind::LocalCP:
        o["op"] = "cp";
        o["wires"] = json::array({wire_json(op.a), wire_json(op.b)});
        o["theta"] = op.theta;
        break;
      case OpKind::EbitGen:
        o["op"] = "ebit";
        o["wires"] = json::array({wire_json(op.a), wire_json(op.b)});
        break;
      case OpKind::StartProc: {
        o["op"] = "start";
        o["root"] = wire_json(op.a);
        json comms = json::array();
        for (Wire w : op.ws) comms.push_back(wire_json(w));
        o["comms"] = std::move(comms);
        break;
      }
      case OpKind::EndProc: {
        o["op"] = "end";
        o["sink"] = wire_json(op.a);
        json rel = json::array();
        for (Wire w : op.ws) rel.push_back(wire_json(w));
        o["released"] = std::move(rel);
        o["extend"] = op.extend_sink;
        break;
      }
      case OpKind::CondX:
        o["op"] = "condx";
        o["wire"] = wire_json(op.a);
        o["bit"] = op.bit;
        break;
      case OpKind::CondZ:
        o["op"] = "condz";
        o["wire"] = wire_json(op.a);
        o["bit"] = op.bit;
        break;
      case OpKind::MeasureZ:
        o["op"] = "measure";
        o["wire"] = wire_json(op.a);
        o["bit"] = op.bit;
        break;
    }
    ops.push_back(std::move(o));
  }
  j["ops"] = std::move(ops);

  const ExtractionReport rep = report(dc);
  j["summary"] = {{"ebits", rep.ebits},
                  {"depth", rep.depth},
                  {"comm_high_water", rep.comm_high_water}};
  return j.dump(1);
}

DistributedCircuit distributed_from_json(const std::string& text) {
  const json j = json::parse(text);
  DistributedCircuit dc;
  dc.num_qpus = j.at("num_qpus").get<int>();
  dc.data_cap = j.at("data_cap").get<std::vector<int>>();
  dc.num_qubits = j.at("num_qubits").get<int>();
  dc.num_bits = j.at("num_bits").get<int>();
  dc.gate_level = j.at("gate_level").get<bool>();
  for (const json& w : j.at("initial_wires")) dc.initial_wires.push_back(wire_from(w));
  for (const json& w : j.at("final_wires")) dc.final_wires.push_back(wire_from(w));
  for (const json& o : j.at("ops")) {
    DistOp op;
    const std::string kind = o.at("op").get<std::string>();
    if (kind == "u") {
      op.kind = OpKind::LocalU;
      op.a = wire_from(o.at("wire"));
      op.theta = o.at("theta").get<double>();
      op.phi = o.at("phi").get<double>();
      op.lambda = o.at("lambda").get<double>();
    } else if (kind == "cp") {
      op.kind = OpKind::LocalCP;
      op.a = wire_from(o.at("wires").at(0));
      op.b = wire_from(o.at("wires").at(1));
      op.theta = o.at("theta").get<double>();
    } else if (kind == "ebit") {
      op.kind = OpKind::EbitGen;
      op.a = wire_from(o.at("wires").at(0));
      op.b = wire_from(o.at("wires").at(1));
    } else if (kind == "start") {
      op.kind = OpKind::StartProc;
      op.a = wire_from(o.at("root"));
      for (const json& w : o.at("comms")) op.ws.push_back(wire_from(w));
    } else if (kind == "end") {
      op.kind = OpKind::EndProc;
      op.a = wire_from(o.at("sink"));
      for (const json& w : o.at("released")) op.ws.push_back(wire_from(w));
      op.extend_sink = o.at("extend").get<bool>();
    } else if (kind == "condx" || kind == "condz" || kind == "measure") {
      op.kind = kind == "condx" ? OpKind::CondX
                                : (kind == "condz" ? OpKind::CondZ : OpKind::MeasureZ);
      op.a = wire_from(o.at("wire"));
      op.bit = o.at("bit").get<int>();
    } else {
      throw QcpError("unknown op kind '" + kind + "' in instruction stream");
    }
    dc.ops.push_back(std::move(op));
  }
  return dc;
}

std::string to_qasm_pragmas(const DistributedCircuit& dc_in) {
  const DistributedCircuit dc = dc_in.gate_level ? dc_in : decompose_primitives(dc_in);
  std::vector<int> reg_size(static_cast<std::size_t>(dc.num_qpus));
  for (int p = 0; p < dc.num_qpus; ++p)
    reg_size[static_cast<std::size_t>(p)] = dc.data_cap[static_cast<std::size_t>(p)];
  auto see = [&](Wire w) {
    reg_size[static_cast<std::size_t>(w.qpu)] =
        std::max(reg_size[static_cast<std::size_t>(w.qpu)], w.slot + 1);
  };
  for (const DistOp& op : dc.ops) {
    see(op.a);
    if (op.b.qpu >= 0) see(op.b);
  }

  std::ostringstream out;
  out << "OPENQASM 2.0;\ninclude \"qelib1.inc\";\n";
  for (int p = 0; p < dc.num_qpus; ++p)
    out << "qreg p" << p << "[" << reg_size[static_cast<std::size_t>(p)] << "];\n";
  for (int b = 0; b < dc.num_bits; ++b) out << "creg c" << b << "[1];\n";
  out << "creg out[" << dc.num_qubits << "];\n";

  auto ref = [](Wire w) {
    return "p" + std::to_string(w.qpu) + "[" + std::to_string(w.slot) + "]";
  };
  for (const DistOp& op : dc.ops) {
    switch (op.kind) {
      case OpKind::LocalU:
        out << "u(" << op.theta << "," << op.phi << "," << op.lambda << ") " << ref(op.a)
            << ";\n";
        break;
      case OpKind::LocalCP:
        out << "cp(" << op.theta << ") " << ref(op.a) << "," << ref(op.b) << ";\n";
        break;
      case OpKind::EbitGen:
        out << "// EPR " << ref(op.a) << " " << ref(op.b) << "\n";
        break;
      case OpKind::CondX:
        out << "if(c" << op.bit << "==1) x " << ref(op.a) << ";\n";
        break;
      case OpKind::CondZ:
        out << "if(c" << op.bit << "==1) z " << ref(op.a) << ";\n";
        break;
      case OpKind::MeasureZ:
        out << "measure " << ref(op.a) << " -> c" << op.bit << "[0];\n";
        break;
      case OpKind::StartProc:
      case OpKind::EndProc:
        break;
    }
  }
  for (int q = 0; q < dc.num_qubits; ++q)
    out << "measure " << ref(dc.final_wires[static_cast<std::size_t>(q)]) << " -> out[" << q
        << "];\n";
  return out.str();
}

std::string partition_to_json(const PartitionRecord& rec) {
  json j;
  j["schema"] = 1;
  j["circuit"] = {{"source", rec.source},
                  {"num_qubits", rec.num_qubits},
                  {"depth", rec.depth},
                  {"two_qubit_gates", rec.two_qubit_gates}};
  j["qpus"] = rec.num_parts;
  j["cap"] = rec.cap;
  j["method"] = rec.method;
  j["grouped"] = rec.grouped;
  j["explore"] = rec.explore;
  j["passes"] = rec.passes;
  j["move_cap"] = rec.move_cap;
  j["seed"] = rec.seed;
  j["restarts"] = rec.restarts;
  j["cost"] = rec.cost;
  j["ebit_fraction"] = rec.ebit_fraction;
  j["ebit_fraction_per_qubit"] = rec.ebit_fraction_per_qubit;
  j["time_ms"] = rec.time_ms;
  json trace = json::array();
  for (const TracePoint& tp : rec.trace)
    trace.push_back({{"level", tp.level},
                     {"pass", tp.pass},
                     {"cost", tp.cost},
                     {"elapsed_ms", tp.elapsed_ms}});
  j["trace"] = std::move(trace);
  json rows = json::array();
  for (int t = 0; t < rec.assignment.num_layers; ++t) {
    json row = json::array();
    for (int q = 0; q < rec.assignment.num_qubits; ++q) row.push_back(rec.assignment.at(t, q));
    rows.push_back(std::move(row));
  }
  j["assignment"] = std::move(rows);
  return j.dump(1);
}

PartitionRecord partition_from_json(const std::string& text) {
  const json j = json::parse(text);
  PartitionRecord rec;
  rec.source = j.at("circuit").at("source").get<std::string>();
  rec.num_qubits = j.at("circuit").at("num_qubits").get<int>();
  rec.depth = j.at("circuit").at("depth").get<int>();
  rec.two_qubit_gates = j.at("circuit").at("two_qubit_gates").get<int>();
  rec.num_parts = j.at("qpus").get<int>();
  rec.cap = j.at("cap").get<std::vector<int>>();
  rec.method = j.at("method").get<std::string>();
  rec.grouped = j.at("grouped").get<bool>();
  rec.explore = j.at("explore").get<bool>();
  rec.passes = j.at("passes").get<int>();
  rec.move_cap = j.at("move_cap").get<int>();
  rec.seed = j.at("seed").get<std::uint64_t>();
  rec.restarts = j.at("restarts").get<int>();
  rec.cost = j.at("cost").get<long long>();
  rec.ebit_fraction = j.at("ebit_fraction").get<double>();
  rec.ebit_fraction_per_qubit = j.at("ebit_fraction_per_qubit").get<double>();
  rec.time_ms = j.at("time_ms").get<double>();
  rec.assignment.num_layers = rec.depth;
  rec.assignment.num_qubits = rec.num_qubits;
  rec.assignment.num_parts = rec.num_parts;
  rec.assignment.cap = rec.cap;
  const json& rows = j.at("assignment");
  rec.assignment.num_layers = static_cast<int>(rows.size());
  rec.assignment.phi.resize(rows.size() * static_cast<std::size_t>(rec.num_qubits));
  for (int t = 0; t < rec.assignment.num_layers; ++t)
    for (int q = 0; q < rec.num_qubits; ++q)
      rec.assignment.set(t, q, rows.at(static_cast<std::size_t>(t))
                                   .at(static_cast<std::size_t>(q))
                                   .get<int>());
  return rec;
}

std::string distribution_to_json(const Distribution& dist) {
  json j;
  j["schema"] = 1;
  j["num_qubits"] = dist.num_qubits;
  j["shots"] = dist.shots;
  json probs = json::object();
  for (const auto& [outcome, prob] : dist.p)
    probs[Distribution::bitstring(outcome, dist.num_qubits)] = prob;
  j["p"] = std::move(probs);
  return j.dump(1);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw QcpError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw QcpError("cannot write '" + path + "'");
  out << content;
}

}  // namespace qcp
