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

#include <string>
#include <vector>

#include "qcp/cost.hpp"
#include "qcp/fm.hpp"
#include "qcp/simulate.hpp"

namespace qcp {

// Everything cmd_partition writes and cmd_extract needs back.
struct PartitionRecord {
  std::string source;  // "gen:<family:params>" or "file:<path>"
  int num_qubits = 0;
  int depth = 0;
  int two_qubit_gates = 0;
  int num_parts = 0;
  std::vector<int> cap;
  std::string method;
  bool grouped = true;
  bool explore = true;
  int passes = 10;
  int move_cap = -1;
  std::uint64_t seed = 0;
  int restarts = 1;
  long long cost = 0;
  double ebit_fraction = 0.0;
  double ebit_fraction_per_qubit = 0.0;
  double time_ms = 0.0;
  std::vector<TracePoint> trace;
  Assignment assignment;
};

std::string partition_to_json(const PartitionRecord& rec);
PartitionRecord partition_from_json(const std::string& text);

std::string distribution_to_json(const Distribution& dist);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace qcp
