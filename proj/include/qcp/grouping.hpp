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

#include "qcp/hypergraph.hpp"

namespace qcp {

// Greedy scan over time that merges teleportation-compatible gate edges into
// directed hyper-edges. Each gate edge joins the larger of the open groups
// on its endpoints (ties to the stored root operand); a non-diagonal,
// non-anti-diagonal single-qubit gate on a root closes that root's group, as
// does losing a root-choice on a later gate. Groups still open at the end of
// the scan are emitted. Groups with a single receiver are restored as plain
// gate edges, so the result of grouping an already-grouped graph is a no-op.
TemporalHypergraph greedy_grouping(const TemporalHypergraph& g);

}  // namespace qcp
