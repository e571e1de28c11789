//===- dfg.hpp - Loop-body data-flow graphs --------------------------------===//
//
// Part of gridloom, under the Apache License v2.0.
// SPDX-License-Identifier: Apache-2.0
//
//===----------------------------------------------------------------------===//
//
// A Dfg captures the operations of one loop iteration. Edges carry an
// inter-iteration distance: 0 means same iteration, k > 0 means the value
// was produced k iterations earlier. Constants are folded into instruction
// immediates and never appear as nodes.
//
//===----------------------------------------------------------------------===//

#ifndef GRIDLOOM_DFG_HPP
#define GRIDLOOM_DFG_HPP

#include "gridloom/loop_nest.hpp"

#include <map>
#include <string>
#include <vector>

namespace gridloom {

enum class DfgOp { Sel, Add, Sub, Cmp, Mul, Div, Load, Store, Const };
enum class CmpMode { Eq, Lt };
enum class Section { Index, Address, Memory, Compute };

const char *dfg_op_name(DfgOp op);
const char *section_name(Section s);

using LatencyTable = std::map<DfgOp, int>;
LatencyTable default_latencies(); // 1 cycle everywhere, Div 16

struct DfgOperand {
  int node = -1; // producing node, or -1 for an immediate
  Word imm = 0;
};

struct DfgNode {
  int id = 0;
  DfgOp op = DfgOp::Add;
  int latency = 1;
  Section section = Section::Compute;
  CmpMode cmp_mode = CmpMode::Eq;
  std::string array; // Load/Store memory-bank affinity
  Word const_value = 0;
  std::vector<DfgOperand> operands;
};

struct DfgEdge {
  int src = 0;
  int dst = 0;
  int arg_pos = 0;
  int distance = 0; // iterations between production and use
};

struct Dfg {
  std::string name;
  std::vector<DfgNode> nodes;
  std::vector<DfgEdge> edges;
  int64_t trip_count = 0; // supplied to the simulator, not part of the graph

  int issue_node_count() const; // nodes that occupy a PE issue slot
  std::vector<int> section_counts() const;
  std::vector<Diagnostic> well_formed() const;
};

// Lowers a loop nest into a single streaming DFG: a Sel/Add/Cmp counter
// triple per loop level (outer indices advance when the inner comparison
// fires), address arithmetic per distinct array access, Load/Store nodes,
// and the body operations.
Dfg build_loop_dfg(const LoopNestSpec &l, const ParamBindings &params,
                   const LatencyTable &lat = default_latencies());

// Recurrence-minimum initiation interval: max over elementary cycles of
// ceil(total latency / total distance). 1 for acyclic graphs. Throws on a
// cycle whose total distance is zero.
int rec_mii(const Dfg &g);

// Resource bound: ceil(issue nodes / PE count).
int res_mii(const Dfg &g, int pe_count);

// Deterministic text export (one node or edge per line).
std::string export_dfg(const Dfg &g);

} // namespace gridloom

#endif // GRIDLOOM_DFG_HPP
