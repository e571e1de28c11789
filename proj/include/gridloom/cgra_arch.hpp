//===- cgra_arch.hpp - Operation-centric array model -----------------------===//
//
// Part of gridloom, under the Apache License v2.0.
// SPDX-License-Identifier: Apache-2.0
//
//===----------------------------------------------------------------------===//

#ifndef GRIDLOOM_CGRA_ARCH_HPP
#define GRIDLOOM_CGRA_ARCH_HPP

#include "gridloom/dfg.hpp"

#include <string>
#include <vector>

namespace gridloom {

// Grid of single-FU PEs on a 4-neighbor mesh. Only the memory-capable PEs
// (default: the left border column, each owning a private scratchpad bank)
// may execute Load/Store. Values travel one mesh hop per cycle through
// single-use channels unless hop_reach allows single-cycle multi-hop; they
// wait in per-PE pass-through registers.
struct CgraArch {
  std::string name = "cgra4x4";
  int rows = 4;
  int cols = 4;
  LatencyTable latency = default_latencies();
  std::vector<int> memory_pes; // PE ids (row * cols + col); default left column
  int hop_reach = 1;           // mesh hops reachable within one cycle
  int pass_regs = 10;          // pass-through registers per PE
  int config_depth = 16;       // per-PE configuration memory in words
  int spm_bank_words = 1024;   // words per memory-PE bank (4 KB)
  bool div_pipelined = false;  // a divider occupies its PE for the full latency

  int pe_count() const { return rows * cols; }
  int pe_id(int r, int c) const { return r * cols + c; }
  int pe_row(int pe) const { return pe / cols; }
  int pe_col(int pe) const { return pe % cols; }
  bool is_memory_pe(int pe) const;

  static CgraArch classic_4x4();
};

CgraArch parse_cgra_arch(const std::string &text);
std::string serialize_cgra_arch(const CgraArch &a);

} // namespace gridloom

#endif // GRIDLOOM_CGRA_ARCH_HPP
