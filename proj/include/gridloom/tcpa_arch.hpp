//===- tcpa_arch.hpp - Iteration-centric array model ------------------------===//
//
// Part of gridloom, under the Apache License v2.0.
// SPDX-License-Identifier: Apache-2.0
//
//===----------------------------------------------------------------------===//

#ifndef GRIDLOOM_TCPA_ARCH_HPP
#define GRIDLOOM_TCPA_ARCH_HPP

#include <string>
#include <vector>

namespace gridloom {

enum class FuKind { Adder, Multiplier, Divider, Copy };

const char *fu_kind_name(FuKind k);

struct TcpaFu {
  FuKind kind;
  int latency = 1;
  bool pipelined = true;
  int imem_words = 64; // instruction memory capacity
};

// Multi-FU PEs in lockstep, driven by a global controller; specialized
// register classes per dependency type (RD general purpose, FD feedback
// FIFOs, ID/OD input/output ports, VD broadcast writes).
struct TcpaArch {
  std::string name = "tcpa4x4";
  int rows = 4;
  int cols = 4;
  std::vector<TcpaFu> fus; // per-PE functional units
  int rd_count = 8;
  int fd_count = 8;
  int id_count = 8;
  int od_count = 8;
  int fifo_capacity = 280;  // combined FD/ID capacity in words, per PE
  int id_depth = 8;         // per input-FIFO depth
  int channels_per_dir = 8; // interconnect channels to each neighbor
  int banks_per_border = 8; // I/O buffer banks on each of the four borders
  int bank_words = 128;     // words per bank (512 B)
  int ag_count = 32;        // address generators, one per bank

  int pe_count() const { return rows * cols; }

  // Two adders, one multiplier, one divider, three copy units.
  static TcpaArch default_4x4();
};

TcpaArch parse_tcpa_arch(const std::string &text);
std::string serialize_tcpa_arch(const TcpaArch &a);

} // namespace gridloom

#endif // GRIDLOOM_TCPA_ARCH_HPP
