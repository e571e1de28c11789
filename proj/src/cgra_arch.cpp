//===- cgra_arch.cpp --------------------------------------------------------===//
//
// Part of gridloom, under the Apache License v2.0.
// SPDX-License-Identifier: Apache-2.0
//
//===----------------------------------------------------------------------===//

#include "gridloom/cgra_arch.hpp"

#include <algorithm>
#include <sstream>

namespace gridloom {

bool CgraArch::is_memory_pe(int pe) const {
  return std::find(memory_pes.begin(), memory_pes.end(), pe) != memory_pes.end();
}

CgraArch CgraArch::classic_4x4() {
  CgraArch a;
  for (int r = 0; r < a.rows; ++r)
    a.memory_pes.push_back(a.pe_id(r, 0));
  return a;
}

namespace {

DfgOp op_from_name(const std::string &s) {
  for (DfgOp op : {DfgOp::Sel, DfgOp::Add, DfgOp::Sub, DfgOp::Cmp, DfgOp::Mul,
                   DfgOp::Div, DfgOp::Load, DfgOp::Store, DfgOp::Const})
    if (s == dfg_op_name(op))
      return op;
  throw std::runtime_error("unknown operation '" + s + "'");
}

} // namespace

// Line-oriented key/value document; '#' starts a comment. Keys: name, grid,
// latency <op> <cycles>, memory_pes left_column | <id...>, hop_reach,
// pass_regs, config_depth, spm_bank_words, div_pipelined.
CgraArch parse_cgra_arch(const std::string &text) {
  CgraArch a;
  a.memory_pes.clear();
  std::istringstream is(text);
  std::string line;
  bool mem_left = false;
  while (std::getline(is, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos)
      line = line.substr(0, hash);
    std::istringstream ls(line);
    std::string key;
    if (!(ls >> key))
      continue;
    if (key == "name") {
      ls >> a.name;
    } else if (key == "grid") {
      ls >> a.rows >> a.cols;
    } else if (key == "latency") {
      std::string op;
      int cycles;
      ls >> op >> cycles;
      a.latency[op_from_name(op)] = cycles;
    } else if (key == "memory_pes") {
      std::string v;
      while (ls >> v) {
        if (v == "left_column")
          mem_left = true;
        else
          a.memory_pes.push_back(std::stoi(v));
      }
    } else if (key == "hop_reach") {
      ls >> a.hop_reach;
    } else if (key == "pass_regs") {
      ls >> a.pass_regs;
    } else if (key == "config_depth") {
      ls >> a.config_depth;
    } else if (key == "spm_bank_words") {
      ls >> a.spm_bank_words;
    } else if (key == "div_pipelined") {
      int v;
      ls >> v;
      a.div_pipelined = v != 0;
    } else {
      throw std::runtime_error("cgra arch: unknown key '" + key + "'");
    }
  }
  if (a.rows < 1 || a.cols < 1)
    throw std::runtime_error("cgra arch: grid must be at least 1x1");
  if (mem_left || a.memory_pes.empty())
    for (int r = 0; r < a.rows; ++r)
      a.memory_pes.push_back(a.pe_id(r, 0));
  std::sort(a.memory_pes.begin(), a.memory_pes.end());
  a.memory_pes.erase(std::unique(a.memory_pes.begin(), a.memory_pes.end()),
                     a.memory_pes.end());
  return a;
}

std::string serialize_cgra_arch(const CgraArch &a) {
  std::ostringstream os;
  os << "name " << a.name << "\n";
  os << "grid " << a.rows << " " << a.cols << "\n";
  for (auto &[op, lat] : a.latency)
    os << "latency " << dfg_op_name(op) << " " << lat << "\n";
  os << "memory_pes";
  for (int pe : a.memory_pes)
    os << " " << pe;
  os << "\n";
  os << "hop_reach " << a.hop_reach << "\n";
  os << "pass_regs " << a.pass_regs << "\n";
  os << "config_depth " << a.config_depth << "\n";
  os << "spm_bank_words " << a.spm_bank_words << "\n";
  os << "div_pipelined " << (a.div_pipelined ? 1 : 0) << "\n";
  return os.str();
}

} // namespace gridloom
