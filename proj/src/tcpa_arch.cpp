//===- tcpa_arch.cpp ---------------------------------------------------------===//
//
// Part of gridloom, under the Apache License v2.0.
// SPDX-License-Identifier: Apache-2.0
//
//===----------------------------------------------------------------------===//

#include "gridloom/tcpa_arch.hpp"

#include <sstream>
#include <stdexcept>

namespace gridloom {

const char *fu_kind_name(FuKind k) {
  switch (k) {
  case FuKind::Adder:
    return "adder";
  case FuKind::Multiplier:
    return "multiplier";
  case FuKind::Divider:
    return "divider";
  case FuKind::Copy:
    return "copy";
  }
  return "?";
}

TcpaArch TcpaArch::default_4x4() {
  TcpaArch a;
  // Instruction memory sizes follow the per-unit budgets of the reference
  // hardware configuration (a large and a small adder, one multiplier, one
  // divider, three copy units).
  a.fus = {
      {FuKind::Adder, 1, true, 78},      {FuKind::Adder, 1, true, 25},
      {FuKind::Multiplier, 1, true, 51}, {FuKind::Divider, 16, false, 29},
      {FuKind::Copy, 1, true, 20},       {FuKind::Copy, 1, true, 20},
      {FuKind::Copy, 1, true, 20},
  };
  return a;
}

namespace {

FuKind fu_kind_from(const std::string &s) {
  for (FuKind k : {FuKind::Adder, FuKind::Multiplier, FuKind::Divider, FuKind::Copy})
    if (s == fu_kind_name(k))
      return k;
  throw std::runtime_error("unknown functional unit kind '" + s + "'");
}

} // namespace

// Keys: name, grid, fu <kind> <latency> <pipelined> <imem_words>, rd, fd, id,
// od, fifo_capacity, id_depth, channels_per_dir, banks_per_border,
// bank_words, ag_count.
TcpaArch parse_tcpa_arch(const std::string &text) {
  TcpaArch a;
  a.fus.clear();
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos)
      line = line.substr(0, hash);
    std::istringstream ls(line);
    std::string key;
    if (!(ls >> key))
      continue;
    if (key == "name")
      ls >> a.name;
    else if (key == "grid")
      ls >> a.rows >> a.cols;
    else if (key == "fu") {
      std::string kind;
      int lat, pipe, imem;
      ls >> kind >> lat >> pipe >> imem;
      a.fus.push_back({fu_kind_from(kind), lat, pipe != 0, imem});
    } else if (key == "rd")
      ls >> a.rd_count;
    else if (key == "fd")
      ls >> a.fd_count;
    else if (key == "id")
      ls >> a.id_count;
    else if (key == "od")
      ls >> a.od_count;
    else if (key == "fifo_capacity")
      ls >> a.fifo_capacity;
    else if (key == "id_depth")
      ls >> a.id_depth;
    else if (key == "channels_per_dir")
      ls >> a.channels_per_dir;
    else if (key == "banks_per_border")
      ls >> a.banks_per_border;
    else if (key == "bank_words")
      ls >> a.bank_words;
    else if (key == "ag_count")
      ls >> a.ag_count;
    else
      throw std::runtime_error("tcpa arch: unknown key '" + key + "'");
  }
  if (a.fus.empty())
    a.fus = TcpaArch::default_4x4().fus;
  if (a.rows < 1 || a.cols < 1)
    throw std::runtime_error("tcpa arch: grid must be at least 1x1");
  if (a.fifo_capacity < 1)
    throw std::runtime_error("tcpa arch: fifo capacity must be at least 1");
  return a;
}

std::string serialize_tcpa_arch(const TcpaArch &a) {
  std::ostringstream os;
  os << "name " << a.name << "\n";
  os << "grid " << a.rows << " " << a.cols << "\n";
  for (auto &fu : a.fus)
    os << "fu " << fu_kind_name(fu.kind) << " " << fu.latency << " "
       << (fu.pipelined ? 1 : 0) << " " << fu.imem_words << "\n";
  os << "rd " << a.rd_count << "\nfd " << a.fd_count << "\nid " << a.id_count
     << "\nod " << a.od_count << "\n";
  os << "fifo_capacity " << a.fifo_capacity << "\n";
  os << "id_depth " << a.id_depth << "\n";
  os << "channels_per_dir " << a.channels_per_dir << "\n";
  os << "banks_per_border " << a.banks_per_border << "\n";
  os << "bank_words " << a.bank_words << "\n";
  os << "ag_count " << a.ag_count << "\n";
  return os.str();
}

} // namespace gridloom
