//===- dfg.cpp - DFG construction and initiation-interval bounds ----------===//
//
// Part of gridloom, under the Apache License v2.0.
// SPDX-License-Identifier: Apache-2.0
//
//===----------------------------------------------------------------------===//

#include "gridloom/dfg.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace gridloom {

const char *dfg_op_name(DfgOp op) {
  switch (op) {
  case DfgOp::Sel:
    return "sel";
  case DfgOp::Add:
    return "add";
  case DfgOp::Sub:
    return "sub";
  case DfgOp::Cmp:
    return "cmp";
  case DfgOp::Mul:
    return "mul";
  case DfgOp::Div:
    return "div";
  case DfgOp::Load:
    return "load";
  case DfgOp::Store:
    return "store";
  case DfgOp::Const:
    return "const";
  }
  return "?";
}

const char *section_name(Section s) {
  switch (s) {
  case Section::Index:
    return "index";
  case Section::Address:
    return "address";
  case Section::Memory:
    return "memory";
  case Section::Compute:
    return "compute";
  }
  return "?";
}

LatencyTable default_latencies() {
  LatencyTable t;
  for (DfgOp op : {DfgOp::Sel, DfgOp::Add, DfgOp::Sub, DfgOp::Cmp, DfgOp::Mul,
                   DfgOp::Div, DfgOp::Load, DfgOp::Store, DfgOp::Const})
    t[op] = 1;
  t[DfgOp::Div] = 16;
  return t;
}

int Dfg::issue_node_count() const {
  int n = 0;
  for (auto &nd : nodes)
    if (nd.op != DfgOp::Const)
      ++n;
  return n;
}

std::vector<int> Dfg::section_counts() const {
  std::vector<int> c(4, 0);
  for (auto &nd : nodes)
    if (nd.op != DfgOp::Const)
      ++c[static_cast<int>(nd.section)];
  return c;
}

std::vector<Diagnostic> Dfg::well_formed() const {
  std::vector<Diagnostic> out;
  auto diag = [&](const std::string &m) { out.push_back({0, 0, m}); };
  for (auto &n : nodes) {
    if (n.latency < 1)
      diag("node " + std::to_string(n.id) + " has latency < 1");
    if ((n.op == DfgOp::Load || n.op == DfgOp::Store) && n.array.empty())
      diag("memory node " + std::to_string(n.id) + " lacks an array");
  }
  for (auto &e : edges) {
    if (e.src < 0 || e.src >= static_cast<int>(nodes.size()) || e.dst < 0 ||
        e.dst >= static_cast<int>(nodes.size()))
      diag("edge endpoints out of range");
    if (e.distance < 0)
      diag("negative edge distance");
  }
  // Distance-0 subgraph must be acyclic.
  std::vector<std::vector<int>> succ(nodes.size());
  std::vector<int> indeg(nodes.size(), 0);
  for (auto &e : edges)
    if (e.distance == 0) {
      succ[e.src].push_back(e.dst);
      ++indeg[e.dst];
    }
  std::vector<int> q;
  for (size_t i = 0; i < nodes.size(); ++i)
    if (indeg[i] == 0)
      q.push_back(static_cast<int>(i));
  size_t seen = 0;
  while (!q.empty()) {
    int v = q.back();
    q.pop_back();
    ++seen;
    for (int s : succ[v])
      if (--indeg[s] == 0)
        q.push_back(s);
  }
  if (seen != nodes.size())
    diag("distance-0 edges form a cycle");
  return out;
}

namespace {

struct Builder {
  const LoopNestSpec &l;
  const ParamBindings &params;
  const LatencyTable &lat;
  Dfg g;
  std::vector<int64_t> lo, ext;
  std::vector<int> sel, add, cmp; // per-level counter nodes
  std::vector<int> value_node;    // body value id -> node (-1 for folded)
  std::vector<bool> value_is_imm;
  std::vector<Word> value_imm;
  // CSE keyed by a canonical description string.
  std::map<std::string, int> addr_cse;
  std::map<std::string, int> load_cse;

  Builder(const LoopNestSpec &l, const ParamBindings &params, const LatencyTable &lat)
      : l(l), params(params), lat(lat) {}

  int latency_of(DfgOp op) const {
    auto it = lat.find(op);
    return it == lat.end() ? 1 : it->second;
  }

  int new_node(DfgOp op, Section sec) {
    DfgNode n;
    n.id = static_cast<int>(g.nodes.size());
    n.op = op;
    n.section = sec;
    n.latency = latency_of(op);
    g.nodes.push_back(n);
    return n.id;
  }

  void wire(int src, int dst, int pos, int distance) {
    g.edges.push_back({src, dst, pos, distance});
    auto &ops = g.nodes[dst].operands;
    if (static_cast<int>(ops.size()) <= pos)
      ops.resize(pos + 1);
    ops[pos].node = src;
  }

  void imm(int dst, int pos, Word v) {
    auto &ops = g.nodes[dst].operands;
    if (static_cast<int>(ops.size()) <= pos)
      ops.resize(pos + 1);
    ops[pos].node = -1;
    ops[pos].imm = v;
  }

  void build_counters() {
    int n = static_cast<int>(l.levels.size());
    sel.assign(n, -1);
    add.assign(n, -1);
    cmp.assign(n, -1);
    for (int d = n - 1; d >= 0; --d) {
      sel[d] = new_node(DfgOp::Sel, Section::Index);
      add[d] = new_node(DfgOp::Add, Section::Index);
      cmp[d] = new_node(DfgOp::Cmp, Section::Index);
      g.nodes[cmp[d]].cmp_mode = CmpMode::Eq;
      // sel = cmp_prev ? 0 : add_prev   (cyclic accumulator)
      wire(cmp[d], sel[d], 0, 1);
      imm(sel[d], 1, 0);
      wire(add[d], sel[d], 2, 1);
      // add = sel + (inner cmp | 1)
      wire(sel[d], add[d], 0, 0);
      if (d == n - 1)
        imm(add[d], 1, 1);
      else
        wire(cmp[d + 1], add[d], 1, 0);
      // cmp = (add == extent)
      wire(add[d], cmp[d], 0, 0);
      imm(cmp[d], 1, static_cast<Word>(ext[d]));
    }
  }

  // Lowers an affine expression over counters into address nodes, reusing
  // identical subtrees. Returns node id, or -1 with *imm_out set when the
  // expression is constant.
  int lower_expr(const ScalarExpr &e, Word *imm_out) {
    // Canonical term list: (node, coeff) pairs plus constant.
    std::vector<std::pair<int, int64_t>> terms;
    for (auto &[lvl, k] : e.level_terms) {
      if (k == 0)
        continue;
      // index value = counter + lo: fold lo into the constant
      terms.push_back({sel[lvl], k});
    }
    for (auto &[v, k] : e.value_terms) {
      if (k == 0)
        continue;
      if (value_is_imm[v])
        continue; // folded below
      terms.push_back({value_node[v], k});
    }
    int64_t cst = e.c.eval(params);
    for (auto &[lvl, k] : e.level_terms)
      cst += k * lo[lvl];
    for (auto &[v, k] : e.value_terms)
      if (value_is_imm[v])
        cst += k * value_imm[v];

    if (terms.empty()) {
      *imm_out = static_cast<Word>(cst);
      return -1;
    }
    std::sort(terms.begin(), terms.end());

    // Emit scaled terms then a left-to-right add chain; the constant rides
    // on the final add as an immediate where possible.
    auto scaled_node = [&](int node, int64_t k) {
      if (k == 1)
        return node;
      std::string key = "mul:" + std::to_string(node) + ":" + std::to_string(k);
      if (auto it = addr_cse.find(key); it != addr_cse.end())
        return it->second;
      int m = new_node(DfgOp::Mul, Section::Address);
      wire(node, m, 0, 0);
      imm(m, 1, static_cast<Word>(k));
      addr_cse[key] = m;
      return m;
    };

    std::string key = "expr:";
    for (auto &[n, k] : terms)
      key += std::to_string(n) + "*" + std::to_string(k) + "+";
    key += std::to_string(cst);
    if (auto it = addr_cse.find(key); it != addr_cse.end())
      return it->second;

    int acc = scaled_node(terms[0].first, terms[0].second);
    for (size_t i = 1; i < terms.size(); ++i) {
      int t = scaled_node(terms[i].first, terms[i].second);
      int a = new_node(DfgOp::Add, Section::Address);
      wire(acc, a, 0, 0);
      wire(t, a, 1, 0);
      acc = a;
    }
    if (cst != 0) {
      int a = new_node(DfgOp::Add, Section::Address);
      wire(acc, a, 0, 0);
      imm(a, 1, static_cast<Word>(cst));
      acc = a;
    }
    addr_cse[key] = acc;
    return acc;
  }

  // Row-major linearized address of an access.
  int lower_address(const std::string &array, const std::vector<ScalarExpr> &subs,
                    Word *imm_out) {
    auto it = l.array_shape.find(array);
    if (it == l.array_shape.end())
      throw std::runtime_error("array '" + array + "' has no declared shape");
    const auto &shape = it->second;
    if (shape.size() != subs.size())
      throw std::runtime_error("array '" + array + "' rank mismatch");
    ScalarExpr linear;
    for (size_t d = 0; d < subs.size(); ++d) {
      int64_t stride = 1;
      for (size_t d2 = d + 1; d2 < shape.size(); ++d2)
        stride *= shape[d2];
      linear = linear + subs[d].scaled(stride);
    }
    return lower_expr(linear, imm_out);
  }

  DfgOp body_op_kind(BodyOp op) {
    switch (op) {
    case BodyOp::Add:
      return DfgOp::Add;
    case BodyOp::Sub:
      return DfgOp::Sub;
    case BodyOp::Mul:
      return DfgOp::Mul;
    case BodyOp::Div:
      return DfgOp::Div;
    case BodyOp::CmpEq:
    case BodyOp::CmpLt:
      return DfgOp::Cmp;
    case BodyOp::Sel:
      return DfgOp::Sel;
    }
    return DfgOp::Add;
  }

  void build_body() {
    size_t nv = l.values.size();
    value_node.assign(nv, -1);
    value_is_imm.assign(nv, false);
    value_imm.assign(nv, 0);
    for (size_t vi = 0; vi < nv; ++vi) {
      const BodyValue &v = l.values[vi];
      switch (v.kind) {
      case BodyValue::IndexRef: {
        if (lo[v.level] == 0) {
          value_node[vi] = sel[v.level];
        } else {
          ScalarExpr e = ScalarExpr::level(v.level);
          Word iv = 0;
          value_node[vi] = lower_expr(e, &iv);
        }
        break;
      }
      case BodyValue::Load: {
        Word addr_imm = 0;
        int addr = lower_address(v.array, v.subscripts, &addr_imm);
        std::string key = "load:" + v.array + ":" + std::to_string(addr) + ":" +
                          std::to_string(addr_imm);
        if (auto it = load_cse.find(key); it != load_cse.end()) {
          value_node[vi] = it->second;
          break;
        }
        int n = new_node(DfgOp::Load, Section::Memory);
        g.nodes[n].array = v.array;
        if (addr >= 0)
          wire(addr, n, 0, 0);
        else
          imm(n, 0, addr_imm);
        load_cse[key] = n;
        value_node[vi] = n;
        break;
      }
      case BodyValue::Op: {
        int n = new_node(body_op_kind(v.op), Section::Compute);
        if (v.op == BodyOp::CmpEq)
          g.nodes[n].cmp_mode = CmpMode::Eq;
        if (v.op == BodyOp::CmpLt)
          g.nodes[n].cmp_mode = CmpMode::Lt;
        for (size_t k = 0; k < v.operands.size(); ++k) {
          auto &o = v.operands[k];
          if (o.value < 0) {
            imm(n, static_cast<int>(k), static_cast<Word>(o.imm.eval(params)));
          } else if (l.values[o.value].kind == BodyValue::Carry) {
            continue; // wired in the second pass
          } else if (value_is_imm[o.value]) {
            imm(n, static_cast<int>(k), value_imm[o.value]);
          } else {
            wire(value_node[o.value], n, static_cast<int>(k), 0);
          }
        }
        value_node[vi] = n;
        break;
      }
      case BodyValue::Carry:
        // No node: consumers get a distance-k edge from the source.
        break;
      }
    }

    // Second pass: wire carry operands now that all sources have nodes.
    for (size_t vi = 0; vi < nv; ++vi) {
      const BodyValue &v = l.values[vi];
      if (v.kind != BodyValue::Op)
        continue;
      int n = value_node[vi];
      for (size_t k = 0; k < v.operands.size(); ++k) {
        auto &o = v.operands[k];
        if (o.value < 0 || l.values[o.value].kind != BodyValue::Carry)
          continue;
        const BodyValue &c = l.values[o.value];
        int src = value_node[c.carry_of];
        if (src < 0)
          throw std::runtime_error("carry of a folded value is unsupported");
        wire(src, n, static_cast<int>(k), c.distance);
      }
    }

    for (auto &st : l.stores) {
      Word addr_imm = 0;
      int addr = lower_address(st.array, st.subscripts, &addr_imm);
      int n = new_node(DfgOp::Store, Section::Memory);
      g.nodes[n].array = st.array;
      if (addr >= 0)
        wire(addr, n, 0, 0);
      else
        imm(n, 0, addr_imm);
      int val = value_node[st.value];
      if (val < 0 && l.values[st.value].kind == BodyValue::Carry) {
        const BodyValue &c = l.values[st.value];
        wire(value_node[c.carry_of], n, 1, c.distance);
      } else if (val >= 0) {
        wire(val, n, 1, 0);
      } else {
        imm(n, 1, value_imm[st.value]);
      }
    }
  }

  Dfg run() {
    int n = static_cast<int>(l.levels.size());
    if (n < 1 || n > 4)
      throw std::runtime_error("loop nests must have 1 to 4 levels");
    lo.resize(n);
    ext.resize(n);
    g.trip_count = 1;
    for (int d = 0; d < n; ++d) {
      lo[d] = l.levels[d].lower.eval(params);
      ext[d] = l.levels[d].upper.eval(params) - lo[d];
      if (ext[d] < 0)
        ext[d] = 0;
      g.trip_count *= ext[d];
    }
    g.name = l.name;
    build_counters();
    build_body();
    return std::move(g);
  }
};

} // namespace

Dfg build_loop_dfg(const LoopNestSpec &l, const ParamBindings &params,
                   const LatencyTable &lat) {
  return Builder(l, params, lat).run();
}

namespace {

// Feasibility of an initiation interval: no cycle may have positive total
// (latency - II * distance). Bellman-Ford style relaxation over longest
// paths; a relaxation still possible after |V| rounds means a positive cycle.
bool ii_feasible(const Dfg &g, int64_t ii) {
  size_t n = g.nodes.size();
  std::vector<int64_t> dist(n, 0);
  for (size_t round = 0; round <= n; ++round) {
    bool changed = false;
    for (auto &e : g.edges) {
      int64_t w = g.nodes[e.src].latency - ii * e.distance;
      if (dist[e.src] + w > dist[e.dst]) {
        dist[e.dst] = dist[e.src] + w;
        changed = true;
      }
    }
    if (!changed)
      return true;
  }
  return false;
}

} // namespace

int rec_mii(const Dfg &g) {
  if (g.nodes.empty())
    return 1;
  auto wf = g.well_formed();
  for (auto &d : wf)
    if (d.message == "distance-0 edges form a cycle")
      throw std::runtime_error("rec_mii: cycle with total distance 0");
  int64_t hi = 1;
  for (auto &n : g.nodes)
    hi += n.latency;
  if (!ii_feasible(g, hi))
    throw std::runtime_error("rec_mii: cycle with total distance 0");
  int64_t lo = 1;
  while (lo < hi) {
    int64_t mid = lo + (hi - lo) / 2;
    if (ii_feasible(g, mid))
      hi = mid;
    else
      lo = mid + 1;
  }
  return static_cast<int>(lo);
}

int res_mii(const Dfg &g, int pe_count) {
  if (pe_count < 1)
    throw std::runtime_error("res_mii: pe_count must be positive");
  int v = g.issue_node_count();
  return std::max(1, (v + pe_count - 1) / pe_count);
}

std::string export_dfg(const Dfg &g) {
  std::ostringstream os;
  os << "dfg " << g.name << " nodes " << g.nodes.size() << " edges "
     << g.edges.size() << " trip " << g.trip_count << "\n";
  for (auto &n : g.nodes) {
    os << "node " << n.id << " " << dfg_op_name(n.op) << " lat " << n.latency
       << " section " << section_name(n.section);
    if (n.op == DfgOp::Cmp)
      os << " mode " << (n.cmp_mode == CmpMode::Eq ? "eq" : "lt");
    if (!n.array.empty())
      os << " array " << n.array;
    for (size_t k = 0; k < n.operands.size(); ++k)
      if (n.operands[k].node < 0)
        os << " imm" << k << " " << n.operands[k].imm;
    os << "\n";
  }
  std::vector<DfgEdge> es = g.edges;
  std::sort(es.begin(), es.end(), [](const DfgEdge &a, const DfgEdge &b) {
    return std::tie(a.src, a.dst, a.arg_pos) < std::tie(b.src, b.dst, b.arg_pos);
  });
  for (auto &e : es)
    os << "edge " << e.src << " -> " << e.dst << " pos " << e.arg_pos << " dist "
       << e.distance << "\n";
  return os.str();
}

} // namespace gridloom
