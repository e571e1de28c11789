//===- interp.cpp ----------------------------------------------------------===//
//
// Part of gridloom, under the Apache License v2.0.
// SPDX-License-Identifier: Apache-2.0
//
//===----------------------------------------------------------------------===//

#include "gridloom/interp.hpp"

#include <functional>
#include <set>

namespace gridloom {

Word eval_pra_op(PraOp op, const std::vector<Word> &vals, const IterVec &at) {
  switch (op) {
  case PraOp::Copy:
    return vals[0];
  case PraOp::Add:
    return wrap_add(vals[0], vals[1]);
  case PraOp::Sub:
    return wrap_sub(vals[0], vals[1]);
  case PraOp::Mul:
    return wrap_mul(vals[0], vals[1]);
  case PraOp::Div:
    if (vals[1] == 0)
      throw std::runtime_error("division by zero at iteration " + ivec_str(at));
    return wrap_div(vals[0], vals[1]);
  case PraOp::Select:
    return vals[0] != 0 ? vals[1] : vals[2];
  case PraOp::Compare:
    return vals[0] < vals[1] ? 1 : 0;
  }
  return 0;
}

namespace {

struct Evaluator {
  const PraProgram &p;
  const ParamBindings &params;
  const ImageSet &inputs;
  std::vector<int64_t> lo, hi;

  // writer[(var, index)] = defining equation, filled lazily per variable.
  std::map<std::pair<int, IterVec>, int> writer;
  std::map<std::pair<int, IterVec>, Word> memo;
  std::set<std::pair<int, IterVec>> visiting;

  Evaluator(const PraProgram &p, const ParamBindings &params, const ImageSet &inputs)
      : p(p), params(params), inputs(inputs) {
    lo.resize(p.space.dims);
    hi.resize(p.space.dims);
    for (int d = 0; d < p.space.dims; ++d) {
      lo[d] = p.space.lower[d].eval(params);
      hi[d] = p.space.upper[d].eval(params);
    }
  }

  bool in_space(const IterVec &i) const {
    for (size_t d = 0; d < i.size(); ++d)
      if (i[d] < lo[d] || i[d] > hi[d])
        return false;
    return true;
  }

  Word input_value(const VarRef &r, const IterVec &at) const {
    const Variable &v = p.variables[r.var];
    auto it = inputs.find(v.name);
    if (it == inputs.end())
      throw std::runtime_error("missing input image '" + v.name + "'");
    IterVec idx = r.idx.apply(at, params);
    if (!it->second.in_bounds(idx))
      throw std::runtime_error("input '" + v.name + "' read out of bounds at " +
                               ivec_str(idx));
    return it->second.at(idx);
  }

  // Value of internal variable instance var[idx], computed on demand.
  Word value(int var, const IterVec &idx) {
    auto key = std::make_pair(var, idx);
    if (auto it = memo.find(key); it != memo.end())
      return it->second;
    if (!in_space(idx))
      throw std::runtime_error("read of " + p.variables[var].name + ivec_str(idx) +
                               " outside the iteration space");
    int eqi = -1;
    for (size_t e = 0; e < p.equations.size(); ++e) {
      const Equation &eq = p.equations[e];
      if (eq.target.var != var || p.variables[var].kind != VarKind::Internal)
        continue;
      if (eq.domain.contains(idx, params)) {
        eqi = static_cast<int>(e);
        break;
      }
    }
    if (eqi < 0)
      throw std::runtime_error("read of undefined instance " +
                               p.variables[var].name + ivec_str(idx));
    if (!visiting.insert(key).second)
      throw std::runtime_error("cyclic dependence at " + p.variables[var].name +
                               ivec_str(idx));
    Word w = eval_equation(p.equations[eqi], idx);
    visiting.erase(key);
    memo[key] = w;
    return w;
  }

  Word eval_equation(const Equation &eq, const IterVec &at) {
    std::vector<Word> vals;
    vals.reserve(eq.args.size());
    for (auto &a : eq.args) {
      if (std::holds_alternative<int64_t>(a)) {
        vals.push_back(static_cast<Word>(std::get<int64_t>(a)));
        continue;
      }
      const VarRef &r = std::get<VarRef>(a);
      if (p.variables[r.var].kind == VarKind::Input) {
        vals.push_back(input_value(r, at));
      } else {
        IterVec src = r.idx.apply(at, params);
        vals.push_back(value(r.var, src));
      }
    }
    return eval_pra_op(eq.op, vals, at);
  }
};

} // namespace

ImageSet interpret(const PraProgram &p, const ParamBindings &params,
                   const ImageSet &inputs) {
  for (auto &v : p.variables)
    if (v.kind == VarKind::Input && inputs.find(v.name) == inputs.end())
      throw std::runtime_error("missing input image '" + v.name + "'");

  Evaluator ev(p, params, inputs);
  auto iters = enumerate_iterations(p.space, params);

  // First pass: collect written output subscripts to size the images.
  std::map<int, std::vector<std::pair<IterVec, IterVec>>> writes; // var -> (at, idx)
  for (auto &i : iters) {
    for (auto &eq : p.equations) {
      if (p.variables[eq.target.var].kind != VarKind::Output)
        continue;
      if (!eq.domain.contains(i, params))
        continue;
      writes[eq.target.var].push_back({i, eq.target.idx.apply(i, params)});
    }
  }

  ImageSet out;
  for (auto &[var, ws] : writes) {
    const Variable &v = p.variables[var];
    std::vector<int64_t> ext(v.rank, 0);
    for (auto &[at, idx] : ws)
      for (int d = 0; d < v.rank; ++d) {
        if (idx[d] < 0)
          throw std::runtime_error("output '" + v.name + "' written at negative index");
        ext[d] = std::max(ext[d], idx[d] + 1);
      }
    out.emplace(v.name, MemoryImage::zeros(v.name, ext));
  }

  // Second pass: evaluate every output write on demand.
  for (auto &[var, ws] : writes) {
    MemoryImage &img = out[p.variables[var].name];
    for (auto &[at, idx] : ws) {
      // Find the equation defining this write (single assignment holds).
      for (auto &eq : p.equations) {
        if (eq.target.var != var || !eq.domain.contains(at, params))
          continue;
        img.at(idx) = ev.eval_equation(eq, at);
        break;
      }
    }
  }
  return out;
}

} // namespace gridloom
