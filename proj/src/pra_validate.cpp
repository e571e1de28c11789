//===- pra_validate.cpp - PRA restriction checks --------------------------===//
//
// Part of gridloom, under the Apache License v2.0.
// SPDX-License-Identifier: Apache-2.0
//
//===----------------------------------------------------------------------===//

#include "gridloom/pra.hpp"

#include <functional>
#include <set>

namespace gridloom {

namespace {

bool in_space(const IterVec &i, const std::vector<int64_t> &lo,
              const std::vector<int64_t> &hi) {
  for (size_t d = 0; d < i.size(); ++d)
    if (i[d] < lo[d] || i[d] > hi[d])
      return false;
  return true;
}

} // namespace

std::vector<Diagnostic> validate_program(const PraProgram &p,
                                         const std::optional<ParamBindings> &params) {
  std::vector<Diagnostic> diags;
  auto diag = [&](const std::string &m) { diags.push_back({0, 0, m}); };

  if (p.space.dims < 1)
    diag("iteration space must have at least one dimension");

  for (auto &eq : p.equations) {
    const Variable &tv = p.variables[eq.target.var];
    if (tv.kind == VarKind::Input)
      diag(eq.id + ": input variable '" + tv.name + "' must not be defined");
    if (tv.kind == VarKind::Internal) {
      if (!eq.target.idx.is_identity_translation(p.space.dims))
        diag(eq.id + ": non-identity indexing on internal variable '" + tv.name + "'");
      else
        for (auto &o : eq.target.idx.offset)
          if (!(o.is_literal() && o.base == 0))
            diag(eq.id + ": internal variable '" + tv.name +
                 "' must be written at the current iteration");
    }
    if (static_cast<int>(eq.args.size()) != pra_op_arity(eq.op))
      diag(eq.id + ": operation " + pra_op_name(eq.op) + " expects " +
           std::to_string(pra_op_arity(eq.op)) + " arguments");
    for (size_t k = 0; k < eq.args.size(); ++k) {
      if (!std::holds_alternative<VarRef>(eq.args[k]))
        continue;
      const VarRef &r = std::get<VarRef>(eq.args[k]);
      const Variable &av = p.variables[r.var];
      if (av.kind == VarKind::Output)
        diag(eq.id + ": output variable '" + av.name + "' must not be read");
      if (av.kind == VarKind::Internal) {
        // Internal reads are restricted to simple translations.
        std::vector<std::vector<int64_t>> id(p.space.dims,
                                             std::vector<int64_t>(p.space.dims, 0));
        for (int d = 0; d < p.space.dims; ++d)
          id[d][d] = 1;
        if (r.idx.matrix != id)
          diag(eq.id + ": non-identity indexing on internal variable '" + av.name +
               "'");
        if (!r.idx.has_literal_offset())
          diag(eq.id + ": internal variable '" + av.name +
               "' offset must be a literal translation");
      }
    }
  }

  if (!params)
    return diags;

  // Concrete-bounds checks: enumerate the space once and evaluate guards.
  std::vector<int64_t> lo(p.space.dims), hi(p.space.dims);
  for (int d = 0; d < p.space.dims; ++d) {
    lo[d] = p.space.lower[d].eval(*params);
    hi[d] = p.space.upper[d].eval(*params);
    if (hi[d] - lo[d] + 1 < 0) {
      diag("dimension " + std::to_string(d) + " has negative extent");
      return diags;
    }
  }
  std::vector<IterVec> iters = enumerate_iterations(p.space, *params);
  if (iters.size() > 2'000'000) {
    diag("iteration space too large to check single assignment by enumeration");
    return diags;
  }

  // Single assignment: at most one equation defines each variable instance.
  // Instances are keyed by (var, written index vector).
  std::map<std::pair<int, IterVec>, int> writer; // -> equation index
  bool sa_ok = true;
  for (auto &i : iters) {
    for (size_t e = 0; e < p.equations.size(); ++e) {
      const Equation &eq = p.equations[e];
      if (!eq.domain.contains(i, *params))
        continue;
      IterVec widx = eq.target.idx.apply(i, *params);
      auto key = std::make_pair(eq.target.var, widx);
      auto [it, inserted] = writer.emplace(key, static_cast<int>(e));
      if (!inserted && it->second != static_cast<int>(e)) {
        diag("single-assignment violation: " + p.equations[it->second].id + " and " +
             eq.id + " both define " + p.variables[eq.target.var].name +
             ivec_str(widx));
        sa_ok = false;
      } else if (!inserted) {
        diag("single-assignment violation: " + eq.id + " defines " +
             p.variables[eq.target.var].name + ivec_str(widx) + " twice");
        sa_ok = false;
      }
      if (!sa_ok && diags.size() > 20)
        return diags;
    }
  }

  // Defined-before-use and acyclicity of the iteration-level dependence
  // graph, by depth-first search over internal variable instances.
  enum class Mark { White, Gray, Black };
  std::map<std::pair<int, IterVec>, Mark> mark;
  bool cycle = false, undef = false;
  std::function<void(int, const IterVec &)> visit = [&](int var, const IterVec &idx) {
    if (cycle || undef)
      return;
    auto key = std::make_pair(var, idx);
    auto w = writer.find(key);
    if (w == writer.end()) {
      undef = true;
      diag("read of undefined instance " + p.variables[var].name + ivec_str(idx));
      return;
    }
    auto &m = mark[key];
    if (m == Mark::Black)
      return;
    if (m == Mark::Gray) {
      cycle = true;
      diag("cyclic dependence through " + p.variables[var].name + ivec_str(idx));
      return;
    }
    m = Mark::Gray;
    const Equation &eq = p.equations[w->second];
    // The defining iteration equals idx for internal variables (identity
    // write); output variables are handled at their reading sites only.
    for (auto &a : eq.args) {
      if (!std::holds_alternative<VarRef>(a))
        continue;
      const VarRef &r = std::get<VarRef>(a);
      if (p.variables[r.var].kind != VarKind::Internal)
        continue;
      IterVec src = r.idx.apply(idx, *params);
      if (!in_space(src, lo, hi)) {
        undef = true;
        diag(eq.id + ": reads " + p.variables[r.var].name + ivec_str(src) +
             " outside the iteration space");
        return;
      }
      visit(r.var, src);
    }
    mark[key] = Mark::Black;
  };
  for (auto &i : iters) {
    for (auto &eq : p.equations) {
      if (!eq.domain.contains(i, *params))
        continue;
      for (auto &a : eq.args) {
        if (!std::holds_alternative<VarRef>(a))
          continue;
        const VarRef &r = std::get<VarRef>(a);
        if (p.variables[r.var].kind != VarKind::Internal)
          continue;
        IterVec src = r.idx.apply(i, *params);
        if (!in_space(src, lo, hi)) {
          diag(eq.id + ": reads " + p.variables[r.var].name + ivec_str(src) +
               " outside the iteration space at " + ivec_str(i));
          return diags;
        }
        visit(r.var, src);
        if (cycle || undef)
          return diags;
      }
    }
  }

  return diags;
}

} // namespace gridloom
