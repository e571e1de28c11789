//===- loop_nest.cpp - Nest evaluation, flattening, unrolling -------------===//
//
// Part of gridloom, under the Apache License v2.0.
// SPDX-License-Identifier: Apache-2.0
//
//===----------------------------------------------------------------------===//

#include "gridloom/loop_nest.hpp"

#include <algorithm>
#include <deque>

namespace gridloom {

ScalarExpr ScalarExpr::operator+(const ScalarExpr &o) const {
  ScalarExpr r = *this;
  r.c += o.c;
  for (auto &[l, k] : o.level_terms) {
    r.level_terms[l] += k;
    if (r.level_terms[l] == 0)
      r.level_terms.erase(l);
  }
  for (auto &[v, k] : o.value_terms) {
    r.value_terms[v] += k;
    if (r.value_terms[v] == 0)
      r.value_terms.erase(v);
  }
  return r;
}

ScalarExpr ScalarExpr::scaled(int64_t k) const {
  ScalarExpr r;
  if (k == 0)
    return r;
  r.c = c.scaled(k);
  for (auto &[l, v] : level_terms)
    r.level_terms[l] = v * k;
  for (auto &[v, x] : value_terms)
    r.value_terms[v] = x * k;
  return r;
}

int LoopNestSpec::add_index(int level) {
  BodyValue v;
  v.kind = BodyValue::IndexRef;
  v.level = level;
  values.push_back(std::move(v));
  return static_cast<int>(values.size()) - 1;
}
int LoopNestSpec::add_load(const std::string &array,
                           std::vector<ScalarExpr> subscripts) {
  BodyValue v;
  v.kind = BodyValue::Load;
  v.array = array;
  v.subscripts = std::move(subscripts);
  values.push_back(std::move(v));
  return static_cast<int>(values.size()) - 1;
}
int LoopNestSpec::add_op(BodyOp op, std::vector<BodyValue::Operand> operands) {
  BodyValue v;
  v.kind = BodyValue::Op;
  v.op = op;
  v.operands = std::move(operands);
  values.push_back(std::move(v));
  return static_cast<int>(values.size()) - 1;
}
int LoopNestSpec::add_carry(int of, int distance, Word init) {
  BodyValue v;
  v.kind = BodyValue::Carry;
  v.carry_of = of;
  v.distance = distance;
  v.init = init;
  values.push_back(std::move(v));
  return static_cast<int>(values.size()) - 1;
}
void LoopNestSpec::add_store(const std::string &array,
                             std::vector<ScalarExpr> subscripts, int value) {
  stores.push_back({array, std::move(subscripts), value});
}

int64_t LoopNestSpec::trip_count(const ParamBindings &params) const {
  int64_t t = 1;
  for (auto &lv : levels) {
    int64_t e = lv.upper.eval(params) - lv.lower.eval(params);
    if (e < 0)
      e = 0;
    t *= e;
  }
  return t;
}

namespace {

Word eval_body_op(BodyOp op, Word a, Word b, Word c) {
  switch (op) {
  case BodyOp::Add:
    return wrap_add(a, b);
  case BodyOp::Sub:
    return wrap_sub(a, b);
  case BodyOp::Mul:
    return wrap_mul(a, b);
  case BodyOp::Div:
    if (b == 0)
      throw std::runtime_error("loop nest: division by zero");
    return wrap_div(a, b);
  case BodyOp::CmpEq:
    return a == b ? 1 : 0;
  case BodyOp::CmpLt:
    return a < b ? 1 : 0;
  case BodyOp::Sel:
    return a != 0 ? b : c;
  }
  return 0;
}

} // namespace

void eval_loop_nest(const LoopNestSpec &l, const ParamBindings &params,
                    ImageSet &images) {
  int n = static_cast<int>(l.levels.size());
  std::vector<int64_t> lo(n), ext(n);
  int64_t trip = 1;
  for (int d = 0; d < n; ++d) {
    lo[d] = l.levels[d].lower.eval(params);
    ext[d] = l.levels[d].upper.eval(params) - lo[d];
    if (ext[d] < 0)
      ext[d] = 0;
    trip *= ext[d];
  }

  // History ring for carried values.
  int max_dist = 1;
  for (auto &v : l.values)
    if (v.kind == BodyValue::Carry)
      max_dist = std::max(max_dist, v.distance);
  size_t nv = l.values.size();
  std::deque<std::vector<Word>> history; // most recent iteration at back

  std::vector<Word> cur(nv, 0);
  std::vector<int64_t> idx(n, 0);

  auto eval_expr = [&](const ScalarExpr &e) {
    int64_t v = e.c.eval(params);
    for (auto &[lvl, k] : e.level_terms)
      v += k * (lo[lvl] + idx[lvl]);
    for (auto &[val, k] : e.value_terms)
      v += k * cur[val];
    return v;
  };

  for (int64_t m = 0; m < trip; ++m) {
    // decode indices, row-major with the last level fastest
    int64_t rest = m;
    for (int d = n - 1; d >= 0; --d) {
      idx[d] = ext[d] ? rest % ext[d] : 0;
      rest = ext[d] ? rest / ext[d] : 0;
    }
    for (size_t vi = 0; vi < nv; ++vi) {
      const BodyValue &v = l.values[vi];
      switch (v.kind) {
      case BodyValue::IndexRef:
        cur[vi] = static_cast<Word>(lo[v.level] + idx[v.level]);
        break;
      case BodyValue::Load: {
        auto it = images.find(v.array);
        if (it == images.end())
          throw std::runtime_error("loop nest: missing array '" + v.array + "'");
        IterVec sub(v.subscripts.size());
        for (size_t s = 0; s < v.subscripts.size(); ++s)
          sub[s] = eval_expr(v.subscripts[s]);
        cur[vi] = it->second.at(sub);
        break;
      }
      case BodyValue::Op: {
        Word ops[3] = {0, 0, 0};
        for (size_t k = 0; k < v.operands.size() && k < 3; ++k) {
          auto &o = v.operands[k];
          ops[k] = o.value >= 0 ? cur[o.value]
                                : static_cast<Word>(o.imm.eval(params));
        }
        cur[vi] = eval_body_op(v.op, ops[0], ops[1], ops[2]);
        break;
      }
      case BodyValue::Carry: {
        if (static_cast<int64_t>(history.size()) >= v.distance)
          cur[vi] = history[history.size() - v.distance][v.carry_of];
        else
          cur[vi] = v.init;
        break;
      }
      }
    }
    for (auto &st : l.stores) {
      auto it = images.find(st.array);
      if (it == images.end())
        throw std::runtime_error("loop nest: missing array '" + st.array + "'");
      IterVec sub(st.subscripts.size());
      for (size_t s = 0; s < st.subscripts.size(); ++s)
        sub[s] = eval_expr(st.subscripts[s]);
      it->second.at(sub) = cur[st.value];
    }
    history.push_back(cur);
    if (static_cast<int>(history.size()) > max_dist)
      history.pop_front();
  }
}

LoopNestSpec flatten_loop(const LoopNestSpec &l, const ParamBindings &params) {
  int n = static_cast<int>(l.levels.size());
  if (n <= 1) {
    LoopNestSpec r = l; // already a single loop
    return r;
  }
  std::vector<int64_t> lo(n), ext(n);
  int64_t trip = 1;
  for (int d = 0; d < n; ++d) {
    lo[d] = l.levels[d].lower.eval(params);
    ext[d] = l.levels[d].upper.eval(params) - lo[d];
    if (ext[d] < 0)
      ext[d] = 0;
    trip *= ext[d];
  }

  LoopNestSpec r;
  r.name = l.name + ".flat";
  r.levels.push_back({"m", AffineConst(0), AffineConst(trip)});
  r.array_shape = l.array_shape;

  // Counter chains recovering the original indices: a Sel/Add/Cmp group per
  // original level, wired so an outer index advances when the inner
  // comparison fires.
  std::vector<int> sel(n), add(n), cmp(n);
  for (int d = n - 1; d >= 0; --d) {
    int s = static_cast<int>(r.values.size());
    BodyValue vs;
    vs.kind = BodyValue::Op;
    vs.op = BodyOp::Sel;
    vs.operands.resize(3);
    r.values.push_back(vs); // patched below
    sel[d] = s;

    BodyValue va;
    va.kind = BodyValue::Op;
    va.op = BodyOp::Add;
    va.operands.resize(2);
    va.operands[0].value = s;
    if (d == n - 1)
      va.operands[1].imm = AffineConst(1);
    else
      va.operands[1].value = cmp[d + 1];
    r.values.push_back(va);
    add[d] = s + 1;

    BodyValue vc;
    vc.kind = BodyValue::Op;
    vc.op = BodyOp::CmpEq;
    vc.operands.resize(2);
    vc.operands[0].value = add[d];
    vc.operands[1].imm = AffineConst(ext[d]);
    r.values.push_back(vc);
    cmp[d] = s + 2;

    int carry_cmp = r.add_carry(cmp[d], 1, 0);
    int carry_add = r.add_carry(add[d], 1, 0);
    r.values[s].operands[0].value = carry_cmp;
    r.values[s].operands[1].imm = AffineConst(0);
    r.values[s].operands[2].value = carry_add;
  }

  // Copy the body, remapping value ids and rewriting index references.
  int base = static_cast<int>(r.values.size());
  std::vector<int> remap(l.values.size(), -1);
  auto remap_expr = [&](const ScalarExpr &e) {
    ScalarExpr out;
    out.c = e.c;
    for (auto &[lvl, k] : e.level_terms) {
      // index value = counter + lower bound
      ScalarExpr t;
      t.value_terms[sel[lvl]] = k;
      t.c = AffineConst(lo[lvl] * k);
      out = out + t;
    }
    for (auto &[v, k] : e.value_terms)
      out.value_terms[remap[v]] += k;
    return out;
  };
  for (size_t vi = 0; vi < l.values.size(); ++vi) {
    const BodyValue &v = l.values[vi];
    if (v.kind == BodyValue::IndexRef) {
      if (lo[v.level] == 0) {
        remap[vi] = sel[v.level];
      } else {
        BodyValue shift;
        shift.kind = BodyValue::Op;
        shift.op = BodyOp::Add;
        shift.operands.resize(2);
        shift.operands[0].value = sel[v.level];
        shift.operands[1].imm = AffineConst(lo[v.level]);
        r.values.push_back(shift);
        remap[vi] = static_cast<int>(r.values.size()) - 1;
      }
      continue;
    }
    BodyValue c = v;
    if (c.kind == BodyValue::Load)
      for (auto &s : c.subscripts)
        s = remap_expr(s);
    if (c.kind == BodyValue::Op)
      for (auto &o : c.operands)
        if (o.value >= 0)
          o.value = remap[o.value];
    if (c.kind == BodyValue::Carry)
      c.carry_of = remap[c.carry_of];
    r.values.push_back(c);
    remap[vi] = static_cast<int>(r.values.size()) - 1;
  }
  (void)base;
  for (auto &st : l.stores) {
    StoreStmt s = st;
    for (auto &sub : s.subscripts)
      sub = remap_expr(sub);
    s.value = remap[st.value];
    r.stores.push_back(std::move(s));
  }
  return r;
}

namespace {

// Rewrites a comparison of the unrolled index against a constant; returns
// true when folded into `out`.
bool fold_unrolled_cmp(BodyOp op, int64_t f, int64_t k, int64_t rhs,
                       BodyValue::Operand &lhs_out, AffineConst &rhs_out,
                       bool &const_result, Word &const_val) {
  // index = f*i' + k
  if (op == BodyOp::CmpEq) {
    if ((rhs - k) % f != 0) {
      const_result = true;
      const_val = 0;
      return true;
    }
    rhs_out = AffineConst((rhs - k) / f);
    const_result = false;
    (void)lhs_out;
    return true;
  }
  if (op == BodyOp::CmpLt) {
    // f*i' + k < rhs  <=>  i' <= floor((rhs-k-1)/f)  <=>  i' < that+1
    int64_t num = rhs - k - 1;
    int64_t fl = num >= 0 ? num / f : -(((-num) + f - 1) / f);
    rhs_out = AffineConst(fl + 1);
    const_result = false;
    return true;
  }
  return false;
}

} // namespace

LoopNestSpec unroll_loop(const LoopNestSpec &l, int factor,
                         const ParamBindings &params) {
  if (factor < 1)
    throw std::runtime_error("unroll factor must be positive");
  if (factor == 1)
    return l;
  if (l.levels.empty())
    throw std::runtime_error("cannot unroll an empty nest");
  int inner = static_cast<int>(l.levels.size()) - 1;
  int64_t ilo = l.levels[inner].lower.eval(params);
  int64_t ext = l.levels[inner].upper.eval(params) - ilo;
  if (ext % factor != 0)
    throw std::runtime_error("innermost extent " + std::to_string(ext) +
                             " not divisible by unroll factor " +
                             std::to_string(factor));
  if (ilo != 0)
    throw std::runtime_error("unroll expects a zero-based innermost loop");

  LoopNestSpec r;
  r.name = l.name + ".x" + std::to_string(factor);
  r.levels = l.levels;
  r.levels[inner].lower = AffineConst(0);
  r.levels[inner].upper = AffineConst(ext / factor);
  r.array_shape = l.array_shape;

  size_t nv = l.values.size();
  // remap[k][v] = new id of value v in body copy k
  std::vector<std::vector<int>> remap(factor, std::vector<int>(nv, -1));
  struct CarryPatch {
    int new_value;
    int src_copy;
    int old_id;
  };
  std::vector<CarryPatch> patches;

  auto remap_expr = [&](const ScalarExpr &e, int k) {
    ScalarExpr out;
    out.c = e.c;
    for (auto &[lvl, co] : e.level_terms) {
      if (lvl == inner) {
        out.level_terms[lvl] += co * factor;
        out.c += AffineConst(co * k);
      } else {
        out.level_terms[lvl] += co;
      }
    }
    for (auto &[v, co] : e.value_terms)
      out.value_terms[remap[k][v]] += co;
    return out;
  };

  for (int k = 0; k < factor; ++k) {
    for (size_t vi = 0; vi < nv; ++vi) {
      const BodyValue &v = l.values[vi];
      switch (v.kind) {
      case BodyValue::IndexRef: {
        if (v.level != inner) {
          if (k == 0) {
            r.values.push_back(v);
            remap[k][vi] = static_cast<int>(r.values.size()) - 1;
          } else {
            remap[k][vi] = remap[0][vi];
          }
          break;
        }
        // Materialize f*i' + k only if some op reads the raw index; loads
        // and comparisons are rewritten instead.
        bool needs_value = false;
        for (auto &u : l.values)
          if (u.kind == BodyValue::Op && u.op != BodyOp::CmpEq &&
              u.op != BodyOp::CmpLt)
            for (auto &o : u.operands)
              if (o.value == static_cast<int>(vi))
                needs_value = true;
        if (needs_value) {
          int raw = r.add_index(inner);
          BodyValue mul;
          mul.kind = BodyValue::Op;
          mul.op = BodyOp::Mul;
          mul.operands.resize(2);
          mul.operands[0].value = raw;
          mul.operands[1].imm = AffineConst(factor);
          r.values.push_back(mul);
          BodyValue add;
          add.kind = BodyValue::Op;
          add.op = BodyOp::Add;
          add.operands.resize(2);
          add.operands[0].value = static_cast<int>(r.values.size()) - 1;
          add.operands[1].imm = AffineConst(k);
          r.values.push_back(add);
          remap[k][vi] = static_cast<int>(r.values.size()) - 1;
        } else {
          remap[k][vi] = r.add_index(inner); // placeholder for cmp rewrite
        }
        break;
      }
      case BodyValue::Load: {
        BodyValue c = v;
        for (auto &s : c.subscripts)
          s = remap_expr(s, k);
        r.values.push_back(c);
        remap[k][vi] = static_cast<int>(r.values.size()) - 1;
        break;
      }
      case BodyValue::Op: {
        BodyValue c = v;
        // Comparisons of the raw inner index against a literal fold.
        if ((c.op == BodyOp::CmpEq || c.op == BodyOp::CmpLt) &&
            c.operands.size() == 2 && c.operands[0].value >= 0 &&
            l.values[c.operands[0].value].kind == BodyValue::IndexRef &&
            l.values[c.operands[0].value].level == inner &&
            c.operands[1].value < 0 && c.operands[1].imm.is_literal()) {
          bool const_res = false;
          Word cv = 0;
          AffineConst new_rhs;
          BodyValue::Operand lhs;
          fold_unrolled_cmp(c.op, factor, k, c.operands[1].imm.base, lhs, new_rhs,
                            const_res, cv);
          if (const_res) {
            // Degenerates to a constant; keep as 0/1 via CmpEq(0, 1-ish).
            BodyValue cc;
            cc.kind = BodyValue::Op;
            cc.op = BodyOp::CmpEq;
            cc.operands.resize(2);
            cc.operands[0].imm = AffineConst(cv ? 0 : 1);
            cc.operands[1].imm = AffineConst(0);
            r.values.push_back(cc);
            remap[k][vi] = static_cast<int>(r.values.size()) - 1;
            break;
          }
          c.operands[0].value = remap[k][c.operands[0].value];
          c.operands[1].imm = new_rhs;
          r.values.push_back(c);
          remap[k][vi] = static_cast<int>(r.values.size()) - 1;
          break;
        }
        for (auto &o : c.operands)
          if (o.value >= 0)
            o.value = remap[k][o.value];
        r.values.push_back(c);
        remap[k][vi] = static_cast<int>(r.values.size()) - 1;
        break;
      }
      case BodyValue::Carry: {
        int src_copy = k - v.distance;
        if (src_copy >= 0) {
          // Produced earlier in the same unrolled iteration: direct use.
          remap[k][vi] = remap[src_copy][v.carry_of];
        } else {
          BodyValue c = v;
          c.distance = (v.distance - k + factor - 1) / factor;
          int src = ((k - v.distance) % factor + factor) % factor;
          c.carry_of = -1; // patched once all copies exist
          r.values.push_back(c);
          remap[k][vi] = static_cast<int>(r.values.size()) - 1;
          patches.push_back({remap[k][vi], src, v.carry_of});
        }
        break;
      }
      }
    }
  }
  for (auto &pc : patches)
    r.values[pc.new_value].carry_of = remap[pc.src_copy][pc.old_id];

  // Stores: drop copies that are provably overwritten by the final copy
  // (subscripts independent of the unrolled index).
  for (auto &st : l.stores) {
    bool depends_on_inner = false;
    for (auto &s : st.subscripts) {
      if (s.level_terms.count(inner) || !s.value_terms.empty())
        depends_on_inner = true;
    }
    for (int k = 0; k < factor; ++k) {
      if (!depends_on_inner && k != factor - 1)
        continue;
      StoreStmt s = st;
      for (auto &sub : s.subscripts)
        sub = remap_expr(sub, k);
      s.value = remap[k][st.value];
      r.stores.push_back(std::move(s));
    }
  }
  return r;
}

} // namespace gridloom
