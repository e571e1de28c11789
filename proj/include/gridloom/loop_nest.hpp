//===- loop_nest.hpp - Structured loop-nest specifications ----------------===//
//
// Part of gridloom, under the Apache License v2.0.
// SPDX-License-Identifier: Apache-2.0
//
//===----------------------------------------------------------------------===//
//
// Input form for the operation-centric path: up to four perfectly nested
// counted loops around a straight-line body in SSA form. Guarded updates are
// expressed with Sel values (partial predication: both arms are computed and
// the select picks one).
//
//===----------------------------------------------------------------------===//

#ifndef GRIDLOOM_LOOP_NEST_HPP
#define GRIDLOOM_LOOP_NEST_HPP

#include "gridloom/common.hpp"
#include "gridloom/memimage.hpp"

#include <map>
#include <string>
#include <vector>

namespace gridloom {

struct LoopLevel {
  std::string index;
  AffineConst lower;  // inclusive
  AffineConst upper;  // exclusive
};

// Affine scalar over loop indices, earlier body values, and parameters.
struct ScalarExpr {
  AffineConst c;
  std::map<int, int64_t> level_terms; // loop level -> coefficient
  std::map<int, int64_t> value_terms; // body value id -> coefficient

  static ScalarExpr level(int l, int64_t k = 1) {
    ScalarExpr e;
    e.level_terms[l] = k;
    return e;
  }
  static ScalarExpr constant(AffineConst a) {
    ScalarExpr e;
    e.c = std::move(a);
    return e;
  }
  ScalarExpr operator+(const ScalarExpr &o) const;
  ScalarExpr scaled(int64_t k) const;
};

enum class BodyOp { Add, Sub, Mul, Div, CmpEq, CmpLt, Sel };

// One SSA value of the loop body.
struct BodyValue {
  enum Kind { IndexRef, Load, Op, Carry } kind;

  int level = -1; // IndexRef

  std::string array; // Load
  std::vector<ScalarExpr> subscripts;

  BodyOp op = BodyOp::Add; // Op
  struct Operand {
    int value = -1; // body value id, or -1 for an immediate
    AffineConst imm;
  };
  std::vector<Operand> operands;

  int carry_of = -1; // Carry: value id whose earlier-iteration result is read
  int distance = 1;  // iterations back, in flattened iteration order
  Word init = 0;     // value before the first producing iteration
};

struct StoreStmt {
  std::string array;
  std::vector<ScalarExpr> subscripts;
  int value = -1;
};

struct LoopNestSpec {
  std::string name;
  std::vector<LoopLevel> levels; // outermost first, at most 4
  std::map<std::string, std::vector<int64_t>> array_shape;
  std::vector<BodyValue> values;
  std::vector<StoreStmt> stores;

  int add_index(int level);
  int add_load(const std::string &array, std::vector<ScalarExpr> subscripts);
  int add_op(BodyOp op, std::vector<BodyValue::Operand> operands);
  int add_carry(int of, int distance, Word init);
  void add_store(const std::string &array, std::vector<ScalarExpr> subscripts,
                 int value);

  int64_t trip_count(const ParamBindings &params) const;
};

// Scalar reference evaluation of the nest over memory images; mutates the
// stored-to arrays in place. Used as the semantics oracle for the loop
// transformations and by the benchmark harness.
void eval_loop_nest(const LoopNestSpec &l, const ParamBindings &params,
                    ImageSet &images);

// Collapses a multi-level nest into a single loop whose body recovers the
// original indices with explicit guarded counter updates. Bounds become
// literals, so all parameters must be bound.
LoopNestSpec flatten_loop(const LoopNestSpec &l, const ParamBindings &params);

// Replicates the body `factor` times over the innermost loop. The innermost
// extent must be divisible by the factor.
LoopNestSpec unroll_loop(const LoopNestSpec &l, int factor,
                         const ParamBindings &params);

} // namespace gridloom

#endif // GRIDLOOM_LOOP_NEST_HPP
