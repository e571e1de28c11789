//===- pra.hpp - Piecewise regular algorithm data model -------------------===//
//
// Part of gridloom, under the Apache License v2.0.
// SPDX-License-Identifier: Apache-2.0
//
//===----------------------------------------------------------------------===//
//
// A piecewise regular algorithm (PRA) is a loop nest written as a set of
// quantized equations over a rectangular polyhedral iteration space. Every
// equation defines one variable instance per iteration inside its condition
// space. The text dialect is the one accepted by parse_pra(); see the README
// for the grammar.
//
//===----------------------------------------------------------------------===//

#ifndef GRIDLOOM_PRA_HPP
#define GRIDLOOM_PRA_HPP

#include "gridloom/common.hpp"

#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace gridloom {

// Rectangular box of iteration indices, inclusive bounds per dimension.
struct IterationSpace {
  int dims = 0;
  std::vector<AffineConst> lower; // size dims
  std::vector<AffineConst> upper; // size dims, inclusive

  // Extents after parameter substitution; an extent of 0 (lower = upper + 1)
  // is an empty space, anything below that is an error.
  std::vector<int64_t> extents(const ParamBindings &params) const;
};

// Conjunction of affine inequalities row * i >= offset. An empty list means
// the full iteration space.
struct ConditionSpace {
  struct Inequality {
    std::vector<int64_t> row; // length = dims
    AffineConst offset;
  };
  std::vector<Inequality> inequalities;

  bool contains(const IterVec &i, const ParamBindings &params) const;
};

// Affine access i -> matrix * i + offset. Internal variables are restricted
// to identity matrices with literal offsets (pure translations).
struct IndexingFunction {
  std::vector<std::vector<int64_t>> matrix; // rank rows x dims cols
  std::vector<AffineConst> offset;          // length rank

  int rank() const { return static_cast<int>(matrix.size()); }
  bool is_identity_translation(int dims) const;
  bool has_literal_offset() const;
  IterVec apply(const IterVec &i, const ParamBindings &params) const;
};

enum class VarKind { Input, Output, Internal };

struct Variable {
  std::string name;
  int rank = 0;
  VarKind kind = VarKind::Internal;
};

enum class PraOp { Copy, Add, Sub, Mul, Div, Select, Compare };

const char *pra_op_name(PraOp op);
int pra_op_arity(PraOp op);

struct VarRef {
  int var = -1; // index into PraProgram::variables
  IndexingFunction idx;
};

// An equation argument is either a variable reference or an integer literal.
using Arg = std::variant<VarRef, int64_t>;

struct Equation {
  std::string id; // label such as "S4b"; auto-assigned by the parser
  VarRef target;
  PraOp op = PraOp::Copy;
  std::vector<Arg> args;
  ConditionSpace domain;
};

struct PraProgram {
  std::string name;
  std::vector<std::string> parameters;
  std::vector<Variable> variables;
  IterationSpace space;
  std::vector<Equation> equations;

  int find_var(const std::string &name) const;
  const Variable &var(int idx) const { return variables[idx]; }
};

// How an equation argument relates to the iteration that evaluates it.
struct DependencyClass {
  enum Kind { Input, Output, IntraIteration, InterIteration } kind;
  IterVec distance; // only for InterIteration: consumer minus producer index
};

// --- Operations ---------------------------------------------------------

// Parses the PRA text dialect. Throws ParseError with line/column on
// malformed input, unknown identifiers, or arity mismatches.
PraProgram parse_pra(const std::string &text);

// Prints a program in the same dialect such that parse_pra(pretty_print(p))
// is structurally equal to p.
std::string pretty_print(const PraProgram &p);

// Structural PRA restrictions. Checks that need concrete loop bounds
// (single assignment, acyclicity, defined-before-use) run only when params
// bind every parameter; pass std::nullopt for a purely structural check.
std::vector<Diagnostic> validate_program(const PraProgram &p,
                                         const std::optional<ParamBindings> &params);

// All iterations of the box in lexicographic order.
std::vector<IterVec> enumerate_iterations(const IterationSpace &s,
                                          const ParamBindings &params);

// Classifies equation argument arg_index. Literal arguments carry no
// dependency and are rejected.
DependencyClass classify_dependency(const PraProgram &p, const Equation &e,
                                    int arg_index);

} // namespace gridloom

#endif // GRIDLOOM_PRA_HPP
