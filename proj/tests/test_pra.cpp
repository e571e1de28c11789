//===- test_pra.cpp - parser, validator, classification --------------------===//
// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "gridloom/pra.hpp"

using namespace gridloom;

namespace {

// Matrix multiplication in the text dialect, four internal and three I/O
// variables, one parameter, eight equations.
const char *kMatmul = R"(
program matrix_multiplication {
  // In-/Output variables
  variable A 2 in float; variable B 2 in float; variable C 2 out float;
  // Internal variables
  variable a 3 float; variable b 3 float; variable p 3 float; variable c 3 float;
  // Parameters with values assigned at instantiation
  parameter N;
  par (i_0 >= 0 and i_0 < N and i_1 >= 0 and i_1 < N and i_2 >= 0 and i_2 < N) {
    a[i_0,i_1,i_2] = A[i_0,i_2] if (i_1 == 0);
    a[i_0,i_1,i_2] = a[i_0,i_1 - 1,i_2] if (i_1 > 0);
    b[i_0,i_1,i_2] = B[i_2,i_1] if (i_0 == 0);
    b[i_0,i_1,i_2] = b[i_0 - 1,i_1,i_2] if (i_0 > 0);
    p[i_0,i_1,i_2] = a[i_0,i_1,i_2] * b[i_0,i_1,i_2];
    c[i_0,i_1,i_2] = p[i_0,i_1,i_2] if (i_2 == 0);
    c[i_0,i_1,i_2] = p[i_0,i_1,i_2] + c[i_0,i_1,i_2 - 1] if (i_2 > 0);
    C[i_0,i_1] = c[i_0,i_1,i_2] if (i_2 == N - 1);
  }
}
)";

} // namespace

TEST_CASE("parse matmul program") {
  PraProgram p = parse_pra(kMatmul);
  CHECK(p.name == "matrix_multiplication");
  CHECK(p.parameters == std::vector<std::string>{"N"});
  CHECK(p.variables.size() == 7);
  int internals = 0, ios = 0;
  for (auto &v : p.variables)
    (v.kind == VarKind::Internal ? internals : ios)++;
  CHECK(internals == 4);
  CHECK(ios == 3);
  CHECK(p.equations.size() == 8);
  CHECK(p.space.dims == 3);

  // read indexing of the propagated a is the identity with offset (0,-1,0)
  const Equation &s1b = p.equations[1];
  const VarRef &r = std::get<VarRef>(s1b.args[0]);
  CHECK(r.idx.is_identity_translation(3));
  CHECK(r.idx.offset[1].base == -1);
}

TEST_CASE("parse minimal one-equation program") {
  PraProgram p = parse_pra("program copy { variable x 1 in int32; variable y 1 out "
                           "int32; parameter N; par (i_0 >= 0 and i_0 < N) { "
                           "y[i_0] = x[i_0]; } }");
  CHECK(p.equations.size() == 1);
  CHECK(p.equations[0].op == PraOp::Copy);
  const VarRef &r = std::get<VarRef>(p.equations[0].args[0]);
  CHECK(r.idx.matrix == std::vector<std::vector<int64_t>>{{1}});
  CHECK(r.idx.offset[0].base == 0);
}

TEST_CASE("syntax error reports the line") {
  const char *bad = "program p {\n"
                    "  variable x 1 in int32; variable y 1 out int32;\n"
                    "  parameter N;\n"
                    "  par (i_0 >= 0 and i_0 < N) {\n"
                    "    y[i_0] = x[i_0] if (i_0 > 0;\n"
                    "  }\n"
                    "}\n";
  try {
    parse_pra(bad);
    FAIL("expected a parse error");
  } catch (const ParseError &e) {
    CHECK(e.diag.line == 5);
  }
}

TEST_CASE("unknown identifier and arity errors") {
  CHECK_THROWS_AS(parse_pra("program p { variable y 1 out int32; parameter N; "
                            "par (i_0 >= 0 and i_0 < N) { y[i_0] = zz[i_0]; } }"),
                  ParseError);
  CHECK_THROWS_AS(parse_pra("program p { variable x 1 in int32; variable y 1 out "
                            "int32; parameter N; par (i_0 >= 0 and i_0 < N) { "
                            "y[i_0] = select(x[i_0], x[i_0]); } }"),
                  ParseError);
}

TEST_CASE("validate matmul at N=4: no diagnostics") {
  PraProgram p = parse_pra(kMatmul);
  ParamBindings params{{"N", 4}};
  auto diags = validate_program(p, params);
  for (auto &d : diags)
    MESSAGE(d.str());
  CHECK(diags.empty());
}

TEST_CASE("non-identity indexing on an internal variable is rejected") {
  const char *text = "program p { variable t 2 int32; variable y 1 out int32; "
                     "parameter N; "
                     "par (i_0 >= 0 and i_0 < N and i_1 >= 0 and i_1 < N and "
                     "i_2 >= 0 and i_2 < N) { "
                     "t[i_0,i_2] = t[i_0,i_2]; y[i_0] = t[i_0,i_1]; } }";
  // t has rank 2 over a 3-dim space: matrix [[1,0,0],[0,0,1]] is not identity.
  PraProgram p = parse_pra(text);
  auto diags = validate_program(p, std::nullopt);
  bool found = false;
  for (auto &d : diags)
    if (d.message.find("non-identity indexing") != std::string::npos)
      found = true;
  CHECK(found);
}

TEST_CASE("overlapping domains produce a single-assignment diagnostic") {
  // Two equations define c at i_2 = 0; checked by enumeration at N=4.
  const char *text = R"(
program p {
  variable x 1 in int32; variable y 1 out int32; variable c 3 int32;
  parameter N;
  par (i_0 >= 0 and i_0 < N and i_1 >= 0 and i_1 < N and i_2 >= 0 and i_2 < N) {
    c[i_0,i_1,i_2] = x[i_0] if (i_2 == 0);
    c[i_0,i_1,i_2] = x[i_1] if (i_2 < 2);
    y[i_0] = c[i_0,i_1,i_2] if (i_1 == 0 and i_2 == N - 1);
  }
}
)";
  PraProgram p = parse_pra(text);
  ParamBindings params{{"N", 4}};
  auto diags = validate_program(p, params);
  bool found = false;
  for (auto &d : diags)
    if (d.message.find("single-assignment") != std::string::npos)
      found = true;
  CHECK(found);
}

TEST_CASE("enumerate_iterations") {
  IterationSpace s;
  s.dims = 3;
  s.lower = {AffineConst(0), AffineConst(0), AffineConst(0)};
  s.upper = {AffineConst(1), AffineConst(1), AffineConst(1)};
  auto pts = enumerate_iterations(s, {});
  REQUIRE(pts.size() == 8);
  CHECK(pts.front() == IterVec{0, 0, 0});
  CHECK(pts.back() == IterVec{1, 1, 1});

  // 4 x 4 x 4 space has 64 points
  IterationSpace s4;
  s4.dims = 3;
  AffineConst nm1 = AffineConst::param("N") + AffineConst(-1);
  s4.lower = {AffineConst(0), AffineConst(0), AffineConst(0)};
  s4.upper = {nm1, nm1, nm1};
  CHECK(enumerate_iterations(s4, {{"N", 4}}).size() == 64);

  // empty dimension
  IterationSpace se;
  se.dims = 1;
  se.lower = {AffineConst(0)};
  se.upper = {AffineConst(-1)};
  CHECK(enumerate_iterations(se, {}).empty());
}

TEST_CASE("classify_dependency on the matmul equations") {
  PraProgram p = parse_pra(kMatmul);
  // S1a reads input A
  CHECK(classify_dependency(p, p.equations[0], 0).kind == DependencyClass::Input);
  // p = a * b reads a within the same iteration
  CHECK(classify_dependency(p, p.equations[4], 0).kind ==
        DependencyClass::IntraIteration);
  // c accumulation reads c[i0,i1,i2-1]: inter-iteration, distance (0,0,1)
  auto c = classify_dependency(p, p.equations[6], 1);
  CHECK(c.kind == DependencyClass::InterIteration);
  CHECK(c.distance == IterVec{0, 0, 1});
  // literal argument carries no dependency
  PraProgram q = parse_pra("program l { variable y 1 out int32; parameter N; "
                           "par (i_0 >= 0 and i_0 < N) { y[i_0] = 3; } }");
  CHECK_THROWS_AS(classify_dependency(q, q.equations[0], 0), std::invalid_argument);
}

TEST_CASE("pretty-print round trip is structurally equal") {
  PraProgram p = parse_pra(kMatmul);
  PraProgram q = parse_pra(pretty_print(p));
  REQUIRE(q.equations.size() == p.equations.size());
  CHECK(q.space.dims == p.space.dims);
  CHECK(pretty_print(q) == pretty_print(p));
  for (size_t i = 0; i < p.equations.size(); ++i) {
    CHECK(q.equations[i].op == p.equations[i].op);
    CHECK(q.equations[i].target.var == p.equations[i].target.var);
    CHECK(q.equations[i].domain.inequalities.size() ==
          p.equations[i].domain.inequalities.size());
  }
}

TEST_CASE("iteration-level dependence graph is acyclic at N in {2,4}") {
  PraProgram p = parse_pra(kMatmul);
  for (int64_t n : {2, 4}) {
    ParamBindings params{{"N", n}};
    auto diags = validate_program(p, params);
    CHECK(diags.empty());
  }
}
