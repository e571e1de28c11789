//===- test_interp.cpp - reference interpreter oracle checks ---------------===//
// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "gridloom/interp.hpp"

#include <random>
#include <sstream>

using namespace gridloom;

namespace {

const char *kMatmul = R"(
program mm {
  variable A 2 in int32; variable B 2 in int32; variable C 2 out int32;
  variable a 3 int32; variable b 3 int32; variable p 3 int32; variable c 3 int32;
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

MemoryImage random_matrix(const std::string &name, int64_t n, uint32_t seed) {
  MemoryImage img = MemoryImage::zeros(name, {n, n});
  std::mt19937 rng(seed);
  std::uniform_int_distribution<int> d(-128, 127);
  for (auto &w : img.data)
    w = d(rng);
  return img;
}

} // namespace

TEST_CASE("matmul with identity A equals B") {
  int64_t n = 4;
  ImageSet in;
  MemoryImage a = MemoryImage::zeros("A", {n, n});
  for (int64_t i = 0; i < n; ++i)
    a.at({i, i}) = 1;
  in.emplace("A", a);
  in.emplace("B", random_matrix("B", n, 7));
  PraProgram p = parse_pra(kMatmul);
  auto out = interpret(p, {{"N", n}}, in);
  REQUIRE(out.count("C"));
  CHECK(out.at("C").data == in.at("B").data);
}

TEST_CASE("matmul equals a direct triple loop at N=4") {
  int64_t n = 4;
  ImageSet in;
  in.emplace("A", random_matrix("A", n, 11));
  in.emplace("B", random_matrix("B", n, 13));
  PraProgram p = parse_pra(kMatmul);
  auto out = interpret(p, {{"N", n}}, in);

  // independent triple-loop oracle with the same wrapping semantics
  MemoryImage expect = MemoryImage::zeros("C", {n, n});
  for (int64_t i = 0; i < n; ++i)
    for (int64_t j = 0; j < n; ++j) {
      Word acc = 0;
      for (int64_t k = 0; k < n; ++k)
        acc = wrap_add(acc, wrap_mul(in.at("A").at({i, k}), in.at("B").at({k, j})));
      expect.at({i, j}) = acc;
    }
  CHECK(out.at("C").data == expect.data);
}

TEST_CASE("division by zero reports the iteration") {
  const char *text = "program d { variable x 1 in int32; variable y 1 out int32; "
                     "parameter N; par (i_0 >= 0 and i_0 < N) { "
                     "y[i_0] = 7 / x[i_0]; } }";
  PraProgram p = parse_pra(text);
  ImageSet in;
  MemoryImage x = MemoryImage::zeros("x", {3});
  x.at({0}) = 1;
  x.at({1}) = 0;
  x.at({2}) = 2;
  in.emplace("x", x);
  try {
    interpret(p, {{"N", 3}}, in);
    FAIL("expected division by zero");
  } catch (const std::runtime_error &e) {
    CHECK(std::string(e.what()).find("(1)") != std::string::npos);
  }
}

TEST_CASE("read of an undefined instance is an error") {
  const char *text = "program u { variable y 1 out int32; variable t 1 int32; "
                     "parameter N; par (i_0 >= 0 and i_0 < N) { "
                     "t[i_0] = t[i_0 - 1] if (i_0 > 0); "
                     "y[i_0] = t[i_0]; } }";
  PraProgram p = parse_pra(text);
  CHECK_THROWS_WITH_AS(interpret(p, {{"N", 2}}, {}),
                       doctest::Contains("undefined"), std::runtime_error);
}

TEST_CASE("interpreter matches forward-order evaluation (schedule independence)") {
  // Forward lexicographic evaluation is one legal order for the matmul;
  // interpret() uses demand order. Both must agree.
  int64_t n = 4;
  ImageSet in;
  in.emplace("A", random_matrix("A", n, 3));
  in.emplace("B", random_matrix("B", n, 5));
  PraProgram p = parse_pra(kMatmul);
  auto out = interpret(p, {{"N", n}}, in);

  ParamBindings params{{"N", n}};
  std::map<std::pair<int, IterVec>, Word> vals;
  MemoryImage c = MemoryImage::zeros("C", {n, n});
  for (auto &i : enumerate_iterations(p.space, params)) {
    for (auto &eq : p.equations) {
      if (!eq.domain.contains(i, params))
        continue;
      std::vector<Word> argv;
      for (auto &a : eq.args) {
        const VarRef &r = std::get<VarRef>(a);
        IterVec idx = r.idx.apply(i, params);
        if (p.variables[r.var].kind == VarKind::Input)
          argv.push_back(in.at(p.variables[r.var].name).at(idx));
        else
          argv.push_back(vals.at({r.var, idx}));
      }
      Word w = eval_pra_op(eq.op, argv, i);
      if (p.variables[eq.target.var].kind == VarKind::Output)
        c.at(eq.target.idx.apply(i, params)) = w;
      else
        vals[{eq.target.var, eq.target.idx.apply(i, params)}] = w;
    }
  }
  CHECK(out.at("C").data == c.data);
}

TEST_CASE("memory image round trip") {
  ImageSet set;
  set.emplace("A", random_matrix("A", 5, 21));
  MemoryImage v = MemoryImage::zeros("v", {7});
  for (int i = 0; i < 7; ++i)
    v.at({i}) = i * i - 3;
  set.emplace("v", v);
  std::stringstream ss;
  write_images(ss, set);
  ImageSet back = read_images(ss);
  CHECK(images_equal(set, back));
}
