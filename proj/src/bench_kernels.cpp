//===- bench_kernels.cpp - Benchmark kernel definitions ---------------------===//
//
// Part of gridloom, under the Apache License v2.0.
// SPDX-License-Identifier: Apache-2.0
//
//===----------------------------------------------------------------------===//
//
// Five linear-algebra kernels in two equivalent forms each. The quantized
// equation form localizes all reuse into uniform propagation chains so that
// every dependency is a constant translation; the loop-nest form is the
// plain imperative kernel with guarded updates select-converted.
//
// Kernel definitions (all matrices N x N, vectors length N, 32-bit words):
//   GEMM     D = A * B + C
//   ATAX     y = At * (A * x)
//   GESUMMV  y = A * x + B * x
//   MVT      z1 = x1 + A * y1;  z2 = x2 + At * y2
//   TRISOLV  x_i = (y_i - sum_{j<i} a_{j,i} * x_j) / a_{i,i}
//            (A upper triangular, so the mirrored sum over j > i is zero)
//   TRSM     N independent TRISOLV solves sharing one matrix
//
//===----------------------------------------------------------------------===//

#include "gridloom/bench.hpp"

#include <random>

namespace gridloom {

namespace {

MemoryImage random_image(const std::string &name, std::vector<int64_t> extents,
                         std::mt19937 &rng) {
  MemoryImage img = MemoryImage::zeros(name, std::move(extents));
  std::uniform_int_distribution<int> d(-128, 127);
  for (auto &w : img.data)
    w = d(rng);
  return img;
}

ScalarExpr lv(int level) { return ScalarExpr::level(level); }
ScalarExpr cst(int64_t v) { return ScalarExpr::constant(AffineConst(v)); }

BodyValue::Operand val(int v) {
  BodyValue::Operand o;
  o.value = v;
  return o;
}
BodyValue::Operand imm(int64_t v) {
  BodyValue::Operand o;
  o.imm = AffineConst(v);
  return o;
}

// ---- GEMM ----------------------------------------------------------------

const char *kGemmPra = R"(program gemm {
  variable A 2 in int32; variable B 2 in int32; variable C 2 in int32;
  variable D 2 out int32;
  variable a 3 int32; variable b 3 int32; variable p 3 int32; variable c 3 int32;
  parameter N;
  par (i_0 >= 0 and i_0 < N and i_1 >= 0 and i_1 < N and i_2 >= 0 and i_2 < N) {
    a[i_0,i_1,i_2] = A[i_0,i_2] if (i_1 == 0);
    a[i_0,i_1,i_2] = a[i_0,i_1 - 1,i_2] if (i_1 > 0);
    b[i_0,i_1,i_2] = B[i_2,i_1] if (i_0 == 0);
    b[i_0,i_1,i_2] = b[i_0 - 1,i_1,i_2] if (i_0 > 0);
    p[i_0,i_1,i_2] = a[i_0,i_1,i_2] * b[i_0,i_1,i_2];
    c[i_0,i_1,i_2] = p[i_0,i_1,i_2] + C[i_0,i_1] if (i_2 == 0);
    c[i_0,i_1,i_2] = p[i_0,i_1,i_2] + c[i_0,i_1,i_2 - 1] if (i_2 > 0);
    D[i_0,i_1] = c[i_0,i_1,i_2] if (i_2 == N - 1);
  }
})";

std::vector<LoopNestSpec> gemm_nests(int64_t n) { return {matmul_nest(n, true)}; }

ImageSet gemm_inputs(int64_t n, uint32_t seed) {
  std::mt19937 rng(seed);
  ImageSet in;
  in.emplace("A", random_image("A", {n, n}, rng));
  in.emplace("B", random_image("B", {n, n}, rng));
  in.emplace("C", random_image("C", {n, n}, rng));
  return in;
}

ImageSet gemm_oracle(const ImageSet &in, int64_t n) {
  MemoryImage d = MemoryImage::zeros("D", {n, n});
  for (int64_t i = 0; i < n; ++i)
    for (int64_t j = 0; j < n; ++j) {
      Word acc = in.at("C").at({i, j});
      for (int64_t k = 0; k < n; ++k)
        acc = wrap_add(acc, wrap_mul(in.at("A").at({i, k}), in.at("B").at({k, j})));
      d.at({i, j}) = acc;
    }
  ImageSet out;
  out.emplace("D", std::move(d));
  return out;
}

// ---- ATAX ------------------------------------------------------------------
//
// Two passes share one 2N x N space. Rows 0..N-1 accumulate t_i = sum_j
// A[i,j] x_j left to right. The finished t_i then travels along the
// anti-diagonal i_0 + i_1 = i + N - 1, so iteration (i_0, i_1) sees
// t_{i_0+i_1-N+1} and multiplies it with A[i_0+i_1-N+1, i_1]; summing those
// products down each column accumulates y. Rows N..2N-1 finish the columns.

const char *kAtaxPra = R"(program atax {
  variable A 2 in int32; variable x 1 in int32; variable y 1 out int32;
  variable xc 2 int32; variable a 2 int32; variable q 2 int32; variable t 2 int32;
  variable tf 2 int32; variable ad 2 int32; variable u 2 int32; variable ya 2 int32;
  parameter N; parameter M;
  par (i_0 >= 0 and i_0 < M and i_1 >= 0 and i_1 < N) {
    xc[i_0,i_1] = x[i_1] if (i_0 == 0);
    xc[i_0,i_1] = xc[i_0 - 1,i_1] if (i_0 > 0 and i_0 < N);
    a[i_0,i_1] = A[i_0,i_1] if (i_0 < N);
    q[i_0,i_1] = a[i_0,i_1] * xc[i_0,i_1] if (i_0 < N);
    t[i_0,i_1] = q[i_0,i_1] if (i_0 < N and i_1 == 0);
    t[i_0,i_1] = t[i_0,i_1 - 1] + q[i_0,i_1] if (i_0 < N and i_1 > 0);
    tf[i_0,i_1] = t[i_0,i_1] if (i_0 < N and i_1 == N - 1);
    tf[i_0,i_1] = tf[i_0 - 1,i_1 + 1] if (i_1 < N - 1 and i_0 + i_1 >= N - 1 and i_0 + i_1 <= 2*N - 2);
    ad[i_0,i_1] = A[i_0 + i_1 - N + 1,i_1] if (i_0 + i_1 >= N - 1 and i_0 + i_1 <= 2*N - 2);
    u[i_0,i_1] = ad[i_0,i_1] * tf[i_0,i_1] if (i_0 + i_1 >= N - 1 and i_0 + i_1 <= 2*N - 2);
    ya[i_0,i_1] = u[i_0,i_1] if (i_0 + i_1 == N - 1);
    ya[i_0,i_1] = ya[i_0 - 1,i_1] + u[i_0,i_1] if (i_0 + i_1 > N - 1 and i_0 + i_1 <= 2*N - 2);
    ya[i_0,i_1] = ya[i_0 - 1,i_1] if (i_0 + i_1 > 2*N - 2);
    y[i_1] = ya[i_0,i_1] if (i_0 == M - 1);
  }
})";

std::vector<LoopNestSpec> atax_nests(int64_t n) {
  // pass 1: tmp[i] = sum_j A[i,j] * x[j]
  LoopNestSpec k1;
  k1.name = "atax.tmp";
  k1.levels = {{"i", AffineConst(0), AffineConst(n)},
               {"j", AffineConst(0), AffineConst(n)}};
  k1.array_shape = {{"A", {n, n}}, {"x", {n}}, {"tmp", {n}}};
  {
    int j = k1.add_index(1);
    int first = k1.add_op(BodyOp::CmpEq, {val(j), imm(0)});
    int la = k1.add_load("A", {lv(0), lv(1)});
    int lx = k1.add_load("x", {lv(1)});
    int prod = k1.add_op(BodyOp::Mul, {val(la), val(lx)});
    int acc_id = static_cast<int>(k1.values.size()) + 2;
    int carry = k1.add_carry(acc_id, 1, 0);
    int base = k1.add_op(BodyOp::Sel, {val(first), imm(0), val(carry)});
    int acc = k1.add_op(BodyOp::Add, {val(base), val(prod)});
    k1.add_store("tmp", {lv(0)}, acc);
  }
  // pass 2: y[i] = sum_j A[j,i] * tmp[j]
  LoopNestSpec k2;
  k2.name = "atax.y";
  k2.levels = k1.levels;
  k2.array_shape = {{"A", {n, n}}, {"tmp", {n}}, {"y", {n}}};
  {
    int j = k2.add_index(1);
    int first = k2.add_op(BodyOp::CmpEq, {val(j), imm(0)});
    int la = k2.add_load("A", {lv(1), lv(0)});
    int lt = k2.add_load("tmp", {lv(1)});
    int prod = k2.add_op(BodyOp::Mul, {val(la), val(lt)});
    int acc_id = static_cast<int>(k2.values.size()) + 2;
    int carry = k2.add_carry(acc_id, 1, 0);
    int base = k2.add_op(BodyOp::Sel, {val(first), imm(0), val(carry)});
    int acc = k2.add_op(BodyOp::Add, {val(base), val(prod)});
    k2.add_store("y", {lv(0)}, acc);
  }
  return {k1, k2};
}

ImageSet atax_inputs(int64_t n, uint32_t seed) {
  std::mt19937 rng(seed);
  ImageSet in;
  in.emplace("A", random_image("A", {n, n}, rng));
  in.emplace("x", random_image("x", {n}, rng));
  return in;
}

ImageSet atax_oracle(const ImageSet &in, int64_t n) {
  std::vector<Word> tmp(n, 0);
  for (int64_t i = 0; i < n; ++i)
    for (int64_t j = 0; j < n; ++j)
      tmp[i] = wrap_add(tmp[i], wrap_mul(in.at("A").at({i, j}), in.at("x").at({j})));
  MemoryImage y = MemoryImage::zeros("y", {n});
  for (int64_t j = 0; j < n; ++j)
    for (int64_t i = 0; i < n; ++i)
      y.at({j}) = wrap_add(y.at({j}), wrap_mul(in.at("A").at({i, j}), tmp[i]));
  ImageSet out;
  out.emplace("y", std::move(y));
  return out;
}

// ---- GESUMMV ---------------------------------------------------------------

const char *kGesummvPra = R"(program gesummv {
  variable A 2 in int32; variable B 2 in int32; variable x 1 in int32;
  variable y 1 out int32;
  variable xc 2 int32; variable a 2 int32; variable b 2 int32;
  variable pa 2 int32; variable pb 2 int32;
  variable sa 2 int32; variable sb 2 int32; variable yv 2 int32;
  parameter N;
  par (i_0 >= 0 and i_0 < N and i_1 >= 0 and i_1 < N) {
    xc[i_0,i_1] = x[i_1] if (i_0 == 0);
    xc[i_0,i_1] = xc[i_0 - 1,i_1] if (i_0 > 0);
    a[i_0,i_1] = A[i_0,i_1];
    b[i_0,i_1] = B[i_0,i_1];
    pa[i_0,i_1] = a[i_0,i_1] * xc[i_0,i_1];
    pb[i_0,i_1] = b[i_0,i_1] * xc[i_0,i_1];
    sa[i_0,i_1] = pa[i_0,i_1] if (i_1 == 0);
    sa[i_0,i_1] = sa[i_0,i_1 - 1] + pa[i_0,i_1] if (i_1 > 0);
    sb[i_0,i_1] = pb[i_0,i_1] if (i_1 == 0);
    sb[i_0,i_1] = sb[i_0,i_1 - 1] + pb[i_0,i_1] if (i_1 > 0);
    yv[i_0,i_1] = sa[i_0,i_1] + sb[i_0,i_1] if (i_1 == N - 1);
    y[i_0] = yv[i_0,i_1] if (i_1 == N - 1);
  }
})";

std::vector<LoopNestSpec> gesummv_nests(int64_t n) {
  LoopNestSpec l;
  l.name = "gesummv";
  l.levels = {{"i", AffineConst(0), AffineConst(n)},
              {"j", AffineConst(0), AffineConst(n)}};
  l.array_shape = {{"A", {n, n}}, {"B", {n, n}}, {"x", {n}}, {"y", {n}}};
  int j = l.add_index(1);
  int first = l.add_op(BodyOp::CmpEq, {val(j), imm(0)});
  int la = l.add_load("A", {lv(0), lv(1)});
  int lb = l.add_load("B", {lv(0), lv(1)});
  int lx = l.add_load("x", {lv(1)});
  int p1 = l.add_op(BodyOp::Mul, {val(la), val(lx)});
  int p2 = l.add_op(BodyOp::Mul, {val(lb), val(lx)});
  int s1_id = static_cast<int>(l.values.size()) + 2;
  int c1 = l.add_carry(s1_id, 1, 0);
  int b1 = l.add_op(BodyOp::Sel, {val(first), imm(0), val(c1)});
  int s1 = l.add_op(BodyOp::Add, {val(b1), val(p1)});
  int s2_id = static_cast<int>(l.values.size()) + 2;
  int c2 = l.add_carry(s2_id, 1, 0);
  int b2 = l.add_op(BodyOp::Sel, {val(first), imm(0), val(c2)});
  int s2 = l.add_op(BodyOp::Add, {val(b2), val(p2)});
  int sum = l.add_op(BodyOp::Add, {val(s1), val(s2)});
  l.add_store("y", {lv(0)}, sum);
  return {l};
}

ImageSet gesummv_inputs(int64_t n, uint32_t seed) {
  std::mt19937 rng(seed);
  ImageSet in;
  in.emplace("A", random_image("A", {n, n}, rng));
  in.emplace("B", random_image("B", {n, n}, rng));
  in.emplace("x", random_image("x", {n}, rng));
  return in;
}

ImageSet gesummv_oracle(const ImageSet &in, int64_t n) {
  MemoryImage y = MemoryImage::zeros("y", {n});
  for (int64_t i = 0; i < n; ++i) {
    Word sa = 0, sb = 0;
    for (int64_t j = 0; j < n; ++j) {
      sa = wrap_add(sa, wrap_mul(in.at("A").at({i, j}), in.at("x").at({j})));
      sb = wrap_add(sb, wrap_mul(in.at("B").at({i, j}), in.at("x").at({j})));
    }
    y.at({i}) = wrap_add(sa, sb);
  }
  ImageSet out;
  out.emplace("y", std::move(y));
  return out;
}

// ---- MVT -------------------------------------------------------------------
// z1 accumulates along i_1 with y1 broadcast down columns; z2 reads A
// transposed and accumulates along i_0 with y2 broadcast along rows.

const char *kMvtPra = R"(program mvt {
  variable A 2 in int32;
  variable x1 1 in int32; variable y1 1 in int32; variable z1 1 out int32;
  variable x2 1 in int32; variable y2 1 in int32; variable z2 1 out int32;
  variable a 2 int32; variable c1 2 int32; variable c2 2 int32;
  variable p1 2 int32; variable p2 2 int32; variable s1 2 int32; variable s2 2 int32;
  parameter N;
  par (i_0 >= 0 and i_0 < N and i_1 >= 0 and i_1 < N) {
    a[i_0,i_1] = A[i_0,i_1];
    c1[i_0,i_1] = y1[i_1] if (i_0 == 0);
    c1[i_0,i_1] = c1[i_0 - 1,i_1] if (i_0 > 0);
    c2[i_0,i_1] = y2[i_0] if (i_1 == 0);
    c2[i_0,i_1] = c2[i_0,i_1 - 1] if (i_1 > 0);
    p1[i_0,i_1] = a[i_0,i_1] * c1[i_0,i_1];
    p2[i_0,i_1] = a[i_0,i_1] * c2[i_0,i_1];
    s1[i_0,i_1] = x1[i_0] + p1[i_0,i_1] if (i_1 == 0);
    s1[i_0,i_1] = s1[i_0,i_1 - 1] + p1[i_0,i_1] if (i_1 > 0);
    s2[i_0,i_1] = x2[i_1] + p2[i_0,i_1] if (i_0 == 0);
    s2[i_0,i_1] = s2[i_0 - 1,i_1] + p2[i_0,i_1] if (i_0 > 0);
    z1[i_0] = s1[i_0,i_1] if (i_1 == N - 1);
    z2[i_1] = s2[i_0,i_1] if (i_0 == N - 1);
  }
})";

std::vector<LoopNestSpec> mvt_nests(int64_t n) {
  LoopNestSpec k1;
  k1.name = "mvt.z1";
  k1.levels = {{"i", AffineConst(0), AffineConst(n)},
               {"j", AffineConst(0), AffineConst(n)}};
  k1.array_shape = {{"A", {n, n}}, {"x1", {n}}, {"y1", {n}}, {"z1", {n}}};
  {
    int j = k1.add_index(1);
    int first = k1.add_op(BodyOp::CmpEq, {val(j), imm(0)});
    int la = k1.add_load("A", {lv(0), lv(1)});
    int ly = k1.add_load("y1", {lv(1)});
    int lx = k1.add_load("x1", {lv(0)});
    int prod = k1.add_op(BodyOp::Mul, {val(la), val(ly)});
    int acc_id = static_cast<int>(k1.values.size()) + 2;
    int carry = k1.add_carry(acc_id, 1, 0);
    int base = k1.add_op(BodyOp::Sel, {val(first), val(lx), val(carry)});
    int acc = k1.add_op(BodyOp::Add, {val(base), val(prod)});
    k1.add_store("z1", {lv(0)}, acc);
  }
  LoopNestSpec k2 = k1;
  k2.name = "mvt.z2";
  k2.array_shape = {{"A", {n, n}}, {"x2", {n}}, {"y2", {n}}, {"z2", {n}}};
  {
    k2.values.clear();
    k2.stores.clear();
    int j = k2.add_index(1);
    int first = k2.add_op(BodyOp::CmpEq, {val(j), imm(0)});
    int la = k2.add_load("A", {lv(1), lv(0)});
    int ly = k2.add_load("y2", {lv(1)});
    int lx = k2.add_load("x2", {lv(0)});
    int prod = k2.add_op(BodyOp::Mul, {val(la), val(ly)});
    int acc_id = static_cast<int>(k2.values.size()) + 2;
    int carry = k2.add_carry(acc_id, 1, 0);
    int base = k2.add_op(BodyOp::Sel, {val(first), val(lx), val(carry)});
    int acc = k2.add_op(BodyOp::Add, {val(base), val(prod)});
    k2.add_store("z2", {lv(0)}, acc);
  }
  return {k1, k2};
}

ImageSet mvt_inputs(int64_t n, uint32_t seed) {
  std::mt19937 rng(seed);
  ImageSet in;
  in.emplace("A", random_image("A", {n, n}, rng));
  in.emplace("x1", random_image("x1", {n}, rng));
  in.emplace("y1", random_image("y1", {n}, rng));
  in.emplace("x2", random_image("x2", {n}, rng));
  in.emplace("y2", random_image("y2", {n}, rng));
  return in;
}

ImageSet mvt_oracle(const ImageSet &in, int64_t n) {
  MemoryImage z1 = MemoryImage::zeros("z1", {n});
  MemoryImage z2 = MemoryImage::zeros("z2", {n});
  for (int64_t i = 0; i < n; ++i) {
    Word acc = in.at("x1").at({i});
    for (int64_t j = 0; j < n; ++j)
      acc = wrap_add(acc, wrap_mul(in.at("A").at({i, j}), in.at("y1").at({j})));
    z1.at({i}) = acc;
  }
  for (int64_t i = 0; i < n; ++i) {
    Word acc = in.at("x2").at({i});
    for (int64_t j = 0; j < n; ++j)
      acc = wrap_add(acc, wrap_mul(in.at("A").at({j, i}), in.at("y2").at({j})));
    z2.at({i}) = acc;
  }
  ImageSet out;
  out.emplace("z1", std::move(z1));
  out.emplace("z2", std::move(z2));
  return out;
}

// ---- TRISOLV --------------------------------------------------------------
// Row i accumulates the numerator left to right, divides at the diagonal,
// and the solved x value then rides down its column for later rows. A is
// generated upper triangular with a nonzero diagonal; columns are read
// transposed (a_{j,i}).

const char *kTrisolvPra = R"(program trisolv {
  variable A 2 in int32; variable b 1 in int32; variable x 1 out int32;
  variable n 2 int32; variable ad 2 int32; variable p 2 int32; variable dg 2 int32;
  variable xd 2 int32; variable xc 2 int32;
  parameter N;
  par (i_0 >= 0 and i_0 < N and i_1 >= 0 and i_1 < N) {
    n[i_0,i_1] = b[i_0] if (i_1 == 0);
    ad[i_0,i_1] = A[i_1 - 1,i_0] if (i_1 >= 1 and i_1 <= i_0);
    p[i_0,i_1] = ad[i_0,i_1] * xc[i_0,i_1 - 1] if (i_1 >= 1 and i_1 <= i_0);
    n[i_0,i_1] = n[i_0,i_1 - 1] - p[i_0,i_1] if (i_1 >= 1 and i_1 <= i_0);
    dg[i_0,i_1] = A[i_0,i_0] if (i_1 == i_0);
    xd[i_0,i_1] = n[i_0,i_1] / dg[i_0,i_1] if (i_1 == i_0);
    x[i_0] = xd[i_0,i_1] if (i_1 == i_0);
    xc[i_0,i_1] = xd[i_0 - 1,i_1] if (i_0 >= 1 and i_1 == i_0 - 1);
    xc[i_0,i_1] = xc[i_0 - 1,i_1] if (i_0 >= 1 and i_1 < i_0 - 1);
  }
})";

std::vector<LoopNestSpec> trisolv_nests(int64_t n) {
  // for i: for j: acc = (j==0 ? b[i] : acc) - (j<i ? A[j,i]*x[j] : 0);
  //               q = acc / A[i,i]; x[i] = (j==i ? q : x-so-far)
  // The x store writes every iteration; early junk at x[i] is never read
  // because the guarded product zeroes contributions with j >= i.
  LoopNestSpec l;
  l.name = "trisolv";
  l.levels = {{"i", AffineConst(0), AffineConst(n)},
              {"j", AffineConst(0), AffineConst(n)}};
  l.array_shape = {{"A", {n, n}}, {"b", {n}}, {"x", {n}}};
  int i = l.add_index(0);
  int j = l.add_index(1);
  int first = l.add_op(BodyOp::CmpEq, {val(j), imm(0)});
  int strict = l.add_op(BodyOp::CmpLt, {val(j), val(i)});
  int lb = l.add_load("b", {lv(0)});
  int la = l.add_load("A", {lv(1), lv(0)});
  int lx = l.add_load("x", {lv(1)});
  int prod = l.add_op(BodyOp::Mul, {val(la), val(lx)});
  int term = l.add_op(BodyOp::Sel, {val(strict), val(prod), imm(0)});
  int acc_id = static_cast<int>(l.values.size()) + 2;
  int carry = l.add_carry(acc_id, 1, 0);
  int base = l.add_op(BodyOp::Sel, {val(first), val(lb), val(carry)});
  int acc = l.add_op(BodyOp::Sub, {val(base), val(term)});
  int ldiag = l.add_load("A", {lv(0), lv(0)});
  int q = l.add_op(BodyOp::Div, {val(acc), val(ldiag)});
  int at_diag = l.add_op(BodyOp::CmpEq, {val(j), val(i)});
  int old_id = static_cast<int>(l.values.size()) + 1; // the Sel below
  int old_carry = l.add_carry(old_id, 1, 0);
  int keep = l.add_op(BodyOp::Sel, {val(at_diag), val(q), val(old_carry)});
  l.add_store("x", {lv(0)}, keep);
  return {l};
}

ImageSet trisolv_inputs(int64_t n, uint32_t seed) {
  std::mt19937 rng(seed);
  ImageSet in;
  MemoryImage a = random_image("A", {n, n}, rng);
  // upper triangular, nonzero diagonal
  for (int64_t r = 0; r < n; ++r)
    for (int64_t c = 0; c < n; ++c) {
      if (r > c)
        a.at({r, c}) = 0;
      else if (r == c && a.at({r, c}) == 0)
        a.at({r, c}) = 1;
    }
  in.emplace("A", std::move(a));
  in.emplace("b", random_image("b", {n}, rng));
  return in;
}

ImageSet trisolv_oracle(const ImageSet &in, int64_t n) {
  // Direct row-by-row evaluation of the closed-form formula. The second sum
  // (j > i) uses the strictly lower triangle of A, which is zero here, so it
  // never contributes.
  MemoryImage x = MemoryImage::zeros("x", {n});
  for (int64_t i = 0; i < n; ++i) {
    Word num = in.at("b").at({i});
    for (int64_t j = 0; j < i; ++j)
      num = wrap_sub(num, wrap_mul(in.at("A").at({j, i}), x.at({j})));
    for (int64_t j = i + 1; j < n; ++j)
      num = wrap_add(num, wrap_mul(in.at("A").at({j, i}), x.at({j})));
    x.at({i}) = wrap_div(num, in.at("A").at({i, i}));
  }
  ImageSet out;
  out.emplace("x", std::move(x));
  return out;
}

// ---- TRSM (optional) -------------------------------------------------------
// N right-hand sides solved against one shared triangular matrix; the solve
// of TRISOLV runs in the two inner dimensions.

const char *kTrsmPra = R"(program trsm {
  variable A 2 in int32; variable B 2 in int32; variable X 2 out int32;
  variable n 3 int32; variable ad 3 int32; variable p 3 int32; variable dg 3 int32;
  variable xd 3 int32; variable xc 3 int32;
  parameter N;
  par (i_0 >= 0 and i_0 < N and i_1 >= 0 and i_1 < N and i_2 >= 0 and i_2 < N) {
    n[i_0,i_1,i_2] = B[i_0,i_1] if (i_2 == 0);
    ad[i_0,i_1,i_2] = A[i_2 - 1,i_1] if (i_2 >= 1 and i_2 <= i_1);
    p[i_0,i_1,i_2] = ad[i_0,i_1,i_2] * xc[i_0,i_1,i_2 - 1] if (i_2 >= 1 and i_2 <= i_1);
    n[i_0,i_1,i_2] = n[i_0,i_1,i_2 - 1] - p[i_0,i_1,i_2] if (i_2 >= 1 and i_2 <= i_1);
    dg[i_0,i_1,i_2] = A[i_1,i_1] if (i_2 == i_1);
    xd[i_0,i_1,i_2] = n[i_0,i_1,i_2] / dg[i_0,i_1,i_2] if (i_2 == i_1);
    X[i_0,i_1] = xd[i_0,i_1,i_2] if (i_2 == i_1);
    xc[i_0,i_1,i_2] = xd[i_0,i_1 - 1,i_2] if (i_1 >= 1 and i_2 == i_1 - 1);
    xc[i_0,i_1,i_2] = xc[i_0,i_1 - 1,i_2] if (i_1 >= 1 and i_2 < i_1 - 1);
  }
})";

std::vector<LoopNestSpec> trsm_nests(int64_t n) {
  std::vector<LoopNestSpec> base = trisolv_nests(n);
  LoopNestSpec l;
  l.name = "trsm";
  l.levels = {{"r", AffineConst(0), AffineConst(n)},
              {"i", AffineConst(0), AffineConst(n)},
              {"j", AffineConst(0), AffineConst(n)}};
  l.array_shape = {{"A", {n, n}}, {"B", {n, n}}, {"X", {n, n}}};
  int i = l.add_index(1);
  int j = l.add_index(2);
  int first = l.add_op(BodyOp::CmpEq, {val(j), imm(0)});
  int strict = l.add_op(BodyOp::CmpLt, {val(j), val(i)});
  int lb = l.add_load("B", {lv(0), lv(1)});
  int la = l.add_load("A", {lv(2), lv(1)});
  int lx = l.add_load("X", {lv(0), lv(2)});
  int prod = l.add_op(BodyOp::Mul, {val(la), val(lx)});
  int term = l.add_op(BodyOp::Sel, {val(strict), val(prod), imm(0)});
  int acc_id = static_cast<int>(l.values.size()) + 2;
  int carry = l.add_carry(acc_id, 1, 0);
  int base2 = l.add_op(BodyOp::Sel, {val(first), val(lb), val(carry)});
  int acc = l.add_op(BodyOp::Sub, {val(base2), val(term)});
  int ldiag = l.add_load("A", {lv(1), lv(1)});
  int q = l.add_op(BodyOp::Div, {val(acc), val(ldiag)});
  int at_diag = l.add_op(BodyOp::CmpEq, {val(j), val(i)});
  int old_id = static_cast<int>(l.values.size()) + 1;
  int old_carry = l.add_carry(old_id, 1, 0);
  int keep = l.add_op(BodyOp::Sel, {val(at_diag), val(q), val(old_carry)});
  l.add_store("X", {lv(0), lv(1)}, keep);
  return {l};
}

ImageSet trsm_inputs(int64_t n, uint32_t seed) {
  ImageSet in = trisolv_inputs(n, seed);
  std::mt19937 rng(seed + 0x5151);
  in.erase("b");
  in.emplace("B", random_image("B", {n, n}, rng));
  return in;
}

ImageSet trsm_oracle(const ImageSet &in, int64_t n) {
  MemoryImage x = MemoryImage::zeros("X", {n, n});
  for (int64_t r = 0; r < n; ++r)
    for (int64_t i = 0; i < n; ++i) {
      Word num = in.at("B").at({r, i});
      for (int64_t j = 0; j < i; ++j)
        num = wrap_sub(num, wrap_mul(in.at("A").at({j, i}), x.at({r, j})));
      x.at({r, i}) = wrap_div(num, in.at("A").at({i, i}));
    }
  ImageSet out;
  out.emplace("X", std::move(x));
  return out;
}

} // namespace

ParamBindings BenchmarkCase::params(int64_t n) const {
  ParamBindings b{{"N", n}};
  for (auto &p : extra_params)
    if (p == "M")
      b["M"] = 2 * n;
  return b;
}

std::vector<BenchmarkCase> builtin_benchmarks(bool with_trsm) {
  std::vector<BenchmarkCase> cases;
  cases.push_back({"GEMM", kGemmPra, gemm_nests, gemm_inputs, gemm_oracle, {}, 1, 6});
  cases.push_back(
      {"ATAX", kAtaxPra, atax_nests, atax_inputs, atax_oracle, {"M"}, 3, 10});
  cases.push_back({"GESUMMV", kGesummvPra, gesummv_nests, gesummv_inputs,
                   gesummv_oracle, {}, 3, 5});
  cases.push_back({"MVT", kMvtPra, mvt_nests, mvt_inputs, mvt_oracle, {}, 3, 5});
  cases.push_back({"TRISOLV", kTrisolvPra, trisolv_nests, trisolv_inputs,
                   trisolv_oracle, {}, 6, 7});
  if (with_trsm)
    cases.push_back(
        {"TRSM", kTrsmPra, trsm_nests, trsm_inputs, trsm_oracle, {}, 0, 0});
  return cases;
}

LoopNestSpec matmul_nest(int64_t n, bool with_c_addend) {
  // Single-MAC matrix multiplication; the accumulator is select-reset at
  // i2 == 0 (to the C addend when present) and stored every iteration, so
  // the last store per (i0, i1) leaves the finished dot product.
  LoopNestSpec l;
  l.name = with_c_addend ? "gemm" : "matmul";
  AffineConst N(n);
  l.levels = {{"i0", AffineConst(0), N},
              {"i1", AffineConst(0), N},
              {"i2", AffineConst(0), N}};
  l.array_shape = {{"A", {n, n}}, {"B", {n, n}}};
  l.array_shape[with_c_addend ? "D" : "C"] = {n, n};
  if (with_c_addend)
    l.array_shape["C"] = {n, n};
  int i2 = l.add_index(2);
  int is_first = l.add_op(BodyOp::CmpEq, {val(i2), imm(0)});
  int ld_c = with_c_addend ? l.add_load("C", {lv(0), lv(1)}) : -1;
  int ld_a = l.add_load("A", {lv(0), lv(2)});
  int ld_b = l.add_load("B", {lv(2), lv(1)});
  int prod = l.add_op(BodyOp::Mul, {val(ld_a), val(ld_b)});
  int acc_id = static_cast<int>(l.values.size()) + 2; // the Add below
  int carry = l.add_carry(acc_id, 1, 0);
  int base = l.add_op(BodyOp::Sel, {val(is_first),
                                    with_c_addend ? val(ld_c) : imm(0), val(carry)});
  int acc = l.add_op(BodyOp::Add, {val(base), val(prod)});
  l.add_store(with_c_addend ? "D" : "C", {lv(0), lv(1)}, acc);
  return l;
}

} // namespace gridloom
