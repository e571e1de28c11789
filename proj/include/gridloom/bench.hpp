//===- bench.hpp - Built-in benchmark suite and end-to-end runner ---------===//
//
// Part of gridloom, under the Apache License v2.0.
// SPDX-License-Identifier: Apache-2.0
//
//===----------------------------------------------------------------------===//

#ifndef GRIDLOOM_BENCH_HPP
#define GRIDLOOM_BENCH_HPP

#include "gridloom/cgra_arch.hpp"
#include "gridloom/loop_nest.hpp"
#include "gridloom/pra.hpp"
#include "gridloom/tcpa_arch.hpp"

#include <optional>
#include <string>
#include <vector>

namespace gridloom {

// One benchmark kernel in both forms: a PRA text for the iteration-centric
// path and one or more loop nests (run back to back) for the
// operation-centric path. Reference initiation intervals from published
// third-party mappings of the same kernels are carried for reporting.
struct BenchmarkCase {
  std::string name;
  std::string pra_text;
  // Builds the loop-nest kernels for a given N (some kernels are two
  // sequential nests, e.g. the two matrix-vector passes).
  std::vector<LoopNestSpec> (*nests)(int64_t n) = nullptr;
  // Seeded input generation shared by both paths.
  ImageSet (*gen_inputs)(int64_t n, uint32_t seed) = nullptr;
  // Direct formula oracle, independent of the interpreter.
  ImageSet (*oracle)(const ImageSet &inputs, int64_t n) = nullptr;
  ParamBindings params(int64_t n) const;
  std::vector<std::string> extra_params; // bound as functions of N (e.g. M = 2N)
  int reference_tcpa_ii = 0;             // published iteration-centric II
  int reference_cgra_ii = 0;             // best published operation-centric II
};

// The five standard kernels; TRSM is appended when enabled.
std::vector<BenchmarkCase> builtin_benchmarks(bool with_trsm = false);

// Single-MAC three-level matrix-multiplication body. Without the C addend
// this is the canonical operation-centric example: 22 issue nodes, 9 of
// them index computation.
LoopNestSpec matmul_nest(int64_t n, bool with_c_addend);

// --- End-to-end runner ---------------------------------------------------

enum class Target { Cgra, Tcpa };

struct RunOptions {
  bool flatten = false;
  int unroll = 1;
  uint32_t seed = 1;
  std::string strategy = "heuristic"; // or "anneal"
  int ii_limit = 16;
};

struct ReportRow {
  std::string benchmark;
  std::string target;       // "cgra" | "tcpa"
  std::string optimization; // "none" | "flat" | "flat+unrollxF"
  std::string arch;
  int loop_depth = 0;
  int op_count = 0;
  int ii = 0;
  int reference_ii = 0;
  int unused_pes = 0;
  int max_ops_per_pe = 0;
  int64_t latency_total = 0;
  int64_t latency_first = 0; // iteration-centric only
  int64_t latency_last = 0;  // iteration-centric only
  bool correct = false;
  std::string status; // "ok" or the failure reason
  double speedup = 0; // cgra latency / tcpa last-PE latency, filled by reports
};

ReportRow run_case(const BenchmarkCase &bench, Target target, const CgraArch &cgra,
                   const TcpaArch &tcpa, int64_t n, const RunOptions &opts);

std::string emit_report_csv(std::vector<ReportRow> rows);
std::string emit_report_json(std::vector<ReportRow> rows);

} // namespace gridloom

#endif // GRIDLOOM_BENCH_HPP
