//===- interp.hpp - Reference interpreter for PRA programs ----------------===//
//
// Part of gridloom, under the Apache License v2.0.
// SPDX-License-Identifier: Apache-2.0
//
//===----------------------------------------------------------------------===//

#ifndef GRIDLOOM_INTERP_HPP
#define GRIDLOOM_INTERP_HPP

#include "gridloom/memimage.hpp"
#include "gridloom/pra.hpp"

namespace gridloom {

// Evaluates all equations in a dependence-respecting order and returns the
// output variable images. Output extents are the bounding box of the written
// subscripts. This is the golden oracle both simulators are compared
// against; it is deterministic and independent of evaluation order.
//
// Throws on reads of undefined instances and on division by zero (reporting
// the iteration index).
ImageSet interpret(const PraProgram &p, const ParamBindings &params,
                   const ImageSet &inputs);

// select(c, t, f) yields t when c is nonzero; compare(a, b) yields 1 when
// a < b, else 0. Shared with both cycle-accurate backends.
Word eval_pra_op(PraOp op, const std::vector<Word> &vals, const IterVec &at);

} // namespace gridloom

#endif // GRIDLOOM_INTERP_HPP
