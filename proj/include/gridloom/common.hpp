//===- common.hpp - Shared scalar types and small helpers ----------------===//
//
// Part of gridloom, under the Apache License v2.0.
// SPDX-License-Identifier: Apache-2.0
//
//===----------------------------------------------------------------------===//

#ifndef GRIDLOOM_COMMON_HPP
#define GRIDLOOM_COMMON_HPP

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace gridloom {

// All data words are 32-bit signed integers with wrapping add/sub/mul and
// truncating division.
using Word = int32_t;

inline Word wrap_add(Word a, Word b) {
  return static_cast<Word>(static_cast<uint32_t>(a) + static_cast<uint32_t>(b));
}
inline Word wrap_sub(Word a, Word b) {
  return static_cast<Word>(static_cast<uint32_t>(a) - static_cast<uint32_t>(b));
}
inline Word wrap_mul(Word a, Word b) {
  return static_cast<Word>(static_cast<uint32_t>(a) * static_cast<uint32_t>(b));
}
// Truncates toward zero. Callers must reject b == 0 beforehand; INT_MIN / -1
// wraps back to INT_MIN.
inline Word wrap_div(Word a, Word b) {
  if (b == -1)
    return wrap_sub(0, a);
  return a / b;
}

using ParamBindings = std::map<std::string, int64_t>;

// Integer constant that may depend linearly on named parameters, e.g.
// "2*N - 1". Used for loop bounds, guard offsets, and I/O subscripts; it
// collapses to a plain integer once parameters are bound.
struct AffineConst {
  int64_t base = 0;
  std::map<std::string, int64_t> coeffs; // parameter name -> coefficient

  AffineConst() = default;
  AffineConst(int64_t v) : base(v) {} // NOLINT: implicit by design
  static AffineConst param(const std::string &name, int64_t c = 1) {
    AffineConst a;
    a.coeffs[name] = c;
    return a;
  }

  bool is_literal() const { return coeffs.empty(); }

  int64_t eval(const ParamBindings &params) const {
    int64_t v = base;
    for (auto &[name, c] : coeffs) {
      auto it = params.find(name);
      if (it == params.end())
        throw std::runtime_error("unbound parameter '" + name + "'");
      v += c * it->second;
    }
    return v;
  }

  AffineConst &operator+=(const AffineConst &o) {
    base += o.base;
    for (auto &[n, c] : o.coeffs) {
      coeffs[n] += c;
      if (coeffs[n] == 0)
        coeffs.erase(n);
    }
    return *this;
  }
  AffineConst operator+(const AffineConst &o) const {
    AffineConst r = *this;
    r += o;
    return r;
  }
  AffineConst operator-() const {
    AffineConst r;
    r.base = -base;
    for (auto &[n, c] : coeffs)
      r.coeffs[n] = -c;
    return r;
  }
  AffineConst operator-(const AffineConst &o) const { return *this + (-o); }
  AffineConst scaled(int64_t k) const {
    AffineConst r;
    if (k == 0)
      return r;
    r.base = base * k;
    for (auto &[n, c] : coeffs)
      r.coeffs[n] = c * k;
    return r;
  }
  bool operator==(const AffineConst &o) const {
    return base == o.base && coeffs == o.coeffs;
  }

  std::string str() const;
};

// Source-located diagnostic produced by the parser and validators.
struct Diagnostic {
  int line = 0;
  int col = 0;
  std::string message;

  std::string str() const {
    if (line <= 0)
      return message;
    return std::to_string(line) + ":" + std::to_string(col) + ": " + message;
  }
};

class ParseError : public std::runtime_error {
public:
  Diagnostic diag;
  explicit ParseError(Diagnostic d) : std::runtime_error(d.str()), diag(std::move(d)) {}
};

// Lexicographic order helpers for small integer vectors.
using IterVec = std::vector<int64_t>;

std::string ivec_str(const IterVec &v);

} // namespace gridloom

#endif // GRIDLOOM_COMMON_HPP
