//===- pra_parse.cpp - PRA text dialect parser and printer ---------------===//
//
// Part of gridloom, under the Apache License v2.0.
// SPDX-License-Identifier: Apache-2.0
//
//===----------------------------------------------------------------------===//

#include "gridloom/pra.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace gridloom {

std::string ivec_str(const IterVec &v) {
  std::string s = "(";
  for (size_t i = 0; i < v.size(); ++i) {
    if (i)
      s += ",";
    s += std::to_string(v[i]);
  }
  return s + ")";
}

std::string AffineConst::str() const {
  std::ostringstream os;
  bool first = true;
  for (auto &[n, c] : coeffs) {
    if (c == 0)
      continue;
    if (first) {
      if (c == -1)
        os << "-";
      else if (c != 1)
        os << c << "*";
      os << n;
    } else {
      os << (c < 0 ? " - " : " + ");
      int64_t a = c < 0 ? -c : c;
      if (a != 1)
        os << a << "*";
      os << n;
    }
    first = false;
  }
  if (first)
    return std::to_string(base);
  if (base > 0)
    os << " + " << base;
  else if (base < 0)
    os << " - " << -base;
  return os.str();
}

const char *pra_op_name(PraOp op) {
  switch (op) {
  case PraOp::Copy:
    return "copy";
  case PraOp::Add:
    return "add";
  case PraOp::Sub:
    return "sub";
  case PraOp::Mul:
    return "mul";
  case PraOp::Div:
    return "div";
  case PraOp::Select:
    return "select";
  case PraOp::Compare:
    return "compare";
  }
  return "?";
}

int pra_op_arity(PraOp op) {
  switch (op) {
  case PraOp::Copy:
    return 1;
  case PraOp::Select:
    return 3;
  case PraOp::Compare:
    return 2;
  default:
    return 2;
  }
}

std::vector<int64_t> IterationSpace::extents(const ParamBindings &params) const {
  std::vector<int64_t> ext(dims);
  for (int d = 0; d < dims; ++d) {
    int64_t e = upper[d].eval(params) - lower[d].eval(params) + 1;
    if (e < 0)
      throw std::runtime_error("iteration space dimension " + std::to_string(d) +
                               " has negative extent " + std::to_string(e));
    ext[d] = e;
  }
  return ext;
}

bool ConditionSpace::contains(const IterVec &i, const ParamBindings &params) const {
  for (auto &ineq : inequalities) {
    int64_t lhs = 0;
    for (size_t d = 0; d < ineq.row.size(); ++d)
      lhs += ineq.row[d] * i[d];
    if (lhs < ineq.offset.eval(params))
      return false;
  }
  return true;
}

bool IndexingFunction::is_identity_translation(int dims) const {
  if (rank() != dims)
    return false;
  for (int r = 0; r < dims; ++r)
    for (int c = 0; c < dims; ++c)
      if (matrix[r][c] != (r == c ? 1 : 0))
        return false;
  return true;
}

bool IndexingFunction::has_literal_offset() const {
  return std::all_of(offset.begin(), offset.end(),
                     [](const AffineConst &a) { return a.is_literal(); });
}

IterVec IndexingFunction::apply(const IterVec &i, const ParamBindings &params) const {
  IterVec out(matrix.size());
  for (size_t r = 0; r < matrix.size(); ++r) {
    int64_t v = offset[r].eval(params);
    for (size_t c = 0; c < matrix[r].size(); ++c)
      v += matrix[r][c] * i[c];
    out[r] = v;
  }
  return out;
}

int PraProgram::find_var(const std::string &vname) const {
  for (size_t i = 0; i < variables.size(); ++i)
    if (variables[i].name == vname)
      return static_cast<int>(i);
  return -1;
}

namespace {

enum class Tok { Ident, Int, Punct, End };

struct Token {
  Tok kind;
  std::string text;
  int64_t value = 0;
  int line = 1, col = 1;
};

class Lexer {
public:
  explicit Lexer(const std::string &text) : src(text) { advance(); }

  const Token &peek() const { return tok; }

  Token next() {
    Token t = tok;
    advance();
    return t;
  }

  [[noreturn]] void fail(const std::string &msg) const {
    throw ParseError({tok.line, tok.col, msg});
  }

private:
  void advance() {
    skip_ws();
    tok.line = line;
    tok.col = col;
    if (pos >= src.size()) {
      tok = {Tok::End, "", 0, line, col};
      return;
    }
    char c = src[pos];
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      size_t start = pos;
      while (pos < src.size() &&
             (std::isalnum(static_cast<unsigned char>(src[pos])) || src[pos] == '_'))
        bump();
      tok = {Tok::Ident, src.substr(start, pos - start), 0, tok.line, tok.col};
      return;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      size_t start = pos;
      while (pos < src.size() && std::isdigit(static_cast<unsigned char>(src[pos])))
        bump();
      Token t{Tok::Int, src.substr(start, pos - start), 0, tok.line, tok.col};
      t.value = std::stoll(t.text);
      tok = t;
      return;
    }
    // Multi-char operators.
    static const char *two[] = {">=", "<=", "=="};
    for (auto *op : two) {
      if (src.compare(pos, 2, op) == 0) {
        tok = {Tok::Punct, op, 0, tok.line, tok.col};
        bump();
        bump();
        return;
      }
    }
    tok = {Tok::Punct, std::string(1, c), 0, tok.line, tok.col};
    bump();
  }

  void skip_ws() {
    for (;;) {
      while (pos < src.size() &&
             std::isspace(static_cast<unsigned char>(src[pos])))
        bump();
      if (pos + 1 < src.size() && src[pos] == '/' && src[pos + 1] == '/') {
        while (pos < src.size() && src[pos] != '\n')
          bump();
        continue;
      }
      break;
    }
  }

  void bump() {
    if (src[pos] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
    ++pos;
  }

  const std::string &src;
  size_t pos = 0;
  int line = 1, col = 1;
  Token tok;
};

// Linear form over iteration indices plus a parameter-affine constant.
struct LinForm {
  std::map<std::string, int64_t> idx; // index name -> coefficient
  AffineConst c;

  LinForm &operator+=(const LinForm &o) {
    for (auto &[n, v] : o.idx) {
      idx[n] += v;
      if (idx[n] == 0)
        idx.erase(n);
    }
    c += o.c;
    return *this;
  }
  LinForm negated() const {
    LinForm r;
    for (auto &[n, v] : idx)
      r.idx[n] = -v;
    r.c = -c;
    return r;
  }
};

struct OperandAst {
  bool is_literal = false;
  int64_t literal = 0;
  std::string var;
  std::vector<LinForm> subscripts;
  int line = 0, col = 0;
};

class Parser {
public:
  explicit Parser(const std::string &text) : lex(text) {}

  PraProgram run() {
    expect_ident("program");
    prog.name = expect(Tok::Ident).text;
    expect_punct("{");
    bool saw_par = false;
    while (!peek_punct("}")) {
      const Token &t = lex.peek();
      if (t.kind == Tok::Ident && t.text == "variable") {
        parse_variable();
      } else if (t.kind == Tok::Ident && t.text == "parameter") {
        parse_parameter();
      } else if (t.kind == Tok::Ident && t.text == "par") {
        if (saw_par)
          lex.fail("multiple 'par' blocks; exactly one is allowed");
        saw_par = true;
        parse_par();
      } else {
        lex.fail("expected 'variable', 'parameter', or 'par'");
      }
    }
    expect_punct("}");
    if (!saw_par)
      lex.fail("missing 'par' block");
    return std::move(prog);
  }

private:
  Lexer lex;
  PraProgram prog;
  std::vector<std::string> index_names; // dimension order

  Token expect(Tok kind) {
    if (lex.peek().kind != kind)
      lex.fail("unexpected token '" + lex.peek().text + "'");
    return lex.next();
  }
  void expect_punct(const std::string &p) {
    if (lex.peek().kind != Tok::Punct || lex.peek().text != p)
      lex.fail("expected '" + p + "', found '" + lex.peek().text + "'");
    lex.next();
  }
  void expect_ident(const std::string &kw) {
    if (lex.peek().kind != Tok::Ident || lex.peek().text != kw)
      lex.fail("expected '" + kw + "'");
    lex.next();
  }
  bool peek_punct(const std::string &p) const {
    return lex.peek().kind == Tok::Punct && lex.peek().text == p;
  }
  bool accept_punct(const std::string &p) {
    if (peek_punct(p)) {
      lex.next();
      return true;
    }
    return false;
  }

  void parse_variable() {
    lex.next(); // 'variable'
    Variable v;
    v.name = expect(Tok::Ident).text;
    v.rank = static_cast<int>(expect(Tok::Int).value);
    v.kind = VarKind::Internal;
    if (lex.peek().kind == Tok::Ident &&
        (lex.peek().text == "in" || lex.peek().text == "out")) {
      v.kind = lex.next().text == "in" ? VarKind::Input : VarKind::Output;
    }
    // Element type token; storage is always 32-bit words.
    Token ty = expect(Tok::Ident);
    if (ty.text != "float" && ty.text != "int" && ty.text != "int32")
      throw ParseError({ty.line, ty.col, "unknown element type '" + ty.text + "'"});
    if (prog.find_var(v.name) >= 0)
      lex.fail("duplicate variable '" + v.name + "'");
    prog.variables.push_back(v);
    expect_punct(";");
  }

  void parse_parameter() {
    lex.next(); // 'parameter'
    std::string name = expect(Tok::Ident).text;
    prog.parameters.push_back(name);
    if (accept_punct("=")) {
      expect(Tok::Int); // default value tolerated and ignored
    }
    expect_punct(";");
  }

  bool is_parameter(const std::string &n) const {
    return std::find(prog.parameters.begin(), prog.parameters.end(), n) !=
           prog.parameters.end();
  }
  int index_of(const std::string &n) const {
    for (size_t i = 0; i < index_names.size(); ++i)
      if (index_names[i] == n)
        return static_cast<int>(i);
    return -1;
  }

  // affine := ['-'] term (('+'|'-') term)* ; term := factor ['*' factor]
  // factor := INT | IDENT. Terms must stay linear.
  LinForm parse_affine(bool indices_allowed) {
    LinForm form;
    bool neg = accept_punct("-");
    form += parse_term(indices_allowed, neg);
    for (;;) {
      if (accept_punct("+"))
        form += parse_term(indices_allowed, false);
      else if (accept_punct("-"))
        form += parse_term(indices_allowed, true);
      else
        break;
    }
    return form;
  }

  LinForm parse_term(bool indices_allowed, bool neg) {
    LinForm t = parse_factor(indices_allowed);
    while (peek_punct("*")) {
      lex.next();
      LinForm f = parse_factor(indices_allowed);
      // one side must be a pure constant literal
      if (t.idx.empty() && t.c.is_literal()) {
        int64_t k = t.c.base;
        LinForm r;
        for (auto &[n, v] : f.idx)
          r.idx[n] = v * k;
        r.c = f.c.scaled(k);
        t = r;
      } else if (f.idx.empty() && f.c.is_literal()) {
        int64_t k = f.c.base;
        LinForm r;
        for (auto &[n, v] : t.idx)
          r.idx[n] = v * k;
        r.c = t.c.scaled(k);
        t = r;
      } else {
        lex.fail("nonlinear term");
      }
    }
    return neg ? t.negated() : t;
  }

  LinForm parse_factor(bool indices_allowed) {
    LinForm f;
    const Token &t = lex.peek();
    if (t.kind == Tok::Int) {
      f.c = AffineConst(lex.next().value);
      return f;
    }
    if (t.kind == Tok::Ident) {
      Token id = lex.next();
      if (is_parameter(id.text)) {
        f.c = AffineConst::param(id.text);
        return f;
      }
      int d = index_of(id.text);
      if (d >= 0) {
        if (!indices_allowed)
          throw ParseError({id.line, id.col,
                            "iteration index '" + id.text + "' not allowed here"});
        f.idx[id.text] = 1;
        return f;
      }
      // Inside the par head, new identifiers introduce dimensions.
      if (collecting_indices) {
        index_names.push_back(id.text);
        f.idx[id.text] = 1;
        return f;
      }
      throw ParseError({id.line, id.col, "unknown identifier '" + id.text + "'"});
    }
    lex.fail("expected integer or identifier");
  }

  struct Rel {
    LinForm lhs;
    std::string op;
    LinForm rhs;
  };

  Rel parse_rel(bool indices_allowed) {
    Rel r;
    r.lhs = parse_affine(indices_allowed);
    const Token &t = lex.peek();
    if (t.kind != Tok::Punct || (t.text != "<" && t.text != ">" && t.text != "<=" &&
                                 t.text != ">=" && t.text != "==" && t.text != "="))
      lex.fail("expected comparison operator");
    r.op = lex.next().text;
    r.rhs = parse_affine(indices_allowed);
    return r;
  }

  // Normalizes one relation into >= rows; equalities produce two rows.
  void rel_to_rows(const Rel &r, std::vector<ConditionSpace::Inequality> &out) {
    auto emit_ge = [&](const LinForm &a, const LinForm &b, int64_t slack) {
      // a >= b + slack  ->  (a-b) row form
      LinForm d = a;
      d += b.negated();
      ConditionSpace::Inequality q;
      q.row.assign(index_names.size(), 0);
      for (auto &[n, v] : d.idx)
        q.row[index_of(n)] = v;
      q.offset = (-d.c) + AffineConst(slack);
      out.push_back(std::move(q));
    };
    if (r.op == ">=")
      emit_ge(r.lhs, r.rhs, 0);
    else if (r.op == ">")
      emit_ge(r.lhs, r.rhs, 1);
    else if (r.op == "<=")
      emit_ge(r.rhs, r.lhs, 0);
    else if (r.op == "<")
      emit_ge(r.rhs, r.lhs, 1);
    else { // == or =
      emit_ge(r.lhs, r.rhs, 0);
      emit_ge(r.rhs, r.lhs, 0);
    }
  }

  void parse_par() {
    lex.next(); // 'par'
    expect_punct("(");
    collecting_indices = true;
    std::vector<Rel> rels;
    rels.push_back(parse_rel(true));
    while (lex.peek().kind == Tok::Ident && lex.peek().text == "and") {
      lex.next();
      rels.push_back(parse_rel(true));
    }
    collecting_indices = false;
    expect_punct(")");

    // The par predicate must describe a rectangular box: each relation
    // bounds exactly one index.
    prog.space.dims = static_cast<int>(index_names.size());
    prog.space.lower.assign(prog.space.dims, AffineConst(0));
    prog.space.upper.assign(prog.space.dims, AffineConst(0));
    std::vector<bool> has_lo(prog.space.dims, false), has_hi(prog.space.dims, false);
    for (auto &rel : rels) {
      std::vector<ConditionSpace::Inequality> rows;
      rel_to_rows(rel, rows);
      for (auto &q : rows) {
        int nz = -1;
        for (int d = 0; d < prog.space.dims; ++d) {
          if (q.row[d] != 0) {
            if (nz >= 0 || (q.row[d] != 1 && q.row[d] != -1))
              lex.fail("par predicate must be a rectangular box");
            nz = d;
          }
        }
        if (nz < 0)
          lex.fail("par predicate row has no iteration index");
        if (q.row[nz] == 1) { // i >= offset
          if (!has_lo[nz] || true) {
            prog.space.lower[nz] = q.offset;
            has_lo[nz] = true;
          }
        } else { // -i >= offset, i.e. i <= -offset
          prog.space.upper[nz] = -q.offset;
          has_hi[nz] = true;
        }
      }
    }
    for (int d = 0; d < prog.space.dims; ++d)
      if (!has_lo[d] || !has_hi[d])
        lex.fail("index '" + index_names[d] + "' is not bounded on both sides");

    expect_punct("{");
    while (!peek_punct("}"))
      parse_equation();
    expect_punct("}");
  }

  OperandAst parse_operand() {
    OperandAst op;
    op.line = lex.peek().line;
    op.col = lex.peek().col;
    if (lex.peek().kind == Tok::Int || peek_punct("-")) {
      bool neg = accept_punct("-");
      Token t = expect(Tok::Int);
      op.is_literal = true;
      op.literal = neg ? -t.value : t.value;
      return op;
    }
    Token id = expect(Tok::Ident);
    op.var = id.text;
    expect_punct("[");
    op.subscripts.push_back(parse_affine(true));
    while (accept_punct(","))
      op.subscripts.push_back(parse_affine(true));
    expect_punct("]");
    return op;
  }

  VarRef resolve(const OperandAst &op) {
    int v = prog.find_var(op.var);
    if (v < 0)
      throw ParseError({op.line, op.col, "unknown identifier '" + op.var + "'"});
    VarRef ref;
    ref.var = v;
    for (auto &sub : op.subscripts) {
      std::vector<int64_t> row(prog.space.dims, 0);
      for (auto &[n, c] : sub.idx)
        row[index_of(n)] = c;
      ref.idx.matrix.push_back(std::move(row));
      ref.idx.offset.push_back(sub.c);
    }
    if (ref.idx.rank() != prog.variables[v].rank)
      throw ParseError({op.line, op.col,
                        "variable '" + op.var + "' has rank " +
                            std::to_string(prog.variables[v].rank) + ", got " +
                            std::to_string(ref.idx.rank()) + " subscripts"});
    return ref;
  }

  Arg to_arg(const OperandAst &op) {
    if (op.is_literal)
      return Arg(op.literal);
    return Arg(resolve(op));
  }

  void parse_equation() {
    Equation eq;
    OperandAst target = parse_operand();
    if (target.is_literal)
      lex.fail("equation target must be a variable reference");
    eq.target = resolve(target);
    expect_punct("=");

    // rhs: function call, or operand [binop operand]
    if (lex.peek().kind == Tok::Ident &&
        (lex.peek().text == "select" || lex.peek().text == "compare")) {
      Token fn = lex.next();
      eq.op = fn.text == "select" ? PraOp::Select : PraOp::Compare;
      expect_punct("(");
      eq.args.push_back(to_arg(parse_operand()));
      while (accept_punct(","))
        eq.args.push_back(to_arg(parse_operand()));
      expect_punct(")");
      if (static_cast<int>(eq.args.size()) != pra_op_arity(eq.op))
        throw ParseError({fn.line, fn.col,
                          std::string(pra_op_name(eq.op)) + " takes " +
                              std::to_string(pra_op_arity(eq.op)) + " arguments, got " +
                              std::to_string(eq.args.size())});
    } else {
      OperandAst first = parse_operand();
      eq.args.push_back(to_arg(first));
      if (peek_punct("+") || peek_punct("-") || peek_punct("*") || peek_punct("/")) {
        std::string op = lex.next().text;
        eq.op = op == "+"   ? PraOp::Add
                : op == "-" ? PraOp::Sub
                : op == "*" ? PraOp::Mul
                            : PraOp::Div;
        eq.args.push_back(to_arg(parse_operand()));
      } else {
        eq.op = PraOp::Copy;
      }
    }

    if (lex.peek().kind == Tok::Ident && lex.peek().text == "if") {
      lex.next();
      expect_punct("(");
      std::vector<Rel> rels;
      rels.push_back(parse_rel(true));
      while (lex.peek().kind == Tok::Ident && lex.peek().text == "and") {
        lex.next();
        rels.push_back(parse_rel(true));
      }
      expect_punct(")");
      for (auto &rel : rels)
        rel_to_rows(rel, eq.domain.inequalities);
    }
    expect_punct(";");
    eq.id = "S" + std::to_string(prog.equations.size() + 1);
    prog.equations.push_back(std::move(eq));
  }

  bool collecting_indices = false;
};

} // namespace

PraProgram parse_pra(const std::string &text) { return Parser(text).run(); }

namespace {

std::string dim_name(int d) { return "i_" + std::to_string(d); }

std::string linrow_str(const std::vector<int64_t> &row, const AffineConst &off) {
  std::ostringstream os;
  bool first = true;
  for (size_t d = 0; d < row.size(); ++d) {
    if (row[d] == 0)
      continue;
    if (!first)
      os << (row[d] > 0 ? " + " : " - ");
    else if (row[d] < 0)
      os << "-";
    int64_t a = row[d] < 0 ? -row[d] : row[d];
    if (a != 1)
      os << a << "*";
    os << dim_name(static_cast<int>(d));
    first = false;
  }
  std::string cs = off.str();
  if (first)
    return cs;
  if (cs != "0") {
    if (!cs.empty() && cs[0] == '-')
      os << " - " << cs.substr(1);
    else
      os << " + " << cs;
  }
  return os.str();
}

std::string operand_str(const PraProgram &p, const Arg &a) {
  if (std::holds_alternative<int64_t>(a))
    return std::to_string(std::get<int64_t>(a));
  const VarRef &r = std::get<VarRef>(a);
  std::string s = p.variables[r.var].name + "[";
  for (int i = 0; i < r.idx.rank(); ++i) {
    if (i)
      s += ",";
    s += linrow_str(r.idx.matrix[i], r.idx.offset[i]);
  }
  return s + "]";
}

} // namespace

std::string pretty_print(const PraProgram &p) {
  std::ostringstream os;
  os << "program " << p.name << " {\n";
  for (auto &v : p.variables) {
    os << "  variable " << v.name << " " << v.rank;
    if (v.kind == VarKind::Input)
      os << " in";
    else if (v.kind == VarKind::Output)
      os << " out";
    os << " int32;\n";
  }
  for (auto &prm : p.parameters)
    os << "  parameter " << prm << ";\n";
  os << "  par (";
  for (int d = 0; d < p.space.dims; ++d) {
    if (d)
      os << " and ";
    os << dim_name(d) << " >= " << p.space.lower[d].str() << " and " << dim_name(d)
       << " <= " << p.space.upper[d].str();
  }
  os << ") {\n";
  for (auto &eq : p.equations) {
    os << "    " << operand_str(p, Arg(eq.target)) << " = ";
    switch (eq.op) {
    case PraOp::Copy:
      os << operand_str(p, eq.args[0]);
      break;
    case PraOp::Add:
      os << operand_str(p, eq.args[0]) << " + " << operand_str(p, eq.args[1]);
      break;
    case PraOp::Sub:
      os << operand_str(p, eq.args[0]) << " - " << operand_str(p, eq.args[1]);
      break;
    case PraOp::Mul:
      os << operand_str(p, eq.args[0]) << " * " << operand_str(p, eq.args[1]);
      break;
    case PraOp::Div:
      os << operand_str(p, eq.args[0]) << " / " << operand_str(p, eq.args[1]);
      break;
    case PraOp::Select:
    case PraOp::Compare:
      os << pra_op_name(eq.op) << "(";
      for (size_t i = 0; i < eq.args.size(); ++i) {
        if (i)
          os << ", ";
        os << operand_str(p, eq.args[i]);
      }
      os << ")";
      break;
    }
    if (!eq.domain.inequalities.empty()) {
      os << " if (";
      for (size_t q = 0; q < eq.domain.inequalities.size(); ++q) {
        if (q)
          os << " and ";
        auto &ineq = eq.domain.inequalities[q];
        os << linrow_str(ineq.row, AffineConst(0)) << " >= " << ineq.offset.str();
      }
      os << ")";
    }
    os << ";\n";
  }
  os << "  }\n}\n";
  return os.str();
}

std::vector<IterVec> enumerate_iterations(const IterationSpace &s,
                                          const ParamBindings &params) {
  std::vector<int64_t> lo(s.dims), hi(s.dims);
  int64_t count = 1;
  for (int d = 0; d < s.dims; ++d) {
    lo[d] = s.lower[d].eval(params);
    hi[d] = s.upper[d].eval(params);
    int64_t e = hi[d] - lo[d] + 1;
    if (e < 0)
      throw std::runtime_error("negative extent in dimension " + std::to_string(d));
    count *= e;
  }
  std::vector<IterVec> out;
  if (count == 0)
    return out;
  out.reserve(static_cast<size_t>(count));
  IterVec cur = lo;
  for (;;) {
    out.push_back(cur);
    int d = s.dims - 1;
    for (; d >= 0; --d) {
      if (++cur[d] <= hi[d])
        break;
      cur[d] = lo[d];
    }
    if (d < 0)
      break;
  }
  return out;
}

DependencyClass classify_dependency(const PraProgram &p, const Equation &e,
                                    int arg_index) {
  if (arg_index < 0 || arg_index >= static_cast<int>(e.args.size()))
    throw std::invalid_argument("argument index out of range");
  const Arg &a = e.args[arg_index];
  if (std::holds_alternative<int64_t>(a))
    throw std::invalid_argument("literal argument carries no dependency");
  const VarRef &r = std::get<VarRef>(a);
  const Variable &v = p.variables[r.var];
  if (v.kind == VarKind::Input)
    return {DependencyClass::Input, {}};
  if (v.kind == VarKind::Output)
    return {DependencyClass::Output, {}};
  bool zero = true;
  for (auto &o : r.idx.offset)
    if (!(o.is_literal() && o.base == 0))
      zero = false;
  if (zero)
    return {DependencyClass::IntraIteration, {}};
  DependencyClass c{DependencyClass::InterIteration, {}};
  c.distance.resize(r.idx.offset.size());
  for (size_t d = 0; d < r.idx.offset.size(); ++d) {
    if (!r.idx.offset[d].is_literal())
      throw std::invalid_argument("internal variable offset must be literal");
    c.distance[d] = -r.idx.offset[d].base; // consumer minus producer
  }
  return c;
}

} // namespace gridloom
