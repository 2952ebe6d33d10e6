#pragma once

#include "qcl/congruence.hpp"

#include <cctype>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

namespace qcl {

// Surface syntax error; offset/line/col point at the first offending byte.
class ParseError : public std::runtime_error {
 public:
  ParseError(size_t offset, long line, long col, std::string brief,
             std::vector<std::string> expected)
      : std::runtime_error(format(offset, line, col, brief, expected)),
        offset(offset),
        line(line),
        col(col),
        brief(std::move(brief)),
        expected(std::move(expected)) {}

  size_t offset;
  long line, col;
  std::string brief;
  std::vector<std::string> expected;

 private:
  static std::string format(size_t, long line, long col,
                            const std::string& brief,
                            const std::vector<std::string>& expected) {
    std::ostringstream os;
    os << "line " << line << ", col " << col << ": " << brief;
    if (!expected.empty()) {
      os << " (expected ";
      for (size_t i = 0; i < expected.size(); ++i)
        os << (i ? ", " : "") << expected[i];
      os << ")";
    }
    return os.str();
  }
};

struct SemanticError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// ----- AST -----

struct LinearNode {  // a*var + b with var in {k, n}, or a bare constant
  char var{'0'};
  long a{0}, b{0};

  bool operator==(const LinearNode&) const = default;
};

struct ExpNode {  // exponent of a monomial power: k, or a quadratic in n
  bool is_k{false};
  ExpForm form{ExpForm::constant(1)};

  bool operator==(const ExpNode&) const = default;
};

struct FactorNode {
  enum class Kind { RATIONAL, MONO, MONOPOW, QINT, POCH, SIGNPOW, QQUAD, NAMED };

  Kind kind{Kind::RATIONAL};
  bool divide{false};  // preceded by '/'
  BigRat rat{1};
  MonomialSpec mono;
  ExpNode exp;
  LinearNode lin;
  long power{1};
  LenForm len;
  long quad_a{0}, quad_b{0};
  NamedFactor named{NamedFactor::NONE};

  bool operator==(const FactorNode&) const = default;
};

struct TermNode {
  std::vector<FactorNode> factors;

  bool operator==(const TermNode&) const = default;
};

struct BoundNode {
  BoundKind kind{BoundKind::M_SELECT};
  long fixed{0};

  bool operator==(const BoundNode&) const = default;
};

struct SumNode {
  BoundNode bound;
  TermNode term;
  bool has_prefactor{false};
  TermNode prefactor;

  bool operator==(const SumNode&) const = default;
};

struct SpecAst {
  std::vector<char> params;
  SumNode lhs;
  bool rhs_zero{false};
  SumNode rhs;
  std::vector<ModFactor> modulus;

  bool operator==(const SpecAst&) const = default;
};

// A lowered, runnable congruence conjecture.
struct CongruenceTask {
  std::string name;
  std::string params;  // declaration order
  SumSpec lhs;
  SumSpec rhs;
  ModulusRecipe modulus;
};

namespace detail {

struct Token {
  enum class Type { INT, IDENT, PUNCT, END };
  Type type;
  std::string text;
  size_t off;
  long line, col;
};

inline std::vector<Token> lex(std::string_view src) {
  std::vector<Token> out;
  size_t i = 0;
  long line = 1, col = 1;
  auto bump = [&] {
    if (src[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
    ++i;
  };
  while (i < src.size()) {
    char c = src[i];
    if (c == '#') {
      while (i < src.size() && src[i] != '\n') bump();
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      bump();
      continue;
    }
    size_t off = i;
    long tl = line, tc = col;
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::string t;
      while (i < src.size() && std::isdigit(static_cast<unsigned char>(src[i]))) {
        t += src[i];
        bump();
      }
      out.push_back({Token::Type::INT, std::move(t), off, tl, tc});
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::string t;
      while (i < src.size() && std::isalpha(static_cast<unsigned char>(src[i]))) {
        t += src[i];
        bump();
      }
      out.push_back({Token::Type::IDENT, std::move(t), off, tl, tc});
      continue;
    }
    if (c == '.') {
      if (i + 1 < src.size() && src[i + 1] == '.') {
        bump();
        bump();
        out.push_back({Token::Type::PUNCT, "..", off, tl, tc});
        continue;
      }
      throw ParseError(off, tl, tc, "stray '.'", {".."});
    }
    if (std::string_view("()[]^*/+-;:,=").find(c) != std::string_view::npos) {
      bump();
      out.push_back({Token::Type::PUNCT, std::string(1, c), off, tl, tc});
      continue;
    }
    throw ParseError(off, tl, tc, "unexpected character", {});
  }
  out.push_back({Token::Type::END, "", src.size(), line, col});
  return out;
}

class Parser {
 public:
  explicit Parser(std::string_view src) : toks_(lex(src)) {}

  SpecAst task() {
    SpecAst ast;
    expect_kw("verify");
    if (at_kw("params")) {
      advance();
      expect(":");
      do {
        const Token& t = cur();
        if (t.type != Token::Type::IDENT || t.text.size() != 1 ||
            t.text[0] < 'a' || t.text[0] > 'd')
          fail(t, "bad parameter name", {"a", "b", "c", "d"});
        char p = t.text[0];
        if (declared_.count(p)) fail(t, "duplicate parameter", {});
        declared_.insert(p);
        ast.params.push_back(p);
        advance();
      } while (accept(","));
    }
    expect_kw("lhs");
    expect(":");
    ast.lhs = sum();
    expect_kw("rhs");
    expect(":");
    if (cur().type == Token::Type::INT && cur().text == "0") {
      advance();
      ast.rhs_zero = true;
    } else {
      ast.rhs = sum();
    }
    expect_kw("modulus");
    expect(":");
    ast.modulus = modexpr();
    if (cur().type != Token::Type::END) fail(cur(), "trailing input", {});
    return ast;
  }

 private:
  std::vector<Token> toks_;
  size_t pos_{0};
  std::set<char> declared_;

  const Token& cur() const { return toks_[pos_]; }
  const Token& ahead(size_t d) const {
    size_t j = pos_ + d;
    return toks_[j < toks_.size() ? j : toks_.size() - 1];
  }
  void advance() {
    if (pos_ + 1 < toks_.size()) ++pos_;
  }

  [[noreturn]] void fail(const Token& t, std::string brief,
                         std::vector<std::string> expected) const {
    throw ParseError(t.off, t.line, t.col, std::move(brief),
                     std::move(expected));
  }

  bool at(std::string_view text) const {
    return cur().type != Token::Type::END && cur().text == text;
  }
  bool at_kw(std::string_view kw) const {
    return cur().type == Token::Type::IDENT && cur().text == kw;
  }
  bool at_int() const { return cur().type == Token::Type::INT; }
  bool is_sym(const Token& t) const {
    return t.type == Token::Type::IDENT && t.text.size() == 1 &&
           (t.text[0] == 'q' || (t.text[0] >= 'a' && t.text[0] <= 'd'));
  }

  bool accept(std::string_view text) {
    if (!at(text)) return false;
    advance();
    return true;
  }
  void expect(std::string_view text) {
    if (!at(text)) fail(cur(), "unexpected token", {std::string(text)});
    advance();
  }
  void expect_kw(std::string_view kw) {
    if (!at_kw(kw)) fail(cur(), "unexpected token", {std::string(kw)});
    advance();
  }
  long expect_int() {
    if (!at_int()) fail(cur(), "expected integer", {"integer"});
    long v;
    try {
      v = std::stol(cur().text);
    } catch (const std::exception&) {
      fail(cur(), "integer literal out of range", {});
    }
    advance();
    return v;
  }
  long expect_sint() {
    long s = accept("-") ? -1 : 1;
    return s * expect_int();
  }

  void check_declared(const Token& t, char sym) {
    if (sym == 'q') return;
    if (!declared_.count(sym))
      fail(t, std::string("undeclared parameter '") + sym + "'", {});
  }

  // ----- sums and terms -----

  SumNode sum() {
    SumNode s;
    expect_kw("sum");
    expect_kw("k");
    expect("=");
    if (!(at_int() && cur().text == "0"))
      fail(cur(), "sums must start at k = 0", {"0"});
    advance();
    expect("..");
    s.bound = bound();
    expect(":");
    s.term = term();
    if (at_kw("prefactor")) {
      advance();
      expect(":");
      s.has_prefactor = true;
      s.prefactor = term();
    }
    return s;
  }

  BoundNode bound() {
    const Token& t = cur();
    if (at_kw("M")) {
      advance();
      return {BoundKind::M_SELECT, 0};
    }
    if (at_kw("n")) {
      advance();
      expect("-");
      if (!(at_int() && cur().text == "1"))
        fail(cur(), "bound not in the allowed set", {"1"});
      advance();
      return {BoundKind::NM1_FIXED, 0};
    }
    if (at_int()) return {BoundKind::FIXED, expect_int()};
    if (at("(")) {
      advance();
      expect_kw("n");
      BoundKind kind;
      if (accept("+")) {
        if (!(at_int() && cur().text == "1"))
          fail(cur(), "bound not in the allowed set", {"(n+1)/2"});
        advance();
        kind = BoundKind::HALF_NP1;
      } else {
        expect("-");
        if (!(at_int() && cur().text == "3"))
          fail(cur(), "bound not in the allowed set", {"(n-3)/2"});
        advance();
        kind = BoundKind::HALF_NM3;
      }
      expect(")");
      expect("/");
      if (!(at_int() && cur().text == "2"))
        fail(cur(), "bound not in the allowed set", {"2"});
      advance();
      return {kind, 0};
    }
    fail(t, "bound not in the allowed set",
         {"M", "n-1", "(n+1)/2", "(n-3)/2", "integer"});
  }

  TermNode term() {
    TermNode t;
    t.factors.push_back(factor(false));
    while (at("*") || at("/")) {
      bool div = at("/");
      advance();
      t.factors.push_back(factor(div));
    }
    return t;
  }

  FactorNode factor(bool divide) {
    const Token& t = cur();
    FactorNode f;
    f.divide = divide;
    if (at_kw("qint")) {
      advance();
      expect("(");
      f.kind = FactorNode::Kind::QINT;
      f.lin = linear();
      expect(")");
      if (accept("^")) f.power = expect_sint();
      return f;
    }
    if (at_kw("poch")) {
      advance();
      expect("(");
      f.kind = FactorNode::Kind::POCH;
      f.mono = mono_body();
      expect(";");
      expect_kw("q");
      expect("^");
      if (!(at_int() && cur().text == "2"))
        fail(cur(), "only the step q^2 is supported", {"2"});
      advance();
      expect(";");
      f.len = lenform();
      expect(")");
      if (accept("^")) f.power = expect_sint();
      return f;
    }
    if (at_kw("omega") || at_kw("theta") || at_kw("rq") || at_kw("sq")) {
      f.kind = FactorNode::Kind::NAMED;
      f.named = at_kw("omega")   ? NamedFactor::OMEGA
                : at_kw("theta") ? NamedFactor::THETA
                : at_kw("rq")    ? NamedFactor::RQ
                                 : NamedFactor::SQ;
      advance();
      return f;
    }
    if (at_kw("q") && ahead(1).text == "^" && ahead(2).text == "(")
      return q_power_factor(std::move(f));
    if (at("(")) {
      advance();
      MonomialSpec base = mono_body();
      expect(")");
      if (!at("^"))
        fail(cur(), "parenthesized monomial needs an exponent", {"^"});
      f.exp = expspec();
      if (f.exp.is_k && base == MonomialSpec{-1, {}, 0}) {
        f.kind = FactorNode::Kind::SIGNPOW;
        return f;
      }
      f.kind = FactorNode::Kind::MONOPOW;
      f.mono = std::move(base);
      return f;
    }
    if (at_int() || at("-") || is_sym(t)) {
      bool plain_sym = is_sym(t) && !(ahead(1).text == "^" &&
                                      (ahead(2).type == Token::Type::INT ||
                                       ahead(2).text == "-")) &&
                       ahead(1).text != "*";
      MonomialSpec m = mono_body();
      if (at("^")) {
        if (!plain_sym)
          fail(cur(), "parenthesize the base of this power", {});
        f.exp = expspec();
        f.kind = FactorNode::Kind::MONOPOW;
        f.mono = std::move(m);
        return f;
      }
      if (m.params.empty() && m.qexp == 0) {
        f.kind = FactorNode::Kind::RATIONAL;
        f.rat = m.coeff;
      } else {
        f.kind = FactorNode::Kind::MONO;
        f.mono = std::move(m);
      }
      return f;
    }
    fail(t, "expected a factor",
         {"qint", "poch", "omega", "theta", "rq", "sq", "monomial", "q^(..)",
          "(-1)^k"});
  }

  // q^( ... ): either a k-quadratic exponent or an n-form monomial power.
  FactorNode q_power_factor(FactorNode f) {
    advance();  // q, leaving "^" current
    if (ahead(2).text == "(") {  // nested: q^((...)/d)
      f.kind = FactorNode::Kind::MONOPOW;
      f.mono = MonomialSpec{1, {}, 1};
      f.exp = expspec();
      return f;
    }
    // flat: scan for the variable up to the closing paren
    bool has_k = false, has_n = false;
    for (size_t d = 2; ahead(d).type != Token::Type::END; ++d) {
      if (ahead(d).text == ")") break;
      if (ahead(d).text == "k") has_k = true;
      if (ahead(d).text == "n") has_n = true;
    }
    advance();  // ^
    advance();  // (
    if (has_k && !has_n) {
      long c2 = 0, c1 = 0, c0 = 0;
      poly_body('k', c2, c1, c0);
      if (c0 != 0)
        fail(cur(), "constant exponent term not allowed in a summand power",
             {});
      expect(")");
      f.kind = FactorNode::Kind::QQUAD;
      f.quad_a = c2;
      f.quad_b = c1;
      return f;
    }
    if (has_n && !has_k) {
      long c2 = 0, c1 = 0, c0 = 0;
      poly_body('n', c2, c1, c0);
      expect(")");
      f.kind = FactorNode::Kind::MONOPOW;
      f.mono = MonomialSpec{1, {}, 1};
      f.exp = ExpNode{false, ExpForm{c2, c1, c0, 1}};
      return f;
    }
    fail(cur(), "exponent must be in k or in n alone", {});
  }

  // signed integer-coefficient monomial in a..d and q with integer exponents
  MonomialSpec mono_body() {
    MonomialSpec m;
    if (accept("-")) m.coeff = -1;
    if (at_int()) {
      m.coeff *= expect_int();
    } else if (is_sym(cur())) {
      sym_atom(m);
    } else {
      fail(cur(), "expected a monomial", {"integer", "a", "b", "c", "d", "q"});
    }
    while (at("*") && is_sym(ahead(1))) {
      advance();
      sym_atom(m);
    }
    return m;
  }

  void sym_atom(MonomialSpec& m) {
    const Token& t = cur();
    if (!is_sym(t)) fail(t, "expected a symbol", {"a", "b", "c", "d", "q"});
    char s = t.text[0];
    check_declared(t, s);
    advance();
    long e = 1;
    if (at("^") && (ahead(1).type == Token::Type::INT || ahead(1).text == "-")) {
      advance();
      e = expect_sint();
    }
    if (s == 'q') {
      m.qexp += e;
    } else {
      m.params[s] += e;
      if (m.params[s] == 0) m.params.erase(s);
    }
  }

  // "^" then: k, (poly-in-n), or ((poly-in-n)/int)
  ExpNode expspec() {
    expect("^");
    if (at_kw("k")) {
      advance();
      return ExpNode{true, ExpForm::constant(1)};
    }
    if (at("(")) {
      advance();
      ExpForm form{0, 0, 0, 1};
      if (at("(")) {
        advance();
        poly_body('n', form.a2, form.a1, form.a0);
        expect(")");
        expect("/");
        form.div = expect_int();
        expect(")");
      } else {
        poly_body('n', form.a2, form.a1, form.a0);
        expect(")");
      }
      if (form.a2 == 0 && form.a1 == 0)
        fail(cur(), "exponent must involve n", {});
      return ExpNode{false, form};
    }
    fail(cur(), "expected an exponent", {"k", "("});
  }

  // sum of signed terms c*var^2, c*var, c
  void poly_body(char var, long& c2, long& c1, long& c0) {
    std::string v(1, var);
    bool first = true;
    while (true) {
      long sign = 1;
      if (at("-")) {
        sign = -1;
        advance();
      } else if (at("+")) {
        advance();
      } else if (!first) {
        return;
      }
      first = false;
      long coef = 1;
      bool have_var = false;
      if (at_int()) {
        coef = expect_int();
        if (at("*") && ahead(1).text == v) {
          advance();
          advance();
          have_var = true;
        }
      } else if (at_kw(v)) {
        advance();
        have_var = true;
      } else {
        fail(cur(), "expected a term", {"integer", v});
      }
      if (!have_var) {
        c0 += sign * coef;
        continue;
      }
      if (at("^")) {
        advance();
        if (!(at_int() && cur().text == "2"))
          fail(cur(), "only squares are supported in exponents", {"2"});
        advance();
        c2 += sign * coef;
      } else {
        c1 += sign * coef;
      }
    }
  }

  LinearNode linear() {
    LinearNode L;
    if (at("-")) {
      advance();
      L.var = '0';
      L.b = -expect_int();
      return L;
    }
    if (at_int()) {
      long c = expect_int();
      if (at("*") && (ahead(1).text == "k" || ahead(1).text == "n")) {
        advance();
        L.var = cur().text[0];
        L.a = c;
        advance();
      } else {
        L.var = '0';
        L.b = c;
        return L;
      }
    } else if (at_kw("k") || at_kw("n")) {
      L.var = cur().text[0];
      L.a = 1;
      advance();
    } else {
      fail(cur(), "expected a linear form", {"integer", "k", "n"});
    }
    if (at("+")) {
      advance();
      L.b = expect_int();
    } else if (at("-")) {
      advance();
      L.b = -expect_int();
    }
    return L;
  }

  LenForm lenform() {
    if (at_kw("k")) {
      advance();
      return LenForm::k();
    }
    if (at_int()) return LenForm::constant(expect_int());
    if (at("(")) {
      advance();
      expect_kw("n");
      long b;
      if (accept("+")) {
        b = expect_int();
      } else {
        expect("-");
        b = -expect_int();
      }
      expect(")");
      long div = 1;
      if (accept("/")) div = expect_int();
      return LenForm::affine(1, b, div);
    }
    fail(cur(), "expected a length", {"k", "integer", "(n+..)/.."});
  }

  std::vector<ModFactor> modexpr() {
    std::vector<ModFactor> v;
    do {
      ModFactor f{ModFactorKind::CYCLO, 1};
      if (at_kw("Phi")) {
        advance();
        expect("(");
        expect_kw("n");
        expect(")");
        f.kind = ModFactorKind::CYCLO;
      } else if (at("[")) {
        advance();
        expect_kw("n");
        expect("]");
        f.kind = ModFactorKind::QINT;
      } else if (at("(")) {
        advance();
        if (at_int()) {
          if (cur().text != "1")
            fail(cur(), "unknown modulus factor", {"1"});
          advance();
          expect("-");
          if (!at_kw("a")) fail(cur(), "unknown modulus factor", {"a"});
          check_declared(cur(), 'a');
          advance();
          expect("*");
          expect_kw("q");
          expect("^");
          expect_kw("n");
          f.kind = ModFactorKind::ONE_MINUS_AQN;
        } else if (at_kw("a") || at_kw("b")) {
          f.kind = at_kw("a") ? ModFactorKind::A_MINUS_QN
                              : ModFactorKind::B_MINUS_QN;
          check_declared(cur(), cur().text[0]);
          advance();
          expect("-");
          expect_kw("q");
          expect("^");
          expect_kw("n");
        } else {
          fail(cur(), "unknown modulus factor",
               {"(1-a*q^n)", "(a-q^n)", "(b-q^n)"});
        }
        expect(")");
      } else {
        fail(cur(), "unknown modulus factor",
             {"Phi(n)", "[n]", "(1-a*q^n)", "(a-q^n)", "(b-q^n)"});
      }
      if (accept("^")) {
        f.exp = expect_int();
        if (f.exp < 1) fail(cur(), "modulus exponent must be positive", {});
      }
      v.push_back(f);
    } while (accept("*"));
    return v;
  }
};

}  // namespace detail

// ----- canonical rendering -----

inline std::string render_mono(const MonomialSpec& m) {
  std::vector<std::string> parts;
  for (const auto& [s, e] : m.params) {
    if (e == 0) continue;
    std::string p(1, s);
    if (e != 1) p += "^" + std::to_string(e);
    parts.push_back(std::move(p));
  }
  if (m.qexp != 0) {
    std::string p = "q";
    if (m.qexp != 1) p += "^" + std::to_string(m.qexp);
    parts.push_back(std::move(p));
  }
  BigRat c = m.coeff;
  std::string body;
  for (size_t i = 0; i < parts.size(); ++i) body += (i ? "*" : "") + parts[i];
  if (parts.empty()) return rat_str(c);
  bool neg = c < 0;
  BigRat ac = neg ? BigRat(-c) : c;
  std::string lead = neg ? "-" : "";
  if (ac != 1) lead += rat_str(ac) + "*";
  return lead + body;
}

namespace detail {

inline std::string render_poly(char var, long c2, long c1, long c0) {
  std::string v(1, var);
  std::ostringstream os;
  bool first = true;
  auto put = [&](long c, const std::string& sym) {
    if (c == 0) return;
    long a = c < 0 ? -c : c;
    if (first) {
      if (c < 0) os << "-";
      first = false;
    } else {
      os << (c < 0 ? "-" : "+");
    }
    if (sym.empty()) {
      os << a;
    } else {
      if (a != 1) os << a << "*";
      os << sym;
    }
  };
  put(c2, v + "^2");
  put(c1, v);
  put(c0, "");
  if (first) os << "0*" << v;
  return os.str();
}

inline std::string render_exp(const ExpNode& e) {
  if (e.is_k) return "k";
  std::string body = render_poly('n', e.form.a2, e.form.a1, e.form.a0);
  if (e.form.div == 1) return "(" + body + ")";
  return "((" + body + ")/" + std::to_string(e.form.div) + ")";
}

inline std::string render_len(const LenForm& l) {
  if (l.is_k) return "k";
  if (l.an == 0 && l.div == 1) return std::to_string(l.b);
  std::string s = "(n" + std::string(l.b < 0 ? "-" : "+") +
                  std::to_string(l.b < 0 ? -l.b : l.b) + ")";
  if (l.div != 1) s += "/" + std::to_string(l.div);
  return s;
}

inline std::string render_linear(const LinearNode& L) {
  if (L.var == '0') return std::to_string(L.b);
  std::string s;
  if (L.a != 1) s += std::to_string(L.a) + "*";
  s += L.var;
  if (L.b > 0) s += "+" + std::to_string(L.b);
  if (L.b < 0) s += "-" + std::to_string(-L.b);
  return s;
}

inline std::string render_factor(const FactorNode& f) {
  std::string pow = f.power != 1 ? "^" + std::to_string(f.power) : "";
  switch (f.kind) {
    case FactorNode::Kind::RATIONAL:
      return rat_str(f.rat);
    case FactorNode::Kind::MONO:
      return render_mono(f.mono);
    case FactorNode::Kind::MONOPOW: {
      bool plain = f.mono.coeff == 1 && f.mono.qexp == 0 &&
                   f.mono.params.size() == 1 &&
                   f.mono.params.begin()->second == 1;
      if (f.mono.coeff == 1 && f.mono.params.empty() && f.mono.qexp == 1)
        plain = true;
      std::string base =
          plain ? render_mono(f.mono) : "(" + render_mono(f.mono) + ")";
      return base + "^" + render_exp(f.exp);
    }
    case FactorNode::Kind::QINT:
      return "qint(" + render_linear(f.lin) + ")" + pow;
    case FactorNode::Kind::POCH:
      return "poch(" + render_mono(f.mono) + "; q^2; " + render_len(f.len) +
             ")" + pow;
    case FactorNode::Kind::SIGNPOW:
      return "(-1)^k";
    case FactorNode::Kind::QQUAD:
      return "q^(" + render_poly('k', f.quad_a, f.quad_b, 0) + ")";
    case FactorNode::Kind::NAMED:
      switch (f.named) {
        case NamedFactor::OMEGA: return "omega";
        case NamedFactor::THETA: return "theta";
        case NamedFactor::RQ: return "rq";
        case NamedFactor::SQ: return "sq";
        case NamedFactor::NONE: break;
      }
      throw std::logic_error("render_factor: empty named factor");
  }
  throw std::logic_error("render_factor: bad kind");
}

inline std::string render_term(const TermNode& t) {
  std::string s;
  for (size_t i = 0; i < t.factors.size(); ++i) {
    if (i) s += t.factors[i].divide ? " / " : " * ";
    s += render_factor(t.factors[i]);
  }
  return s.empty() ? "1" : s;
}

inline std::string render_bound(const BoundNode& b) {
  switch (b.kind) {
    case BoundKind::M_SELECT: return "M";
    case BoundKind::HALF_NP1: return "(n+1)/2";
    case BoundKind::HALF_NM3: return "(n-3)/2";
    case BoundKind::NM1_FIXED: return "n-1";
    case BoundKind::FIXED: return std::to_string(b.fixed);
  }
  throw std::logic_error("render_bound");
}

inline std::string render_sum(const SumNode& s) {
  std::string out = "sum k=0.." + render_bound(s.bound) + " : " +
                    render_term(s.term);
  if (s.has_prefactor)
    out += "\n  prefactor: " + render_term(s.prefactor);
  return out;
}

inline std::string render_modfactor(const ModFactor& f) {
  std::string s;
  switch (f.kind) {
    case ModFactorKind::CYCLO: s = "Phi(n)"; break;
    case ModFactorKind::QINT: s = "[n]"; break;
    case ModFactorKind::ONE_MINUS_AQN: s = "(1-a*q^n)"; break;
    case ModFactorKind::A_MINUS_QN: s = "(a-q^n)"; break;
    case ModFactorKind::B_MINUS_QN: s = "(b-q^n)"; break;
  }
  if (f.exp != 1) s += "^" + std::to_string(f.exp);
  return s;
}

}  // namespace detail

inline SpecAst parse_task(std::string_view text) {
  return detail::Parser(text).task();
}

inline std::string render(const SpecAst& ast) {
  std::string out = "verify\n";
  if (!ast.params.empty()) {
    out += "params: ";
    for (size_t i = 0; i < ast.params.size(); ++i) {
      if (i) out += ", ";
      out += ast.params[i];
    }
    out += "\n";
  }
  out += "lhs: " + detail::render_sum(ast.lhs) + "\n";
  out += "rhs: " + (ast.rhs_zero ? "0" : detail::render_sum(ast.rhs)) + "\n";
  out += "modulus: ";
  for (size_t i = 0; i < ast.modulus.size(); ++i) {
    if (i) out += " * ";
    out += detail::render_modfactor(ast.modulus[i]);
  }
  out += "\n";
  return out;
}

// ----- lowering -----

namespace detail {

inline MonomialSpec mono_inverse(const MonomialSpec& m) {
  MonomialSpec r;
  r.coeff = rat_inv(m.coeff);
  for (const auto& [s, e] : m.params) r.params[s] = -e;
  r.qexp = -m.qexp;
  return r;
}

inline void lower_term_factor(SumSpec& s, const FactorNode& f) {
  switch (f.kind) {
    case FactorNode::Kind::RATIONAL:
      if (f.rat != 1)
        throw SemanticError("constant coefficients belong in the prefactor");
      return;
    case FactorNode::Kind::MONO:
      throw SemanticError("a monomial inside a summand needs exponent k");
    case FactorNode::Kind::MONOPOW: {
      if (!f.exp.is_k)
        throw SemanticError("n-dependent powers belong in the prefactor");
      MonomialSpec b = f.divide ? mono_inverse(f.mono) : f.mono;
      s.z.coeff *= b.coeff;
      for (const auto& [sym, e] : b.params) {
        s.z.params[sym] += e;
        if (s.z.params[sym] == 0) s.z.params.erase(sym);
      }
      s.z.qexp += b.qexp;
      return;
    }
    case FactorNode::Kind::QINT:
      if (f.lin.var != 'k')
        throw SemanticError("summand q-integers must be linear in k");
      if (f.divide || f.power != 1)
        throw SemanticError("summand q-integers cannot be inverted");
      if (s.has_qint)
        throw SemanticError("at most one q-integer factor per summand");
      s.has_qint = true;
      s.qint_a = f.lin.a;
      s.qint_b = f.lin.b;
      return;
    case FactorNode::Kind::POCH:
      if (!f.len.is_k)
        throw SemanticError("summand Pochhammer lengths must be k");
      s.pochs.push_back(
          PochFactor{f.mono, f.len, f.divide ? -f.power : f.power});
      return;
    case FactorNode::Kind::SIGNPOW:
      s.alternating = !s.alternating;
      return;
    case FactorNode::Kind::QQUAD:
      s.quad_a += f.divide ? -f.quad_a : f.quad_a;
      s.quad_b += f.divide ? -f.quad_b : f.quad_b;
      return;
    case FactorNode::Kind::NAMED:
      throw SemanticError("named factors belong in the prefactor");
  }
}

inline void lower_prefactor_factor(PrefactorSpec& p, const FactorNode& f) {
  switch (f.kind) {
    case FactorNode::Kind::RATIONAL:
      p.coeff *= f.divide ? rat_inv(f.rat) : f.rat;
      return;
    case FactorNode::Kind::MONO:
      p.monos.push_back(MonoPowAtom{f.divide ? mono_inverse(f.mono) : f.mono,
                                    ExpForm::constant(1)});
      return;
    case FactorNode::Kind::MONOPOW:
      if (f.exp.is_k)
        throw SemanticError("k-dependent powers belong in the summand");
      p.monos.push_back(MonoPowAtom{f.divide ? mono_inverse(f.mono) : f.mono,
                                    f.exp.form});
      return;
    case FactorNode::Kind::QINT: {
      if (f.lin.var == 'k')
        throw SemanticError("k-dependent q-integers belong in the summand");
      long cn = f.lin.var == 'n' ? f.lin.a : 0;
      p.qints.push_back(
          QIntAtom{cn, f.lin.b, f.divide ? -f.power : f.power});
      return;
    }
    case FactorNode::Kind::POCH:
      if (f.len.is_k)
        throw SemanticError("k-length Pochhammers belong in the summand");
      p.pochs.push_back(
          PochFactor{f.mono, f.len, f.divide ? -f.power : f.power});
      return;
    case FactorNode::Kind::SIGNPOW:
      throw SemanticError("(-1)^k belongs in the summand");
    case FactorNode::Kind::QQUAD:
      throw SemanticError("k-dependent q-powers belong in the summand");
    case FactorNode::Kind::NAMED:
      if (f.divide) throw SemanticError("named factors cannot be inverted");
      if (p.named != NamedFactor::NONE)
        throw SemanticError("at most one named factor per prefactor");
      p.named = f.named;
      return;
  }
}

inline SumSpec lower_sum(const SumNode& node) {
  SumSpec s;
  s.bound = node.bound.kind;
  s.fixed_bound = node.bound.fixed;
  for (const FactorNode& f : node.term.factors) lower_term_factor(s, f);
  if (node.has_prefactor)
    for (const FactorNode& f : node.prefactor.factors)
      lower_prefactor_factor(s.prefactor, f);
  return s;
}

inline void check_named_params(const PrefactorSpec& p,
                               const std::string& params) {
  auto need = [&](char c) {
    if (params.find(c) == std::string::npos)
      throw SemanticError(std::string("named factor needs parameter '") + c +
                          "' declared");
  };
  switch (p.named) {
    case NamedFactor::THETA:
      need('a');
      need('b');
      return;
    case NamedFactor::RQ:
    case NamedFactor::SQ:
      need('a');
      return;
    case NamedFactor::OMEGA:
    case NamedFactor::NONE:
      return;
  }
}

}  // namespace detail

inline CongruenceTask lower(const SpecAst& ast, std::string name = "spec") {
  CongruenceTask t;
  t.name = std::move(name);
  t.params.assign(ast.params.begin(), ast.params.end());
  t.lhs = detail::lower_sum(ast.lhs);
  if (ast.rhs_zero) {
    t.rhs.bound = BoundKind::FIXED;
    t.rhs.fixed_bound = 0;
    t.rhs.prefactor.coeff = 0;
  } else {
    t.rhs = detail::lower_sum(ast.rhs);
  }
  t.modulus = ModulusRecipe{ast.modulus};
  detail::check_named_params(t.lhs.prefactor, t.params);
  detail::check_named_params(t.rhs.prefactor, t.params);
  return t;
}

inline Verdict verify_task(const CongruenceTask& t, long n, MMode mode,
                           const ParamMap& sample) {
  if (n < 3 || n % 2 == 0) {
    Verdict v;
    v.diagnostics = "n must be odd and >= 3";
    return v;
  }
  return verify_sumspec(t.lhs, t.rhs, t.modulus, n, mode, sample);
}

}  // namespace qcl
