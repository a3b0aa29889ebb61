#pragma once

#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "polycert/errors.hpp"
#include "polycert/expr.hpp"
#include "polycert/interval.hpp"
#include "polycert/poly.hpp"
#include "polycert/rational.hpp"

namespace polycert {

/// The claim under validation: max over I of |f(x) - p(x)| <= eps,
/// with n series terms for the internal replacement.
struct Certificate {
  ExprPtr f;
  std::string varName = "x";
  Poly p;
  Rat eps;
  Interval I{Rat(0), Rat(1)};
  unsigned n = 1;
};

/// An interval [u, v] asserted to contain one root of a polynomial.
struct ConfInterval {
  Rat u, v;

  ConfInterval(Rat u_, Rat v_) : u(std::move(u_)), v(std::move(v_)) {
    if (u > v)
      throw CheckError(ErrCode::InvertedInterval,
                       "confidence interval has u > v: " + u.str() + " > " +
                           v.str());
  }

  friend bool operator==(const ConfInterval& a, const ConfInterval& b) {
    return a.u == b.u && a.v == b.v;
  }
};

namespace detail {

struct Token {
  enum class T {
    Ident, Number, LBracket, RBracket, LParen, RParen,
    Comma, Semi, Plus, Minus, Star, Slash, Equals, End
  };
  T t;
  std::string text;
  bool integral = false;  // Number without '.' or exponent
  size_t line = 0, col = 0;
};

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    while (true) {
      skipSpaceAndComments();
      if (pos_ >= src_.size()) {
        out.push_back({Token::T::End, "", false, line_, col_});
        return out;
      }
      size_t line = line_, col = col_;
      char c = src_[pos_];
      auto push1 = [&](Token::T t) {
        advance();
        out.push_back({t, std::string(1, c), false, line, col});
      };
      switch (c) {
        case '[': push1(Token::T::LBracket); break;
        case ']': push1(Token::T::RBracket); break;
        case '(': push1(Token::T::LParen); break;
        case ')': push1(Token::T::RParen); break;
        case ',': push1(Token::T::Comma); break;
        case ';': push1(Token::T::Semi); break;
        case '+': push1(Token::T::Plus); break;
        case '-': push1(Token::T::Minus); break;
        case '*': push1(Token::T::Star); break;
        case '/': push1(Token::T::Slash); break;
        case '=': push1(Token::T::Equals); break;
        default:
          if (isDigit(c)) {
            out.push_back(lexNumber());
          } else if (isIdentStart(c)) {
            std::string text;
            while (pos_ < src_.size() && isIdentChar(src_[pos_])) {
              text += src_[pos_];
              advance();
            }
            out.push_back({Token::T::Ident, std::move(text), false, line, col});
          } else {
            throw err(line, col, "unexpected character");
          }
      }
    }
  }

  static CheckError err(size_t line, size_t col, const std::string& expected) {
    return CheckError(ErrCode::ParseError,
                      "parse error at " + std::to_string(line) + ":" +
                          std::to_string(col) + ": " + expected);
  }

 private:
  static bool isDigit(char c) { return c >= '0' && c <= '9'; }
  static bool isIdentStart(char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_';
  }
  static bool isIdentChar(char c) { return isIdentStart(c) || isDigit(c); }

  void advance() {
    if (src_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  void skipSpaceAndComments() {
    while (pos_ < src_.size()) {
      char c = src_[pos_];
      if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
        advance();
      } else if (c == '#') {
        while (pos_ < src_.size() && src_[pos_] != '\n') advance();
      } else {
        return;
      }
    }
  }

  Token lexNumber() {
    size_t line = line_, col = col_;
    std::string text;
    bool integral = true;
    auto digits = [&]() {
      bool any = false;
      while (pos_ < src_.size() && isDigit(src_[pos_])) {
        text += src_[pos_];
        advance();
        any = true;
      }
      return any;
    };
    digits();
    if (pos_ < src_.size() && src_[pos_] == '.') {
      integral = false;
      text += '.';
      advance();
      if (!digits()) throw err(line_, col_, "digits after decimal point");
    }
    if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
      integral = false;
      text += 'e';
      advance();
      if (pos_ < src_.size() && (src_[pos_] == '+' || src_[pos_] == '-')) {
        text += src_[pos_];
        advance();
      }
      if (!digits()) throw err(line_, col_, "digits in exponent");
    }
    return {Token::T::Number, std::move(text), integral, line, col};
  }

  std::string_view src_;
  size_t pos_ = 0;
  size_t line_ = 1, col_ = 1;
};

class Parser {
 public:
  explicit Parser(std::string_view src) : toks_(Lexer(src).run()) {}

  Certificate certificate() {
    std::optional<ExprPtr> f;
    std::optional<Poly> p;
    std::optional<Rat> eps;
    std::optional<Interval> interval;
    std::optional<unsigned> n;
    while (peek().t != Token::T::End) {
      Token key = expect(Token::T::Ident, "statement name (f, p, eps, I, n)");
      expect(Token::T::Equals, "'='");
      if (key.text == "f") {
        if (f) throw dup(key);
        f = expr();
      } else if (key.text == "p") {
        if (p) throw dup(key);
        p = polyList();
      } else if (key.text == "eps") {
        if (eps) throw dup(key);
        eps = rat();
      } else if (key.text == "I") {
        if (interval) throw dup(key);
        expect(Token::T::LBracket, "'['");
        Rat lo = rat();
        expect(Token::T::Comma, "','");
        Rat hi = rat();
        expect(Token::T::RBracket, "']'");
        if (!(lo < hi))
          throw Lexer::err(key.line, key.col, "interval requires lo < hi");
        interval = Interval(std::move(lo), std::move(hi));
      } else if (key.text == "n") {
        if (n) throw dup(key);
        n = natural();
      } else {
        throw Lexer::err(key.line, key.col,
                         "unknown statement '" + key.text + "'");
      }
      expect(Token::T::Semi, "';'");
    }
    auto missing = [&](const char* what) {
      return CheckError(ErrCode::ParseError,
                        std::string("parse error: missing '") + what +
                            "' statement");
    };
    if (!f) throw missing("f");
    if (!p) throw missing("p");
    if (!eps) throw missing("eps");
    if (!interval) throw missing("I");
    if (!n) throw missing("n");
    if (!(*eps > Rat(0)))
      throw CheckError(ErrCode::ParseError,
                       "parse error: eps must be positive, got " + eps->str());
    if (*n < 1)
      throw CheckError(ErrCode::ParseError, "parse error: n must be >= 1");
    Certificate cert;
    cert.f = std::move(*f);
    cert.varName = vars_.empty() ? "x" : *vars_.begin();
    cert.p = std::move(*p);
    cert.eps = std::move(*eps);
    cert.I = std::move(*interval);
    cert.n = *n;
    return cert;
  }

  std::pair<ExprPtr, std::string> exprOnly() {
    ExprPtr e = expr();
    Token t = peek();
    if (t.t != Token::T::End)
      throw Lexer::err(t.line, t.col, "end of expression");
    return {std::move(e), vars_.empty() ? "x" : *vars_.begin()};
  }

 private:
  const Token& peek(size_t ahead = 0) const {
    size_t i = pos_ + ahead;
    return i < toks_.size() ? toks_[i] : toks_.back();
  }
  Token next() { return toks_[std::min(pos_++, toks_.size() - 1)]; }
  Token expect(Token::T t, const std::string& what) {
    Token tok = next();
    if (tok.t != t) throw Lexer::err(tok.line, tok.col, "expected " + what);
    return tok;
  }
  static CheckError dup(const Token& key) {
    return Lexer::err(key.line, key.col,
                      "duplicate statement '" + key.text + "'");
  }

  /// r ::= integer | integer/integer | decimal, with optional leading sign.
  Rat rat() {
    bool neg = false;
    if (peek().t == Token::T::Minus || peek().t == Token::T::Plus) {
      neg = next().t == Token::T::Minus;
    }
    Token num = expect(Token::T::Number, "a number");
    Rat value = numberWithOptionalDenominator(num);
    return neg ? -value : value;
  }

  Rat numberWithOptionalDenominator(const Token& num) {
    if (num.integral && peek().t == Token::T::Slash &&
        peek(1).t == Token::T::Number && peek(1).integral) {
      next();
      Token den = next();
      if (mpz_class(den.text, 10) == 0)
        throw Lexer::err(den.line, den.col, "nonzero denominator");
      return Rat(mpz_class(num.text, 10), mpz_class(den.text, 10));
    }
    return ratFromDecimal(num.text);
  }

  unsigned natural() {
    Token num = expect(Token::T::Number, "a natural number");
    if (!num.integral)
      throw Lexer::err(num.line, num.col, "an integer");
    mpz_class v(num.text, 10);
    if (v > 1000000)
      throw Lexer::err(num.line, num.col, "n too large (max 1000000)");
    return static_cast<unsigned>(v.get_ui());
  }

  Poly polyList() {
    expect(Token::T::LBracket, "'['");
    std::vector<Rat> coeffs;
    if (peek().t != Token::T::RBracket) {
      coeffs.push_back(rat());
      while (peek().t == Token::T::Comma || peek().t == Token::T::Semi) {
        next();
        coeffs.push_back(rat());
      }
    }
    expect(Token::T::RBracket, "']'");
    return Poly(std::move(coeffs));
  }

  struct DepthGuard {
    Parser& p;
    explicit DepthGuard(Parser& parser) : p(parser) {
      if (++p.depth_ > kMaxNesting) {
        const Token& t = p.peek();
        throw Lexer::err(t.line, t.col, "expression nesting too deep");
      }
    }
    ~DepthGuard() { --p.depth_; }
  };

  ExprPtr expr() {
    DepthGuard guard(*this);
    ExprPtr lhs = term();
    while (true) {
      Token::T t = peek().t;
      if (t == Token::T::Plus) {
        next();
        lhs = Expr::add(std::move(lhs), term());
      } else if (t == Token::T::Minus) {
        next();
        lhs = Expr::sub(std::move(lhs), term());
      } else {
        return lhs;
      }
    }
  }

  ExprPtr term() {
    ExprPtr lhs = unary();
    while (true) {
      Token::T t = peek().t;
      if (t == Token::T::Star) {
        next();
        lhs = Expr::mul(std::move(lhs), unary());
      } else if (t == Token::T::Slash) {
        const Token& tok = peek();
        throw Lexer::err(tok.line, tok.col,
                         "division is not supported; write a reciprocal "
                         "constant instead (e.g. x * 1/2)");
      } else {
        return lhs;
      }
    }
  }

  ExprPtr unary() {
    if (peek().t == Token::T::Minus) {
      DepthGuard guard(*this);
      next();
      ExprPtr inner = unary();
      if (inner->kind() == Expr::Kind::Const)
        return Expr::constant(-inner->value());
      return Expr::neg(std::move(inner));
    }
    return primary();
  }

  ExprPtr primary() {
    Token tok = next();
    switch (tok.t) {
      case Token::T::Number:
        return Expr::constant(numberWithOptionalDenominator(tok));
      case Token::T::LParen: {
        ExprPtr e = expr();
        expect(Token::T::RParen, "')'");
        return e;
      }
      case Token::T::Ident: {
        if (peek().t == Token::T::LParen) {
          auto fn = fnFromName(tok.text);
          if (!fn)
            throw CheckError(ErrCode::UnknownFunction,
                             "unknown function '" + tok.text + "' at " +
                                 std::to_string(tok.line) + ":" +
                                 std::to_string(tok.col) +
                                 " (supported: exp, sin, cos, ln, atan)");
          next();
          ExprPtr arg = expr();
          expect(Token::T::RParen, "')'");
          return Expr::apply(*fn, std::move(arg));
        }
        vars_.insert(tok.text);
        if (vars_.size() > 1) {
          std::string names;
          for (const auto& v : vars_) {
            if (!names.empty()) names += ", ";
            names += v;
          }
          throw CheckError(ErrCode::MultipleVariables,
                           "expression uses more than one variable: " + names);
        }
        return Expr::var();
      }
      default:
        throw Lexer::err(tok.line, tok.col, "expected an expression");
    }
  }

  static constexpr size_t kMaxNesting = 256;

  std::vector<Token> toks_;
  size_t pos_ = 0;
  size_t depth_ = 0;
  std::set<std::string> vars_;
};

}  // namespace detail

inline Certificate parseCertificate(std::string_view text) {
  return detail::Parser(text).certificate();
}

/// Parse a bare expression (the `gen` command's --fn argument).
inline std::pair<ExprPtr, std::string> parseExprText(std::string_view text) {
  return detail::Parser(text).exprOnly();
}

/// Canonical certificate printer; parses back to an identical certificate.
inline std::string printCertificate(const Certificate& cert) {
  std::string out;
  out += "f = " + exprToString(*cert.f, cert.varName) + ";\n";
  out += "p = " + cert.p.str() + ";\n";
  out += "eps = " + cert.eps.str() + ";\n";
  out += "I = [" + cert.I.lo().str() + ", " + cert.I.hi().str() + "];\n";
  out += "n = " + std::to_string(cert.n) + ";\n";
  return out;
}

/// Zero-hints file: one confidence interval per line as two whitespace-
/// separated rationals; '#' starts a comment.
inline std::vector<ConfInterval> parseZeroHints(std::string_view text) {
  std::vector<ConfInterval> out;
  size_t lineNo = 0;
  size_t pos = 0;
  while (pos <= text.size()) {
    size_t eol = text.find('\n', pos);
    std::string_view line = text.substr(
        pos, eol == std::string_view::npos ? text.size() - pos : eol - pos);
    ++lineNo;
    pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
    size_t hash = line.find('#');
    if (hash != std::string_view::npos) line = line.substr(0, hash);
    std::vector<std::string_view> toks;
    size_t i = 0;
    while (i < line.size()) {
      while (i < line.size() && (line[i] == ' ' || line[i] == '\t' ||
                                 line[i] == '\r'))
        ++i;
      size_t start = i;
      while (i < line.size() && line[i] != ' ' && line[i] != '\t' &&
             line[i] != '\r')
        ++i;
      if (i > start) toks.push_back(line.substr(start, i - start));
    }
    if (toks.empty()) continue;
    if (toks.size() != 2)
      throw CheckError(ErrCode::ParseError,
                       "zero hints line " + std::to_string(lineNo) +
                           ": expected two rationals");
    Rat u = parseRational(toks[0]);
    Rat v = parseRational(toks[1]);
    if (u > v)
      throw CheckError(ErrCode::InvertedInterval,
                       "zero hints line " + std::to_string(lineNo) +
                           ": interval has u > v");
    out.emplace_back(std::move(u), std::move(v));
  }
  return out;
}

}  // namespace polycert
