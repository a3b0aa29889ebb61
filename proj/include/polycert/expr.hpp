#pragma once

#include <cassert>
#include <memory>
#include <string>
#include <utility>

#include "polycert/rational.hpp"
#include "polycert/taylor.hpp"

namespace polycert {

class Expr;
using ExprPtr = std::shared_ptr<const Expr>;

/// Immutable AST of a univariate elementary-function expression.
/// Division is intentionally not representable; reciprocals are written as
/// constant multiplications.
class Expr {
 public:
  enum class Kind { Const, Var, Add, Sub, Mul, Neg, App };

  Kind kind() const { return kind_; }

  const Rat& value() const {
    assert(kind_ == Kind::Const);
    return value_;
  }

  ElemFn fn() const {
    assert(kind_ == Kind::App);
    return fn_;
  }

  const ExprPtr& lhs() const { return a_; }
  const ExprPtr& rhs() const { return b_; }

  /// Operand of Neg / App.
  const ExprPtr& child() const { return a_; }

  static ExprPtr constant(Rat v) {
    auto e = std::make_shared<Expr>(Private{});
    e->kind_ = Kind::Const;
    e->value_ = std::move(v);
    return e;
  }
  static ExprPtr var() {
    auto e = std::make_shared<Expr>(Private{});
    e->kind_ = Kind::Var;
    return e;
  }
  static ExprPtr add(ExprPtr a, ExprPtr b) { return binary(Kind::Add, a, b); }
  static ExprPtr sub(ExprPtr a, ExprPtr b) { return binary(Kind::Sub, a, b); }
  static ExprPtr mul(ExprPtr a, ExprPtr b) { return binary(Kind::Mul, a, b); }
  static ExprPtr neg(ExprPtr a) {
    auto e = std::make_shared<Expr>(Private{});
    e->kind_ = Kind::Neg;
    e->a_ = std::move(a);
    return e;
  }
  static ExprPtr apply(ElemFn fn, ExprPtr arg) {
    auto e = std::make_shared<Expr>(Private{});
    e->kind_ = Kind::App;
    e->fn_ = fn;
    e->a_ = std::move(arg);
    return e;
  }

  struct Private {};  // make_shared needs a public constructor
  explicit Expr(Private) {}

 private:
  static ExprPtr binary(Kind k, ExprPtr& a, ExprPtr& b) {
    auto e = std::make_shared<Expr>(Private{});
    e->kind_ = k;
    e->a_ = std::move(a);
    e->b_ = std::move(b);
    return e;
  }

  Kind kind_ = Kind::Var;
  Rat value_;
  ElemFn fn_ = ElemFn::Exp;
  ExprPtr a_, b_;
};

/// Render with minimal parentheses; `varName` stands in for the variable.
inline std::string exprToString(const Expr& e, const std::string& varName) {
  // precedence: add/sub 1, mul 2, neg 3, atoms 4
  struct Printer {
    const std::string& var;
    std::string go(const Expr& n, int parentPrec) {
      switch (n.kind()) {
        case Expr::Kind::Const: {
          std::string s = n.value().str();
          if (n.value().sign() < 0 && parentPrec > 0) return "(" + s + ")";
          return s;
        }
        case Expr::Kind::Var:
          return var;
        case Expr::Kind::Add: {
          std::string s = go(*n.lhs(), 1) + " + " + go(*n.rhs(), 2);
          return parentPrec > 1 ? "(" + s + ")" : s;
        }
        case Expr::Kind::Sub: {
          std::string s = go(*n.lhs(), 1) + " - " + go(*n.rhs(), 2);
          return parentPrec > 1 ? "(" + s + ")" : s;
        }
        case Expr::Kind::Mul: {
          std::string s = go(*n.lhs(), 2) + " * " + go(*n.rhs(), 3);
          return parentPrec > 2 ? "(" + s + ")" : s;
        }
        case Expr::Kind::Neg:
          return "-(" + go(*n.child(), 0) + ")";
        case Expr::Kind::App:
          return std::string(fnName(n.fn())) + "(" + go(*n.child(), 0) + ")";
      }
      return "?";
    }
  };
  return Printer{varName}.go(e, 0);
}

}  // namespace polycert
