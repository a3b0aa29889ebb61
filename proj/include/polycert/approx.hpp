#pragma once

#include <cassert>
#include <string>
#include <utility>

#include "polycert/errors.hpp"
#include "polycert/expr.hpp"
#include "polycert/interval.hpp"
#include "polycert/poly.hpp"
#include "polycert/taylor.hpp"

namespace polycert {

/// Phase 1 output: polynomial replacement q and the accumulated error bound,
/// |e(x) - q(x)| <= delta on the analyzed interval.
struct ApproxResult {
  Poly qPoly;
  Rat delta;
};

struct ApproxConfig {
  unsigned piTerms = 4;  // Leibniz terms for the sin/cos error guard
};

/// Interval enclosure of the expression's range over I by structural
/// recursion; App nodes use the monotone series range bounds.
inline Interval evalExprInterval(const Expr& e, const Interval& I,
                                 unsigned n) {
  switch (e.kind()) {
    case Expr::Kind::Const:
      return Interval::point(e.value());
    case Expr::Kind::Var:
      return I;
    case Expr::Kind::Add:
      return evalExprInterval(*e.lhs(), I, n) +
             evalExprInterval(*e.rhs(), I, n);
    case Expr::Kind::Sub:
      return evalExprInterval(*e.lhs(), I, n) -
             evalExprInterval(*e.rhs(), I, n);
    case Expr::Kind::Mul:
      return evalExprInterval(*e.lhs(), I, n) *
             evalExprInterval(*e.rhs(), I, n);
    case Expr::Kind::Neg:
      return -evalExprInterval(*e.child(), I, n);
    case Expr::Kind::App: {
      Interval inner = evalExprInterval(*e.child(), I, n);
      checkPrecond(e.fn(), inner);
      return fnRangeBound(e.fn(), inner, n);
    }
  }
  return I;
}

/// Replace every elementary function by its truncated series and propagate
/// the accumulated error: for all x in I, |e(x) - qPoly(x)| <= delta.
inline ApproxResult approxAsPoly(const Expr& e, const Interval& I, unsigned n,
                                 const ApproxConfig& cfg = {}) {
  assert(n >= 1);
  switch (e.kind()) {
    case Expr::Kind::Const:
      return {Poly::constant(e.value()), Rat(0)};
    case Expr::Kind::Var:
      return {Poly::x(), Rat(0)};
    case Expr::Kind::Neg: {
      ApproxResult u = approxAsPoly(*e.child(), I, n, cfg);
      return {-u.qPoly, std::move(u.delta)};
    }
    case Expr::Kind::Add: {
      ApproxResult u = approxAsPoly(*e.lhs(), I, n, cfg);
      ApproxResult v = approxAsPoly(*e.rhs(), I, n, cfg);
      return {u.qPoly + v.qPoly, u.delta + v.delta};
    }
    case Expr::Kind::Sub: {
      ApproxResult u = approxAsPoly(*e.lhs(), I, n, cfg);
      ApproxResult v = approxAsPoly(*e.rhs(), I, n, cfg);
      return {u.qPoly - v.qPoly, u.delta + v.delta};
    }
    case Expr::Kind::Mul: {
      ApproxResult u = approxAsPoly(*e.lhs(), I, n, cfg);
      ApproxResult v = approxAsPoly(*e.rhs(), I, n, cfg);
      Rat mu = evalExprInterval(*e.lhs(), I, n).magBound();
      Rat mv = evalExprInterval(*e.rhs(), I, n).magBound();
      return {u.qPoly * v.qPoly,
              mu * v.delta + mv * u.delta + u.delta * v.delta};
    }
    case Expr::Kind::App: {
      ApproxResult g = approxAsPoly(*e.child(), I, n, cfg);
      // The series must be valid on every value the inner polynomial can
      // reach, so the inner range is widened by the inner error first.
      Interval J = evalExprInterval(*e.child(), I, n).widened(g.delta);
      if (auto why = precondViolation(e.fn(), J))
        throw CheckError(ErrCode::PrecondViolation,
                         std::string(fnName(e.fn())) +
                             " precondition fails on the widened inner range: " +
                             *why);
      if (e.fn() == ElemFn::Sin || e.fn() == ElemFn::Cos) {
        Rat halfPi = piLowerBound(cfg.piTerms) / Rat(2);
        if (g.delta > halfPi)
          throw CheckError(
              ErrCode::SinCosErrorTooLarge,
              "inner approximation error " + g.delta.str() +
                  " exceeds the pi/2 guard " + halfPi.str() + " for " +
                  std::string(fnName(e.fn())));
      }
      Poly t = taylorPoly(e.fn(), n);
      Rat dt = taylorRemBound(e.fn(), n, J);
      Rat lip = lipschitzBound(e.fn(), J, n);
      return {t.compose(g.qPoly), dt + lip * g.delta};
    }
  }
  return {Poly(), Rat(0)};
}

/// High-precision reference enclosure for e over a fixed interval: one
/// phase-1 run at the working depth, then cheap per-point evaluation.
class RefEvaluator {
 public:
  RefEvaluator(const Expr& e, const Interval& I, unsigned depth)
      : approx_(approxAsPoly(e, I, depth)), fast_(approx_.qPoly) {}

  /// Enclosure of e(x): [q(x) - delta, q(x) + delta]. x must be in the
  /// interval the evaluator was built for.
  Interval enclose(const Rat& x) const {
    Rat v = fast_.eval(x);
    return Interval(v - approx_.delta, v + approx_.delta);
  }

  Rat center(const Rat& x) const { return fast_.eval(x); }
  const Rat& delta() const { return approx_.delta; }
  const Poly& qPoly() const { return approx_.qPoly; }

 private:
  ApproxResult approx_;
  ScaledPoly fast_;
};

/// Pointwise reference enclosure: phase 1 specialized to the point interval
/// [x, x]. Width shrinks super-exponentially with depth.
inline Interval evalExprRef(const Expr& e, const Rat& x, unsigned depth) {
  return RefEvaluator(e, Interval::point(x), depth).enclose(x);
}

}  // namespace polycert
