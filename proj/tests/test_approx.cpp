#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "polycert/approx.hpp"
#include "polycert/certificate.hpp"
#include "support/test_support.hpp"

using namespace polycert;
using testsupport::randRatIn;

namespace {
struct NamedExpr {
  ExprPtr e;
  Interval I;
};

std::vector<NamedExpr> soundnessCorpus() {
  auto mk = [](const char* text, Rat lo, Rat hi) {
    return NamedExpr{parseExprText(text).first, Interval(lo, hi)};
  };
  return {
      mk("x", Rat(0), Rat(1)),
      mk("exp(x)", Rat(0), Rat(1)),
      mk("sin(x - 2)", Rat(-1), Rat(3)),
      mk("cos(x + 1)", Rat(0), Rat(107, 50)),
      mk("exp(x * 1/2) - 1", Rat(1), Rat(2)),
      mk("atan(x) - cos(3/4 * x)", Rat(-1, 2), Rat(1, 2)),
      mk("ln(x + 1/10)", Rat(1001, 1000), Rat(11, 10)),
  };
}
}  // namespace

TEST_CASE("interval analysis of expressions") {
  unsigned n = 8;
  CHECK(evalExprInterval(*Expr::var(), Interval(Rat(1), Rat(2)), n) ==
        Interval(Rat(1), Rat(2)));
  auto halfVar = Expr::mul(Expr::var(), Expr::constant(Rat(1, 2)));
  CHECK(evalExprInterval(*halfVar, Interval(Rat(1), Rat(2)), n) ==
        Interval(Rat(1, 2), Rat(1)));
  auto sinVar = Expr::apply(ElemFn::Sin, Expr::var());
  CHECK(evalExprInterval(*sinVar, Interval(Rat(0), Rat(10)), n) ==
        Interval(Rat(-1), Rat(1)));
  auto lnVar = Expr::apply(ElemFn::Ln, Expr::var());
  CHECK_THROWS_MATCHES(
      evalExprInterval(*lnVar, Interval(Rat(1, 2), Rat(3, 2)), n), CheckError,
      Catch::Matchers::Predicate<CheckError>([](const CheckError& e) {
        return e.code() == ErrCode::PrecondViolation;
      }));
}

TEST_CASE("approxAsPoly on constants and the variable") {
  Interval I(Rat(-3), Rat(5));
  ApproxResult c = approxAsPoly(*Expr::constant(Rat(1)), I, 4);
  CHECK(c.qPoly == Poly({Rat(1)}));
  CHECK(c.delta == Rat(0));
  ApproxResult v = approxAsPoly(*Expr::var(), I, 4);
  CHECK(v.qPoly == Poly::x());
  CHECK(v.delta == Rat(0));
}

TEST_CASE("approxAsPoly replaces a single cosine") {
  Interval fullPeriod(Rat(0), Rat(mpz_class("314159265359"),
                                  mpz_class("50000000000")));
  auto cosVar = Expr::apply(ElemFn::Cos, Expr::var());
  ApproxResult r = approxAsPoly(*cosVar, fullPeriod, 32);
  CHECK(r.qPoly == taylorPoly(ElemFn::Cos, 32));
  CHECK(r.delta <= Rat(377, 100000));
  CHECK(r.delta == taylorRemBound(ElemFn::Cos, 32, fullPeriod));
}

TEST_CASE("approxAsPoly on the worked compound example") {
  // exp(y * 1/2) - 1 on [1, 2]: inner range [1/2, 1], series composed with
  // the inner polynomial, constant handled exactly.
  auto [e, var] = parseExprText("exp(y * 1/2) - 1");
  Interval I(Rat(1), Rat(2));
  ApproxResult r = approxAsPoly(*e, I, 16);
  Poly expected = taylorPoly(ElemFn::Exp, 16).compose(Poly({Rat(0), Rat(1, 2)})) -
                  Poly({Rat(1)});
  CHECK(r.qPoly == expected);
  CHECK(r.delta ==
        taylorRemBound(ElemFn::Exp, 16, Interval(Rat(1, 2), Rat(1))));
}

TEST_CASE("sin/cos error guard rejects huge inner errors") {
  // cos at n=1 over [-10, 10] has remainder 50, far beyond the pi/2 guard
  auto e = Expr::apply(ElemFn::Sin, Expr::apply(ElemFn::Cos, Expr::var()));
  CHECK_THROWS_MATCHES(
      approxAsPoly(*e, Interval(Rat(-10), Rat(10)), 1), CheckError,
      Catch::Matchers::Predicate<CheckError>([](const CheckError& e) {
        return e.code() == ErrCode::SinCosErrorTooLarge;
      }));
}

TEST_CASE("inner-range precondition violations surface from approxAsPoly") {
  // inner = x - 1e-6 maps [0, 1] just below zero, which exp rejects
  auto bad = Expr::apply(
      ElemFn::Exp, Expr::sub(Expr::var(), Expr::constant(Rat(1, 1000000))));
  CHECK_THROWS_MATCHES(
      approxAsPoly(*bad, Interval(Rat(0), Rat(1)), 8), CheckError,
      Catch::Matchers::Predicate<CheckError>([](const CheckError& e) {
        return e.code() == ErrCode::PrecondViolation;
      }));
}

TEST_CASE("reference evaluator encloses known values") {
  Interval enc = evalExprRef(*Expr::constant(Rat(3, 2)), Rat(10), 8);
  CHECK(enc == Interval(Rat(3, 2), Rat(3, 2)));

  Interval expAt0 =
      evalExprRef(*Expr::apply(ElemFn::Exp, Expr::var()), Rat(0), 8);
  CHECK(expAt0.contains(Rat(1)));
  CHECK(expAt0.width() <= taylorRemBound(ElemFn::Exp, 8, Interval::point(Rat(0))));

  Interval sin1 =
      evalExprRef(*Expr::apply(ElemFn::Sin, Expr::var()), Rat(1), 40);
  // sin(1) = 0.84147098480789650665250232163029899962256306079837...
  Rat sin1Ref =
      ratFromDecimal("0.84147098480789650665250232163029899962256306079837");
  Rat center = (sin1.lo() + sin1.hi()) / Rat(2);
  CHECK((center - sin1Ref).abs() < ratFromDecimal("1e-45"));
  CHECK(sin1.width() < ratFromDecimal("1e-15"));
  CHECK(sin1.lo() > ratFromDecimal("0.8414709848"));
  CHECK(sin1.hi() < ratFromDecimal("0.8414709849"));
}

TEST_CASE("first-phase soundness on sampled points") {
  std::mt19937_64 rng(112358);
  unsigned n = 8;
  for (const NamedExpr& t : soundnessCorpus()) {
    ApproxResult ar = approxAsPoly(*t.e, t.I, n);
    RefEvaluator ref(*t.e, t.I, 2 * n + 16);
    ScaledPoly fastQ(ar.qPoly);
    for (int k = 0; k < 500; ++k) {
      Rat x = randRatIn(rng, t.I);
      Interval enc = ref.enclose(x);
      Rat centerDist = (ref.center(x) - fastQ.eval(x)).abs();
      REQUIRE(centerDist + enc.width() <= ar.delta);
    }
  }
}

TEST_CASE("polynomial expressions are replaced exactly") {
  std::mt19937_64 rng(4242);
  auto [e, var] = parseExprText("x * x - 3 * (x + 1/2) * x + 2");
  Interval I(Rat(-2), Rat(2));
  ApproxResult r = approxAsPoly(*e, I, 4);
  CHECK(r.delta == Rat(0));
  // q(x) = x^2 - 3x(x + 1/2) + 2 = -2x^2 - 3/2 x + 2
  CHECK(r.qPoly == Poly({Rat(2), Rat(-3, 2), Rat(-2)}));
  for (int k = 0; k < 50; ++k) {
    Rat x = randRatIn(rng, I);
    Rat direct = x * x - Rat(3) * (x + Rat(1, 2)) * x + Rat(2);
    CHECK(r.qPoly.eval(x) == direct);
  }
}

TEST_CASE("delta never grows with n") {
  const std::vector<std::pair<const char*, Interval>> cases = {
      {"cos(x + 1)", Interval(Rat(0), Rat(107, 50))},
      {"exp(x * 1/2)", Interval(Rat(0), Rat(1))},
      {"atan(x)", Interval(Rat(-1, 2), Rat(1, 2))},
      {"ln(x)", Interval(Rat(11, 10), Rat(3, 2))},
  };
  for (const auto& [text, I] : cases) {
    auto [e, var] = parseExprText(text);
    Rat prev = approxAsPoly(*e, I, 4).delta;
    for (unsigned n : {8u, 16u, 24u, 32u}) {
      Rat cur = approxAsPoly(*e, I, n).delta;
      CHECK(cur <= prev);
      prev = cur;
    }
  }
}

TEST_CASE("interval analysis contains the reference enclosure") {
  std::mt19937_64 rng(271828);
  unsigned n = 8;
  for (const NamedExpr& t : soundnessCorpus()) {
    Interval range = evalExprInterval(*t.e, t.I, n);
    RefEvaluator ref(*t.e, t.I, 2 * n + 16);
    Interval slack = range.widened(Rat(2) * ref.delta());
    for (int k = 0; k < 200; ++k) {
      Rat x = randRatIn(rng, t.I);
      REQUIRE(slack.contains(ref.enclose(x)));
    }
  }
}
