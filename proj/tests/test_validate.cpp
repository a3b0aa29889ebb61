#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "polycert/chebyshev.hpp"
#include "polycert/polycert.hpp"
#include "support/test_support.hpp"

using namespace polycert;
using testsupport::polyFromRoots;
using testsupport::randRat;
using testsupport::randRatIn;

namespace {
Poly P(std::vector<long> c) {
  std::vector<Rat> r;
  for (long v : c) r.push_back(Rat(v));
  return Poly(std::move(r));
}

bool containsValue(const ConfInterval& ci, const Rat& x) {
  return ci.u <= x && x <= ci.v;
}

Certificate mkCert(const char* fnText, Rat lo, Rat hi, unsigned deg,
                   unsigned n = 32) {
  auto [e, var] = parseExprText(fnText);
  Interval I(lo, hi);
  ChebResult cheb = chebyApprox(*e, I, deg, 600);
  Certificate cert;
  cert.f = e;
  cert.varName = var;
  cert.p = cheb.p;
  cert.eps = cheb.estError.isZero() ? Rat(1, 1000000) : Rat(2) * cheb.estError;
  cert.I = I;
  cert.n = n;
  return cert;
}
}  // namespace

TEST_CASE("isolateRoots on worked examples") {
  auto z1 = isolateRoots(P({0, 2}), Rat(-1), Rat(1), 1, Rat(1, 2));
  REQUIRE(z1.size() == 1);
  CHECK(containsValue(z1[0], Rat(0)));
  CHECK(z1[0].v - z1[0].u <= Rat(1, 2));

  auto z2 = isolateRoots(P({-1, 0, 1}), Rat(-2), Rat(2), 2, Rat(1, 4));
  REQUIRE(z2.size() == 2);
  CHECK(containsValue(z2[0], Rat(-1)));
  CHECK(containsValue(z2[1], Rat(1)));
  CHECK(z2[0].v < z2[1].u);
  CHECK(z2[0].v - z2[0].u <= Rat(1, 4));
  CHECK(z2[1].v - z2[1].u <= Rat(1, 4));

  auto z3 = isolateRoots(P({0, -1, 0, 1}), Rat(-2), Rat(2), 3, Rat(1, 8));
  REQUIRE(z3.size() == 3);
  CHECK(containsValue(z3[0], Rat(-1)));
  CHECK(containsValue(z3[1], Rat(0)));
  CHECK(containsValue(z3[2], Rat(1)));
}

TEST_CASE("isolateRoots respects the depth limit") {
  // x^2 - 2: irrational roots are never hit exactly, so a tiny width goal
  // cannot be met within 3 bisection levels
  CHECK_THROWS_MATCHES(
      isolateRoots(P({-2, 0, 1}), Rat(-2), Rat(2), 2,
                   Rat(1, mpz_class("1000000000000")), 3),
      CheckError, Catch::Matchers::Predicate<CheckError>([](const CheckError& e) {
        return e.code() == ErrCode::OracleDepthExceeded;
      }));
}

TEST_CASE("isolateRoots postcondition on random squarefree polynomials") {
  std::mt19937_64 rng(24601);
  std::uniform_int_distribution<int> countDist(1, 5);
  for (int trial = 0; trial < 60; ++trial) {
    std::vector<Rat> roots;
    while (static_cast<int>(roots.size()) < countDist(rng)) {
      Rat r = randRat(rng, 20, 3);
      bool dup = false;
      for (const Rat& o : roots) dup = dup || o == r;
      if (!dup) roots.push_back(r);
    }
    Poly p = polyFromRoots(roots);
    Rat a(-25), b(25);
    unsigned nz = countZeros(p, a, b);
    REQUIRE(nz == roots.size());
    Rat goal(1, 64);
    auto Z = isolateRoots(p, a, b, nz, goal);
    REQUIRE(Z.size() == nz);
    ScaledPoly fast(p);
    for (size_t i = 0; i < Z.size(); ++i) {
      if (i > 0) CHECK(Z[i - 1].v < Z[i].u);
      CHECK(a <= Z[i].u);
      CHECK(Z[i].v <= b);
      CHECK(Z[i].v - Z[i].u <= goal);
      // sign change or an exact hit
      CHECK(fast.signAt(Z[i].u) * fast.signAt(Z[i].v) <= 0);
      bool coversARoot = false;
      for (const Rat& r : roots) coversARoot = coversARoot || containsValue(Z[i], r);
      CHECK(coversARoot);
    }
  }
}

TEST_CASE("isolateRoots emits degenerate intervals on exact midpoint hits") {
  // root at 0 is the first bisection midpoint of [-1, 1]
  auto Z = isolateRoots(P({0, 1}), Rat(-1), Rat(1), 1, Rat(1, 1024));
  REQUIRE(Z.size() == 1);
  CHECK(Z[0].u == Z[0].v);
  CHECK(Z[0].u == Rat(0));

  // roots at -1/2, 0, 1/2: all are midpoints of some bisection window
  auto Z3 = isolateRoots(polyFromRoots({Rat(-1, 2), Rat(0), Rat(1, 2)}),
                         Rat(-1), Rat(1), 3, Rat(1, 1024));
  REQUIRE(Z3.size() == 3);
  CHECK(containsValue(Z3[0], Rat(-1, 2)));
  CHECK(Z3[1].u == Rat(0));
  CHECK(Z3[1].v == Rat(0));
  CHECK(containsValue(Z3[2], Rat(1, 2)));
}

TEST_CASE("isolateRoots separates tightly clustered roots") {
  // roots at 0, 1e-9 and 1: separation needs ~40 bisection levels
  Rat tiny(1, mpz_class("1000000000"));
  Poly p = polyFromRoots({Rat(0), tiny, Rat(1)});
  Rat goal(1, mpz_class("10000000000000"));
  auto Z = isolateRoots(p, Rat(-1, 3), Rat(2), 3, goal);
  REQUIRE(Z.size() == 3);
  CHECK(containsValue(Z[0], Rat(0)));
  CHECK(containsValue(Z[1], tiny));
  CHECK(containsValue(Z[2], Rat(1)));
  CHECK(Z[0].v < Z[1].u);
  CHECK(Z[1].v < Z[2].u);
}

TEST_CASE("validateZeros gatekeeping") {
  Poly dp = P({0, 2});
  CHECK_NOTHROW(validateZeros(dp, {ConfInterval(Rat(-1, 4), Rat(1, 4))}, 1,
                              Rat(-1), Rat(1)));
  auto code = [](auto fn) {
    try {
      fn();
    } catch (const CheckError& e) {
      return e.code();
    }
    return ErrCode::ParseError;
  };
  // no sign change
  CHECK(code([&] {
          validateZeros(dp, {ConfInterval(Rat(1, 4), Rat(1, 2))}, 1, Rat(-1),
                        Rat(1));
        }) == ErrCode::ZeroValidationFailed);
  // wrong count
  CHECK(code([&] { validateZeros(dp, {}, 1, Rat(-1), Rat(1)); }) ==
        ErrCode::ZeroValidationFailed);
  // outside the window
  CHECK(code([&] {
          validateZeros(dp, {ConfInterval(Rat(-2), Rat(1, 4))}, 1, Rat(-1),
                        Rat(1));
        }) == ErrCode::ZeroValidationFailed);
  // overlap
  Poly dp2 = P({-1, 0, 1});
  CHECK(code([&] {
          validateZeros(dp2,
                        {ConfInterval(Rat(-3, 2), Rat(0)),
                         ConfInterval(Rat(0), Rat(3, 2))},
                        2, Rat(-2), Rat(2));
        }) == ErrCode::ZeroValidationFailed);
  // the x^2-1 example passes
  CHECK_NOTHROW(validateZeros(dp2,
                              {ConfInterval(Rat(-3, 2), Rat(-1, 2)),
                               ConfInterval(Rat(1, 2), Rat(3, 2))},
                              2, Rat(-2), Rat(2)));
}

TEST_CASE("extremal bound on the worked example") {
  // h = x^2 - 1, h' = 2x, Z = [(-1/8, 1/8)] on [-2, 2]
  Poly h = P({-1, 0, 1});
  Poly dh = P({0, 2});
  ExtremalBound eb = extremalBound(
      h, dh, {ConfInterval(Rat(-1, 8), Rat(1, 8))}, Rat(-2), Rat(2));
  CHECK(eb.B == Rat(4));
  CHECK(eb.K == Rat(63, 64));
  CHECK(eb.e == Rat(1, 4));
  CHECK(eb.bound == Rat(3));
}

TEST_CASE("extremal bound degenerate shapes") {
  ExtremalBound cst = extremalBound(P({5}), Poly(), {}, Rat(0), Rat(1));
  CHECK(cst.bound == Rat(5));
  ExtremalBound lin = extremalBound(P({0, 1}), P({1}), {}, Rat(0), Rat(1));
  CHECK(lin.bound == Rat(1));
}

TEST_CASE("checkErrPoly verdicts and error paths") {
  ErrPolyResult ok = checkErrPoly(P({-1, 0, 1}), Rat(-2), Rat(2), Rat(3));
  CHECK(ok.certified);
  CHECK(ok.extremal.bound == Rat(3));
  CHECK(ok.numZeros == 1);

  ErrPolyResult no = checkErrPoly(P({-1, 0, 1}), Rat(-2), Rat(2), Rat(2));
  CHECK_FALSE(no.certified);
  CHECK(no.extremal.bound == Rat(3));

  ErrPolyResult zero = checkErrPoly(Poly(), Rat(0), Rat(1), Rat(0));
  CHECK(zero.certified);
  CHECK(zero.extremal.bound == Rat(0));

  ErrPolyResult cst = checkErrPoly(P({2}), Rat(0), Rat(1), Rat(1));
  CHECK_FALSE(cst.certified);
  CHECK(cst.extremal.bound == Rat(2));

  // h' vanishing at an endpoint is a hard error
  CHECK_THROWS_MATCHES(
      checkErrPoly(P({0, 0, 1}), Rat(0), Rat(1), Rat(10)), CheckError,
      Catch::Matchers::Predicate<CheckError>([](const CheckError& e) {
        return e.code() == ErrCode::EndpointZero;
      }));

  // h' = (x-1)^2 is not squarefree; h = x^3/3 - x^2 + x
  Poly h = Poly({Rat(0), Rat(1), Rat(-1), Rat(1, 3)});
  CHECK_THROWS_MATCHES(
      checkErrPoly(h, Rat(-1), Rat(2), Rat(100)), CheckError,
      Catch::Matchers::Predicate<CheckError>([](const CheckError& e) {
        return e.code() == ErrCode::NotSquarefree;
      }));
}

TEST_CASE("checkErrPoly accepts external hints and validates them") {
  Poly h = P({-1, 0, 1});
  std::vector<ConfInterval> good = {ConfInterval(Rat(-1, 8), Rat(1, 8))};
  ErrPolyResult r = checkErrPoly(h, Rat(-2), Rat(2), Rat(3), good);
  CHECK(r.certified);
  CHECK(r.zeros == good);

  std::vector<ConfInterval> bad = {ConfInterval(Rat(1, 4), Rat(1, 2))};
  CHECK_THROWS_MATCHES(
      checkErrPoly(h, Rat(-2), Rat(2), Rat(3), bad), CheckError,
      Catch::Matchers::Predicate<CheckError>([](const CheckError& e) {
        return e.code() == ErrCode::ZeroValidationFailed;
      }));
}

TEST_CASE("extremal bound dominates dense samples") {
  std::mt19937_64 rng(5552368);
  int done = 0;
  while (done < 25) {
    Poly h = testsupport::randPoly(rng, 6, 40, 8);
    if (h.degree() < 1) continue;
    Rat a = randRat(rng, 10, 4), b = randRat(rng, 10, 4);
    if (a > b) std::swap(a, b);
    if (a == b) continue;
    ErrPolyResult r;
    try {
      r = checkErrPoly(h, a, b, Rat(1));  // gamma irrelevant for the bound
    } catch (const CheckError&) {
      continue;  // endpoint-zero or repeated roots: resample
    }
    ++done;
    Interval I(a, b);
    for (int k = 0; k < 200; ++k) {
      Rat x = randRatIn(rng, I);
      REQUIRE(h.eval(x).abs() <= r.extremal.bound);
    }
  }
}

TEST_CASE("checkCertificate end to end on generated certificates") {
  // degree-3 fit of exp on [0, 1/2]: certifiable at 5e-5, refutable at 1e-6
  Certificate cert = mkCert("exp(x)", Rat(0), Rat(1, 2), 3);
  cert.eps = Rat(1, 20000);
  CheckReport good = checkCertificate(cert);
  CHECK(good.verdict == Verdict::Certified);
  CHECK(good.extremal.bound <= good.gamma);
  CHECK(good.delta1 < Rat(1, 1000000));

  cert.eps = Rat(1, 1000000);
  CheckReport bad = checkCertificate(cert);
  CHECK(bad.verdict == Verdict::NotCertified);
  CHECK(bad.extremal.bound > bad.gamma);

  // a generous budget is dominated by any sound bound
  cert.eps = Rat(1, 10);
  CHECK(checkCertificate(cert).verdict == Verdict::Certified);
  // and a hopeless one is refused
  cert.eps = Rat(1, 1000000000L);
  CHECK(checkCertificate(cert).verdict == Verdict::NotCertified);

  // perturbing the constant coefficient by 2 eps must flip the verdict
  Certificate tampered = mkCert("exp(x)", Rat(0), Rat(1, 2), 3);
  tampered.eps = Rat(1, 20000);
  std::vector<Rat> coeffs = tampered.p.coeffs();
  coeffs[0] += Rat(2) * tampered.eps;
  tampered.p = Poly(coeffs);
  CheckReport flip = checkCertificate(tampered);
  CHECK(flip.verdict == Verdict::NotCertified);
  CHECK(flip.extremal.bound > flip.gamma);
}

TEST_CASE("composed elementary functions check end to end") {
  // cos(sin(x)) against the constant 1: the internal replacement composes
  // two degree-12 series into a degree-132 error polynomial
  auto [e, var] = parseExprText("cos(sin(x))");
  Certificate cert{e, var, Poly({Rat(1)}), Rat(1, 2),
                   Interval(Rat(1, 100), Rat(1)), 12};
  CheckReport rep = checkCertificate(cert);
  CHECK(rep.verdict == Verdict::Certified);
  // sup |cos(sin(x)) - 1| on [1/100, 1] is attained at x = 1, about 0.3336
  CHECK(rep.extremal.bound > Rat(33, 100));
  CHECK(rep.extremal.bound < Rat(34, 100));

  cert.eps = Rat(1, 10);
  CHECK(checkCertificate(cert).verdict == Verdict::NotCertified);

  // at [0, 1] the derivative of cos(sin(x)) vanishes exactly at 0, which
  // the endpoint rule rejects with a remediation hint
  cert.I = Interval(Rat(0), Rat(1));
  cert.eps = Rat(1, 2);
  CheckReport shifted = checkCertificate(cert);
  CHECK(shifted.verdict == Verdict::Error);
  CHECK(shifted.reason == "endpoint_zero");
}

TEST_CASE("checkCertificate reports residual_negative") {
  Certificate cert = parseCertificate(
      "f = cos(x); p = [1]; eps = 1e-30; I = [0, 1]; n = 2;");
  CheckReport rep = checkCertificate(cert);
  CHECK(rep.verdict == Verdict::NotCertified);
  CHECK(rep.reason == "residual_negative");
  CHECK(rep.gamma < Rat(0));
}

TEST_CASE("checkCertificate surfaces phase errors as Error verdicts") {
  Certificate cert = parseCertificate(
      "f = ln(x); p = [0, 1]; eps = 1/2; I = [1/2, 3/2]; n = 4;");
  CheckReport rep = checkCertificate(cert);
  CHECK(rep.verdict == Verdict::Error);
  CHECK(rep.reason == "precond_violation");
}

TEST_CASE("identity certificate certifies with a zero error polynomial") {
  Certificate cert = parseCertificate(
      "f = x; p = [0, 1]; eps = 1/1000000; I = [0, 1]; n = 4;");
  CheckReport rep = checkCertificate(cert);
  CHECK(rep.verdict == Verdict::Certified);
  CHECK(rep.extremal.bound == Rat(0));
  CHECK(rep.numZeros == 0);
}

TEST_CASE("checkCertificate is deterministic") {
  Certificate cert = mkCert("sin(x - 2)", Rat(-1), Rat(3), 5);
  CheckReport a = checkCertificate(cert);
  CheckReport b = checkCertificate(cert);
  CHECK(a.verdict == b.verdict);
  CHECK(a.delta1 == b.delta1);
  CHECK(a.gamma == b.gamma);
  CHECK(a.numZeros == b.numZeros);
  REQUIRE(a.zeros.size() == b.zeros.size());
  for (size_t i = 0; i < a.zeros.size(); ++i) CHECK(a.zeros[i] == b.zeros[i]);
  CHECK(a.extremal.bound == b.extremal.bound);
}

TEST_CASE("no false negatives on sampled refutations") {
  // eps below the dense-sampled true error must never certify
  Certificate cert = mkCert("cos(x + 1)", Rat(0), Rat(107, 50), 3);
  RefEvaluator ref(*cert.f, cert.I, 64);
  Rat sup = testsupport::sampledSup(ref, cert.p, cert.I, 2000);
  cert.eps = sup / Rat(2);
  CheckReport rep = checkCertificate(cert);
  CHECK(rep.verdict != Verdict::Certified);
}

TEST_CASE("certified verdicts hold up under dense sampling") {
  std::mt19937_64 rng(987654321);
  std::vector<Certificate> certs = {
      mkCert("exp(x)", Rat(0), Rat(1, 2), 3),
      mkCert("sin(x - 2)", Rat(-1), Rat(3), 4),
      mkCert("ln(x + 1/10)", Rat(1001, 1000), Rat(11, 10), 3),
  };
  for (const Certificate& cert : certs) {
    CheckReport rep = checkCertificate(cert);
    REQUIRE(rep.verdict == Verdict::Certified);
    RefEvaluator ref(*cert.f, cert.I, 2 * cert.n + 16);
    ScaledPoly fastP(cert.p);
    for (int k = 0; k < 500; ++k) {
      Rat x = randRatIn(rng, cert.I);
      Rat dist = (ref.center(x) - fastP.eval(x)).abs();
      REQUIRE(dist + Rat(2) * ref.delta() <= cert.eps);
    }
  }
}
