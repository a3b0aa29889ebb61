#pragma once

#include <algorithm>
#include <cassert>
#include <chrono>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "polycert/approx.hpp"
#include "polycert/certificate.hpp"
#include "polycert/errors.hpp"
#include "polycert/poly.hpp"
#include "polycert/sturm.hpp"

namespace polycert {

/// Ingredients of the extremal-value bound
/// max(|h(a)|, |h(b)|, K + B*e) on |h| over [a, b].
struct ExtremalBound {
  Rat B;      // bound on |h'| over [a, b]
  Rat K;      // max |h(u)| over the confidence-interval anchors
  Rat e;      // max confidence-interval width
  Rat bound;  // the resulting bound on |h|
};

enum class Verdict { Certified, NotCertified, Error };

inline const char* verdictName(Verdict v) {
  switch (v) {
    case Verdict::Certified: return "certified";
    case Verdict::NotCertified: return "not_certified";
    case Verdict::Error: return "error";
  }
  return "?";
}

struct Timings {
  long long phase1Ms = 0;
  long long phase2Ms = 0;
};

/// Structured outcome of a certificate check. Certified implies
/// extremal.bound <= gamma and gamma >= 0; errors never certify.
struct CheckReport {
  Verdict verdict = Verdict::Error;
  std::string reason;  // "", "residual_negative", "bound_exceeds_gamma", or an error code
  std::string detail;  // human-readable diagnostics (not serialized)
  Rat delta1;          // phase-1 accumulated error
  Rat gamma;           // eps - delta1
  unsigned long numZeros = 0;
  std::vector<ConfInterval> zeros;
  ExtremalBound extremal;
  Timings timings;
};

struct CheckConfig {
  unsigned maxBisectDepth = 128;
  unsigned piTerms = 4;
};

namespace detail {

// Bisection state for the root-isolation oracle: variation values are
// threaded down so each split costs one chain evaluation.
struct Isolator {
  const SturmChain& ss;
  const Rat& widthGoal;
  unsigned maxDepth;
  std::vector<ConfInterval> out;

  int headSign(const Rat& x) const { return ss.signAt(0, x); }

  void rec(const Rat& lo, unsigned vlo, const Rat& hi, unsigned vhi,
           unsigned depth) {
    unsigned count = vlo - vhi;
    if (count == 0) return;
    if (count == 1 && hi - lo <= widthGoal) {
      out.emplace_back(lo, hi);
      return;
    }
    if (depth >= maxDepth)
      throw CheckError(ErrCode::OracleDepthExceeded,
                       "root isolation exceeded the bisection depth limit (" +
                           std::to_string(maxDepth) + ")");
    Rat m = (lo + hi) / Rat(2);
    if (headSign(m) != 0) {
      unsigned vm = variation(ss, m);
      rec(lo, vlo, m, vm, depth + 1);
      rec(m, vm, hi, vhi, depth + 1);
      return;
    }
    // The midpoint is itself a root: emit it exactly and carve out a
    // clearance window containing no other root.
    Rat w = (hi - lo) / Rat(4);
    for (unsigned guard = 0;; ++guard) {
      if (guard >= maxDepth)
        throw CheckError(ErrCode::OracleDepthExceeded,
                         "root isolation could not separate a root hit "
                         "exactly at a bisection midpoint");
      Rat ml = m - w;
      Rat mr = m + w;
      if (headSign(ml) != 0 && headSign(mr) != 0) {
        unsigned vml = variation(ss, ml);
        unsigned vmr = variation(ss, mr);
        if (vml - vmr == 1) {
          rec(lo, vlo, ml, vml, depth + 1);
          out.emplace_back(m, m);
          rec(mr, vmr, hi, vhi, depth + 1);
          return;
        }
      }
      w = w / Rat(2);
    }
  }
};

}  // namespace detail

/// Built-in zero-guess oracle: recursive bisection driven by Sturm counts.
/// Returns nz disjoint intervals inside (a, b), each containing exactly one
/// root of the chain's polynomial, each of width <= widthGoal (width 0 when
/// a bisection midpoint hits a root exactly).
inline std::vector<ConfInterval> isolateRoots(const SturmChain& ss,
                                              const Rat& a, const Rat& b,
                                              unsigned nz,
                                              const Rat& widthGoal,
                                              unsigned maxDepth = 128) {
  unsigned va = variation(ss, a);
  unsigned vb = variation(ss, b);
  if (va - vb != nz)
    throw std::invalid_argument(
        "isolateRoots: nz does not match the Sturm count of the window");
  detail::Isolator iso{ss, widthGoal, maxDepth, {}};
  iso.rec(a, va, b, vb, 0);
  return std::move(iso.out);
}

inline std::vector<ConfInterval> isolateRoots(const Poly& p, const Rat& a,
                                              const Rat& b, unsigned nz,
                                              const Rat& widthGoal,
                                              unsigned maxDepth = 128) {
  if (nz == 0) return {};
  return isolateRoots(sturmChain(p), a, b, nz, widthGoal, maxDepth);
}

/// Gatekeeper for zero guesses: exactly nz pairwise-disjoint intervals
/// inside [a, b], each with a sign change (or exact zero) of dp across it.
/// Throws ZeroValidationFailed naming the offending interval and clause.
inline void validateZeros(const Poly& dp, const std::vector<ConfInterval>& Z,
                          unsigned nz, const Rat& a, const Rat& b) {
  auto fail = [](size_t index, const std::string& why) {
    return CheckError(ErrCode::ZeroValidationFailed,
                      "zero validation failed at interval " +
                          std::to_string(index) + ": " + why);
  };
  if (Z.size() != static_cast<size_t>(nz))
    throw CheckError(ErrCode::ZeroValidationFailed,
                     "zero validation failed: expected exactly " +
                         std::to_string(nz) + " confidence intervals, got " +
                         std::to_string(Z.size()));
  std::vector<ConfInterval> sorted(Z);
  std::sort(sorted.begin(), sorted.end(),
            [](const ConfInterval& x, const ConfInterval& y) {
              return x.u < y.u || (x.u == y.u && x.v < y.v);
            });
  ScaledPoly fast(dp);
  for (size_t i = 0; i < sorted.size(); ++i) {
    const ConfInterval& ci = sorted[i];
    if (!(a <= ci.u && ci.v <= b))
      throw fail(i, "[" + ci.u.str() + ", " + ci.v.str() +
                        "] is not inside [" + a.str() + ", " + b.str() + "]");
    if (i > 0 && !(sorted[i - 1].v < ci.u))
      throw fail(i, "overlaps the previous interval");
    if (fast.signAt(ci.u) * fast.signAt(ci.v) > 0)
      throw fail(i, "no sign change across [" + ci.u.str() + ", " +
                        ci.v.str() + "]");
  }
}

/// max(|h(a)|, |h(b)|, K + B*e) with B from the absolute-coefficient bound
/// on h' and K, e read off the validated confidence intervals.
inline ExtremalBound extremalBound(const Poly& h, const Poly& dh,
                                   const std::vector<ConfInterval>& Z,
                                   const Rat& a, const Rat& b) {
  ExtremalBound eb{Rat(0), Rat(0), Rat(0), Rat(0)};
  eb.B = dh.absCoeffBound(max(a.abs(), b.abs()));
  for (const ConfInterval& ci : Z) {
    eb.K = max(eb.K, h.eval(ci.u).abs());
    eb.e = max(eb.e, ci.v - ci.u);
  }
  eb.bound = max(max(h.eval(a).abs(), h.eval(b).abs()), eb.K + eb.B * eb.e);
  return eb;
}

struct ErrPolyResult {
  bool certified = false;
  ExtremalBound extremal;
  unsigned long numZeros = 0;
  std::vector<ConfInterval> zeros;
};

/// Phase 2: certify |h(x)| <= gamma on [a, b] from the extremal bound over
/// the validated zeros of h'.
inline ErrPolyResult checkErrPoly(
    const Poly& h, const Rat& a, const Rat& b, const Rat& gamma,
    const std::optional<std::vector<ConfInterval>>& hints = std::nullopt,
    const CheckConfig& cfg = {}) {
  if (!(a < b)) throw std::invalid_argument("checkErrPoly: requires a < b");
  ErrPolyResult res;
  res.extremal = ExtremalBound{Rat(0), Rat(0), Rat(0), Rat(0)};
  if (h.isZero()) {
    res.certified = Rat(0) <= gamma;
    return res;
  }
  Poly dh = h.derivative();
  if (dh.isZero()) {  // constant h
    res.extremal.bound = h.eval(a).abs();
    res.certified = res.extremal.bound <= gamma;
    return res;
  }
  if (dh.eval(a).isZero() || dh.eval(b).isZero())
    throw CheckError(ErrCode::EndpointZero,
                     "h' vanishes at an interval endpoint; shrink or perturb "
                     "the interval bounds to move off the critical point");
  unsigned nz = 0;
  std::optional<SturmChain> chain;
  if (dh.degree() >= 1) {
    chain.emplace(sturmChain(dh));
    nz = countZeros(*chain, a, b);
  }
  std::vector<ConfInterval> Z;
  if (hints) {
    Z = *hints;
  } else if (nz > 0) {
    // Width goal keeps the B*e slack term of the extremal bound at or
    // below gamma/4 so oracle looseness rarely flips a true verdict.
    Rat b0 = dh.absCoeffBound(max(a.abs(), b.abs()));
    Rat w = min((b - a) / Rat(1048576),
                gamma / (Rat(4) * (b0 + Rat(1)) * Rat(long(std::max(nz, 1u)))));
    Z = isolateRoots(*chain, a, b, nz, w, cfg.maxBisectDepth);
  }
  validateZeros(dh, Z, nz, a, b);
  res.extremal = extremalBound(h, dh, Z, a, b);
  res.numZeros = nz;
  res.zeros = std::move(Z);
  res.certified = res.extremal.bound <= gamma;
  return res;
}

/// Top-level check: phase 1 (series replacement) then phase 2 (extremal
/// validation of the error polynomial), combined by the triangle inequality.
/// Never certifies on any error path.
inline CheckReport checkCertificate(
    const Certificate& cert,
    const std::optional<std::vector<ConfInterval>>& hints = std::nullopt,
    const CheckConfig& cfg = {}) {
  using Clock = std::chrono::steady_clock;
  auto ms = [](Clock::time_point from, Clock::time_point to) {
    return std::chrono::duration_cast<std::chrono::milliseconds>(to - from)
        .count();
  };
  CheckReport rep;
  rep.extremal = ExtremalBound{Rat(0), Rat(0), Rat(0), Rat(0)};

  auto t0 = Clock::now();
  ApproxResult phase1;
  try {
    phase1 = approxAsPoly(*cert.f, cert.I, cert.n, ApproxConfig{cfg.piTerms});
  } catch (const CheckError& e) {
    rep.verdict = Verdict::Error;
    rep.reason = errCodeName(e.code());
    rep.detail = e.what();
    rep.timings.phase1Ms = ms(t0, Clock::now());
    return rep;
  }
  auto t1 = Clock::now();
  rep.timings.phase1Ms = ms(t0, t1);
  rep.delta1 = phase1.delta;
  rep.gamma = cert.eps - phase1.delta;
  if (rep.gamma < Rat(0)) {
    rep.verdict = Verdict::NotCertified;
    rep.reason = "residual_negative";
    rep.detail = "phase-1 error " + rep.delta1.str() + " already exceeds eps " +
                 cert.eps.str();
    return rep;
  }
  Poly h = phase1.qPoly - cert.p;
  try {
    ErrPolyResult r =
        checkErrPoly(h, cert.I.lo(), cert.I.hi(), rep.gamma, hints, cfg);
    rep.timings.phase2Ms = ms(t1, Clock::now());
    rep.numZeros = r.numZeros;
    rep.zeros = std::move(r.zeros);
    rep.extremal = std::move(r.extremal);
    if (r.certified) {
      rep.verdict = Verdict::Certified;
    } else {
      rep.verdict = Verdict::NotCertified;
      rep.reason = "bound_exceeds_gamma";
      rep.detail = "extremal bound " + rep.extremal.bound.str() +
                   " exceeds the residual error " + rep.gamma.str();
    }
  } catch (const CheckError& e) {
    rep.timings.phase2Ms = ms(t1, Clock::now());
    rep.verdict = Verdict::Error;
    rep.reason = errCodeName(e.code());
    rep.detail = e.what();
  }
  return rep;
}

}  // namespace polycert
