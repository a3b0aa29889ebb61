#pragma once

#include <algorithm>
#include <cassert>
#include <stdexcept>
#include <utility>
#include <vector>

#include "polycert/approx.hpp"
#include "polycert/expr.hpp"
#include "polycert/interval.hpp"
#include "polycert/poly.hpp"
#include "polycert/taylor.hpp"

namespace polycert {

struct ChebResult {
  Poly p;
  Rat estError;  // sampled estimate of sup |e - p|, not a bound
};

namespace detail {

/// Newton divided-difference interpolation through (xs[i], ys[i]),
/// expanded into the monomial basis. Nodes must be pairwise distinct.
inline Poly interpolate(const std::vector<Rat>& xs,
                        const std::vector<Rat>& ys) {
  assert(xs.size() == ys.size() && !xs.empty());
  size_t m = xs.size();
  std::vector<Rat> coef(ys);  // divided differences, built in place
  for (size_t level = 1; level < m; ++level)
    for (size_t i = m - 1; i >= level; --i)
      coef[i] = (coef[i] - coef[i - 1]) / (xs[i] - xs[i - level]);
  // Horner expansion of the Newton form
  Poly acc = Poly::constant(coef[m - 1]);
  for (size_t i = m - 1; i-- > 0;) {
    Poly shift({-xs[i], Rat(1)});
    acc = acc * shift + Poly::constant(coef[i]);
  }
  return acc;
}

}  // namespace detail

/// Degree-`deg` interpolation of the expression at Chebyshev nodes mapped
/// to I, with coefficients solved exactly from reference-enclosure midpoints
/// and rounded to compact dyadics. The returned error is a dense-sampling
/// estimate; a certificate checker supplies the actual bound.
inline ChebResult chebyApprox(const Expr& e, const Interval& I, unsigned deg,
                              unsigned samples) {
  if (deg < 1) throw std::invalid_argument("chebyApprox: deg must be >= 1");
  if (samples < 2) samples = 2;
  const unsigned refDepth = 48;
  RefEvaluator ref(e, I, refDepth);

  // Chebyshev nodes cos(pi (2k+1) / (2 deg + 2)) computed with the exact
  // cosine series and a rational pi approximation, then rounded to small
  // dyadics. Node placement only affects conditioning, not soundness.
  Rat piApprox = piLowerBound(40);
  Poly cosSeries = taylorPoly(ElemFn::Cos, 48);
  Rat center = (I.lo() + I.hi()) / Rat(2);
  Rat halfWidth = (I.hi() - I.lo()) / Rat(2);
  std::vector<Rat> xs;
  xs.reserve(deg + 1);
  for (unsigned k = 0; k <= deg; ++k) {
    // iterate top node last so xs ends up increasing
    unsigned kk = deg - k;
    Rat theta = piApprox * Rat(2 * long(kk) + 1, 2 * long(deg) + 2);
    Rat u = cosSeries.eval(theta).dyadicRound(20);
    xs.push_back(center + halfWidth * u);
  }
  for (size_t i = 1; i < xs.size(); ++i)
    if (!(xs[i - 1] < xs[i]))
      throw std::invalid_argument("chebyApprox: nodes collapsed");

  std::vector<Rat> ys;
  ys.reserve(xs.size());
  for (const Rat& x : xs) ys.push_back(ref.center(x));

  Poly exact = detail::interpolate(xs, ys);
  std::vector<Rat> rounded;
  rounded.reserve(exact.coeffs().size());
  for (const Rat& c : exact.coeffs()) rounded.push_back(c.dyadicRound(48));
  Poly p(std::move(rounded));

  ScaledPoly fast(p);
  Rat est(0);
  Rat step = I.width() / Rat(long(samples) - 1);
  for (unsigned j = 0; j < samples; ++j) {
    Rat x = I.lo() + Rat(long(j)) * step;
    est = max(est, (ref.center(x) - fast.eval(x)).abs());
  }
  est += ref.delta();
  return {std::move(p), std::move(est)};
}

}  // namespace polycert
