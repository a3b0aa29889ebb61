#pragma once

// Shared helpers for the test suites: deterministic random generators and
// a dense-sampling oracle used to cross-check certified bounds.

#include <random>
#include <vector>

#include "polycert/polycert.hpp"

namespace testsupport {

using polycert::Interval;
using polycert::Poly;
using polycert::Rat;

inline Rat randRat(std::mt19937_64& rng, long maxAbsNum = 100,
                   long maxDen = 100) {
  std::uniform_int_distribution<long> num(-maxAbsNum, maxAbsNum);
  std::uniform_int_distribution<long> den(1, maxDen);
  return Rat(num(rng), den(rng));
}

inline Rat randRatIn(std::mt19937_64& rng, const Interval& I,
                     long grid = 100000) {
  std::uniform_int_distribution<long> k(0, grid);
  return I.lo() + Rat(k(rng), grid) * I.width();
}

inline Poly randPoly(std::mt19937_64& rng, int maxDeg, long maxAbsNum = 100,
                     long maxDen = 10) {
  std::uniform_int_distribution<int> d(0, maxDeg);
  int deg = d(rng);
  std::vector<Rat> c;
  c.reserve(deg + 1);
  for (int i = 0; i <= deg; ++i) c.push_back(randRat(rng, maxAbsNum, maxDen));
  return Poly(std::move(c));
}

inline Poly randNonzeroPoly(std::mt19937_64& rng, int maxDeg,
                            long maxAbsNum = 100, long maxDen = 10) {
  while (true) {
    Poly p = randPoly(rng, maxDeg, maxAbsNum, maxDen);
    if (!p.isZero()) return p;
  }
}

/// Product of (x - r_i) for the given roots, times an optional extra factor.
inline Poly polyFromRoots(const std::vector<Rat>& roots) {
  Poly p = Poly::constant(Rat(1));
  for (const Rat& r : roots) p = p * Poly({-r, Rat(1)});
  return p;
}

/// Max of |ref(x) - p(x)| + enclosure width over count equally spaced
/// points; a sampling estimate of sup |f - p| usable as a lower bound
/// witness for refutation tests.
inline Rat sampledSup(const polycert::RefEvaluator& ref, const Poly& p,
                      const Interval& I, unsigned count) {
  polycert::ScaledPoly fast(p);
  Rat sup(0);
  Rat step = I.width() / Rat(long(count));
  for (unsigned k = 0; k <= count; ++k) {
    Rat x = I.lo() + Rat(long(k)) * step;
    sup = polycert::max(sup, (ref.center(x) - fast.eval(x)).abs());
  }
  return sup;
}

}  // namespace testsupport
