#pragma once

#include <cassert>
#include <utility>
#include <vector>

#include "polycert/errors.hpp"
#include "polycert/poly.hpp"
#include "polycert/rational.hpp"

namespace polycert {

/// Positive rescaling of p to a primitive integer-coefficient polynomial
/// (coefficients coprime). Sign evaluations are unchanged everywhere, which
/// is all that sign-variation counting needs; without it the chain
/// coefficients blow up catastrophically.
inline Poly primitivePositive(const Poly& p) {
  if (p.isZero()) return p;
  mpz_class denLcm(1);
  for (const Rat& c : p.coeffs())
    mpz_lcm(denLcm.get_mpz_t(), denLcm.get_mpz_t(), c.den().get_mpz_t());
  std::vector<mpz_class> z;
  z.reserve(p.coeffs().size());
  for (const Rat& c : p.coeffs()) z.push_back(c.num() * (denLcm / c.den()));
  mpz_class g(0);
  for (const mpz_class& v : z) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
  std::vector<Rat> out;
  out.reserve(z.size());
  for (const mpz_class& v : z) out.emplace_back(mpz_class(v / g));
  return Poly(std::move(out));
}

/// Sturm chain: p, p' (positively rescaled), then successively rescaled
/// negated division remainders, ending at a nonzero constant.
class SturmChain {
 public:
  explicit SturmChain(std::vector<Poly> polys) : polys_(std::move(polys)) {
    scaled_.reserve(polys_.size());
    for (const Poly& p : polys_) scaled_.emplace_back(p);
  }

  const std::vector<Poly>& polys() const { return polys_; }
  size_t size() const { return polys_.size(); }

  int signAt(size_t i, const Rat& x) const { return scaled_[i].signAt(x); }

 private:
  std::vector<Poly> polys_;
  std::vector<ScaledPoly> scaled_;
};

/// Chain construction per the recurrence s_{i+1} = -rem(s_{i-1}, s_i).
/// Requires deg(p) >= 1 and p squarefree; a zero remainder before the chain
/// reaches a constant tail means gcd(p, p') is non-constant.
inline SturmChain sturmChain(const Poly& p) {
  if (p.degree() < 1)
    throw CheckError(ErrCode::DegreeTooSmall,
                     "Sturm chain needs degree >= 1, got degree " +
                         std::to_string(p.degree()));
  std::vector<Poly> chain;
  chain.push_back(p);
  chain.push_back(primitivePositive(p.derivative()));
  long fuel = p.degree();
  while (!chain.back().isConstant()) {
    if (fuel-- <= 0) {
      assert(false && "Sturm chain exceeded its degree-based fuel");
      throw CheckError(ErrCode::NotSquarefree, "Sturm chain did not terminate");
    }
    const Poly& a = chain[chain.size() - 2];
    const Poly& b = chain.back();
    // Pre-scaling the dividend by |lead(b)|^(deg a - deg b + 1) keeps the
    // whole division over integers; the remainder is a positive multiple of
    // the rational remainder, so the sign pattern is untouched.
    Rat scale = pow(b.leading().abs(),
                    static_cast<unsigned long>(a.degree() - b.degree() + 1));
    Poly rem = polyDiv(scale * a, b).rem;
    if (rem.isZero())
      throw CheckError(ErrCode::NotSquarefree,
                       "polynomial has a repeated root (gcd(p, p') is "
                       "non-constant); Sturm counting needs a squarefree "
                       "polynomial");
    chain.push_back(primitivePositive(-rem));
  }
  return SturmChain(std::move(chain));
}

/// Number of adjacent strict sign changes of the chain values at x,
/// zeros deleted.
inline unsigned variation(const SturmChain& ss, const Rat& x) {
  unsigned changes = 0;
  int prev = 0;
  for (size_t i = 0; i < ss.size(); ++i) {
    int s = ss.signAt(i, x);
    if (s == 0) continue;
    if (prev != 0 && s != prev) ++changes;
    prev = s;
  }
  return changes;
}

/// Exact count of distinct real roots in the open interval (a, b); the
/// chain's head polynomial must not vanish at either endpoint.
inline unsigned countZeros(const SturmChain& ss, const Rat& a, const Rat& b) {
  if (!(a < b)) throw std::invalid_argument("countZeros: requires a < b");
  if (ss.signAt(0, a) == 0 || ss.signAt(0, b) == 0)
    throw CheckError(ErrCode::EndpointZero,
                     "polynomial vanishes at an endpoint (" + a.str() + " or " +
                         b.str() + "); Sturm counting needs nonzero endpoint "
                         "values");
  unsigned va = variation(ss, a);
  unsigned vb = variation(ss, b);
  assert(va >= vb);
  return va - vb;
}

inline unsigned countZeros(const Poly& p, const Rat& a, const Rat& b) {
  if (!(a < b)) throw std::invalid_argument("countZeros: requires a < b");
  if (p.eval(a).isZero() || p.eval(b).isZero())
    throw CheckError(ErrCode::EndpointZero,
                     "polynomial vanishes at an endpoint (" + a.str() + " or " +
                         b.str() + ")");
  if (p.degree() < 1) return 0;  // nonzero constant: no roots anywhere
  return countZeros(sturmChain(p), a, b);
}

}  // namespace polycert
