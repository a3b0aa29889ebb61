#pragma once

#include <cassert>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "polycert/errors.hpp"
#include "polycert/rational.hpp"

namespace polycert {

/// Dense univariate polynomial over exact rationals, coefficient i of x^i.
/// Canonical form: the zero polynomial is the empty sequence; otherwise the
/// trailing coefficient is nonzero.
class Poly {
 public:
  Poly() = default;

  explicit Poly(std::vector<Rat> coeffs) : c_(std::move(coeffs)) { trim(); }

  static Poly constant(const Rat& v) {
    if (v.isZero()) return Poly();
    return Poly({v});
  }

  /// The polynomial x.
  static Poly x() { return Poly({Rat(0), Rat(1)}); }

  const std::vector<Rat>& coeffs() const { return c_; }

  bool isZero() const { return c_.empty(); }
  bool isConstant() const { return c_.size() <= 1; }

  /// -1 for the zero polynomial.
  long degree() const { return static_cast<long>(c_.size()) - 1; }

  /// Coefficient of x^i (0 beyond the stored range).
  const Rat& operator[](size_t i) const {
    static const Rat kZero(0);
    return i < c_.size() ? c_[i] : kZero;
  }

  const Rat& leading() const {
    assert(!c_.empty());
    return c_.back();
  }

  /// Horner evaluation in exact arithmetic.
  Rat eval(const Rat& x) const {
    Rat acc(0);
    for (size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
    return acc;
  }

  Poly derivative() const {
    if (c_.size() <= 1) return Poly();
    std::vector<Rat> d;
    d.reserve(c_.size() - 1);
    for (size_t i = 1; i < c_.size(); ++i) d.push_back(Rat(long(i)) * c_[i]);
    return Poly(std::move(d));
  }

  /// this(inner(x)), Horner-style accumulation over outer coefficients.
  Poly compose(const Poly& inner) const {
    Poly acc;
    for (size_t i = c_.size(); i-- > 0;)
      acc = acc * inner + Poly::constant(c_[i]);
    return acc;
  }

  /// Sum |c_i| * m^i; dominates |p(x)| for all |x| <= m. Requires m >= 0.
  Rat absCoeffBound(const Rat& m) const {
    assert(m.sign() >= 0);
    Rat acc(0);
    for (size_t i = c_.size(); i-- > 0;) acc = acc * m + c_[i].abs();
    return acc;
  }

  friend Poly operator+(const Poly& a, const Poly& b) {
    std::vector<Rat> r(std::max(a.c_.size(), b.c_.size()));
    for (size_t i = 0; i < r.size(); ++i) r[i] = a[i] + b[i];
    return Poly(std::move(r));
  }

  friend Poly operator-(const Poly& a, const Poly& b) {
    std::vector<Rat> r(std::max(a.c_.size(), b.c_.size()));
    for (size_t i = 0; i < r.size(); ++i) r[i] = a[i] - b[i];
    return Poly(std::move(r));
  }

  friend Poly operator-(const Poly& a) {
    std::vector<Rat> r(a.c_.size());
    for (size_t i = 0; i < r.size(); ++i) r[i] = -a.c_[i];
    return Poly(std::move(r));
  }

  friend Poly operator*(const Poly& a, const Poly& b) {
    if (a.isZero() || b.isZero()) return Poly();
    std::vector<Rat> r(a.c_.size() + b.c_.size() - 1, Rat(0));
    for (size_t i = 0; i < a.c_.size(); ++i)
      for (size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
    return Poly(std::move(r));
  }

  friend Poly operator*(const Rat& s, const Poly& p) {
    std::vector<Rat> r(p.c_.size());
    for (size_t i = 0; i < r.size(); ++i) r[i] = s * p.c_[i];
    return Poly(std::move(r));
  }

  friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }

  /// Bracketed coefficient list, ascending powers: "[1, -1/2, 3]".
  std::string str() const {
    std::string out = "[";
    for (size_t i = 0; i < c_.size(); ++i) {
      if (i) out += ", ";
      out += c_[i].str();
    }
    out += "]";
    return out;
  }

  /// Parse the bracketed list form; separators ',' or ';'.
  static Poly fromString(std::string_view text) {
    auto fail = [&](const std::string& why) {
      return CheckError(ErrCode::ParseError,
                        "polynomial literal: " + why);
    };
    size_t b = text.find('[');
    size_t e = text.rfind(']');
    if (b == std::string_view::npos || e == std::string_view::npos || e < b)
      throw fail("expected '[...]'");
    std::string_view inner = text.substr(b + 1, e - b - 1);
    std::vector<Rat> coeffs;
    size_t pos = 0;
    auto isSpace = [](char ch) {
      return ch == ' ' || ch == '\t' || ch == '\n' || ch == '\r';
    };
    while (true) {
      while (pos < inner.size() && isSpace(inner[pos])) ++pos;
      if (pos >= inner.size()) break;
      size_t end = pos;
      while (end < inner.size() && inner[end] != ',' && inner[end] != ';') ++end;
      size_t tokEnd = end;
      while (tokEnd > pos && isSpace(inner[tokEnd - 1])) --tokEnd;
      if (tokEnd == pos) throw fail("empty coefficient");
      coeffs.push_back(parseRational(inner.substr(pos, tokEnd - pos)));
      pos = end < inner.size() ? end + 1 : end;
      if (end < inner.size() && pos == inner.size())
        throw fail("trailing separator");
    }
    return Poly(std::move(coeffs));
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back().isZero()) c_.pop_back();
  }

  std::vector<Rat> c_;
};

struct DivResult {
  Poly quot;
  Poly rem;
};

/// Long division over the rationals: p = q*quot + rem with
/// deg(rem) < deg(q) or rem = 0.
inline DivResult polyDiv(const Poly& p, const Poly& q) {
  if (q.isZero())
    throw CheckError(ErrCode::DivisionByZeroPoly,
                     "polynomial division by the zero polynomial");
  if (p.degree() < q.degree()) return {Poly(), p};
  std::vector<Rat> rem(p.coeffs());
  long dq = q.degree();
  const Rat& lead = q.leading();
  std::vector<Rat> quot(static_cast<size_t>(p.degree() - dq + 1), Rat(0));
  for (long k = p.degree() - dq; k >= 0; --k) {
    Rat c = rem[static_cast<size_t>(k + dq)] / lead;
    quot[static_cast<size_t>(k)] = c;
    if (c.isZero()) continue;
    for (long i = 0; i <= dq; ++i)
      rem[static_cast<size_t>(k + i)] -= c * q[static_cast<size_t>(i)];
  }
  return {Poly(std::move(quot)), Poly(std::move(rem))};
}

/// Denominator-cleared form for fast repeated evaluation:
/// p(x) = (sum z_i x^i) / den with integer z_i and den > 0.
class ScaledPoly {
 public:
  explicit ScaledPoly(const Poly& p) : den_(1) {
    for (const Rat& c : p.coeffs()) mpz_lcm(den_.get_mpz_t(), den_.get_mpz_t(),
                                            c.den().get_mpz_t());
    z_.reserve(p.coeffs().size());
    for (const Rat& c : p.coeffs()) z_.push_back(c.num() * (den_ / c.den()));
  }

  long degree() const { return static_cast<long>(z_.size()) - 1; }

  /// Exact value at x = n/d via integer Horner (single final reduction).
  Rat eval(const Rat& x) const {
    if (z_.empty()) return Rat(0);
    mpz_class acc = numeratorAt(x);
    mpz_class totalDen;
    mpz_pow_ui(totalDen.get_mpz_t(), x.den().get_mpz_t(), z_.size() - 1);
    totalDen *= den_;
    return Rat(acc, totalDen);
  }

  int signAt(const Rat& x) const {
    if (z_.empty()) return 0;
    return sgn(numeratorAt(x));
  }

 private:
  // sum z_i n^i d^(deg-i), the sign-carrying numerator of p(n/d).
  mpz_class numeratorAt(const Rat& x) const {
    const mpz_class& n = x.num();
    const mpz_class& d = x.den();
    mpz_class acc = z_.back();
    mpz_class dpow(1);
    for (size_t i = z_.size() - 1; i-- > 0;) {
      dpow *= d;
      acc = acc * n + z_[i] * dpow;
    }
    return acc;
  }

  std::vector<mpz_class> z_;
  mpz_class den_;
};

}  // namespace polycert
