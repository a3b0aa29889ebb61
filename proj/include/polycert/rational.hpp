#pragma once

#include <gmpxx.h>

#include <cassert>
#include <cstdlib>
#include <string>
#include <string_view>
#include <utility>

#include "polycert/errors.hpp"

namespace polycert {

/// Exact arbitrary-precision rational. The only scalar type of the checker;
/// always kept canonical (denominator > 0, gcd(|num|, den) = 1).
class Rat {
 public:
  Rat() : q_(0) {}
  Rat(long n) : q_(n) {}  // NOLINT(google-explicit-constructor)
  explicit Rat(const mpz_class& n) : q_(n) {}

  Rat(const mpz_class& num, const mpz_class& den) {
    if (sgn(den) == 0) throw std::invalid_argument("Rat: zero denominator");
    q_ = mpq_class(num, den);
    q_.canonicalize();
  }

  Rat(long num, long den) : Rat(mpz_class(num), mpz_class(den)) {}

  const mpz_class& num() const { return q_.get_num(); }
  const mpz_class& den() const { return q_.get_den(); }

  bool isZero() const { return sgn(q_) == 0; }
  bool isInteger() const { return q_.get_den() == 1; }
  int sign() const { return sgn(q_); }

  Rat abs() const { return Rat(::abs(q_)); }

  /// Largest integer <= value.
  mpz_class floorZ() const {
    mpz_class r;
    mpz_fdiv_q(r.get_mpz_t(), num().get_mpz_t(), den().get_mpz_t());
    return r;
  }

  /// Smallest integer >= value.
  mpz_class ceilZ() const {
    mpz_class r;
    mpz_cdiv_q(r.get_mpz_t(), num().get_mpz_t(), den().get_mpz_t());
    return r;
  }

  Rat& operator+=(const Rat& o) { q_ += o.q_; return *this; }
  Rat& operator-=(const Rat& o) { q_ -= o.q_; return *this; }
  Rat& operator*=(const Rat& o) { q_ *= o.q_; return *this; }
  Rat& operator/=(const Rat& o) {
    if (o.isZero()) throw std::invalid_argument("Rat: division by zero");
    q_ /= o.q_;
    return *this;
  }

  friend Rat operator+(Rat a, const Rat& b) { a += b; return a; }
  friend Rat operator-(Rat a, const Rat& b) { a -= b; return a; }
  friend Rat operator*(Rat a, const Rat& b) { a *= b; return a; }
  friend Rat operator/(Rat a, const Rat& b) { a /= b; return a; }
  friend Rat operator-(const Rat& a) { return Rat(mpq_class(-a.q_)); }

  friend bool operator==(const Rat& a, const Rat& b) { return cmp(a.q_, b.q_) == 0; }
  friend bool operator!=(const Rat& a, const Rat& b) { return cmp(a.q_, b.q_) != 0; }
  friend bool operator<(const Rat& a, const Rat& b) { return cmp(a.q_, b.q_) < 0; }
  friend bool operator<=(const Rat& a, const Rat& b) { return cmp(a.q_, b.q_) <= 0; }
  friend bool operator>(const Rat& a, const Rat& b) { return cmp(a.q_, b.q_) > 0; }
  friend bool operator>=(const Rat& a, const Rat& b) { return cmp(a.q_, b.q_) >= 0; }

  /// "num/den", or just "num" for integers.
  std::string str() const {
    if (isInteger()) return num().get_str();
    return num().get_str() + "/" + den().get_str();
  }

  /// Exact decimal approximation in scientific form, `sig` significant
  /// digits, round half away from zero. Never goes through floating point.
  std::string decimalStr(unsigned sig = 12) const;

  /// Round to the nearest multiple of 2^-bits (ties toward +infinity).
  Rat dyadicRound(unsigned bits) const {
    mpz_class scaledNum = num() << bits;
    mpz_class q, r;
    mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), scaledNum.get_mpz_t(),
                den().get_mpz_t());
    // q + (1 if 2r >= den)
    if (2 * r >= den()) ++q;
    mpz_class d(1);
    d <<= bits;
    return Rat(q, d);
  }

  bool isCanonical() const {
    if (sgn(q_.get_den()) <= 0) return false;
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), q_.get_num().get_mpz_t(), q_.get_den().get_mpz_t());
    return g == 1;
  }

 private:
  explicit Rat(mpq_class q) : q_(std::move(q)) {}
  mpq_class q_;
};

inline Rat abs(const Rat& r) { return r.abs(); }
inline const Rat& min(const Rat& a, const Rat& b) { return a <= b ? a : b; }
inline const Rat& max(const Rat& a, const Rat& b) { return a >= b ? a : b; }

/// r^e with a non-negative integer exponent.
inline Rat pow(const Rat& r, unsigned long e) {
  mpz_class n, d;
  mpz_pow_ui(n.get_mpz_t(), r.num().get_mpz_t(), e);
  mpz_pow_ui(d.get_mpz_t(), r.den().get_mpz_t(), e);
  return Rat(n, d);
}

inline mpz_class pow10z(unsigned long e) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), 10, e);
  return r;
}

/// Exact conversion of a decimal literal: optional sign, digits, optional
/// fraction part, optional exponent. "2.14" -> 107/50. Never rounds.
inline Rat ratFromDecimal(std::string_view text) {
  auto malformed = [&]() -> CheckError {
    return CheckError(ErrCode::MalformedNumber,
                      "malformed number: '" + std::string(text) + "'");
  };
  size_t i = 0;
  bool neg = false;
  if (i < text.size() && (text[i] == '+' || text[i] == '-')) {
    neg = text[i] == '-';
    ++i;
  }
  auto readDigits = [&](std::string& out) {
    while (i < text.size() && text[i] >= '0' && text[i] <= '9') out += text[i++];
  };
  std::string intPart;
  readDigits(intPart);
  if (intPart.empty()) throw malformed();
  std::string fracPart;
  if (i < text.size() && text[i] == '.') {
    ++i;
    readDigits(fracPart);
    if (fracPart.empty()) throw malformed();
  }
  long expo = 0;
  if (i < text.size() && (text[i] == 'e' || text[i] == 'E')) {
    ++i;
    bool expNeg = false;
    if (i < text.size() && (text[i] == '+' || text[i] == '-')) {
      expNeg = text[i] == '-';
      ++i;
    }
    std::string expDigits;
    readDigits(expDigits);
    if (expDigits.empty() || expDigits.size() > 7) throw malformed();
    expo = std::strtol(expDigits.c_str(), nullptr, 10);
    if (expNeg) expo = -expo;
  }
  if (i != text.size()) throw malformed();

  mpz_class numerator(intPart + fracPart, 10);
  if (neg) numerator = -numerator;
  mpz_class denominator = pow10z(fracPart.size());
  if (expo > 0)
    numerator *= pow10z(static_cast<unsigned long>(expo));
  else if (expo < 0)
    denominator *= pow10z(static_cast<unsigned long>(-expo));
  return Rat(numerator, denominator);
}

/// Universal rational reader: "num/den", plain integer, or decimal literal.
inline Rat parseRational(std::string_view text) {
  size_t slash = text.find('/');
  if (slash == std::string_view::npos) return ratFromDecimal(text);
  std::string_view numPart = text.substr(0, slash);
  std::string_view denPart = text.substr(slash + 1);
  auto isInt = [](std::string_view s, bool allowSign) {
    size_t i = 0;
    if (allowSign && i < s.size() && (s[i] == '+' || s[i] == '-')) ++i;
    if (i >= s.size()) return false;
    for (; i < s.size(); ++i)
      if (s[i] < '0' || s[i] > '9') return false;
    return true;
  };
  if (!isInt(numPart, true) || !isInt(denPart, false))
    throw CheckError(ErrCode::MalformedNumber,
                     "malformed rational: '" + std::string(text) + "'");
  if (numPart.front() == '+') numPart.remove_prefix(1);
  return Rat(mpz_class(std::string(numPart), 10),
             mpz_class(std::string(denPart), 10));
}

inline std::string Rat::decimalStr(unsigned sig) const {
  assert(sig >= 1);
  if (isZero()) return "0";
  bool neg = sign() < 0;
  mpz_class n = ::abs(num());
  const mpz_class& d = den();

  // e = floor(log10(n/d)); start from the digit-count estimate and correct.
  long e = static_cast<long>(mpz_sizeinbase(n.get_mpz_t(), 10)) -
           static_cast<long>(mpz_sizeinbase(d.get_mpz_t(), 10));
  auto scaledDigits = [&](long shift) {
    // floor(n * 10^shift / d) as a decimal string ("0" when it vanishes)
    mpz_class nn = n, dd = d;
    if (shift > 0)
      nn *= pow10z(static_cast<unsigned long>(shift));
    else if (shift < 0)
      dd *= pow10z(static_cast<unsigned long>(-shift));
    mpz_class t;
    mpz_fdiv_q(t.get_mpz_t(), nn.get_mpz_t(), dd.get_mpz_t());
    return t;
  };
  // Adjust e until the first sig digits land exactly.
  for (int guard = 0; guard < 6; ++guard) {
    mpz_class t = scaledDigits(static_cast<long>(sig) - 1 - e);
    std::string s = t.get_str();
    long have = static_cast<long>(s.size());
    if (t == 0) { --e; continue; }
    if (have == static_cast<long>(sig)) break;
    e += have - static_cast<long>(sig);
  }
  // Round half away from zero at sig digits.
  long shift = static_cast<long>(sig) - 1 - e;
  mpz_class nn = n, dd = d;
  if (shift > 0)
    nn *= pow10z(static_cast<unsigned long>(shift));
  else if (shift < 0)
    dd *= pow10z(static_cast<unsigned long>(-shift));
  mpz_class roundedNum = 2 * nn + dd;
  mpz_class doubledDen = 2 * dd;
  mpz_class t;
  mpz_fdiv_q(t.get_mpz_t(), roundedNum.get_mpz_t(), doubledDen.get_mpz_t());
  std::string digits = t.get_str();
  if (digits.size() > sig) {  // 999... rounded up to 1000...
    ++e;
    digits.resize(sig);
  }
  std::string out;
  if (neg) out += '-';
  out += digits[0];
  if (sig > 1) {
    out += '.';
    out += digits.substr(1);
  }
  out += 'e';
  out += std::to_string(e);
  return out;
}

}  // namespace polycert
