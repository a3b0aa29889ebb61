#pragma once

#include <stdexcept>
#include <string>

#include "polycert/rational.hpp"

namespace polycert {

/// Closed interval [lo, hi] over exact rationals, lo <= hi.
class Interval {
 public:
  Interval(Rat lo, Rat hi) : lo_(std::move(lo)), hi_(std::move(hi)) {
    if (lo_ > hi_)
      throw std::invalid_argument("Interval: lo > hi (" + lo_.str() + " > " +
                                  hi_.str() + ")");
  }

  static Interval point(const Rat& x) { return Interval(x, x); }

  const Rat& lo() const { return lo_; }
  const Rat& hi() const { return hi_; }

  Rat width() const { return hi_ - lo_; }

  /// max(|lo|, |hi|): bound on |x| over the interval.
  Rat magBound() const { return max(lo_.abs(), hi_.abs()); }

  bool contains(const Rat& x) const { return lo_ <= x && x <= hi_; }
  bool contains(const Interval& other) const {
    return lo_ <= other.lo_ && other.hi_ <= hi_;
  }

  /// [lo - delta, hi + delta], delta >= 0.
  Interval widened(const Rat& delta) const {
    return Interval(lo_ - delta, hi_ + delta);
  }

  friend Interval operator+(const Interval& a, const Interval& b) {
    return Interval(a.lo_ + b.lo_, a.hi_ + b.hi_);
  }
  friend Interval operator-(const Interval& a, const Interval& b) {
    return Interval(a.lo_ - b.hi_, a.hi_ - b.lo_);
  }
  friend Interval operator-(const Interval& a) {
    return Interval(-a.hi_, -a.lo_);
  }
  friend Interval operator*(const Interval& a, const Interval& b) {
    Rat p1 = a.lo_ * b.lo_;
    Rat p2 = a.lo_ * b.hi_;
    Rat p3 = a.hi_ * b.lo_;
    Rat p4 = a.hi_ * b.hi_;
    return Interval(min(min(p1, p2), min(p3, p4)),
                    max(max(p1, p2), max(p3, p4)));
  }

  friend bool operator==(const Interval& a, const Interval& b) {
    return a.lo_ == b.lo_ && a.hi_ == b.hi_;
  }

  std::string str() const { return "[" + lo_.str() + ", " + hi_.str() + "]"; }

 private:
  Rat lo_, hi_;
};

}  // namespace polycert
