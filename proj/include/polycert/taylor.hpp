#pragma once

#include <cassert>
#include <optional>
#include <string>
#include <string_view>

#include "polycert/errors.hpp"
#include "polycert/interval.hpp"
#include "polycert/poly.hpp"

namespace polycert {

/// The supported elementary functions. tan is deliberately absent.
enum class ElemFn { Exp, Sin, Cos, Ln, Atan };

inline std::string_view fnName(ElemFn fn) {
  switch (fn) {
    case ElemFn::Exp: return "exp";
    case ElemFn::Sin: return "sin";
    case ElemFn::Cos: return "cos";
    case ElemFn::Ln: return "ln";
    case ElemFn::Atan: return "atan";
  }
  return "?";
}

inline std::optional<ElemFn> fnFromName(std::string_view name) {
  if (name == "exp") return ElemFn::Exp;
  if (name == "sin") return ElemFn::Sin;
  if (name == "cos") return ElemFn::Cos;
  if (name == "ln") return ElemFn::Ln;
  if (name == "atan") return ElemFn::Atan;
  return std::nullopt;
}

/// Series validity constraint for each function's expansion:
/// exp needs x >= 0, ln needs (1, 2), atan needs (-1, 1); sin/cos are free.
/// Returns the violated condition, or nullopt when satisfied.
inline std::optional<std::string> precondViolation(ElemFn fn,
                                                   const Interval& I) {
  switch (fn) {
    case ElemFn::Exp:
      if (I.lo().sign() < 0)
        return "exp requires a non-negative argument range, got " + I.str();
      return std::nullopt;
    case ElemFn::Ln:
      if (!(Rat(1) < I.lo() && I.hi() < Rat(2)))
        return "ln requires the argument range inside (1, 2), got " + I.str();
      return std::nullopt;
    case ElemFn::Atan:
      if (!(Rat(-1) < I.lo() && I.hi() < Rat(1)))
        return "atan requires the argument range inside (-1, 1), got " +
               I.str();
      return std::nullopt;
    case ElemFn::Sin:
    case ElemFn::Cos:
      return std::nullopt;
  }
  return std::nullopt;
}

inline void checkPrecond(ElemFn fn, const Interval& I) {
  if (auto why = precondViolation(fn, I))
    throw CheckError(ErrCode::PrecondViolation, *why);
}

/// Truncated series through degree n, expanded at 0 (at 1 for ln, already
/// composed with x - 1 so the result is an ordinary polynomial in x).
inline Poly taylorPoly(ElemFn fn, unsigned n) {
  assert(n >= 1);
  std::vector<Rat> c(n + 1, Rat(0));
  switch (fn) {
    case ElemFn::Exp: {
      mpz_class fact(1);
      c[0] = Rat(1);
      for (unsigned i = 1; i <= n; ++i) {
        fact *= i;
        c[i] = Rat(mpz_class(1), fact);
      }
      break;
    }
    case ElemFn::Sin: {
      mpz_class fact(1);
      for (unsigned i = 1; i <= n; ++i) {
        fact *= i;
        if (i % 2 == 1)
          c[i] = Rat(mpz_class((i / 2) % 2 == 0 ? 1 : -1), fact);
      }
      break;
    }
    case ElemFn::Cos: {
      mpz_class fact(1);
      c[0] = Rat(1);
      for (unsigned i = 1; i <= n; ++i) {
        fact *= i;
        if (i % 2 == 0)
          c[i] = Rat(mpz_class((i / 2) % 2 == 0 ? 1 : -1), fact);
      }
      break;
    }
    case ElemFn::Atan: {
      for (unsigned i = 1; i <= n; ++i)
        if (i % 2 == 1)
          c[i] = Rat(mpz_class((i / 2) % 2 == 0 ? 1 : -1), mpz_class(i));
      break;
    }
    case ElemFn::Ln: {
      // ln(1+y) = y - y^2/2 + ... composed with y = x - 1
      for (unsigned i = 1; i <= n; ++i)
        c[i] = Rat(mpz_class(i % 2 == 1 ? 1 : -1), mpz_class(i));
      return Poly(std::move(c)).compose(Poly({Rat(-1), Rat(1)}));
    }
  }
  return Poly(std::move(c));
}

namespace detail {
inline mpz_class factorialZ(unsigned n) {
  mpz_class f;
  mpz_fac_ui(f.get_mpz_t(), n);
  return f;
}
}  // namespace detail

/// Sound bound on |f(x) - taylorPoly(fn, n)(x)| over I. Lagrange remainders
/// for sin/cos/exp, alternating-series tails for atan/ln.
inline Rat taylorRemBound(ElemFn fn, unsigned n, const Interval& I) {
  checkPrecond(fn, I);
  switch (fn) {
    case ElemFn::Sin:
    case ElemFn::Cos: {
      Rat m = I.magBound();
      return pow(m, n + 1) / Rat(detail::factorialZ(n + 1));
    }
    case ElemFn::Exp: {
      // e^hi <= 3^ceil(hi)
      mpz_class c = I.hi().ceilZ();
      if (c > 1000000)
        throw CheckError(ErrCode::RangeTooLarge,
                         "exp argument range too large for a remainder bound: " +
                             I.str());
      mpz_class p3;
      mpz_ui_pow_ui(p3.get_mpz_t(), 3,
                    c <= 0 ? 0ul : mpz_class(c).get_ui());
      return Rat(p3) * pow(I.hi(), n + 1) / Rat(detail::factorialZ(n + 1));
    }
    case ElemFn::Atan: {
      Rat m = I.magBound();
      return pow(m, n + 1) / Rat(long(n) + 1);
    }
    case ElemFn::Ln: {
      Rat w = I.hi() - Rat(1);
      return pow(w, n + 1) / Rat(long(n) + 1);
    }
  }
  return Rat(0);
}

/// Strict lower bound on pi from the partial Leibniz sum 4*atan(1), taken
/// over an even number of terms (>= `terms`) so the omitted tail is positive.
inline Rat piLowerBound(unsigned terms) {
  assert(terms >= 1);
  unsigned count = terms + (terms % 2);
  Rat sum(0);
  for (unsigned i = 0; i < count; ++i) {
    Rat term(mpz_class(1), mpz_class(2 * i + 1));
    sum += (i % 2 == 0) ? term : -term;
  }
  return Rat(4) * sum;
}

/// Enclosure of f(I). Monotone functions use series endpoint values widened
/// by the remainder bound; sin/cos fall back to [-1, 1].
inline Interval fnRangeBound(ElemFn fn, const Interval& I, unsigned n) {
  checkPrecond(fn, I);
  switch (fn) {
    case ElemFn::Sin:
    case ElemFn::Cos:
      return Interval(Rat(-1), Rat(1));
    case ElemFn::Exp:
    case ElemFn::Ln:
    case ElemFn::Atan: {
      Poly t = taylorPoly(fn, n);
      Rat delta = taylorRemBound(fn, n, I);
      return Interval(t.eval(I.lo()) - delta, t.eval(I.hi()) + delta);
    }
  }
  return Interval(Rat(0), Rat(0));
}

/// L >= sup over I of |f'|.
inline Rat lipschitzBound(ElemFn fn, const Interval& I, unsigned n) {
  checkPrecond(fn, I);
  switch (fn) {
    case ElemFn::Sin:
    case ElemFn::Cos:
    case ElemFn::Atan:
      return Rat(1);
    case ElemFn::Exp:
      return fnRangeBound(ElemFn::Exp, I, n).hi();
    case ElemFn::Ln:
      return Rat(1) / I.lo();
  }
  return Rat(1);
}

/// Series, remainder bound, and the interval both were computed for.
struct TaylorApprox {
  Poly series;
  Rat remBound;
  Interval validOn;
};

inline TaylorApprox taylorApprox(ElemFn fn, unsigned n, const Interval& I) {
  return TaylorApprox{taylorPoly(fn, n), taylorRemBound(fn, n, I), I};
}

}  // namespace polycert
