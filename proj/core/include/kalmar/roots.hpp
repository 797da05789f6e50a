#pragma once

#include <cmath>
#include <string>

#include "kalmar/errors.hpp"
#include "kalmar/types.hpp"

namespace kalmar::detail {

/// Root of a strictly decreasing f on [lo, hi]: bisection until the bracket
/// is narrow, then Newton steps that fall back to bisection whenever they
/// leave the bracket. Converges to the last representable bits.
template <class F, class DF>
Real decreasing_root(F f, DF df, Real lo, Real hi, Real rel_tol, const char* what) {
  Real flo = f(lo), fhi = f(hi);
  if (flo == 0) return lo;
  if (fhi == 0) return hi;
  if (!(flo > 0 && fhi < 0))
    throw ConvergenceError(std::string(what) + ": root is not bracketed");
  for (int i = 0; i < 30 && hi - lo > 1e-3L * std::fabs(hi); ++i) {
    Real mid = (lo + hi) / 2;
    if (f(mid) > 0) lo = mid; else hi = mid;
  }
  Real x = (lo + hi) / 2;
  for (int iter = 0; iter < 200; ++iter) {
    Real fx = f(x);
    if (fx == 0) return x;
    if (fx > 0) lo = x; else hi = x;
    Real d = df(x);
    Real next = (d < 0) ? x - fx / d : (lo + hi) / 2;
    if (!(next > lo && next < hi)) next = (lo + hi) / 2;
    Real step = std::fabs(next - x);
    x = next;
    if (step <= rel_tol * std::fabs(x) || hi - lo <= rel_tol * std::fabs(x)) return x;
  }
  if (hi - lo <= 1e3L * rel_tol * std::fabs(x)) return x;
  throw ConvergenceError(std::string(what) + ": no convergence");
}

}  // namespace kalmar::detail
