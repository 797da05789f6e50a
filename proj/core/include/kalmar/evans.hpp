#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "kalmar/types.hpp"

namespace kalmar {

// Vectors are finite, non-negative; zero entries may be appended or removed
// without changing c, T or F. Indices are 0-based.

/// Unique c > 0 with prod (1 + x_j / c) = 2. Lies in [Omega, Omega / log 2].
/// Throws DomainError on the zero vector, where c is 0 by convention.
Real solve_c(std::span<const Real> x);

/// T(x) = sum x_i / (c + x_i), always in [1/2, 1].
Real t_of(std::span<const Real> x);

/// dc/dx_i = c / (T (c + x_i)).
Real grad_c(std::span<const Real> x, std::size_t i);

/// F(x) = sum x_j log(1 + c / x_j), with 0 log 0 = 0. F(0) = 0.
Real f_of(std::span<const Real> x);

/// dF/dx_i = log((c + x_i) / x_i); DomainError when x_i = 0.
Real grad_f(std::span<const Real> x, std::size_t i);

/// Second-derivative quadratic form of F at x applied to h:
///   (c/T) (sum h_i/(c+x_i))^2 - sum c h_i^2 / (x_i (c+x_i)).
/// Non-positive by Cauchy-Schwarz.
Real hessian_form(std::span<const Real> x, std::span<const Real> h);

/// Stirling correction s(x) = Gamma(x+1) / (x^x e^-x), s(0) = 1.
Real stirling_s(Real x);
Real log_stirling_s(Real x);

/// Evans' approximation K(n) ~ sqrt(pi) A(alpha) B(alpha); A and the
/// estimate are kept as logarithms.
struct EvansEstimate {
  Real c = 0;
  Real T = 0;
  Real F = 0;
  Real log_A = 0;         ///< via exp(F) / (2 sqrt 2 prod s(x_j))
  Real log_A_direct = 0;  ///< via e^-Omega prod (c+x_i)^x_i / Gamma(x_i+1)
  Real B = 0;
  Real log_estimate = 0;

  Real estimate() const;
};

EvansEstimate evans_estimate(std::span<const Real> x);

/// log K(n) for an exact count (double mantissa, exact binary exponent).
Real log_of(const BigCount& value);

/// K(n) / (sqrt(pi) A B) for a non-empty signature.
Real evans_ratio(const PrimeSignature& sig);

struct RatioRow {
  unsigned Omega = 0;
  std::size_t signatures = 0;
  Real min_ratio = 0;
  PrimeSignature argmin;
  Real max_ratio = 0;
  PrimeSignature argmax;
  /// argmin is (r) and argmax is (1,...,1)
  bool extremes_as_expected() const;
};

/// Ratio extremes over all signatures with Omega = r, for r = 1..omega_max.
/// Throws ResourceError when one level holds more than `capacity` signatures.
std::vector<RatioRow> ratio_scan(unsigned omega_max, std::size_t capacity = 1'000'000);

}  // namespace kalmar
