#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "kalmar/primes.hpp"
#include "kalmar/types.hpp"

namespace kalmar {

/// Absolute accuracy targeted by zeta() on 1 < s <= 4.
inline constexpr Real kZetaTolerance = 1e-13L;

struct ZetaValue {
  Real value = 0;
  std::optional<Real> derivative;
};

/// Riemann zeta (and optionally zeta') for real s > 1 by Euler-Maclaurin
/// summation. Accuracy is guaranteed on (1, 4]; larger s is accepted.
ZetaValue zeta(Real s, bool want_derivative = false, Real tolerance = kZetaTolerance);

/// zeta(s) - 1 without cancellation, for s > 1.
Real zeta_minus_one(Real s, Real tolerance = kZetaTolerance);

/// Euler product over the first k primes, s > 0.
Real zeta_truncated(Real s, std::size_t k, const PrimeTable& primes = default_primes());

/// Prime zeta function P(s) = sum over primes of p^-s, s > 1, by Moebius
/// inversion of log zeta.
Real prime_zeta(Real s);

/// Root of zeta_k(s) = 2, or of zeta(s) = 2 when k is empty.
Real solve_rho(std::optional<std::size_t> k = std::nullopt, const PrimeTable& primes = default_primes());

/// a_k with 1/a_k = sum_{i<=k} log p_i / (p_i^rho_k - 1), or a for the full
/// prime sum (evaluated as -zeta(rho)/zeta'(rho)).
Real lagrange_scale(std::optional<std::size_t> k = std::nullopt, const PrimeTable& primes = default_primes());

struct TruncatedConstants {
  std::size_t k = 0;
  Real rho_k = 0;
  Real a_k = 0;
};

TruncatedConstants truncated_constants(std::size_t k, const PrimeTable& primes = default_primes());

struct ConstantsTable {
  Real rho = 0;
  Real a = 0;
  Real b = 0;
  Real T0 = 0;
  Real B0 = 0;
  Real delta = 0;
  Real mu = 0;
  Real kappa_max = 0;
  Real zeta_prime_rho = 0;   ///< zeta'(rho)
  Real gap_coefficient = 0;  ///< 2 / ((-zeta'(rho)) (rho - 1))
  Real precision = 0;

  /// beta_i = a / (p_i^rho - 1), 1-based.
  Real beta(std::size_t i) const;
};

/// All model constants; computed once and cached.
const ConstantsTable& model_constants();

/// The infinite prime sums behind 1/a, b and T0, summed directly over the
/// sieve with a prime-number-theorem tail. Independent of the zeta-based
/// route used by model_constants().
struct PrimeSumCheck {
  std::uint64_t bound = 0;
  Real inv_a = 0, b = 0, T0 = 0;
  Real inv_a_tail = 0, b_tail = 0, T0_tail = 0;
  Real inv_a_err = 0, b_err = 0, T0_err = 0;  ///< tail uncertainty estimates
};

PrimeSumCheck prime_sum_check(Real rho, Real a, const PrimeTable& primes = default_primes());

struct GapRow {
  std::size_t k = 0;
  Real rho_k = 0, rho_gap = 0, rho_gap_normalized = 0;
  Real a_k = 0, a_gap = 0, a_gap_normalized = 0;
};

/// rho - rho_k and a_k - a with their asymptotic normalizations; k >= 2.
std::vector<GapRow> gap_report(const std::vector<std::size_t>& ks, const PrimeTable& primes = default_primes());

}  // namespace kalmar
