#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "kalmar/types.hpp"

namespace kalmar {

/// Relative residuals of the closed-form optimum identities.
struct OptimumResiduals {
  Real constraint = 0;  ///< |sum x_i log p_i - A| / A
  Real c = 0;           ///< |c(x*) - a_k A| / (a_k A)
  Real F = 0;           ///< |F(x*) - rho_k A| / (rho_k A)
  Real gradient = 0;    ///< max_i |dF/dx_i(x*) - rho_k log p_i| / (rho_k log p_i)
  Real max() const;
};

/// Maximizer of F over sum x_i log p_i <= A with x in R_+^k:
/// x_i* = a_k A / (p_i^rho_k - 1), c(x*) = a_k A, F(x*) = rho_k A.
struct OptimumPoint {
  std::size_t k = 0;
  Real A = 0;
  RealVector x_star;
  Real rho_k = 0;
  Real a_k = 0;
  Real c_star = 0;
  Real F_star = 0;
  OptimumResiduals residuals;
};

OptimumPoint optimum(std::size_t k, Real A);

struct DeficitResult {
  Real F_alpha = 0;
  Real F_star = 0;
  Real deficit = 0;       ///< (sum_{i<k} |a_i - x_i*| log p_i)^2 / (4 A log p_k)
  Real deficit_weak = 0;  ///< sum_{i<k} (a_i - x_i*)^2 (log p_i)^2 / (4 A log p_k)
  Real bound = 0;         ///< F_star - deficit
  Real bound_weak = 0;    ///< F_star - deficit_weak
  Real slack = 0;         ///< bound - F_alpha, >= 0 up to rounding
  Real slack_weak = 0;
};

/// Checks F(alpha) <= F(x*) - deficit for alpha in D(A). alpha may be
/// shorter than k (missing entries are zero). Throws PreconditionError
/// when alpha leaves D(A).
DeficitResult deficit_check(std::span<const Real> alpha, std::size_t k, Real A);

struct KChoice {
  std::size_t k = 0;
  Real raw = 0;         ///< kappa (log n)^{1/rho} / log log n before flooring
  bool clamped = false; ///< the floor was below 2 and was raised to 2
};

/// k = floor(kappa (log n)^{1/rho} / log log n), at least 2.
/// Requires log_n > e and 0 < kappa < rho a^{1/rho}.
KChoice choose_k(Real log_n, Real kappa);

inline constexpr std::size_t kMaxDivisorPrimes = 40;

/// Largest divisor d of p_1 p_2 ... p_k with d <= bound, by meet in the
/// middle over subset products of the two halves of the primes.
BigCount largest_divisor_leq(std::size_t k, const BigCount& bound, std::size_t max_k = kMaxDivisorPrimes);

/// Fitted constants of the sandwich
///   C3 exp(F(a)) / (e^k sqrt(prod a_i)) <= K(n) <= C4 exp(F(a)) / pi^{k/2}
/// over all n <= limit of the form 2^a1 ... p_k^ak, a1 >= ... >= ak >= 1.
struct SandwichFit {
  BigCount limit;
  std::size_t samples = 0;
  Real C3 = 0;  ///< min over samples of K / lower core
  Real C4 = 0;  ///< max over samples of K / upper core
  PrimeSignature argC3, argC4;
  Real max_F_excess = 0;  ///< max of F(a) - rho_k log n (non-positive by the optimum)
};

/// log of exp(F(a)) / (e^k sqrt(prod a_i)) and of exp(F(a)) / pi^{k/2}.
struct SandwichCores {
  Real log_lower = 0;
  Real log_upper = 0;
};
SandwichCores sandwich_cores(std::span<const Real> alpha);

SandwichFit fit_sandwich(const BigCount& limit);

/// Fit over n <= 10^5, computed once.
const SandwichFit& default_sandwich();

inline constexpr Real kDefaultKappa = 1.5L;
inline constexpr unsigned kExactWitnessOmega = 60;

struct WitnessResult {
  Real n_log = 0;
  std::size_t k = 0;
  bool k_clamped = false;
  Real kappa = 0;
  RealVector x_star;
  std::vector<unsigned> exponents;  ///< alpha_i on p_i, in prime order
  PrimeSignature m_signature;
  BigCount divisor;                 ///< d, largest divisor of p_1..p_k <= n/m0
  Real log_m = 0;
  Real ratio_n_over_m = 0;
  bool exact = false;               ///< logK_lower is exact log K(m)
  Real logK_lower = 0;
  Real c6_envelope = 0;             ///< (rho log n - logK_lower) log log n / (log n)^{1/rho}
};

/// Builds m = m0 d with m0 = prod p_i^floor(x_i*), so that 1 <= n/m < 2.
/// Throws PreconditionError when x_k* <= 1.
WitnessResult witness_m(Real log_n, Real kappa = kDefaultKappa);

}  // namespace kalmar
