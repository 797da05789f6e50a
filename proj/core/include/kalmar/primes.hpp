#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace kalmar {

/// Primes up to a fixed bound, sieved once at construction and read-only
/// afterwards.
class PrimeTable {
 public:
  static constexpr std::uint64_t kDefaultBound = 10'000'000;

  explicit PrimeTable(std::uint64_t bound = kDefaultBound);

  std::uint64_t bound() const { return bound_; }
  std::size_t size() const { return primes_.size(); }
  std::span<const std::uint32_t> primes() const { return primes_; }

  /// The k-th prime, 1-based. Throws ResourceError past the sieve bound.
  std::uint64_t nth(std::size_t k) const;

  /// Chebyshev theta(bound) = sum of log p over the table.
  long double theta() const { return theta_; }

 private:
  std::uint64_t bound_;
  std::vector<std::uint32_t> primes_;
  long double theta_ = 0;
};

/// Process-wide table with the default bound, built on first use.
const PrimeTable& default_primes();

/// The k-th prime (k >= 1) from the default table.
std::uint64_t nth_prime(std::size_t k);

}  // namespace kalmar
