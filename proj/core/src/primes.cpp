#include "kalmar/primes.hpp"

#include <cmath>
#include <string>

#include "kalmar/errors.hpp"

namespace kalmar {

PrimeTable::PrimeTable(std::uint64_t bound) : bound_(bound) {
  if (bound > UINT32_MAX) throw ResourceError("sieve bound exceeds 32-bit prime storage");
  if (bound < 2) return;
  // odd-only sieve: index i stands for 2i+1
  const std::uint64_t half = (bound - 1) / 2 + 1;
  std::vector<bool> composite(half, false);
  for (std::uint64_t i = 1; (2 * i + 1) * (2 * i + 1) <= bound; ++i) {
    if (composite[i]) continue;
    const std::uint64_t p = 2 * i + 1;
    for (std::uint64_t j = p * p / 2; j < half; j += p) composite[j] = true;
  }
  primes_.reserve(static_cast<std::size_t>(1.1 * bound / std::log(static_cast<double>(bound) + 2)) + 16);
  primes_.push_back(2);
  for (std::uint64_t i = 1; i < half; ++i)
    if (!composite[i]) primes_.push_back(static_cast<std::uint32_t>(2 * i + 1));
  for (auto p : primes_) theta_ += std::log(static_cast<long double>(p));
}

std::uint64_t PrimeTable::nth(std::size_t k) const {
  if (k == 0) throw PreconditionError("nth_prime: k must be >= 1");
  if (k > primes_.size())
    throw ResourceError("nth_prime: k = " + std::to_string(k) + " exceeds sieve capacity (" +
                        std::to_string(primes_.size()) + " primes up to " + std::to_string(bound_) + ")");
  return primes_[k - 1];
}

const PrimeTable& default_primes() {
  static const PrimeTable table;
  return table;
}

std::uint64_t nth_prime(std::size_t k) { return default_primes().nth(k); }

}  // namespace kalmar
