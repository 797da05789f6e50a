#pragma once

#include <cstddef>
#include <unordered_map>
#include <vector>

#include "kalmar/types.hpp"

namespace kalmar {

/// Exact binomial coefficient C(n, k); zero when k > n.
BigCount binomial(unsigned long n, unsigned long k);

/// K(n) from MacMahon's alternating double sum
///   K = sum_{j=1}^{Omega} sum_{i=0}^{j-1} (-1)^i C(j,i) prod_h C(a_h+j-i-1, a_h),
/// regrouped as sum_m w(Omega, m) tau_m(n) with the per-Omega weights
/// w(Omega, m) = sum_{j=m}^{Omega} (-1)^{j-m} C(j, m) cached per thread.
BigCount kalmar_macmahon(const PrimeSignature& sig);

/// Memo table for the divisor recursion, keyed by canonical signature.
/// Not synchronized: use one table per thread.
class KalmarMemo {
 public:
  static constexpr std::size_t kDefaultCapacity = 2'000'000;

  explicit KalmarMemo(std::size_t capacity = kDefaultCapacity) : capacity_(capacity) {}

  const BigCount& get(const PrimeSignature& sig);
  std::size_t size() const { return table_.size(); }
  std::size_t capacity() const { return capacity_; }
  void clear() { table_.clear(); }

 private:
  std::size_t capacity_;
  std::unordered_map<PrimeSignature, BigCount, PrimeSignatureHash> table_;
};

/// K(n) = sum over proper divisors e of n of K(e), evaluated on signatures.
/// Divisors sharing a canonical signature are counted together through
/// multinomial weights. Uses a thread-local memo when none is given.
BigCount kalmar_recursive(const PrimeSignature& sig, KalmarMemo* memo = nullptr);

/// Number of ordered r-tuples (factors >= 1) with product n:
/// prod_h C(a_h + r - 1, a_h).
BigCount tau_r(const PrimeSignature& sig, unsigned r);

struct SeriesBounds {
  BigRational lower;
  BigRational upper;
  bool contains(const BigCount& value) const { return lower <= value && value <= upper; }
};

/// Exact bracket of K(n) = (1/2) sum_{r>=0} tau_r(n) / 2^r truncated at R.
/// The tail uses tau_r(n) <= r^Omega: each factor C(a+r-1, a) is
/// prod_{j=1}^{a} (r-1+j)/j and every ratio (r-1+j)/j is at most r. Past R
/// consecutive bounds shrink by at most q = ((R+2)/(R+1))^Omega / 2, so the
/// tail is a geometric series when q < 1.
SeriesBounds kalmar_series_bounds(const PrimeSignature& sig, unsigned R);

/// K_P(n) = Omega! / prod a_h!, ordered factorizations into primes.
BigCount kp_multinomial(const PrimeSignature& sig);

/// Row n of the Eulerian triangle A(n, k), k = 0..n-1 (k ascents).
std::vector<BigCount> eulerian_row(unsigned n);

struct EulerianChecksum {
  BigCount lhs;  ///< sum_k A(n,k) 2^k
  BigCount rhs;  ///< K of a product of n distinct primes
  bool agree() const { return lhs == rhs; }
};

EulerianChecksum eulerian_checksum(unsigned n);

}  // namespace kalmar
