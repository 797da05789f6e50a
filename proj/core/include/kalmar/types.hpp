#pragma once

#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace kalmar {

using Real = long double;
using BigCount = mpz_class;
using BigRational = mpq_class;
using RealVector = std::vector<Real>;

/// Exponents of a prime factorization, sorted non-increasing, all >= 1.
/// The empty signature stands for n = 1.
class PrimeSignature {
 public:
  PrimeSignature() = default;
  PrimeSignature(std::initializer_list<unsigned> exponents);

  /// Sorts and drops zero exponents, so any exponent vector is accepted.
  static PrimeSignature canonical(std::vector<unsigned> exponents);

  /// Parses "3,2,1", "[3, 2, 1]" or "" (empty signature).
  static PrimeSignature parse(const std::string& text);

  /// Signature of a positive integer, by trial division.
  static PrimeSignature of(std::uint64_t n);

  const std::vector<unsigned>& exponents() const { return exponents_; }
  bool empty() const { return exponents_.empty(); }
  std::size_t omega() const { return exponents_.size(); }
  unsigned Omega() const;
  unsigned operator[](std::size_t i) const { return exponents_[i]; }

  /// 2^a1 3^a2 ... p_k^ak, the smallest integer with this signature.
  BigCount smallest_value() const;

  /// "[8,3,1]" form used in tables and cache files.
  std::string to_string() const;

  RealVector as_reals() const;

  friend bool operator==(const PrimeSignature&, const PrimeSignature&) = default;
  friend auto operator<=>(const PrimeSignature&, const PrimeSignature&) = default;

 private:
  explicit PrimeSignature(std::vector<unsigned> sorted) : exponents_(std::move(sorted)) {}
  std::vector<unsigned> exponents_;
};

struct PrimeSignatureHash {
  std::size_t operator()(const PrimeSignature& s) const noexcept;
};

/// All signatures with Omega == total, in reverse-lexicographic order
/// starting from (total).
std::vector<PrimeSignature> signatures_with_Omega(unsigned total);

}  // namespace kalmar

#include <functional>

namespace kalmar {

/// Depth-first enumeration of every N = 2^a1 3^a2 ... p_k^ak <= X with
/// a1 >= a2 >= ... >= ak >= 1, including N = 1. Visit order is the
/// backtracking order, not increasing N. `first_exponent`, when nonzero,
/// restricts the walk to the subtree with a1 == first_exponent (N = 1 is
/// then skipped).
void for_each_signature_up_to(const BigCount& X,
                              const std::function<void(const std::vector<unsigned>&, const BigCount&)>& visit,
                              unsigned first_exponent = 0);

/// floor(log2 X), the largest possible a1 below X.
unsigned max_first_exponent(const BigCount& X);

}  // namespace kalmar
