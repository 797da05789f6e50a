#include <algorithm>
#include <cctype>
#include <functional>
#include <sstream>

#include "kalmar/errors.hpp"
#include "kalmar/primes.hpp"
#include "kalmar/types.hpp"

namespace kalmar {

PrimeSignature::PrimeSignature(std::initializer_list<unsigned> exponents)
    : PrimeSignature(canonical(std::vector<unsigned>(exponents))) {}

PrimeSignature PrimeSignature::canonical(std::vector<unsigned> exponents) {
  std::erase(exponents, 0u);
  std::sort(exponents.begin(), exponents.end(), std::greater<>());
  return PrimeSignature(std::move(exponents));
}

PrimeSignature PrimeSignature::parse(const std::string& text) {
  std::vector<unsigned> out;
  std::string token;
  auto flush = [&] {
    if (token.empty()) return;
    std::size_t used = 0;
    unsigned long v = 0;
    try {
      v = std::stoul(token, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != token.size() || v == 0 || v > 1'000'000)
      throw PreconditionError("bad signature entry '" + token + "'");
    out.push_back(static_cast<unsigned>(v));
    token.clear();
  };
  for (char ch : text) {
    if (std::isdigit(static_cast<unsigned char>(ch))) {
      token.push_back(ch);
    } else if (ch == ',' || ch == ' ' || ch == '[' || ch == ']' || ch == ';') {
      flush();
    } else {
      throw PreconditionError(std::string("bad character in signature: '") + ch + "'");
    }
  }
  flush();
  return canonical(std::move(out));
}

PrimeSignature PrimeSignature::of(std::uint64_t n) {
  if (n == 0) throw DomainError("signature of 0 is undefined");
  std::vector<unsigned> exps;
  for (std::uint64_t p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
    unsigned e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    if (e) exps.push_back(e);
  }
  if (n > 1) exps.push_back(1);
  return canonical(std::move(exps));
}

unsigned PrimeSignature::Omega() const {
  unsigned s = 0;
  for (auto e : exponents_) s += e;
  return s;
}

BigCount PrimeSignature::smallest_value() const {
  BigCount n = 1;
  for (std::size_t i = 0; i < exponents_.size(); ++i) {
    BigCount pe;
    mpz_ui_pow_ui(pe.get_mpz_t(), static_cast<unsigned long>(nth_prime(i + 1)), exponents_[i]);
    n *= pe;
  }
  return n;
}

std::string PrimeSignature::to_string() const {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < exponents_.size(); ++i) os << (i ? "," : "") << exponents_[i];
  os << ']';
  return os.str();
}

RealVector PrimeSignature::as_reals() const { return RealVector(exponents_.begin(), exponents_.end()); }

std::size_t PrimeSignatureHash::operator()(const PrimeSignature& s) const noexcept {
  std::size_t h = 0x9e3779b97f4a7c15ull;
  for (auto e : s.exponents()) h ^= e + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  return h;
}

namespace {

void partitions(unsigned remaining, unsigned max_part, std::vector<unsigned>& prefix,
                std::vector<PrimeSignature>& out) {
  if (remaining == 0) {
    out.push_back(PrimeSignature::canonical(prefix));
    return;
  }
  for (unsigned part = std::min(remaining, max_part); part >= 1; --part) {
    prefix.push_back(part);
    partitions(remaining - part, part, prefix, out);
    prefix.pop_back();
  }
}

}  // namespace

std::vector<PrimeSignature> signatures_with_Omega(unsigned total) {
  std::vector<PrimeSignature> out;
  std::vector<unsigned> prefix;
  partitions(total, total, prefix, out);
  return out;
}

}  // namespace kalmar

namespace kalmar {

namespace {

struct Walker {
  const BigCount& X;
  const std::function<void(const std::vector<unsigned>&, const BigCount&)>& visit;
  std::vector<unsigned> exps;

  void descend(std::size_t j, unsigned max_e, const BigCount& value) {
    visit(exps, value);
    const auto p = static_cast<unsigned long>(nth_prime(j + 1));
    BigCount v = value;
    for (unsigned e = 1; e <= max_e; ++e) {
      v *= p;
      if (v > X) break;
      exps.push_back(e);
      descend(j + 1, e, v);
      exps.pop_back();
    }
  }
};

}  // namespace

unsigned max_first_exponent(const BigCount& X) {
  if (X < 1) return 0;
  return static_cast<unsigned>(mpz_sizeinbase(X.get_mpz_t(), 2) - 1);
}

void for_each_signature_up_to(const BigCount& X,
                              const std::function<void(const std::vector<unsigned>&, const BigCount&)>& visit,
                              unsigned first_exponent) {
  if (X < 1) return;
  Walker w{X, visit, {}};
  if (first_exponent == 0) {
    w.descend(0, max_first_exponent(X), BigCount(1));
    return;
  }
  BigCount v;
  mpz_ui_pow_ui(v.get_mpz_t(), 2, first_exponent);
  if (v > X) return;
  w.exps.push_back(first_exponent);
  w.descend(1, first_exponent, v);
}

}  // namespace kalmar
