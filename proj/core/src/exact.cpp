#include "kalmar/exact.hpp"

#include <map>
#include <string>

#include "kalmar/errors.hpp"

namespace kalmar {

BigCount binomial(unsigned long n, unsigned long k) {
  BigCount r;
  if (k > n) return r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

namespace {

// (exponent, multiplicity) runs of a canonical signature
std::vector<std::pair<unsigned, unsigned>> runs(const PrimeSignature& sig) {
  std::vector<std::pair<unsigned, unsigned>> out;
  for (auto e : sig.exponents()) {
    if (!out.empty() && out.back().first == e)
      ++out.back().second;
    else
      out.emplace_back(e, 1u);
  }
  return out;
}

const std::vector<BigCount>& macmahon_weights(unsigned Omega) {
  thread_local std::map<unsigned, std::vector<BigCount>> cache;
  auto it = cache.find(Omega);
  if (it != cache.end()) return it->second;
  std::vector<BigCount> w(Omega + 1);
  for (unsigned m = 1; m <= Omega; ++m) {
    BigCount s = 0;
    for (unsigned j = m; j <= Omega; ++j) {
      if ((j - m) % 2 == 0)
        s += binomial(j, m);
      else
        s -= binomial(j, m);
    }
    w[m] = s;
  }
  return cache.emplace(Omega, std::move(w)).first->second;
}

}  // namespace

BigCount tau_r(const PrimeSignature& sig, unsigned r) {
  BigCount out = 1;
  if (r == 0) return sig.empty() ? BigCount(1) : BigCount(0);
  BigCount b, p;
  for (auto [e, mult] : runs(sig)) {
    mpz_bin_uiui(b.get_mpz_t(), e + r - 1, e);
    mpz_pow_ui(p.get_mpz_t(), b.get_mpz_t(), mult);
    out *= p;
  }
  return out;
}

BigCount kalmar_macmahon(const PrimeSignature& sig) {
  if (sig.empty()) return 1;
  const unsigned Omega = sig.Omega();
  const auto& w = macmahon_weights(Omega);
  const auto rs = runs(sig);
  BigCount total = 0, tau, b, p;
  for (unsigned m = 1; m <= Omega; ++m) {
    tau = 1;
    for (auto [e, mult] : rs) {
      mpz_bin_uiui(b.get_mpz_t(), e + m - 1, e);
      mpz_pow_ui(p.get_mpz_t(), b.get_mpz_t(), mult);
      tau *= p;
    }
    total += w[m] * tau;
  }
  return total;
}

namespace {

struct RecursionFrame {
  const std::vector<std::pair<unsigned, unsigned>>& groups;
  KalmarMemo& memo;
  std::vector<unsigned> exps;
  BigCount sum = 0;
};

// Distribute the `left` primes of group g over exponents value..0,
// accumulating multinomial weight; recurse into the next group when done.
void expand(RecursionFrame& f, std::size_t g, unsigned value, unsigned left, const BigCount& weight, bool full);

void next_group(RecursionFrame& f, std::size_t g, const BigCount& weight, bool full) {
  if (g == f.groups.size()) {
    if (full) return;  // n itself is not a proper divisor
    f.sum += weight * f.memo.get(PrimeSignature::canonical(f.exps));
    return;
  }
  auto [e, c] = f.groups[g];
  expand(f, g, e, c, weight, full);
}

void expand(RecursionFrame& f, std::size_t g, unsigned value, unsigned left, const BigCount& weight, bool full) {
  if (left == 0) {
    next_group(f, g + 1, weight, full);
    return;
  }
  if (value == 0) {
    // remaining primes of this group get exponent 0 (no weight change)
    next_group(f, g + 1, weight, false);
    return;
  }
  const unsigned top = f.groups[g].first;
  for (unsigned take = left;; --take) {
    // choose `take` of the `left` remaining primes to carry `value`
    BigCount w = weight * binomial(left, take);
    const std::size_t mark = f.exps.size();
    f.exps.insert(f.exps.end(), take, value);
    expand(f, g, value - 1, left - take, w, full && (value == top ? take == left : take == 0));
    f.exps.resize(mark);
    if (take == 0) break;
  }
}

}  // namespace

const BigCount& KalmarMemo::get(const PrimeSignature& sig) {
  if (auto it = table_.find(sig); it != table_.end()) return it->second;
  BigCount value;
  if (sig.empty()) {
    value = 1;
  } else {
    const auto groups = runs(sig);
    RecursionFrame frame{groups, *this, {}, 0};
    expand(frame, 0, groups[0].first, groups[0].second, BigCount(1), true);
    value = std::move(frame.sum);
  }
  if (table_.size() >= capacity_)
    throw ResourceError("kalmar_recursive: memo table capacity " + std::to_string(capacity_) + " exceeded");
  return table_.emplace(sig, std::move(value)).first->second;
}

BigCount kalmar_recursive(const PrimeSignature& sig, KalmarMemo* memo) {
  thread_local KalmarMemo local;
  return (memo ? *memo : local).get(sig);
}

SeriesBounds kalmar_series_bounds(const PrimeSignature& sig, unsigned R) {
  const unsigned Omega = sig.Omega();
  if (R < Omega || R == 0) throw PreconditionError("kalmar_series_bounds: R must be >= max(1, Omega)");
  SeriesBounds out;
  BigCount pow2 = 2;  // 2^{r+1}
  for (unsigned r = 0; r <= R; ++r) {
    out.lower += BigRational(tau_r(sig, r), pow2);
    pow2 *= 2;
  }
  out.lower.canonicalize();
  // q = (R+2)^Omega / (2 (R+1)^Omega)
  BigCount num, den;
  mpz_ui_pow_ui(num.get_mpz_t(), R + 2, Omega);
  mpz_ui_pow_ui(den.get_mpz_t(), R + 1, Omega);
  BigRational q(num, 2 * den);
  q.canonicalize();
  if (q >= 1)
    throw PreconditionError("kalmar_series_bounds: R = " + std::to_string(R) +
                            " too small for a convergent tail bound at Omega = " + std::to_string(Omega));
  // first omitted term bound (R+1)^Omega / 2^{R+2}
  BigRational first(den, pow2);
  first.canonicalize();
  out.upper = out.lower + first / (1 - q);
  out.upper.canonicalize();
  return out;
}

BigCount kp_multinomial(const PrimeSignature& sig) {
  BigCount out = 1, b;
  unsigned partial = 0;
  for (auto e : sig.exponents()) {
    partial += e;
    mpz_bin_uiui(b.get_mpz_t(), partial, e);
    out *= b;
  }
  return out;
}

std::vector<BigCount> eulerian_row(unsigned n) {
  if (n == 0) return {BigCount(1)};
  std::vector<BigCount> row{BigCount(1)};
  for (unsigned m = 2; m <= n; ++m) {
    std::vector<BigCount> next(m);
    for (unsigned k = 0; k < m; ++k) {
      if (k < row.size()) next[k] += (k + 1) * row[k];
      if (k >= 1 && k - 1 < row.size()) next[k] += (m - k) * row[k - 1];
    }
    row = std::move(next);
  }
  return row;
}

EulerianChecksum eulerian_checksum(unsigned n) {
  if (n == 0 || n > 200) throw PreconditionError("eulerian_checksum: n must be in [1, 200]");
  EulerianChecksum out;
  BigCount pow = 1;
  for (const auto& a : eulerian_row(n)) {
    out.lhs += a * pow;
    pow *= 2;
  }
  out.rhs = kalmar_macmahon(PrimeSignature::canonical(std::vector<unsigned>(n, 1u)));
  return out;
}

}  // namespace kalmar
