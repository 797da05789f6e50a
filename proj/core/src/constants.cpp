#include "kalmar/constants.hpp"

#include <array>
#include <cmath>
#include <numbers>

#include "kalmar/errors.hpp"
#include "kalmar/roots.hpp"

namespace kalmar {

namespace {

// B_{2j} / (2j)!, j = 1..10
constexpr std::array<long double, 10> kBernoulliOverFactorial = {
    1.0L / 6 / 2,
    -1.0L / 30 / 24,
    1.0L / 42 / 720,
    -1.0L / 30 / 40320,
    5.0L / 66 / 3628800,
    -691.0L / 2730 / 479001600,
    7.0L / 6 / 87178291200.0L,
    -3617.0L / 510 / 20922789888000.0L,
    43867.0L / 798 / 6402373705728000.0L,
    -174611.0L / 330 / 2432902008176640000.0L,
};

constexpr int kDirectTerms = 16;

struct EulerMaclaurin {
  Real tail_value = 0;
  Real tail_derivative = 0;
};

// Sum_{n>=N} n^-s (and its s-derivative) by Euler-Maclaurin.
EulerMaclaurin em_tail(Real s, Real tolerance) {
  const Real N = kDirectTerms;
  const Real logN = std::log(N);
  const Real Ns = std::exp(-s * logN);  // N^-s
  EulerMaclaurin r;
  r.tail_value = N * Ns / (s - 1) + Ns / 2;
  r.tail_derivative = -logN * N * Ns / (s - 1) - N * Ns / ((s - 1) * (s - 1)) - logN * Ns / 2;

  // rising product s (s+1) ... (s+2j-2) and its log-derivative
  Real poly = s;
  Real poly_logderiv = 1 / s;
  Real power = Ns / N;  // N^{-s-1}
  for (std::size_t j = 0; j < kBernoulliOverFactorial.size(); ++j) {
    if (j > 0) {
      Real a1 = s + 2 * j - 1, a2 = s + 2 * j;
      poly *= a1 * a2;
      poly_logderiv += 1 / a1 + 1 / a2;
      power /= N * N;
    }
    Real term = kBernoulliOverFactorial[j] * poly * power;
    r.tail_value += term;
    r.tail_derivative += term * (poly_logderiv - logN);
    if (std::fabs(term) < tolerance * 1e-6L) break;
  }
  return r;
}

int moebius(int n) {
  int result = 1;
  for (int p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    n /= p;
    if (n % p == 0) return 0;
    result = -result;
  }
  return n > 1 ? -result : result;
}

}  // namespace

Real zeta_minus_one(Real s, Real tolerance) {
  if (!(s > 1)) throw DomainError("zeta: s must exceed 1");
  Real sum = 0;
  for (int n = kDirectTerms - 1; n >= 2; --n) sum += std::exp(-s * std::log(static_cast<Real>(n)));
  return sum + em_tail(s, tolerance).tail_value;
}

ZetaValue zeta(Real s, bool want_derivative, Real tolerance) {
  if (!(s > 1)) throw DomainError("zeta: s must exceed 1");
  ZetaValue out;
  out.value = 1 + zeta_minus_one(s, tolerance);
  if (want_derivative) {
    Real d = 0;
    for (int n = kDirectTerms - 1; n >= 2; --n) {
      Real ln = std::log(static_cast<Real>(n));
      d -= ln * std::exp(-s * ln);
    }
    out.derivative = d + em_tail(s, tolerance).tail_derivative;
  }
  return out;
}

Real zeta_truncated(Real s, std::size_t k, const PrimeTable& primes) {
  if (!(s > 0)) throw DomainError("zeta_truncated: s must be positive");
  if (k == 0) throw PreconditionError("zeta_truncated: k must be >= 1");
  primes.nth(k);
  Real log_sum = 0;
  auto ps = primes.primes();
  for (std::size_t i = 0; i < k; ++i) log_sum -= std::log1p(-std::exp(-s * std::log(static_cast<Real>(ps[i]))));
  return std::exp(log_sum);
}

Real prime_zeta(Real s) {
  if (!(s > 1)) throw DomainError("prime_zeta: s must exceed 1");
  Real sum = 0;
  for (int k = 1; k < 400; ++k) {
    Real ks = k * s;
    // log zeta(ks) ~ 2^-ks
    if (ks * std::numbers::ln2_v<Real> > 70 && k > 1) break;
    int mu = moebius(k);
    if (mu == 0) continue;
    sum += mu * std::log1p(zeta_minus_one(ks)) / k;
  }
  return sum;
}

Real solve_rho(std::optional<std::size_t> k, const PrimeTable& primes) {
  if (!k) {
    auto f = [](Real s) { return std::log(zeta(s).value) - std::numbers::ln2_v<Real>; };
    auto df = [](Real s) {
      auto z = zeta(s, true);
      return *z.derivative / z.value;
    };
    return detail::decreasing_root(f, df, 1.1L, 4.0L, 1e-17L, "solve_rho");
  }
  if (*k == 0) throw PreconditionError("solve_rho: k must be >= 1");
  primes.nth(*k);
  auto ps = primes.primes().first(*k);
  std::vector<Real> logs(ps.begin(), ps.end());
  for (auto& l : logs) l = std::log(l);
  // g(s) = log zeta_k(s) - log 2,  g'(s) = -sum log p / (p^s - 1)
  auto f = [&](Real s) {
    Real sum = 0;
    for (Real l : logs) sum -= std::log1p(-std::exp(-s * l));
    return sum - std::numbers::ln2_v<Real>;
  };
  auto df = [&](Real s) {
    Real sum = 0;
    for (Real l : logs) sum -= l / std::expm1(s * l);
    return sum;
  };
  if (*k == 1) return 1;  // 1/(1 - 2^-s) = 2 exactly at s = 1
  return detail::decreasing_root(f, df, 0.5L, 4.0L, 1e-17L, "solve_rho");
}

TruncatedConstants truncated_constants(std::size_t k, const PrimeTable& primes) {
  TruncatedConstants t;
  t.k = k;
  t.rho_k = solve_rho(k, primes);
  auto ps = primes.primes().first(k);
  Real inv = 0;
  for (auto p : ps) {
    Real l = std::log(static_cast<Real>(p));
    inv += l / std::expm1(t.rho_k * l);
  }
  t.a_k = 1 / inv;
  return t;
}

Real lagrange_scale(std::optional<std::size_t> k, const PrimeTable& primes) {
  if (k) return truncated_constants(*k, primes).a_k;
  // sum_p log p / (p^s - 1) = sum_n Lambda(n) n^-s = -zeta'(s)/zeta(s)
  Real rho = solve_rho();
  auto z = zeta(rho, true);
  return -z.value / *z.derivative;
}

Real ConstantsTable::beta(std::size_t i) const {
  Real p = static_cast<Real>(nth_prime(i));
  return a / std::expm1(rho * std::log(p));
}

namespace {

ConstantsTable compute_constants() {
  ConstantsTable c;
  c.rho = solve_rho();
  auto z = zeta(c.rho, true);
  c.zeta_prime_rho = *z.derivative;
  c.a = -z.value / c.zeta_prime_rho;
  // T0 = P(rho);  sum_p 1/(p^rho - 1) = sum_{m>=1} P(m rho)
  c.T0 = prime_zeta(c.rho);
  Real inv_sum = 0;
  for (int m = 1; m * c.rho * std::numbers::ln2_v<Real> < 70; ++m) inv_sum += prime_zeta(m * c.rho);
  c.b = c.a * inv_sum;
  c.B0 = std::sqrt(2 * c.a / c.T0);
  c.delta = (1 + 1 / c.rho) / 2;
  c.mu = c.delta - 1 / c.rho;
  c.kappa_max = c.rho * std::pow(c.a, 1 / c.rho);
  c.gap_coefficient = 2 / ((-c.zeta_prime_rho) * (c.rho - 1));
  c.precision = 1e-12L;
  return c;
}

// integral of G over [X, inf) with t = X e^u
template <class G>
Real tail_integral(G g, Real X) {
  const int n = 12000;
  const Real U = 90, h = U / n;
  Real sum = 0;
  for (int i = 0; i <= n; ++i) {
    Real u = i * h;
    Real t = X * std::exp(u);
    Real w = (i == 0 || i == n) ? 1 : (i % 2 ? 4 : 2);
    sum += w * g(t) * t;
  }
  return sum * h / 3;
}

}  // namespace

const ConstantsTable& model_constants() {
  static const ConstantsTable table = compute_constants();
  return table;
}

PrimeSumCheck prime_sum_check(Real rho, Real a, const PrimeTable& primes) {
  PrimeSumCheck r;
  r.bound = primes.bound();
  for (auto p : primes.primes()) {
    Real l = std::log(static_cast<Real>(p));
    Real pr = std::exp(rho * l);
    r.inv_a += l / (pr - 1);
    r.b += a / (pr - 1);
    r.T0 += 1 / pr;
  }
  // sum_{p>X} G(p) log p = G(X) (X - theta(X)) + int_X^inf G + O(int |theta - t| |G'|)
  const Real X = static_cast<Real>(r.bound);
  const Real drift = X - primes.theta();
  const Real spread = rho / (rho - 0.5L) * std::sqrt(X);
  auto g_inv_a = [&](Real t) { return 1 / std::expm1(rho * std::log(t)); };
  auto g_b = [&](Real t) { return a / std::expm1(rho * std::log(t)) / std::log(t); };
  auto g_T0 = [&](Real t) { return std::exp(-rho * std::log(t)) / std::log(t); };
  r.inv_a_tail = g_inv_a(X) * drift + tail_integral(g_inv_a, X);
  r.b_tail = g_b(X) * drift + tail_integral(g_b, X);
  r.T0_tail = g_T0(X) * drift + tail_integral(g_T0, X);
  r.inv_a_err = spread * g_inv_a(X);
  r.b_err = spread * g_b(X);
  r.T0_err = spread * g_T0(X);
  r.inv_a += r.inv_a_tail;
  r.b += r.b_tail;
  r.T0 += r.T0_tail;
  return r;
}

std::vector<GapRow> gap_report(const std::vector<std::size_t>& ks, const PrimeTable& primes) {
  const auto& c = model_constants();
  std::vector<GapRow> rows;
  for (auto k : ks) {
    if (k < 2) throw PreconditionError("gap_report: k must be >= 2");
    auto t = truncated_constants(k, primes);
    GapRow row;
    row.k = k;
    row.rho_k = t.rho_k;
    row.rho_gap = c.rho - t.rho_k;
    Real kk = static_cast<Real>(k), lk = std::log(kk);
    row.rho_gap_normalized = row.rho_gap * std::pow(kk, c.rho - 1) * std::pow(lk, c.rho);
    row.a_k = t.a_k;
    row.a_gap = t.a_k - c.a;
    row.a_gap_normalized = row.a_gap * (c.rho - 1) * std::pow(kk * lk, c.rho - 1) / (c.a * c.a);
    rows.push_back(row);
  }
  return rows;
}

}  // namespace kalmar
