#include "kalmar/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <string>

#include "kalmar/constants.hpp"
#include "kalmar/errors.hpp"
#include "kalmar/evans.hpp"
#include "kalmar/exact.hpp"
#include "kalmar/primes.hpp"

namespace kalmar {

namespace {

Real log_prime(std::size_t i) { return std::log(static_cast<Real>(nth_prime(i))); }

Real rel(Real got, Real want) { return std::fabs(got - want) / std::fabs(want); }

}  // namespace

Real OptimumResiduals::max() const { return std::max({constraint, c, F, gradient}); }

OptimumPoint optimum(std::size_t k, Real A) {
  if (k == 0) throw PreconditionError("optimum: k must be >= 1");
  if (!(A > 0) || !std::isfinite(A)) throw PreconditionError("optimum: A must be positive");
  auto t = truncated_constants(k);
  OptimumPoint o;
  o.k = k;
  o.A = A;
  o.rho_k = t.rho_k;
  o.a_k = t.a_k;
  o.x_star.resize(k);
  std::vector<Real> logs(k);
  for (std::size_t i = 0; i < k; ++i) {
    logs[i] = log_prime(i + 1);
    o.x_star[i] = t.a_k * A / std::expm1(t.rho_k * logs[i]);
  }
  o.c_star = t.a_k * A;
  o.F_star = t.rho_k * A;

  Real budget = 0;
  for (std::size_t i = 0; i < k; ++i) budget += o.x_star[i] * logs[i];
  o.residuals.constraint = rel(budget, A);
  const Real c = solve_c(o.x_star);
  o.residuals.c = rel(c, o.c_star);
  o.residuals.F = rel(f_of(o.x_star), o.F_star);
  for (std::size_t i = 0; i < k; ++i) {
    Real g = std::log1p(c / o.x_star[i]);
    o.residuals.gradient = std::max(o.residuals.gradient, rel(g, t.rho_k * logs[i]));
  }
  return o;
}

DeficitResult deficit_check(std::span<const Real> alpha, std::size_t k, Real A) {
  if (alpha.size() > k) throw PreconditionError("deficit_check: alpha longer than k");
  RealVector a(alpha.begin(), alpha.end());
  a.resize(k, 0);
  Real used = 0;
  for (std::size_t i = 0; i < k; ++i) {
    if (!(a[i] >= 0)) throw PreconditionError("deficit_check: alpha must be non-negative");
    used += a[i] * log_prime(i + 1);
  }
  if (used > A * (1 + 1e-12L)) throw PreconditionError("deficit_check: alpha is outside D(A)");
  auto opt = optimum(k, A);
  DeficitResult r;
  r.F_alpha = f_of(a);
  r.F_star = opt.F_star;
  const Real scale = 4 * A * log_prime(k);
  Real linear = 0, squares = 0;
  for (std::size_t i = 0; i + 1 < k; ++i) {
    Real d = std::fabs(a[i] - opt.x_star[i]) * log_prime(i + 1);
    linear += d;
    squares += d * d;
  }
  r.deficit = linear * linear / scale;
  r.deficit_weak = squares / scale;
  r.bound = r.F_star - r.deficit;
  r.bound_weak = r.F_star - r.deficit_weak;
  r.slack = r.bound - r.F_alpha;
  r.slack_weak = r.bound_weak - r.F_alpha;
  return r;
}

KChoice choose_k(Real log_n, Real kappa) {
  const auto& c = model_constants();
  if (!(log_n > std::numbers::e_v<Real>)) throw DomainError("choose_k: log n must exceed e");
  if (!(kappa > 0) || kappa >= c.kappa_max)
    throw DomainError("choose_k: kappa must lie in (0, rho a^{1/rho}) = (0, " + std::to_string(static_cast<double>(c.kappa_max)) + ")");
  KChoice out;
  out.raw = kappa * std::pow(log_n, 1 / c.rho) / std::log(log_n);
  Real f = std::floor(out.raw);
  if (f < 2) {
    out.k = 2;
    out.clamped = true;
  } else {
    out.k = static_cast<std::size_t>(f);
  }
  return out;
}

namespace {

std::vector<BigCount> subset_products(std::span<const unsigned long> ps) {
  std::vector<BigCount> out{BigCount(1)};
  out.reserve(std::size_t{1} << ps.size());
  for (auto p : ps) {
    const std::size_t n = out.size();
    for (std::size_t i = 0; i < n; ++i) out.push_back(out[i] * p);
  }
  return out;
}

}  // namespace

BigCount largest_divisor_leq(std::size_t k, const BigCount& bound, std::size_t max_k) {
  if (k == 0) throw PreconditionError("largest_divisor_leq: k must be >= 1");
  if (bound < 1) throw PreconditionError("largest_divisor_leq: bound must be >= 1");
  if (k > max_k)
    throw ResourceError("largest_divisor_leq: k = " + std::to_string(k) + " exceeds limit " + std::to_string(max_k));
  std::vector<unsigned long> ps(k);
  for (std::size_t i = 0; i < k; ++i) ps[i] = static_cast<unsigned long>(nth_prime(i + 1));
  const std::size_t half = k / 2;
  auto left = subset_products(std::span(ps).first(half));
  auto right = subset_products(std::span(ps).subspan(half));
  std::sort(left.begin(), left.end());
  BigCount best = 1, q;
  for (const auto& r : right) {
    if (r > bound) continue;
    mpz_fdiv_q(q.get_mpz_t(), bound.get_mpz_t(), r.get_mpz_t());
    auto it = std::upper_bound(left.begin(), left.end(), q);
    if (it == left.begin()) continue;
    BigCount cand = *std::prev(it) * r;
    if (cand > best) best = std::move(cand);
  }
  return best;
}

SandwichCores sandwich_cores(std::span<const Real> alpha) {
  SandwichCores s;
  Real F = f_of(alpha);
  Real k = 0, half_log = 0;
  for (Real a : alpha) {
    if (a <= 0) continue;
    k += 1;
    half_log += 0.5L * std::log(a);
  }
  s.log_lower = F - k - half_log;
  s.log_upper = F - k / 2 * std::log(std::numbers::pi_v<Real>);
  return s;
}

SandwichFit fit_sandwich(const BigCount& limit) {
  SandwichFit fit;
  fit.limit = limit;
  std::map<std::size_t, Real> rho_k;
  bool first = true;
  for_each_signature_up_to(limit, [&](const std::vector<unsigned>& exps, const BigCount& n) {
    if (exps.empty()) return;
    auto sig = PrimeSignature::canonical(exps);
    RealVector alpha = sig.as_reals();
    Real logK = log_of(kalmar_macmahon(sig));
    auto cores = sandwich_cores(alpha);
    Real lo = std::exp(logK - cores.log_lower);
    Real hi = std::exp(logK - cores.log_upper);
    if (first || lo < fit.C3) {
      fit.C3 = lo;
      fit.argC3 = sig;
    }
    if (first || hi > fit.C4) {
      fit.C4 = hi;
      fit.argC4 = sig;
    }
    auto k = exps.size();
    auto it = rho_k.find(k);
    if (it == rho_k.end()) it = rho_k.emplace(k, solve_rho(k)).first;
    Real excess = f_of(alpha) - it->second * log_of(n);
    if (first || excess > fit.max_F_excess) fit.max_F_excess = excess;
    first = false;
    ++fit.samples;
  });
  return fit;
}

const SandwichFit& default_sandwich() {
  static const SandwichFit fit = fit_sandwich(BigCount(100000));
  return fit;
}

namespace {

// floor(exp(x)) for moderate x, from the long double mantissa.
BigCount floor_exp(Real x) {
  Real v = std::exp(x);
  int e = 0;
  Real m = std::frexp(v, &e);
  auto mant = static_cast<unsigned long long>(std::ldexp(m, 64));
  BigCount out;
  mpz_import(out.get_mpz_t(), 1, 1, sizeof(mant), 0, 0, &mant);
  if (e >= 64)
    out <<= static_cast<unsigned long>(e - 64);
  else
    out >>= static_cast<unsigned long>(64 - e);
  return out;
}

}  // namespace

WitnessResult witness_m(Real log_n, Real kappa) {
  const auto& constants = model_constants();
  auto choice = choose_k(log_n, kappa);
  auto opt = optimum(choice.k, log_n);
  const std::size_t k = choice.k;
  if (!(opt.x_star[k - 1] > 1))
    throw PreconditionError("witness_m: x_k* = " + std::to_string(static_cast<double>(opt.x_star[k - 1])) +
                            " <= 1; log n too small for kappa");
  WitnessResult w;
  w.n_log = log_n;
  w.k = k;
  w.k_clamped = choice.clamped;
  w.kappa = kappa;
  w.x_star = opt.x_star;
  w.exponents.resize(k);
  Real log_m0 = 0;
  for (std::size_t i = 0; i < k; ++i) {
    w.exponents[i] = static_cast<unsigned>(std::floor(opt.x_star[i]));
    log_m0 += w.exponents[i] * log_prime(i + 1);
  }
  BigCount bound = floor_exp(log_n - log_m0);
  if (bound < 1) bound = 1;
  w.divisor = largest_divisor_leq(k, bound);
  w.log_m = log_m0 + log_of(w.divisor);
  for (std::size_t i = 0; i < k; ++i)
    if (mpz_divisible_ui_p(w.divisor.get_mpz_t(), static_cast<unsigned long>(nth_prime(i + 1)))) ++w.exponents[i];
  w.m_signature = PrimeSignature::canonical(w.exponents);
  w.ratio_n_over_m = std::exp(log_n - w.log_m);

  if (w.m_signature.Omega() <= kExactWitnessOmega) {
    w.exact = true;
    w.logK_lower = log_of(kalmar_macmahon(w.m_signature));
  } else {
    RealVector alpha(w.exponents.begin(), w.exponents.end());
    w.logK_lower = std::log(default_sandwich().C3) + sandwich_cores(alpha).log_lower;
  }
  w.c6_envelope = (constants.rho * log_n - w.logK_lower) * std::log(log_n) / std::pow(log_n, 1 / constants.rho);
  return w;
}

}  // namespace kalmar
