#include "kalmar/evans.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "kalmar/errors.hpp"
#include "kalmar/exact.hpp"
#include "kalmar/roots.hpp"

namespace kalmar {

namespace {

constexpr Real kLn2 = std::numbers::ln2_v<Real>;
constexpr Real kPi = std::numbers::pi_v<Real>;

void check_entries(std::span<const Real> x) {
  for (Real v : x)
    if (!(v >= 0) || !std::isfinite(v)) throw DomainError("entries must be finite and non-negative");
}

}  // namespace

Real solve_c(std::span<const Real> x) {
  check_entries(x);
  Real omega = 0;
  std::size_t positive = 0;
  Real single = 0;
  for (Real v : x) {
    omega += v;
    if (v > 0) {
      ++positive;
      single = v;
    }
  }
  if (positive == 0) throw DomainError("solve_c: zero vector (c(0) = 0 by convention)");
  if (positive == 1) return single;
  auto H = [&](Real t) {
    Real s = 0;
    for (Real v : x)
      if (v > 0) s += std::log1p(v / t);
    return s - kLn2;
  };
  auto dH = [&](Real t) {
    Real s = 0;
    for (Real v : x)
      if (v > 0) s -= v / (t * (t + v));
    return s;
  };
  const Real lo = omega * (1 - 1e-15L), hi = omega / kLn2 * (1 + 1e-15L);
  return detail::decreasing_root(H, dH, lo, hi, 1e-18L, "solve_c");
}

namespace {

Real t_given_c(std::span<const Real> x, Real c) {
  Real t = 0;
  for (Real v : x) t += v / (c + v);
  return t;
}

}  // namespace

Real t_of(std::span<const Real> x) { return t_given_c(x, solve_c(x)); }

Real grad_c(std::span<const Real> x, std::size_t i) {
  if (i >= x.size()) throw PreconditionError("grad_c: index out of range");
  Real c = solve_c(x);
  return c / (t_given_c(x, c) * (c + x[i]));
}

Real f_of(std::span<const Real> x) {
  check_entries(x);
  bool any = false;
  for (Real v : x) any = any || v > 0;
  if (!any) return 0;
  Real c = solve_c(x);
  Real f = 0;
  for (Real v : x)
    if (v > 0) f += v * std::log1p(c / v);
  return f;
}

Real grad_f(std::span<const Real> x, std::size_t i) {
  if (i >= x.size()) throw PreconditionError("grad_f: index out of range");
  if (!(x[i] > 0)) throw DomainError("grad_f: coordinate is zero");
  Real c = solve_c(x);
  return std::log1p(c / x[i]);
}

Real hessian_form(std::span<const Real> x, std::span<const Real> h) {
  if (x.size() != h.size()) throw PreconditionError("hessian_form: x and h differ in length");
  for (Real v : x)
    if (!(v > 0)) throw DomainError("hessian_form: x must be strictly positive");
  Real c = solve_c(x);
  Real T = t_given_c(x, c);
  Real linear = 0, diag = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    linear += h[i] / (c + x[i]);
    diag += c * h[i] * h[i] / (x[i] * (c + x[i]));
  }
  return c / T * linear * linear - diag;
}

Real log_stirling_s(Real x) {
  if (!(x >= 0)) throw DomainError("stirling_s: x must be non-negative");
  if (x == 0) return 0;
  return std::lgamma(x + 1) - x * std::log(x) + x;
}

Real stirling_s(Real x) { return std::exp(log_stirling_s(x)); }

Real EvansEstimate::estimate() const { return std::exp(log_estimate); }

EvansEstimate evans_estimate(std::span<const Real> x) {
  EvansEstimate e;
  e.c = solve_c(x);
  e.T = t_given_c(x, e.c);
  e.F = 0;
  Real omega = 0, log_s = 0, direct = 0;
  for (Real v : x) {
    if (v == 0) continue;
    omega += v;
    e.F += v * std::log1p(e.c / v);
    log_s += log_stirling_s(v);
    direct += v * std::log(e.c + v) - std::lgamma(v + 1);
  }
  const Real log_2sqrt2 = 1.5L * kLn2;
  e.log_A = e.F - log_s - log_2sqrt2;
  e.log_A_direct = direct - omega - log_2sqrt2;
  e.B = std::sqrt(2 * e.c / e.T);
  e.log_estimate = 0.5L * std::log(kPi) + e.log_A + std::log(e.B);
  return e;
}

Real log_of(const BigCount& value) {
  if (value <= 0) throw DomainError("log of a non-positive count");
  long exp2 = 0;
  double mant = mpz_get_d_2exp(&exp2, value.get_mpz_t());
  return std::log(static_cast<Real>(mant)) + exp2 * kLn2;
}

Real evans_ratio(const PrimeSignature& sig) {
  if (sig.empty()) throw DomainError("evans_ratio: empty signature");
  auto x = sig.as_reals();
  return std::exp(log_of(kalmar_macmahon(sig)) - evans_estimate(x).log_estimate);
}

bool RatioRow::extremes_as_expected() const {
  return argmin == PrimeSignature::canonical({Omega}) &&
         argmax == PrimeSignature::canonical(std::vector<unsigned>(Omega, 1u));
}

std::vector<RatioRow> ratio_scan(unsigned omega_max, std::size_t capacity) {
  if (omega_max == 0) throw PreconditionError("ratio_scan: omega_max must be >= 1");
  std::vector<RatioRow> rows;
  for (unsigned r = 1; r <= omega_max; ++r) {
    auto sigs = signatures_with_Omega(r);
    if (sigs.size() > capacity)
      throw ResourceError("ratio_scan: " + std::to_string(sigs.size()) + " signatures at Omega = " +
                          std::to_string(r) + " exceed capacity");
    RatioRow row;
    row.Omega = r;
    row.signatures = sigs.size();
    bool first = true;
    for (const auto& s : sigs) {
      Real q = evans_ratio(s);
      if (first || q < row.min_ratio) {
        row.min_ratio = q;
        row.argmin = s;
      }
      if (first || q > row.max_ratio) {
        row.max_ratio = q;
        row.argmax = s;
      }
      first = false;
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace kalmar
