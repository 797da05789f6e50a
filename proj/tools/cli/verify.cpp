#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <sstream>

#include "cli.hpp"
#include "kalmar/champions.hpp"
#include "kalmar/constants.hpp"
#include "kalmar/errors.hpp"
#include "kalmar/evans.hpp"
#include "kalmar/exact.hpp"
#include "kalmar/optimizer.hpp"

namespace kalmar::cli {
namespace {

// K[n] for n <= N by K[m] += K[d] over proper divisors d of m.
std::vector<BigCount> sieve_k(std::size_t N) {
  std::vector<BigCount> K(N + 1, 0);
  K[1] = 1;
  for (std::size_t d = 1; d <= N; ++d)
    for (std::size_t m = 2 * d; m <= N; m += d) K[m] += K[d];
  return K;
}

CheckResult check(std::string name, const std::function<std::string()>& body) {
  CheckResult r{std::move(name), false, {}};
  try {
    r.detail = body();
    r.passed = r.detail.rfind("ok", 0) == 0;
  } catch (const std::exception& e) {
    r.detail = std::string("exception: ") + e.what();
  }
  return r;
}

std::string count_line(std::size_t checked, std::size_t bad, const std::string& first_bad) {
  std::ostringstream s;
  s << (bad ? "violations " : "ok ") << bad << "/" << checked;
  if (bad) s << " first " << first_bad;
  return s.str();
}

}  // namespace

std::vector<CheckResult> run_invariant_suite(const RunConfig& config) {
  std::vector<CheckResult> out;
  const std::size_t N = 10'000;
  const std::vector<BigCount> K = sieve_k(N);

  out.push_back(check("methods_agree_Omega_le_8", [] {
    std::size_t n = 0, bad = 0;
    std::string first;
    for (unsigned r = 0; r <= 8; ++r)
      for (const PrimeSignature& s : signatures_with_Omega(r)) {
        ++n;
        BigCount m = kalmar_macmahon(s);
        if (m != kalmar_recursive(s) || !kalmar_series_bounds(s, std::max(2 * r + 8, 16u)).contains(m)) {
          if (!bad++) first = s.to_string();
        }
      }
    return count_line(n, bad, first);
  }));

  out.push_back(check("divisor_sieve_matches", [&] {
    std::size_t bad = 0;
    std::string first;
    for (std::size_t n = 1; n <= N; ++n)
      if (kalmar_macmahon(PrimeSignature::of(n)) != K[n] && !bad++) first = std::to_string(n);
    return count_line(N, bad, first);
  }));

  const Real rho = model_constants().rho;
  out.push_back(check("K_n_le_n_rho_over_2", [&] {
    std::size_t bad = 0;
    std::string first;
    for (std::size_t n = 2; n <= N; ++n)
      if (log_of(K[n]) > rho * std::log(static_cast<Real>(n)) - std::log(2.0L) + 1e-15L && !bad++)
        first = std::to_string(n);
    return count_line(N - 1, bad, first);
  }));

  out.push_back(check("doubling", [&] {
    std::size_t bad = 0;
    std::string first;
    for (std::size_t n = 2; 2 * n <= N; ++n)
      if (!(K[2 * n] > K[n]) && !bad++) first = std::to_string(n);
    return count_line(N / 2 - 1, bad, first);
  }));

  out.push_back(check("supermultiplicative", [&] {
    std::size_t bad = 0, checked = 0;
    std::string first;
    for (std::size_t n = 2; n <= 100; ++n)
      for (std::size_t m = 2; n * m <= N; ++m) {
        ++checked;
        if (K[n * m] < 2 * K[n] * K[m] && !bad++) first = std::to_string(n) + "*" + std::to_string(m);
      }
    return count_line(checked, bad, first);
  }));

  out.push_back(check("eulerian_checksum", [] {
    std::size_t bad = 0;
    std::string first;
    for (unsigned n = 1; n <= 30; ++n)
      if (!eulerian_checksum(n).agree() && !bad++) first = std::to_string(n);
    return count_line(30, bad, first);
  }));

  out.push_back(check("ratio_extremes", [] {
    std::size_t bad = 0;
    std::string first;
    auto rows = ratio_scan(8);
    for (const RatioRow& r : rows)
      if (!r.extremes_as_expected() && !bad++) first = std::to_string(r.Omega);
    return count_line(rows.size(), bad, first);
  }));

  out.push_back(check("analysis_brackets", [] {
    std::mt19937_64 rng(20240601);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::size_t bad = 0, checked = 0;
    std::string first;
    for (int t = 0; t < 500; ++t) {
      std::size_t k = 1 + rng() % 12;
      RealVector x(k);
      for (Real& v : x) v = std::pow(10.0L, static_cast<Real>(4 * u(rng) - 2));
      Real Om = 0;
      for (Real v : x) Om += v;
      Real c = solve_c(x), T = t_of(x);
      Real B = std::sqrt(2 * c / T);
      const Real eps = 1e-12L;
      ++checked;
      bool ok = c >= Om * (1 - eps) && c <= Om / std::log(2.0L) * (1 + eps) && T >= 0.5L - eps && T <= 1 + eps &&
                B >= std::sqrt(2 * c) * (1 - eps) && B <= 2 * std::sqrt(c) * (1 + eps);
      if (!ok && !bad++) first = "trial " + std::to_string(t);
    }
    return count_line(checked, bad, first);
  }));

  out.push_back(check("optimizer_residuals", [] {
    std::size_t bad = 0, checked = 0;
    std::string first;
    for (std::size_t k : {1, 2, 3, 10})
      for (Real A : {1.0L, 10.0L, 1000.0L}) {
        ++checked;
        if (optimum(k, A).residuals.max() > 1e-8L && !bad++) first = "k=" + std::to_string(k);
      }
    return count_line(checked, bad, first);
  }));

  out.push_back(check("champions_small_x", [&] {
    EnumerationOptions opts;
    opts.workers = config.worker_count;
    auto champs = find_champions(BigCount(34560), opts);
    // Brute force over all n <= 34560 would need a bigger sieve; compare the
    // prefix up to N against the running maximum of the divisor sieve.
    std::vector<std::size_t> brute;
    BigCount best = 0;
    for (std::size_t n = 1; n <= N; ++n)
      if (K[n] > best) {
        best = K[n];
        brute.push_back(n);
      }
    std::vector<std::size_t> enumerated;
    for (const auto& r : champs)
      if (r.candidate.value <= N) enumerated.push_back(r.candidate.value.get_ui());
    LawReport laws = verify_champion_laws(champs);
    std::ostringstream s;
    bool ok = enumerated == brute && champs.size() == 40 && laws.ok();
    s << (ok ? "ok " : "mismatch ") << champs.size() << " champions; " << laws.violations.size() << " law violations";
    return s.str();
  }));

  out.push_back(check("truncated_constants_monotone", [] {
    std::size_t bad = 0;
    std::string first;
    Real prev = 0;
    const Real rho = model_constants().rho;
    for (std::size_t k = 1; k <= 200; ++k) {
      TruncatedConstants tc = truncated_constants(k);
      if (!(tc.rho_k > prev && tc.rho_k < rho) && !bad++) first = std::to_string(k);
      if (std::fabs(zeta_truncated(tc.rho_k, k) - 2) > 1e-12L && !bad++) first = "zeta_k at " + std::to_string(k);
      prev = tc.rho_k;
    }
    return count_line(200, bad, first);
  }));

  return out;
}

}  // namespace kalmar::cli
