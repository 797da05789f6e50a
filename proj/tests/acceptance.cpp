// Acceptance runner. One PASS/FAIL line per criterion; tolerances are fixed
// here. Usage: kalmar_acceptance [--criterion N]...   (N in 1..9, 3a, 3b)

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "cli/cli.hpp"
#include "kalmar/champions.hpp"
#include "kalmar/constants.hpp"
#include "kalmar/evans.hpp"
#include "kalmar/exact.hpp"
#include "kalmar/optimizer.hpp"
#include "kalmar/primes.hpp"
#include "kalmar/table.hpp"
#include "oracles.hpp"

using namespace kalmar;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = true;
  std::ostringstream detail;
  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << "[miss] " << what << "; ";
    }
  }
  void note(const std::string& what) { detail << what << "; "; }
};

std::string fmt(long double v, int digits = 12) { return format_real(v, digits); }

// ---- published champion table: i, N, K, signature, K's factorization ----

struct TableRow {
  int i;
  const char* N;
  const char* K;
  const char* sig;
  const char* fact;
};

const TableRow kChampionTable[] = {
    {1, "1", "1", "[]", "1"},
    {2, "4", "2", "[2]", "2"},
    {3, "6", "3", "[1, 1]", "3"},
    {4, "8", "4", "[3]", "2^2"},
    {5, "12", "8", "[2, 1]", "2^3"},
    {6, "24", "20", "[3, 1]", "$2^3 \\times 5$"},
    {7, "36", "26", "[2, 2]", "2×13"},
    {8, "48", "48", "[4, 1]", "$2^3 \\times 3$"},
    {9, "72", "76", "[3, 2]", "$2^2 \\times 19$"},
    {10, "96", "112", "[5, 1]", "$2^4 \\times 7$"},
    {11, "120", "132", "[3, 1, 1]", "$2^2 \\times 3 \\times 11$"},
    {12, "144", "208", "[4, 2]", "$2^4 \\times 13$"},
    {13, "192", "256", "[6, 1]", "2^8"},
    {14, "240", "368", "[4, 1, 1]", "$2^4 \\times 23$"},
    {15, "288", "544", "[5, 2]", "$2^5 \\times 17$"},
    {16, "360", "604", "[3, 2, 1]", "$2^2 \\times 151$"},
    {17, "432", "768", "[4, 3]", "$2^8 \\times 3$"},
    {18, "480", "976", "[5, 1, 1]", "$2^4 \\times 61$"},
    {19, "576", "1376", "[6, 2]", "$2^5 \\times 43$"},
    {20, "720", "1888", "[4, 2, 1]", "$2^5 \\times 59$"},
    {21, "864", "2208", "[5, 3]", "$2^5 \\times 3 \\times 23$"},
    {22, "960", "2496", "[6, 1, 1]", "$2^6 \\times 3 \\times 13$"},
    {23, "1152", "3392", "[7, 2]", "$2^6 \\times 53$"},
    {24, "1440", "5536", "[5, 2, 1]", "$2^5 \\times 173$"},
    {25, "1728", "6080", "[6, 3]", "$2^6 \\times 5 \\times 19$"},
    {26, "1920", "6208", "[7, 1, 1]", "$2^6 \\times 97$"},
    {27, "2160", "7968", "[4, 3, 1]", "$2^5 \\times 3 \\times 83$"},
    {28, "2304", "8192", "[8, 2]", "2^{13}"},
    {29, "2880", "15488", "[6, 2, 1]", "$2^7 \\times 11^2$"},
    {30, "3456", "16192", "[7, 3]", "$2^6 \\times 11 \\times 23$"},
    {31, "4320", "25440", "[5, 3, 1]", "$2^5 \\times 3 \\times 53$"},
    {32, "5760", "41792", "[7, 2, 1]", "$2^6 \\times 653$"},
    {33, "6912", "41984", "[8, 3]", "$2^{10} \\times 41$"},
    {34, "8640", "76864", "[6, 3, 1]", "$2^6 \\times 1201$"},
    {35, "11520", "109568", "[8, 2, 1]", "$2^{10} \\times 107$"},
    {36, "17280", "222528", "[7, 3, 1]", "$2^6 \\times 3 \\times 19 \\times 61$"},
    {37, "23040", "280576", "[9, 2, 1]", "$2^{11} \\times 137$"},
    {38, "25920", "331776", "[6, 4, 1]", "$2^{12} \\times 3^4$"},
    {39, "30240", "333984", "[5, 3, 1, 1]", "$2^5 \\times 3 \\times 7^2 \\times 71$"},
    {40, "34560", "622592", "[8, 3, 1]", "$2^{15} \\times 19$"},
};

// "$2^{10} \times 41$" -> "2^10 x 41"
std::string normalize_factorization(std::string s) {
  auto replace_all = [&](const std::string& from, const std::string& to) {
    for (std::size_t p = 0; (p = s.find(from, p)) != std::string::npos; p += to.size()) s.replace(p, from.size(), to);
  };
  replace_all("\\times", " x ");
  replace_all("×", " x ");
  std::string out;
  for (char ch : s)
    if (ch != '$' && ch != '{' && ch != '}') out += ch;
  std::string squeezed;
  for (char ch : out)
    if (!(ch == ' ' && (squeezed.empty() || squeezed.back() == ' '))) squeezed += ch;
  while (!squeezed.empty() && squeezed.back() == ' ') squeezed.pop_back();
  return squeezed;
}

BigCount product_of(const std::string& normalized) {
  BigCount prod = 1;
  std::stringstream ss(normalized);
  for (std::string tok; ss >> tok;) {
    if (tok == "x") continue;
    auto caret = tok.find('^');
    BigCount base(tok.substr(0, caret));
    unsigned long e = caret == std::string::npos ? 1 : std::stoul(tok.substr(caret + 1));
    BigCount p;
    mpz_pow_ui(p.get_mpz_t(), base.get_mpz_t(), e);
    prod *= p;
  }
  return prod;
}

std::string strip_spaces(std::string s) {
  std::string out;
  for (char ch : s)
    if (ch != ' ') out += ch;
  return out;
}

void criterion_1(Outcome& o) {
  std::ostringstream out, err;
  auto t0 = Clock::now();
  int code = cli::run_cli({"--format", "csv", "champions", "--x", "34560", "--table", "fig2"}, out, err);
  double secs = std::chrono::duration<double>(Clock::now() - t0).count();
  o.require(code == 0, "exit code " + std::to_string(code));
  Table t = parse_csv(out.str());
  o.require(t.rows.size() == 40, "row count " + std::to_string(t.rows.size()));
  std::vector<int> typo_rows;
  std::size_t exact = 0;
  for (std::size_t r = 0; r < std::min<std::size_t>(40, t.rows.size()); ++r) {
    const auto& got = t.rows[r];
    const auto& want = kChampionTable[r];
    bool cols = got.size() == 5 && got[0] == std::to_string(want.i) && got[1] == want.N && got[2] == want.K &&
                got[3] == strip_spaces(want.sig);
    o.require(cols, "row " + std::to_string(want.i) + " (i, N, K, signature)");
    if (!cols) continue;
    std::string printed = normalize_factorization(want.fact);
    BigCount K(want.K);
    o.require(product_of(got[4]) == K, "row " + std::to_string(want.i) + " factorization does not multiply to K");
    if (got[4] == printed) {
      ++exact;
    } else if (product_of(printed) != K) {
      typo_rows.push_back(want.i);  // the printed factorization contradicts the printed K
    } else {
      o.require(false, "row " + std::to_string(want.i) + " factorization " + got[4] + " vs " + printed);
    }
  }
  o.note(std::to_string(exact) + "/40 factorization strings identical");
  if (!typo_rows.empty()) {
    std::string rows;
    for (int r : typo_rows) rows += (rows.empty() ? "" : ",") + std::to_string(r);
    o.note("printed factorization inconsistent with printed K at rows " + rows);
  }
  o.require(secs < 5, "runtime " + fmt(secs, 3) + " s >= 5 s");
  o.note("runtime " + fmt(secs, 3) + " s");
}

void criterion_2(Outcome& o) {
  const BigCount X("557940830126698960967415390");
  auto t0 = Clock::now();
  EnumerationOptions opts;
  auto cands = enumerate_candidates(X, opts);
  auto champs = champions_from(cands);
  Census c = census(cands, champs, X);
  double secs = std::chrono::duration<double>(Clock::now() - t0).count();
  o.require(c.interior_candidates == 340884, "candidates with 1 < N < X = " + std::to_string(c.interior_candidates));
  o.require(c.Q == 761, "champions = " + std::to_string(c.Q));
  o.require(c.alpha_gt1_count == 111, "alpha_k > 1 count = " + std::to_string(c.alpha_gt1_count));
  bool largest = c.largest_alpha_gt1 && c.largest_alpha_gt1->candidate.value == BigCount("485432135516160000") &&
                 c.largest_alpha_gt1->rank == 390 &&
                 c.largest_alpha_gt1->candidate.signature == PrimeSignature{28, 10, 4, 2};
  o.require(largest, "largest alpha_k > 1 champion");
  o.require(verify_champion_laws(champs).ok(), "champion laws");
  o.note("enumerated " + std::to_string(c.candidates) + " (N = 1 and N = X included), " +
         std::to_string(c.interior_candidates) + " with 1 < N < X; Q = " + std::to_string(c.Q) +
         "; alpha_k>1 = " + std::to_string(c.alpha_gt1_count) + "; runtime " + fmt(secs, 3) + " s");
}

struct Printed {
  std::string name;
  long double got, want, tol;
};

std::vector<Printed> constants_checks(bool include_b_T0, bool only_b_T0) {
  const auto& c = model_constants();
  std::vector<Printed> v;
  if (!only_b_T0) {
    v.push_back({"rho", c.rho, 1.728647238998L, 5e-13L});
    v.push_back({"a", c.a, 1.100020011L, 1e-9L});
    // truncated-constant table, one unit of the last printed decimal
    const std::size_t ks[] = {1, 2, 3, 10, 100, 1000};
    const long double rho_k[] = {1.00000L, 1.43527L, 1.56603L, 1.69972L, 1.72658L, 1.72843L};
    const long double a_k[] = {1.44269L, 1.44336L, 1.36287L, 1.19244L, 1.11279L, 1.10196L};
    for (int i = 0; i < 6; ++i) {
      auto t = truncated_constants(ks[i]);
      v.push_back({"rho_" + std::to_string(ks[i]), t.rho_k, rho_k[i], 1e-5L});
      v.push_back({"a_" + std::to_string(ks[i]), t.a_k, a_k[i], 1e-5L});
    }
    v.push_back({"rho_inf", c.rho, 1.72864L, 1e-5L});
    v.push_back({"a_inf", c.a, 1.1000200L, 1e-7L});
    v.push_back({"B0", c.B0, 1.883L, 1e-3L});
    v.push_back({"delta", c.delta, 0.789243L, 1e-6L});
    v.push_back({"kappa_max", c.kappa_max, 1.82L, 0.01L});
    v.push_back({"gap_coefficient", c.gap_coefficient, 1.509L, 0.001L});
  }
  if (include_b_T0) {
    v.push_back({"b", c.b, 0.8612985L, 1e-6L});
    v.push_back({"T0", c.T0, 0.62035L, 1e-5L});
  }
  return v;
}

void run_constants(Outcome& o, bool include_b_T0, bool only_b_T0) {
  auto t0 = Clock::now();
  auto checks = constants_checks(include_b_T0, only_b_T0);
  double secs = std::chrono::duration<double>(Clock::now() - t0).count();
  std::size_t ok = 0;
  for (const auto& p : checks) {
    bool good = std::fabs(p.got - p.want) <= p.tol;
    ok += good;
    o.require(good, p.name + " = " + fmt(p.got, 13) + " vs " + fmt(p.want, 13) + " +- " + fmt(p.tol, 2));
  }
  o.note(std::to_string(ok) + "/" + std::to_string(checks.size()) + " values within tolerance");
  if (!only_b_T0) {
    o.require(secs < 30, "runtime");
    o.note("runtime " + fmt(secs, 3) + " s");
  }
}

void criterion_4(Outcome& o) {
  auto t0 = Clock::now();
  std::size_t vectors = 0, distinct = 0, bad = 0;
  std::map<PrimeSignature, BigCount> seen;
  // every ordered exponent vector with total <= 12 (compositions), which
  // canonicalizes onto every signature with Omega <= 12
  std::function<void(std::vector<unsigned>&, unsigned)> walk = [&](std::vector<unsigned>& e, unsigned left) {
    ++vectors;
    PrimeSignature s = PrimeSignature::canonical(e);
    auto it = seen.find(s);
    if (it == seen.end()) {
      ++distinct;
      BigCount m = kalmar_macmahon(s);
      BigCount r = kalmar_recursive(s);
      unsigned Om = s.Omega();
      // smallest admissible truncation, then a generous one
      unsigned R = std::max(Om, 1u);
      while (std::pow((R + 2.0L) / (R + 1.0L), static_cast<long double>(Om)) / 2 >= 1) ++R;
      bool contained = kalmar_series_bounds(s, R).contains(m) && kalmar_series_bounds(s, 4 * R + 16).contains(m);
      if (m != r || !contained) {
        ++bad;
        o.require(false, "disagreement at " + s.to_string());
      }
      it = seen.emplace(s, m).first;
    }
    if (kalmar_macmahon(PrimeSignature::canonical(e)) != it->second) {
      ++bad;
      o.require(false, "order dependence at " + s.to_string());
    }
    for (unsigned a = 1; a <= left; ++a) {
      e.push_back(a);
      walk(e, left - a);
      e.pop_back();
    }
  };
  std::vector<unsigned> e;
  walk(e, 12);
  double secs = std::chrono::duration<double>(Clock::now() - t0).count();
  o.require(distinct == 272, "distinct signatures " + std::to_string(distinct));
  o.require(secs < 60, "runtime");
  o.note(std::to_string(vectors) + " exponent vectors, " + std::to_string(distinct) + " signatures, " +
         std::to_string(bad) + " disagreements; runtime " + fmt(secs, 3) + " s");
}

void criterion_5(Outcome& o) {
  const std::size_t X = 10'000;
  auto champs = find_champions(BigCount(X));
  auto K = testing::brute_kalmar(X);
  std::vector<std::uint64_t> brute;
  BigCount best = 0;
  for (std::size_t n = 1; n <= X; ++n)
    if (K[n] > best) {
      best = K[n];
      brute.push_back(n);
    }
  std::vector<std::uint64_t> got;
  for (const auto& r : champs) got.push_back(r.candidate.value.get_ui());
  o.require(got == brute, "champion lists differ");
  bool k_match = true;
  for (const auto& r : champs) k_match = k_match && r.candidate.k_value == K[r.candidate.value.get_ui()];
  o.require(k_match, "K values differ");
  o.note(std::to_string(got.size()) + " champions from enumeration, " + std::to_string(brute.size()) +
         " from brute force over n <= 10^4");
}

void criterion_6(Outcome& o) {
  auto rows = ratio_scan(12);
  o.require(rows.size() == 12, "rows");
  for (const auto& r : rows) {
    bool ok = r.argmin == PrimeSignature{r.Omega} &&
              r.argmax == PrimeSignature::canonical(std::vector<unsigned>(r.Omega, 1));
    o.require(ok, "extremes at Omega = " + std::to_string(r.Omega) + ": min " + r.argmin.to_string() + ", max " +
                      r.argmax.to_string());
  }
  long double r1 = evans_ratio(PrimeSignature{1});
  long double analytic = std::exp(1.0L) / std::sqrt(2 * std::numbers::pi_v<long double>);
  o.require(std::fabs(r1 - 1.084437552L) <= 1e-8L, "ratio(1) = " + fmt(r1, 13));
  o.require(std::fabs(r1 - analytic) <= 1e-15L, "ratio(1) vs e/sqrt(2 pi)");
  o.note("ratio(1) = " + fmt(r1, 13) + ", e/sqrt(2 pi) = " + fmt(analytic, 13) + "; Omega 1..12 extremes checked");
}

void criterion_7(Outcome& o) {
  const std::size_t N = 100'000, M = 2000;
  const long double rho = model_constants().rho;
  // K up to M^2 as machine integers (K(n) < n^rho / 2 < 2^63 here)
  std::vector<std::uint64_t> K(M * M + 1, 0);
  K[1] = 1;
  for (std::size_t d = 1; d <= M * M; ++d)
    for (std::size_t m = 2 * d; m <= M * M; m += d) K[m] += K[d];
  KalmarMemo memo;
  std::size_t sieve_mismatch = 0;
  for (std::size_t n = 1; n <= 2 * N; ++n)
    if (memo.get(PrimeSignature::of(n)) != K[n]) ++sieve_mismatch;
  o.require(sieve_mismatch == 0, "library K differs from divisor sieve");

  std::size_t v_kl = 0, v_double = 0, v_super = 0, v_log = 0, pairs = 0;
  for (std::size_t n = 2; n <= N; ++n) {
    long double logK = std::log(static_cast<long double>(K[n])), logn = std::log(static_cast<long double>(n));
    if (logK > rho * logn - std::log(2.0L)) ++v_kl;
    if (!(K[2 * n] > K[n])) ++v_double;
    if (logK > rho * logn) ++v_log;
  }
  for (std::size_t n = 2; n <= M; ++n)
    for (std::size_t m = n; m <= M; ++m) {
      ++pairs;
      if (K[n * m] < 2 * K[n] * K[m]) ++v_super;
    }
  o.require(v_kl == 0, "K(n) <= n^rho/2 violations " + std::to_string(v_kl));
  o.require(v_double == 0, "K(2n) > K(n) violations " + std::to_string(v_double));
  o.require(v_super == 0, "supermultiplicativity violations " + std::to_string(v_super));
  o.require(v_log == 0, "log K <= rho log n violations " + std::to_string(v_log));

  // Sandwich: constants fitted on n <= 10^4, checked on every n <= 10^5.
  SandwichFit fit = fit_sandwich(BigCount(10'000));
  std::size_t v_lower = 0, v_upper = 0, v_F = 0;
  std::map<std::size_t, long double> rho_k;
  std::string first_bad;
  for (std::size_t n = 2; n <= N; ++n) {
    PrimeSignature s = PrimeSignature::of(n);
    RealVector alpha = s.as_reals();
    auto cores = sandwich_cores(alpha);
    long double logK = std::log(static_cast<long double>(K[n]));
    if (logK < std::log(fit.C3) + cores.log_lower - 1e-12L) {
      if (!v_lower++) first_bad = "lower at n=" + std::to_string(n);
    }
    if (logK > std::log(fit.C4) + cores.log_upper + 1e-12L) {
      if (!v_upper++) first_bad = "upper at n=" + std::to_string(n);
    }
    auto k = s.omega();
    auto it = rho_k.find(k);
    if (it == rho_k.end()) it = rho_k.emplace(k, solve_rho(k)).first;
    if (f_of(alpha) > it->second * std::log(static_cast<long double>(n)) * (1 + 1e-15L)) ++v_F;
  }
  o.require(v_lower == 0 && v_upper == 0, "sandwich violations " + std::to_string(v_lower) + " lower, " +
                                              std::to_string(v_upper) + " upper (" + first_bad + ")");
  o.require(v_F == 0, "F(alpha) <= rho_k log n violations " + std::to_string(v_F));
  o.note("C3 = " + fmt(fit.C3, 6) + " at " + fit.argC3.to_string() + ", C4 = " + fmt(fit.C4, 6) + " at " +
         fit.argC4.to_string() + " (fit n <= 10^4, checked n <= 10^5); " + std::to_string(pairs) +
         " supermultiplicative pairs");
}

RealVector random_point(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0, 1);
  RealVector x(1 + rng() % 12);
  for (Real& v : x) v = std::pow(10.0L, static_cast<Real>(4 * u(rng) - 1.5));
  return x;
}

void criterion_8(Outcome& o) {
  auto t0 = Clock::now();
  std::mt19937_64 rng(20240607);
  std::normal_distribution<double> g(0, 1);
  std::size_t grad_bad = 0, grad_checks = 0, hess_bad = 0, lip_bad = 0, bracket_bad = 0, evals = 0;
  long double worst_grad = 0, worst_hess = -1e300L;

  auto bracket = [&](const RealVector& x) {
    ++evals;
    long double Om = 0;
    for (Real v : x) Om += v;
    long double c = solve_c(x), T = t_of(x), B = std::sqrt(2 * c / T);
    const long double e = 1e-15L;
    bool ok = c >= Om * (1 - e) && c <= Om / std::log(2.0L) * (1 + e) && T >= 0.5L * (1 - e) && T <= 1 + e &&
              B >= std::sqrt(2 * c) * (1 - e) && B <= 2 * std::sqrt(c) * (1 + e);
    if (!ok) ++bracket_bad;
    return std::pair{c, T};
  };

  for (int t = 0; t < 1000; ++t) {
    auto x = random_point(rng);
    bracket(x);
    for (std::size_t i = 0; i < x.size(); ++i) {
      long double h = 1e-5L * x[i];
      RealVector up = x, dn = x;
      up[i] += h;
      dn[i] -= h;
      long double fd_c = (bracket(up).first - bracket(dn).first) / (2 * h);
      long double fd_f = (f_of(up) - f_of(dn)) / (2 * h);
      long double ec = std::fabs(grad_c(x, i) / fd_c - 1), ef = std::fabs(grad_f(x, i) / fd_f - 1);
      worst_grad = std::max({worst_grad, ec, ef});
      grad_checks += 2;
      if (ec > 1e-6L) ++grad_bad;
      if (ef > 1e-6L) ++grad_bad;
    }
  }
  for (int t = 0; t < 10'000; ++t) {
    auto x = random_point(rng);
    RealVector h(x.size());
    for (Real& v : h) v = g(rng);
    long double q = hessian_form(x, h);
    worst_hess = std::max(worst_hess, q);
    if (q > 1e-12L) ++hess_bad;
  }
  for (int t = 0; t < 10'000; ++t) {
    auto x = random_point(rng), y = random_point(rng);
    auto [cx, Tx] = bracket(x);
    auto [cy, Ty] = bracket(y);
    std::size_t n = std::max(x.size(), y.size());
    long double d = 0, Ox = 0, Oy = 0;
    for (std::size_t i = 0; i < n; ++i) {
      long double a = i < x.size() ? x[i] : 0, b = i < y.size() ? y[i] : 0;
      d += std::fabs(a - b);
      Ox += a;
      Oy += b;
    }
    if (std::fabs(cx - cy) > 2 * d * (1 + 1e-14L)) ++lip_bad;
    if (std::fabs(Tx - Ty) > 3 / std::max(Ox, Oy) * d * (1 + 1e-14L) + 1e-17L) ++lip_bad;
  }
  double secs = std::chrono::duration<double>(Clock::now() - t0).count();
  o.require(grad_bad == 0, "gradient mismatches " + std::to_string(grad_bad));
  o.require(hess_bad == 0, "Hessian form above 1e-12: " + std::to_string(hess_bad));
  o.require(lip_bad == 0, "Lipschitz violations " + std::to_string(lip_bad));
  o.require(bracket_bad == 0, "bracket violations " + std::to_string(bracket_bad));
  o.require(secs < 60, "runtime");
  o.note(std::to_string(grad_checks) + " gradient checks (worst rel " + fmt(worst_grad, 3) + "), 10^4 Hessian pairs (max " +
         fmt(worst_hess, 3) + "), 10^4 Lipschitz pairs, " + std::to_string(evals) + " bracket evaluations; runtime " +
         fmt(secs, 3) + " s");
}

void criterion_9(Outcome& o) {
  long double worst = 0;
  for (std::size_t k : {1, 2, 3, 10, 100, 1000})
    for (long double A : {1.0L, 10.0L, 1e3L, 1e6L}) {
      auto p = optimum(k, A);
      worst = std::max(worst, p.residuals.max());
      o.require(p.residuals.max() <= 1e-8L, "residual at k=" + std::to_string(k) + " A=" + fmt(A, 3));
    }

  std::mt19937_64 rng(99);
  std::exponential_distribution<double> ex(1);
  std::uniform_real_distribution<double> u(0, 1);
  std::size_t deficit_bad = 0;
  long double min_slack = 1e300L;
  for (int t = 0; t < 10'000; ++t) {
    std::size_t k = 2 + rng() % 30;
    long double A = std::pow(10.0L, static_cast<long double>(4 * u(rng)));
    RealVector alpha(k);
    long double s = 0;
    for (Real& v : alpha) s += (v = ex(rng) + 1e-9);
    long double fill = std::pow(static_cast<long double>(u(rng)), 1.0L / k);
    for (std::size_t i = 0; i < k; ++i)
      alpha[i] = alpha[i] / s * fill * A / std::log(static_cast<long double>(nth_prime(i + 1)));
    auto r = deficit_check(alpha, k, A);
    long double rel = r.slack / (1 + r.F_star);
    min_slack = std::min(min_slack, rel);
    if (rel < -1e-12L) ++deficit_bad;
  }
  o.require(deficit_bad == 0, "deficit bound violations " + std::to_string(deficit_bad));

  std::size_t witness_bad = 0, sweep = 0;
  for (int L = 50; L <= 1000; ++L) {
    ++sweep;
    auto w = witness_m(static_cast<long double>(L));
    bool ok = w.ratio_n_over_m >= 1 - 1e-12L && w.ratio_n_over_m < 2;
    // m = m0 d with m0 = prod p_i^floor(x_i*) and d squarefree on p_1..p_k
    BigCount m0 = 1, d = w.divisor;
    for (std::size_t i = 0; i < w.k; ++i) {
      auto fl = static_cast<unsigned>(std::floor(w.x_star[i]));
      unsigned long p = nth_prime(i + 1);
      bool divides = mpz_divisible_ui_p(d.get_mpz_t(), p);
      ok = ok && w.exponents[i] == fl + (divides ? 1 : 0);
      BigCount pk;
      mpz_ui_pow_ui(pk.get_mpz_t(), p, fl);
      m0 *= pk;
    }
    // d is the largest product of distinct p_i not above n / m0
    long double room = std::exp(static_cast<long double>(L) - log_of(m0));
    std::vector<BigCount> divisors{1};
    for (std::size_t i = 1; i <= w.k; ++i) {
      std::size_t n = divisors.size();
      for (std::size_t j = 0; j < n; ++j) divisors.push_back(divisors[j] * static_cast<unsigned long>(nth_prime(i)));
    }
    BigCount best = 0;
    for (const auto& q : divisors)
      if (static_cast<long double>(q.get_d()) <= room * (1 + 1e-15L) && q > best) best = q;
    ok = ok && best == d;
    if (!ok) {
      ++witness_bad;
      o.require(false, "witness at log n = " + std::to_string(L));
    }
  }
  o.note("worst residual " + fmt(worst, 3) + "; 10^4 deficit points, min relative slack " + fmt(min_slack, 3) + "; " +
         std::to_string(sweep) + " witnesses for log n = 50..1000, " + std::to_string(witness_bad) + " bad");
}

struct Criterion {
  std::string id;
  std::string title;
  std::function<void(Outcome&)> run;
};

}  // namespace

int main(int argc, char** argv) {
  std::vector<Criterion> all = {
      {"1", "ranked champion table", criterion_1},
      {"2", "full census to X = 71#", criterion_2},
      {"3", "constants", [](Outcome& o) { run_constants(o, true, false); }},
      {"3a", "constants other than b and T0", [](Outcome& o) { run_constants(o, false, false); }},
      {"3b", "printed b and T0", [](Outcome& o) { run_constants(o, true, true); }},
      {"4", "MacMahon = recursive, series bracket, Omega <= 12", criterion_4},
      {"5", "small-X champion oracle", criterion_5},
      {"6", "ratio extremes", criterion_6},
      {"7", "inequality suites", criterion_7},
      {"8", "analysis kernel", criterion_8},
      {"9", "optimizer identities", criterion_9},
  };

  std::vector<std::string> wanted;
  for (int i = 1; i < argc; ++i) {
    std::string a = argv[i];
    if (a == "--criterion" && i + 1 < argc) {
      wanted.push_back(argv[++i]);
    } else {
      std::fprintf(stderr, "usage: %s [--criterion ID]...\n", argv[0]);
      return 2;
    }
  }
  if (wanted.empty())
    for (const auto& c : all)
      if (c.id != "3a" && c.id != "3b") wanted.push_back(c.id);

  bool all_pass = true;
  for (const auto& id : wanted) {
    const Criterion* c = nullptr;
    for (const auto& x : all)
      if (x.id == id) c = &x;
    if (!c) {
      std::fprintf(stderr, "unknown criterion %s\n", id.c_str());
      return 2;
    }
    Outcome o;
    try {
      c->run(o);
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail << "exception: " << e.what();
    }
    all_pass = all_pass && o.pass;
    std::printf("criterion %-2s %s  %s: %s\n", c->id.c_str(), o.pass ? "PASS" : "FAIL", c->title.c_str(),
                o.detail.str().c_str());
    std::fflush(stdout);
  }
  return all_pass ? 0 : 1;
}
