#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <ostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "kalmar/champions.hpp"
#include "kalmar/constants.hpp"
#include "kalmar/errors.hpp"
#include "kalmar/evans.hpp"
#include "kalmar/exact.hpp"
#include "kalmar/optimizer.hpp"
#include "kalmar/primes.hpp"
#include "kalmar/table.hpp"

namespace kalmar::cli {
namespace {

// Accepts plain decimal integers and the shorthand <digits>e<digits>.
BigCount parse_integer(const std::string& text) {
  auto all_digits = [](const std::string& s) {
    return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char ch) { return std::isdigit(ch); });
  };
  auto e = text.find_first_of("eE");
  if (e == std::string::npos) {
    if (!all_digits(text)) throw PreconditionError("not a non-negative integer: " + text);
    return BigCount(text);
  }
  std::string mantissa = text.substr(0, e), exponent = text.substr(e + 1);
  if (!all_digits(mantissa) || !all_digits(exponent) || exponent.size() > 4)
    throw PreconditionError("not a non-negative integer: " + text);
  BigCount power;
  mpz_ui_pow_ui(power.get_mpz_t(), 10, std::stoul(exponent));
  return BigCount(mantissa) * power;
}

std::string big(const BigCount& v) { return v.get_str(); }

std::string bracketed_signature(const PrimeSignature& sig) {
  std::string s = "[";
  for (std::size_t i = 0; i < sig.omega(); ++i) {
    if (i) s += ", ";
    s += std::to_string(sig[i]);
  }
  return s + "]";
}

void emit(const Table& table, const RunConfig& config, std::ostream& out) {
  out << (config.output_format == OutputFormat::csv ? to_csv(table) : to_text(table));
}

struct Emitter {
  const RunConfig& config;
  std::ostream& out;
  bool first = true;
  void operator()(const Table& table) {
    if (!first) out << '\n';
    first = false;
    emit(table, config, out);
  }
};

// Series bracket at the first R (doubling) whose width isolates one integer.
std::optional<BigCount> series_value(const PrimeSignature& sig, std::optional<unsigned> R_flag,
                                     SeriesBounds& bounds) {
  const unsigned Omega = sig.Omega();
  unsigned R = R_flag ? *R_flag : std::max(2 * Omega + 8, 16u);
  for (;;) {
    bounds = kalmar_series_bounds(sig, R);
    if (R_flag || bounds.upper - bounds.lower < BigRational(1, 2)) break;
    R *= 2;
    if (R > 1u << 16) throw ResourceError("series bracket did not narrow below 1/2");
  }
  BigCount lo;
  mpz_cdiv_q(lo.get_mpz_t(), bounds.lower.get_num_mpz_t(), bounds.lower.get_den_mpz_t());
  BigCount hi;
  mpz_fdiv_q(hi.get_mpz_t(), bounds.upper.get_num_mpz_t(), bounds.upper.get_den_mpz_t());
  if (lo == hi) return lo;
  return std::nullopt;
}

PrimeSignature signature_of_integer(const BigCount& n) {
  if (n < 1) throw DomainError("n must be a positive integer");
  if (!n.fits_ulong_p()) throw PreconditionError("--n must be below 2^64; use --signature for larger n");
  return PrimeSignature::of(n.get_ui());
}

int run_k(const RunConfig& config, const std::string& n_text, const std::string& sig_text,
          const std::string& method, bool check, std::optional<unsigned> R, std::ostream& out,
          std::ostream& err) {
  if (n_text.empty() == sig_text.empty()) throw PreconditionError("k needs exactly one of --n or --signature");
  PrimeSignature sig = n_text.empty() ? PrimeSignature::parse(sig_text) : signature_of_integer(parse_integer(n_text));

  auto print = [&](const std::string& value) {
    if (config.output_format == OutputFormat::csv) {
      Table t{{"signature", "K"}, {}};
      t.add({sig.to_string(), value});
      emit(t, config, out);
    } else {
      out << value << '\n';
    }
  };

  if (check) {
    BigCount m = kalmar_macmahon(sig);
    BigCount r = kalmar_recursive(sig);
    SeriesBounds bounds;
    series_value(sig, R, bounds);
    bool ok = m == r && bounds.contains(m);
    if (!ok) {
      err << "k: methods disagree for " << sig.to_string() << ": macmahon=" << big(m) << " recursive=" << big(r)
          << " series=[" << bounds.lower.get_str() << ", " << bounds.upper.get_str() << "]\n";
      return kExitDomain;
    }
    print(big(m));
    err << "k: macmahon, recursive and series agree\n";
    return kExitOk;
  }

  if (method == "macmahon") {
    print(big(kalmar_macmahon(sig)));
  } else if (method == "recursive") {
    print(big(kalmar_recursive(sig)));
  } else {
    SeriesBounds bounds;
    if (auto v = series_value(sig, R, bounds)) {
      print(big(*v));
    } else {
      Table t{{"lower", "upper"}, {}};
      t.add({format_real(bounds.lower.get_d(), config.digits), format_real(bounds.upper.get_d(), config.digits)});
      emit(t, config, out);
    }
  }
  return kExitOk;
}

int run_constants(const RunConfig& config, const std::vector<std::size_t>& ks, std::ostream& out) {
  const ConstantsTable& c = model_constants();
  const int d = config.digits;
  Table t{{"name", "value"}, {}};
  t.add({"rho", format_real(c.rho, d)});
  t.add({"a", format_real(c.a, d)});
  t.add({"b", format_real(c.b, d)});
  t.add({"T0", format_real(c.T0, d)});
  t.add({"B0", format_real(c.B0, d)});
  t.add({"delta", format_real(c.delta, d)});
  t.add({"mu", format_real(c.mu, d)});
  t.add({"kappa_max", format_real(c.kappa_max, d)});
  t.add({"zeta_prime_rho", format_real(c.zeta_prime_rho, d)});
  t.add({"gap_coefficient", format_real(c.gap_coefficient, d)});
  t.add({"zeta_rho_residual", format_real(zeta(c.rho, false, config.precision).value - 2, 3)});

  PrimeTable primes(config.sieve_bound);
  PrimeSumCheck s = prime_sum_check(c.rho, c.a, primes);
  t.add({"sieve_bound", std::to_string(s.bound)});
  t.add({"inv_a_sieve", format_real(s.inv_a, d)});
  t.add({"b_sieve", format_real(s.b, d)});
  t.add({"T0_sieve", format_real(s.T0, d)});
  for (std::size_t k : ks) {
    TruncatedConstants tc = truncated_constants(k, primes);
    t.add({"rho_" + std::to_string(k), format_real(tc.rho_k, d)});
    t.add({"a_" + std::to_string(k), format_real(tc.a_k, d)});
  }
  emit(t, config, out);
  return kExitOk;
}

int run_approx(const RunConfig& config, const std::string& sig_text, std::ostream& out) {
  PrimeSignature sig = PrimeSignature::parse(sig_text);
  if (sig.empty()) throw DomainError("approx needs a non-empty signature");
  RealVector x = sig.as_reals();
  EvansEstimate e = evans_estimate(x);
  BigCount K = kalmar_recursive(sig);
  const int d = config.digits;
  Table t{{"name", "value"}, {}};
  t.add({"signature", sig.to_string()});
  t.add({"Omega", std::to_string(sig.Omega())});
  t.add({"c", format_real(e.c, d)});
  t.add({"T", format_real(e.T, d)});
  t.add({"F", format_real(e.F, d)});
  t.add({"log_A", format_real(e.log_A, d)});
  t.add({"B", format_real(e.B, d)});
  t.add({"estimate", format_real(e.estimate(), d)});
  t.add({"K", big(K)});
  t.add({"ratio", format_real(std::exp(log_of(K) - e.log_estimate), d)});
  emit(t, config, out);
  return kExitOk;
}

int run_ratio_scan(const RunConfig& config, unsigned omega_max, std::ostream& out) {
  Table t{{"Omega", "signatures", "min_ratio", "argmin", "max_ratio", "argmax"}, {}};
  for (const RatioRow& r : ratio_scan(omega_max)) {
    t.add({std::to_string(r.Omega), std::to_string(r.signatures), format_real(r.min_ratio, config.digits),
           r.argmin.to_string(), format_real(r.max_ratio, config.digits), r.argmax.to_string()});
  }
  emit(t, config, out);
  return kExitOk;
}

int run_optimum(const RunConfig& config, std::size_t k, Real A, std::ostream& out) {
  OptimumPoint o = optimum(k, A);
  const int d = config.digits;
  Table t{{"name", "value"}, {}};
  t.add({"k", std::to_string(o.k)});
  t.add({"A", format_real(o.A, d)});
  t.add({"rho_k", format_real(o.rho_k, d)});
  t.add({"a_k", format_real(o.a_k, d)});
  t.add({"c_star", format_real(o.c_star, d)});
  t.add({"F_star", format_real(o.F_star, d)});
  t.add({"residual_constraint", format_real(o.residuals.constraint, 3)});
  t.add({"residual_c", format_real(o.residuals.c, 3)});
  t.add({"residual_F", format_real(o.residuals.F, 3)});
  t.add({"residual_gradient", format_real(o.residuals.gradient, 3)});
  for (std::size_t i = 0; i < o.x_star.size(); ++i)
    t.add({"x_" + std::to_string(i + 1), format_real(o.x_star[i], d)});
  emit(t, config, out);
  return kExitOk;
}

// "50,100,200" or "start:stop:step".
std::vector<Real> parse_log_n_list(const std::string& text) {
  std::vector<Real> values;
  auto to_real = [&](const std::string& s) {
    std::size_t used = 0;
    Real v = std::stold(s, &used);
    if (used != s.size()) throw PreconditionError("bad number in --log-n: " + s);
    return v;
  };
  try {
    if (text.find(':') != std::string::npos) {
      std::vector<std::string> parts;
      std::stringstream ss(text);
      for (std::string p; std::getline(ss, p, ':');) parts.push_back(p);
      if (parts.size() != 3) throw PreconditionError("--log-n range is start:stop:step");
      Real start = to_real(parts[0]), stop = to_real(parts[1]), step = to_real(parts[2]);
      if (!(step > 0)) throw PreconditionError("--log-n range step must be positive");
      for (std::size_t i = 0;; ++i) {
        Real v = start + step * static_cast<Real>(i);
        if (v > stop * (1 + 1e-15L)) break;
        values.push_back(v);
      }
    } else {
      std::stringstream ss(text);
      for (std::string p; std::getline(ss, p, ',');) values.push_back(to_real(p));
    }
  } catch (const std::logic_error& e) {
    if (dynamic_cast<const PreconditionError*>(&e)) throw;
    throw PreconditionError("bad --log-n value: " + text);
  }
  if (values.empty()) throw PreconditionError("--log-n is empty");
  return values;
}

int run_witness(const RunConfig& config, const std::string& log_n_text, std::ostream& out) {
  const int d = config.digits;
  Table t{{"log_n", "k", "clamped", "kappa", "m_signature", "log_m", "n_over_m", "exact", "logK_lower",
           "c6_envelope"},
          {}};
  for (Real log_n : parse_log_n_list(log_n_text)) {
    WitnessResult w = witness_m(log_n, config.kappa);
    t.add({format_real(w.n_log, d), std::to_string(w.k), w.k_clamped ? "1" : "0", format_real(w.kappa, d),
           w.m_signature.to_string(), format_real(w.log_m, d), format_real(w.ratio_n_over_m, d), w.exact ? "1" : "0",
           format_real(w.logK_lower, d), format_real(w.c6_envelope, d)});
  }
  emit(t, config, out);
  return kExitOk;
}

int run_deficit(const RunConfig& config, const std::string& sig_text, Real A, std::size_t k, std::ostream& out) {
  PrimeSignature sig = PrimeSignature::parse(sig_text);
  if (sig.empty()) throw DomainError("deficit needs a non-empty signature");
  RealVector alpha = sig.as_reals();
  std::size_t kk = std::max(k, alpha.size());
  DeficitResult r = deficit_check(alpha, kk, A);
  const int d = config.digits;
  Table t{{"name", "value"}, {}};
  t.add({"signature", sig.to_string()});
  t.add({"k", std::to_string(kk)});
  t.add({"A", format_real(A, d)});
  t.add({"F_alpha", format_real(r.F_alpha, d)});
  t.add({"F_star", format_real(r.F_star, d)});
  t.add({"deficit", format_real(r.deficit, d)});
  t.add({"bound", format_real(r.bound, d)});
  t.add({"slack", format_real(r.slack, d)});
  t.add({"deficit_weak", format_real(r.deficit_weak, d)});
  t.add({"bound_weak", format_real(r.bound_weak, d)});
  t.add({"slack_weak", format_real(r.slack_weak, d)});
  emit(t, config, out);
  return kExitOk;
}

std::vector<Candidate> candidates_for(const RunConfig& config, const BigCount& X, std::ostream& err) {
  if (!config.cache_path.empty()) {
    if (auto cached = load_candidates(config.cache_path, X)) {
      err << "champions: loaded " << cached->size() << " candidates from " << config.cache_path << '\n';
      return std::move(*cached);
    }
  }
  EnumerationOptions opts;
  opts.workers = config.worker_count;
  std::vector<Candidate> cands = enumerate_candidates(X, opts);
  if (!config.cache_path.empty()) {
    save_candidates(config.cache_path, X, cands);
    err << "champions: wrote " << cands.size() << " candidates to " << config.cache_path << '\n';
  }
  return cands;
}

int run_champions(const RunConfig& config, const std::string& x_text, const std::string& table_mode, bool stats,
                  bool want_census, std::ostream& out, std::ostream& err) {
  BigCount X = parse_integer(x_text);
  if (X < 1) throw DomainError("--x must be at least 1");
  if (!table_mode.empty() && table_mode != "fig2") throw PreconditionError("unknown --table mode: " + table_mode);

  std::vector<Candidate> cands = candidates_for(config, X, err);
  std::vector<ChampionRecord> champs = champions_from(cands);
  Emitter emit_table{config, out};

  if (table_mode == "fig2") {
    Table t{{"i", "N_i", "K(N_i)", "alpha_i", "K(N_i) ="}, {}};
    bool csv = config.output_format == OutputFormat::csv;
    for (const ChampionRecord& r : champs) {
      const PrimeSignature& sig = r.candidate.signature;
      t.add({std::to_string(r.rank), big(r.candidate.value), big(r.candidate.k_value),
             csv ? sig.to_string() : bracketed_signature(sig), factorization_string(r.candidate.k_value)});
    }
    emit_table(t);
  } else if (!stats && !want_census) {
    Table t{{"rank", "N", "K", "signature"}, {}};
    for (const ChampionRecord& r : champs)
      t.add({std::to_string(r.rank), big(r.candidate.value), big(r.candidate.k_value), r.candidate.signature.to_string()});
    emit_table(t);
  }

  if (stats) {
    const int d = config.digits;
    Table t{{"rank", "N", "Omega_residual", "max_exponent_residual", "min_p_ratio", "max_p_ratio", "omega_ratio"}, {}};
    for (const ChampionRecord& r : champs) {
      ChampionDiagnostics g = champion_stats(r);
      if (g.empty()) continue;
      Real max_res = 0;
      for (Real v : g.exponent_residuals) max_res = std::max(max_res, std::fabs(v));
      Real lo = 0, hi = 0;
      for (std::size_t j = 0; j < g.p_ratios.size(); ++j) {
        Real v = g.p_ratios[j].second;
        lo = j ? std::min(lo, v) : v;
        hi = j ? std::max(hi, v) : v;
      }
      t.add({std::to_string(r.rank), big(r.candidate.value), format_real(g.Omega_residual, d), format_real(max_res, d),
             format_real(lo, d), format_real(hi, d), g.omega_ratio ? format_real(*g.omega_ratio, d) : ""});
    }
    emit_table(t);
  }

  if (want_census) {
    Census c = census(cands, champs, X);
    Table t{{"name", "value"}, {}};
    t.add({"X", big(X)});
    t.add({"candidates", std::to_string(c.candidates)});
    t.add({"candidates_1_lt_N_lt_X", std::to_string(c.interior_candidates)});
    t.add({"champions", std::to_string(c.Q)});
    t.add({"alpha_k_gt_1", std::to_string(c.alpha_gt1_count)});
    if (c.largest_alpha_gt1) {
      t.add({"largest_alpha_k_gt_1", big(c.largest_alpha_gt1->candidate.value)});
      t.add({"largest_alpha_k_gt_1_rank", std::to_string(c.largest_alpha_gt1->rank)});
      t.add({"largest_alpha_k_gt_1_signature", c.largest_alpha_gt1->candidate.signature.to_string()});
    }
    emit_table(t);
  }
  return kExitOk;
}

int run_verify(const RunConfig& config, std::ostream& out) {
  std::vector<CheckResult> results = run_invariant_suite(config);
  Table t{{"check", "status", "detail"}, {}};
  bool all = true;
  for (const CheckResult& r : results) {
    all = all && r.passed;
    std::string detail = r.detail;
    std::replace(detail.begin(), detail.end(), ',', ';');
    t.add({r.name, r.passed ? "PASS" : "FAIL", detail});
  }
  emit(t, config, out);
  return all ? kExitOk : kExitDomain;
}

std::vector<std::size_t> parse_k_list(const std::string& text) {
  std::vector<std::size_t> ks;
  if (text.empty()) return ks;
  std::stringstream ss(text);
  for (std::string p; std::getline(ss, p, ',');) {
    BigCount v = parse_integer(p);
    if (v < 1 || !v.fits_ulong_p()) throw PreconditionError("--k entries must be positive integers");
    ks.push_back(v.get_ui());
  }
  return ks;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig config;
  unsigned hw = std::thread::hardware_concurrency();
  config.worker_count = hw ? hw : 1;

  CLI::App app{"Workbench for the Kalmar function K(n) and its champions", "kalmar"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string format = "text";
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "csv"}))->capture_default_str();
  app.add_option("--digits", config.digits, "Significant digits for reals")
      ->check(CLI::Range(1, 30))
      ->capture_default_str();
  app.add_option("--precision", config.precision, "Zeta tolerance, in [1e-15, 1e-6]")->capture_default_str();
  app.add_option("--sieve-bound", config.sieve_bound, "Prime sieve bound")
      ->envname("KALMAR_SIEVE_BOUND")
      ->check(CLI::Range(std::uint64_t{100}, std::uint64_t{4'000'000'000}))
      ->capture_default_str();
  app.add_option("--cache", config.cache_path, "Champion candidate cache file")->envname("KALMAR_CACHE");
  app.add_option("--workers", config.worker_count, "Worker threads for enumeration")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();

  auto* k_cmd = app.add_subcommand("k", "Exact K(n)");
  std::string n_text, sig_text, method = "macmahon";
  bool check = false;
  std::optional<unsigned> series_R;
  k_cmd->add_option("--n", n_text, "Positive integer below 2^64");
  k_cmd->add_option("--signature", sig_text, "Exponents, e.g. 3,1,1");
  k_cmd->add_option("--method", method, "Evaluation method")
      ->check(CLI::IsMember({"macmahon", "recursive", "series"}))
      ->capture_default_str();
  k_cmd->add_flag("--check", check, "Run every method and require agreement");
  k_cmd->add_option("--R", series_R, "Truncation point for the series method");

  auto* constants_cmd = app.add_subcommand("constants", "Model constants");
  std::string k_list;
  constants_cmd->add_option("--k", k_list, "Comma-separated k for rho_k and a_k");

  auto* approx_cmd = app.add_subcommand("approx", "Asymptotic estimate against exact K");
  std::string approx_sig;
  approx_cmd->add_option("--signature", approx_sig, "Exponents")->required();

  auto* scan_cmd = app.add_subcommand("ratio-scan", "Ratio extremes per Omega");
  scan_cmd->add_option("--omega-max", config.omega_max, "Largest Omega")
      ->check(CLI::Range(1u, 40u))
      ->capture_default_str();

  auto* opt_cmd = app.add_subcommand("optimum", "Constrained optimum of F");
  std::size_t opt_k = 0;
  Real opt_A = 0;
  opt_cmd->add_option("--k", opt_k, "Number of primes")->required();
  opt_cmd->add_option("--A", opt_A, "Budget sum x_i log p_i")->required();

  auto* wit_cmd = app.add_subcommand("witness", "Witness m for log n");
  std::string log_n_text;
  wit_cmd->add_option("--log-n", log_n_text, "Value, list a,b,c or range start:stop:step")->required();
  wit_cmd->add_option("--kappa", config.kappa, "Scale for the choice of k")->capture_default_str();

  auto* def_cmd = app.add_subcommand("deficit", "Deficit bound at a point");
  std::string def_sig;
  Real def_A = 0;
  std::size_t def_k = 0;
  def_cmd->add_option("--signature", def_sig, "Exponents on 2,3,5,...")->required();
  def_cmd->add_option("--A", def_A, "Budget")->required();
  def_cmd->add_option("--k", def_k, "Number of primes (default: signature length)");

  auto* champ_cmd = app.add_subcommand("champions", "K-champions up to X");
  std::string x_text, table_mode;
  bool stats = false, want_census = false;
  champ_cmd->add_option("--x", x_text, "Enumeration bound X")->required();
  champ_cmd->add_option("--table", table_mode, "fig2 for the ranked table with factorizations");
  champ_cmd->add_flag("--stats", stats, "Asymptotic diagnostics per champion");
  champ_cmd->add_flag("--census", want_census, "Counts of candidates and champions");

  auto* verify_cmd = app.add_subcommand("verify", "Invariant suite");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "kalmar: " << e.what() << "\n\n" << app.help();
    return kExitDomain;
  }

  try {
    config.output_format = format == "csv" ? OutputFormat::csv : OutputFormat::text;
    if (!(config.precision >= 1e-15L && config.precision <= 1e-6L))
      throw PreconditionError("--precision must lie in [1e-15, 1e-6]");
    if (!(config.kappa > 0 && config.kappa < model_constants().kappa_max))
      throw PreconditionError("--kappa must lie in (0, kappa_max)");

    if (k_cmd->parsed()) return run_k(config, n_text, sig_text, method, check, series_R, out, err);
    if (constants_cmd->parsed()) return run_constants(config, parse_k_list(k_list), out);
    if (approx_cmd->parsed()) return run_approx(config, approx_sig, out);
    if (scan_cmd->parsed()) return run_ratio_scan(config, config.omega_max, out);
    if (opt_cmd->parsed()) return run_optimum(config, opt_k, opt_A, out);
    if (wit_cmd->parsed()) return run_witness(config, log_n_text, out);
    if (def_cmd->parsed()) return run_deficit(config, def_sig, def_A, def_k, out);
    if (champ_cmd->parsed()) return run_champions(config, x_text, table_mode, stats, want_census, out, err);
    if (verify_cmd->parsed()) return run_verify(config, out);
  } catch (const ResourceError& e) {
    err << "kalmar: " << e.what() << '\n';
    return kExitResource;
  } catch (const std::bad_alloc&) {
    err << "kalmar: out of memory\n";
    return kExitResource;
  } catch (const std::exception& e) {
    err << "kalmar: " << e.what() << '\n';
    return kExitDomain;
  }
  err << app.help();
  return kExitDomain;
}

}  // namespace kalmar::cli
