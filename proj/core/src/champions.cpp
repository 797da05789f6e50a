#include "kalmar/champions.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

#include "kalmar/errors.hpp"
#include "kalmar/evans.hpp"
#include "kalmar/exact.hpp"
#include "kalmar/primes.hpp"

namespace kalmar {

std::vector<Candidate> enumerate_candidates(const BigCount& X, const EnumerationOptions& options) {
  if (X < 1) throw PreconditionError("enumerate_candidates: X must be >= 1");
  nth_prime(1);  // build the shared sieve before fanning out
  const unsigned top = max_first_exponent(X);
  const unsigned workers = std::max(1u, options.workers);
  std::vector<std::vector<Candidate>> parts(workers);
  std::atomic<std::size_t> total{1};
  std::atomic<bool> overflow{false};
  std::atomic<unsigned> next{1};

  auto work = [&](unsigned w) {
    auto& out = parts[w];
    for (unsigned e; (e = next.fetch_add(1)) <= top && !overflow;) {
      for_each_signature_up_to(
          X,
          [&](const std::vector<unsigned>& exps, const BigCount& n) {
            if (overflow) return;
            if (total.fetch_add(1) >= options.capacity) {
              overflow = true;
              return;
            }
            auto sig = PrimeSignature::canonical(exps);
            BigCount k = kalmar_macmahon(sig);
            out.push_back({std::move(sig), n, std::move(k)});
          },
          e);
    }
  };
  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work, w);
    for (auto& t : pool) t.join();
  }
  if (overflow)
    throw ResourceError("enumerate_candidates: more than " + std::to_string(options.capacity) + " candidates");

  std::vector<Candidate> all;
  all.reserve(total.load());
  all.push_back({PrimeSignature{}, BigCount(1), BigCount(1)});
  for (auto& p : parts) std::move(p.begin(), p.end(), std::back_inserter(all));
  std::sort(all.begin(), all.end(), [](const Candidate& a, const Candidate& b) { return a.value < b.value; });
  return all;
}

ChampionRecord make_record(std::size_t rank, Candidate candidate) {
  ChampionRecord r;
  r.rank = rank;
  const auto& e = candidate.signature.exponents();
  r.omega = static_cast<unsigned>(e.size());
  r.Omega = candidate.signature.Omega();
  r.last_exponent = e.empty() ? 0 : e.back();
  if (!e.empty()) {
    // P_j = p_i for the largest i with a_i >= j
    std::size_t i = e.size();
    for (unsigned j = 1; j <= e.front(); ++j) {
      while (i > 0 && e[i - 1] < j) --i;
      r.p_profile.emplace_back(j, nth_prime(i));
    }
  }
  r.candidate = std::move(candidate);
  return r;
}

std::vector<ChampionRecord> champions_from(const std::vector<Candidate>& sorted) {
  std::vector<ChampionRecord> out;
  const BigCount* best = nullptr;
  for (const auto& c : sorted) {
    if (best && c.k_value <= *best) continue;
    out.push_back(make_record(out.size() + 1, c));
    best = &c.k_value;
  }
  return out;
}

std::vector<ChampionRecord> find_champions(const BigCount& X, const EnumerationOptions& options) {
  return champions_from(enumerate_candidates(X, options));
}

Census census(const std::vector<Candidate>& sorted, const std::vector<ChampionRecord>& champions,
              const BigCount& X) {
  Census c;
  c.Q = champions.size();
  c.candidates = sorted.size();
  for (const auto& cand : sorted)
    if (cand.value > 1 && cand.value < X) ++c.interior_candidates;
  for (const auto& r : champions) {
    if (r.last_exponent > 1) {
      ++c.alpha_gt1_count;
      c.largest_alpha_gt1 = r;
    }
  }
  return c;
}

Census census(const BigCount& X, const EnumerationOptions& options) {
  auto cands = enumerate_candidates(X, options);
  return census(cands, champions_from(cands), X);
}

ChampionDiagnostics champion_stats(const ChampionRecord& record, const ConstantsTable& k) {
  ChampionDiagnostics d;
  if (record.candidate.value <= 1) return d;
  d.log_N = log_of(record.candidate.value);
  const Real scale = std::pow(d.log_N, k.delta);
  d.Omega_residual = (record.Omega - k.b * d.log_N) / scale;
  const auto& e = record.candidate.signature.exponents();
  for (std::size_t i = 0; i < e.size(); ++i) {
    Real lp = std::log(static_cast<Real>(nth_prime(i + 1)));
    d.exponent_residuals.push_back((e[i] - k.beta(i + 1) * d.log_N) * lp / scale);
  }
  for (auto [j, P] : record.p_profile)
    d.p_ratios.emplace_back(j, static_cast<Real>(P) / std::pow(k.a * d.log_N / j, 1 / k.rho));
  const Real loglog = std::log(d.log_N);
  if (loglog > 0)
    d.omega_ratio = record.omega * loglog / (k.rho * std::pow(k.a, 1 / k.rho) * std::pow(d.log_N, 1 / k.rho));
  return d;
}

LawReport verify_champion_laws(const std::vector<ChampionRecord>& records) {
  LawReport rep;
  for (const auto& r : records) {
    const auto& e = r.candidate.signature.exponents();
    if (!std::is_sorted(e.begin(), e.end(), std::greater<>()) || PrimeSignature::canonical(e).smallest_value() != r.candidate.value)
      rep.violations.push_back("rank " + std::to_string(r.rank) + ": not of the form 2^a1 3^a2 ... with a1 >= a2 >= ...");
  }
  for (std::size_t i = 0; i + 1 < records.size(); ++i) {
    const auto& a = records[i].candidate;
    const auto& b = records[i + 1].candidate;
    ++rep.pairs_checked;
    // the doubling law starts at n = 2; the step 1 -> 4 is outside it
    if (a.value >= 2 && b.value > 2 * a.value)
      rep.violations.push_back("N_" + std::to_string(records[i + 1].rank) + " > 2 N_" + std::to_string(records[i].rank));
    if (!(b.k_value > a.k_value))
      rep.violations.push_back("K does not increase at rank " + std::to_string(records[i + 1].rank));
    if (!(b.value > a.value))
      rep.violations.push_back("N does not increase at rank " + std::to_string(records[i + 1].rank));
  }
  return rep;
}

std::string factorization_string(const BigCount& value) {
  if (value < 1) throw DomainError("factorization of a non-positive number");
  if (value == 1) return "1";
  std::ostringstream os;
  BigCount n = value;
  bool first = true;
  auto emit = [&](const std::string& p, unsigned e) {
    os << (first ? "" : " x ") << p;
    if (e > 1) os << '^' << e;
    first = false;
  };
  for (unsigned long p = 2; p < 1'000'000 && n > 1; ++p) {
    if (BigCount(p) * p > n) break;
    unsigned e = 0;
    while (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
      mpz_divexact_ui(n.get_mpz_t(), n.get_mpz_t(), p);
      ++e;
    }
    if (e) emit(std::to_string(p), e);
  }
  if (n > 1) emit(n.get_str(), 1);
  return os.str();
}

void save_candidates(const std::filesystem::path& path, const BigCount& X, const std::vector<Candidate>& candidates) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw ResourceError("cannot write cache file " + path.string());
  out << "# kalmar-candidates " << kCacheVersion << " X=" << X.get_str() << '\n';
  for (const auto& c : candidates)
    out << c.signature.to_string() << ';' << c.value.get_str() << ';' << c.k_value.get_str() << '\n';
  if (!out) throw ResourceError("failed writing cache file " + path.string());
}

std::optional<std::vector<Candidate>> load_candidates(const std::filesystem::path& path, const BigCount& X) {
  std::ifstream in(path);
  if (!in) return std::nullopt;
  std::string line;
  const std::string header = std::string("# kalmar-candidates ") + kCacheVersion + " X=" + X.get_str();
  if (!std::getline(in, line) || line != header) return std::nullopt;
  std::vector<Candidate> out;
  try {
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      auto a = line.find(';');
      auto b = line.find(';', a + 1);
      if (a == std::string::npos || b == std::string::npos) return std::nullopt;
      Candidate c;
      c.signature = PrimeSignature::parse(line.substr(0, a));
      if (c.value.set_str(line.substr(a + 1, b - a - 1), 10) != 0) return std::nullopt;
      if (c.k_value.set_str(line.substr(b + 1), 10) != 0) return std::nullopt;
      if (!out.empty() && !(out.back().value < c.value)) return std::nullopt;
      if (c.signature.smallest_value() != c.value) return std::nullopt;
      out.push_back(std::move(c));
    }
  } catch (const PreconditionError&) {
    return std::nullopt;
  }
  return out;
}

}  // namespace kalmar
