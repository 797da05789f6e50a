#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "kalmar/constants.hpp"
#include "kalmar/types.hpp"

namespace kalmar {

/// A number of the form 2^a1 3^a2 ... p_k^ak with a1 >= ... >= ak >= 1.
struct Candidate {
  PrimeSignature signature;
  BigCount value;    ///< N
  BigCount k_value;  ///< K(N)
};

struct EnumerationOptions {
  unsigned workers = 1;
  std::size_t capacity = 20'000'000;  ///< maximum number of candidates held
};

/// Every N <= X of champion form, with exact K(N), sorted by N.
/// Generation partitions the search by the exponent of 2 across workers;
/// the result does not depend on the worker count.
std::vector<Candidate> enumerate_candidates(const BigCount& X, const EnumerationOptions& options = {});

struct ChampionRecord {
  std::size_t rank = 0;
  Candidate candidate;
  unsigned omega = 0;
  unsigned Omega = 0;
  unsigned last_exponent = 0;  ///< a_k, 0 for N = 1
  /// (j, P_j): P_j is the largest prime whose j-th power divides N
  std::vector<std::pair<unsigned, std::uint64_t>> p_profile;
};

ChampionRecord make_record(std::size_t rank, Candidate candidate);

/// Keeps the candidates (sorted by N) whose K strictly exceeds every
/// earlier K; ranks start at 1 with N = 1.
std::vector<ChampionRecord> champions_from(const std::vector<Candidate>& sorted_candidates);

std::vector<ChampionRecord> find_champions(const BigCount& X, const EnumerationOptions& options = {});

struct Census {
  std::size_t Q = 0;
  std::size_t candidates = 0;           ///< every enumerated N <= X, N = 1 included
  std::size_t interior_candidates = 0;  ///< those with 1 < N < X
  std::size_t alpha_gt1_count = 0;
  std::optional<ChampionRecord> largest_alpha_gt1;
};

Census census(const std::vector<Candidate>& sorted_candidates, const std::vector<ChampionRecord>& champions,
              const BigCount& X);
Census census(const BigCount& X, const EnumerationOptions& options = {});

/// Finite-N residuals of the champion asymptotics. Diagnostic only.
struct ChampionDiagnostics {
  Real log_N = 0;
  Real Omega_residual = 0;                  ///< (Omega - b log N) / (log N)^delta
  std::vector<Real> exponent_residuals;     ///< (a_i - beta_i log N) log p_i / (log N)^delta
  std::vector<std::pair<unsigned, Real>> p_ratios;  ///< P_j / (a log N / j)^{1/rho}
  std::optional<Real> omega_ratio;          ///< omega log log N / (rho a^{1/rho} (log N)^{1/rho})
  bool empty() const { return log_N == 0; }
};

ChampionDiagnostics champion_stats(const ChampionRecord& record, const ConstantsTable& constants = model_constants());

struct LawReport {
  std::size_t pairs_checked = 0;
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

/// N_{i+1} <= 2 N_i, strictly increasing K, non-increasing exponents.
LawReport verify_champion_laws(const std::vector<ChampionRecord>& records);

/// Prime factorization in table form, e.g. "2^15 x 19"; "1" for 1.
std::string factorization_string(const BigCount& value);

/// Candidate cache: a header line "# kalmar-candidates <version> X=<X>"
/// followed by "signature;N;K" records sorted by N.
inline constexpr const char* kCacheVersion = "v1";

void save_candidates(const std::filesystem::path& path, const BigCount& X, const std::vector<Candidate>& candidates);

/// Returns nullopt when the file is missing, was written for another X or
/// version, or is malformed.
std::optional<std::vector<Candidate>> load_candidates(const std::filesystem::path& path, const BigCount& X);

}  // namespace kalmar
