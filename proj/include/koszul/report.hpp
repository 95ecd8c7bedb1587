#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "koszul/curve_file.hpp"
#include "koszul/koszul.hpp"
#include "koszul/oracles.hpp"

namespace koszul {

enum class Verdict { kMatch, kMismatch, kNotApplicable };
std::string to_string(Verdict v);

struct ComputedClaim {
  Claim claim;
  std::optional<std::uint64_t> kappa;
  bool holds = false;
};

struct OracleVerdict {
  Prediction prediction;
  Verdict verdict = Verdict::kNotApplicable;
  std::vector<ComputedClaim> computed;
  std::string detail;
};

struct VerifyReport {
  BettiTable table;
  std::vector<OracleVerdict> oracles;

  /// Every applicable oracle matches and no property check failed.
  bool all_match() const;
};

/// Evaluates every applicable oracle for (B, L) against `table`, computing
/// any further cells the claims need.
VerifyReport verify_report(SectionCache& cache, const LineBundle& b, const LineBundle& l, BettiTable table,
                           const RankOptions& opts = {});

struct RunOptions {
  /// Overrides the prime in the file.
  std::optional<std::uint64_t> prime;
  std::optional<std::uint64_t> second_prime;
  bool two_prime = true;
  std::uint64_t seed = 20240601;
  BettiOptions betti;
  std::string bundle_b = "B";
  std::string bundle_l = "L";
};

/// Deterministic pseudo-random 31-bit prime distinct from `avoid`.
std::uint64_t default_second_prime(std::uint64_t seed, std::uint64_t avoid);

/// Betti table at the run prime with all property checks, including the
/// two-prime comparison.
BettiTable run_betti(const CurveFile& file, const RunOptions& opts);
VerifyReport run_verify(const CurveFile& file, const RunOptions& opts);

nlohmann::ordered_json to_json(const BettiTable& t, bool timings = true);
nlohmann::ordered_json to_json(const VerifyReport& r, bool timings = true);
std::string to_csv(const BettiTable& t);
std::string to_csv(const VerifyReport& r);
/// Classical Betti diagram: rows q, columns p.
std::string to_text(const BettiTable& t);
std::string to_text(const VerifyReport& r);

}  // namespace koszul
