#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "koszul/bundle.hpp"
#include "koszul/sparse_matrix.hpp"

namespace koszul {

/// C(n, k), zero outside 0 <= k <= n.
std::uint64_t binomial(long long n, long long k);

/// Strictly increasing k-subsets of {0, ..., n-1} in lexicographic order.
class WedgeBasis {
 public:
  WedgeBasis(int n, int k);

  int ambient() const { return n_; }
  int order() const { return k_; }
  std::size_t size() const { return size_; }

  /// Position of an increasing tuple in the lexicographic order.
  std::size_t index(const std::vector<int>& subset) const;
  std::vector<int> subset(std::size_t index) const;

  /// Calls fn(index, subset) over all subsets in order.
  template <class Fn>
  void for_each(Fn&& fn) const {
    if (k_ < 0 || k_ > n_) return;
    std::vector<int> s(static_cast<std::size_t>(k_));
    for (int i = 0; i < k_; ++i) s[i] = i;
    for (std::size_t idx = 0;; ++idx) {
      fn(idx, static_cast<const std::vector<int>&>(s));
      int pos = k_ - 1;
      while (pos >= 0 && s[pos] == n_ - k_ + pos) --pos;
      if (pos < 0) return;
      ++s[pos];
      for (int j = pos + 1; j < k_; ++j) s[j] = s[j - 1] + 1;
    }
  }

 private:
  int n_;
  int k_;
  std::size_t size_;
};

/// The module R(C, B; L) graded by q: W_q = H^0(B (x) L^q).
class KoszulComplex {
 public:
  /// B must be a pure twist; both bundles must live on the cache's curve.
  KoszulComplex(SectionCache& cache, LineBundle b, LineBundle l);

  const LineBundle& b() const { return b_; }
  const LineBundle& l() const { return l_; }
  SectionCache& cache() const { return *cache_; }
  std::size_t h0_l() const { return v_->h0(); }
  /// r(L) = h^0(L) - 1.
  int r() const { return static_cast<int>(v_->h0()) - 1; }

  /// B (x) L^q, or nullopt when the space is known to be zero. Throws
  /// NotRepresentable for a negative power of a divisor-twisted L with
  /// non-negative degree.
  std::optional<LineBundle> strand_bundle(int q) const;
  std::size_t strand_dim(int q) const;

  /// d: wedge^{p+1} V (x) W_{q-1} -> wedge^p V (x) W_q. Rows index the target,
  /// columns the source, both as wedge_index * dim W + section_index.
  SparseMatrix differential(int p, int q) const;

  /// Dimensions of wedge^{p+1} V (x) W_{q-1}, wedge^p V (x) W_q, wedge^{p-1} V (x) W_{q+1}.
  std::array<std::uint64_t, 3> cell_dims(int p, int q) const;

 private:
  SectionCache* cache_;
  LineBundle b_;
  LineBundle l_;
  std::shared_ptr<const SectionSpace> v_;
};

struct KoszulCell {
  int p = 0;
  int q = 0;
  std::array<std::uint64_t, 3> dims{};
  std::uint64_t rank_in = 0;
  std::uint64_t rank_out = 0;
  std::uint64_t kappa = 0;
  double millis = 0;
  /// "elimination", "blackbox", or "trivial" for each adjacent map.
  std::array<std::string, 2> methods{"trivial", "trivial"};
  bool certified = true;
};

enum class CheckStatus { kPass, kFail, kNotApplicable };
std::string to_string(CheckStatus s);

struct CheckResult {
  CheckStatus status = CheckStatus::kNotApplicable;
  std::string detail;
};

struct BettiOptions {
  int p_min = 0;
  /// Negative means r(L).
  int p_max = -1;
  int q_min = 0;
  int q_max = 3;
  RankOptions rank;
  /// 0 means hardware concurrency.
  unsigned threads = 0;
  bool check_dsquared = true;
  bool check_hilbert = true;
  int hilbert_m_max = 4;
  bool check_duality = true;
};

struct BettiTable {
  std::string curve;
  std::string bundle_b;
  std::string bundle_l;
  std::uint32_t prime = 0;
  std::uint64_t seed = 0;
  int r = 0;
  int genus = 0;
  int degree_l = 0;
  std::map<std::pair<int, int>, KoszulCell> cells;
  /// Cells outside the requested window computed for the Hilbert identity.
  std::map<std::pair<int, int>, KoszulCell> extra_cells;
  CheckResult dsquared;
  CheckResult hilbert;
  CheckResult duality;
  CheckResult two_prime;
  CheckResult riemann_roch;
  /// Duality partner row: (C, omega (x) B^{-1}; L) weight-one kappas by p.
  std::map<int, std::uint64_t> duality_row;
  /// Free-form notes (point substitutions, second prime).
  std::vector<std::string> notes;

  /// kappa at (p, q); throws std::out_of_range if the cell was not computed.
  std::uint64_t kappa(int p, int q) const;
  bool has(int p, int q) const { return cells.count({p, q}) != 0; }
};

/// Computes one cell by rank-nullity of the two adjacent differentials.
KoszulCell koszul_cell(const KoszulComplex& cx, int p, int q, const RankOptions& opts = {});

/// kappa_{p,q}(C, B; L).
std::uint64_t koszul_dim(const KoszulComplex& cx, int p, int q, const RankOptions& opts = {});

/// Full table with the d o d, Hilbert and duality checks.
BettiTable betti_table(const KoszulComplex& cx, const BettiOptions& opts);

/// h0 - h1 = deg - g + 1 for every cached space whose h1 comes from Serre
/// duality or the degree bound (the Riemann-Roch route is tautological).
CheckResult riemann_roch_check(SectionCache& cache);

/// Residual-reporting Hilbert identity for m = 0..m_max. Computes missing cells
/// with p + q <= m on demand into table.extra_cells.
CheckResult hilbert_identity_check(const KoszulComplex& cx, BettiTable& table, int m_max,
                                   const RankOptions& opts = {});

}  // namespace koszul
