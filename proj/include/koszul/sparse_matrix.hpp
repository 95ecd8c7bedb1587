#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "koszul/field.hpp"

namespace koszul {

struct Triplet {
  std::uint32_t row;
  std::uint32_t col;
  Fp value;
};

/// Immutable coordinate-format matrix over a prime field.
/// Invariants: indices in range, no duplicate (row, col), no stored zeros.
class SparseMatrix {
 public:
  SparseMatrix() = default;

  /// Drops zero values; throws InputError on out-of-range indices or duplicates.
  static SparseMatrix from_triplets(std::size_t rows, std::size_t cols, std::vector<Triplet> entries);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t nnz() const { return entries_.size(); }
  std::span<const Triplet> entries() const { return entries_; }

  SparseMatrix transposed() const;

  /// Exact product this * rhs.
  SparseMatrix multiply(const PrimeField& field, const SparseMatrix& rhs) const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Triplet> entries_;  // sorted by (row, col)
};

enum class RankMethod { kElimination, kBlackbox };

std::string to_string(RankMethod m);

struct RankOptions {
  /// Matrices with more stored entries than this go to the black-box route.
  std::size_t blackbox_threshold = 20'000'000;
  std::uint64_t seed = 0x6b6f737a756cULL;
  /// Independent black-box runs; the reported rank is certified when all agree.
  int blackbox_trials = 3;
};

struct RankResult {
  std::size_t rank = 0;
  RankMethod method = RankMethod::kElimination;
  int trials = 0;
  /// False only for a black-box run whose trials disagreed.
  bool certified = true;
};

/// Exact rank; dispatches between elimination and the black-box route by size.
RankResult sparse_rank(const PrimeField& field, const SparseMatrix& m, const RankOptions& opts = {});

/// Left-looking sparse elimination with fewest-nonzeros row order and
/// sparsest-column pivot choice. Deterministic.
std::size_t elimination_rank(const PrimeField& field, const SparseMatrix& m);

/// Wiedemann-style rank of D1 A^T D2 A D1 via Berlekamp-Massey on projected
/// Krylov sequences. Each trial returns a lower bound that is exact with high
/// probability; the result is the maximum over trials.
RankResult blackbox_rank(const PrimeField& field, const SparseMatrix& m, std::uint64_t seed, int trials);

/// Berlekamp-Massey: connection polynomial C (C[0] = 1) and linear complexity L
/// of the sequence.
struct LinearRecurrence {
  std::vector<Fp> connection;
  std::size_t length = 0;
};
LinearRecurrence berlekamp_massey(const PrimeField& field, std::span<const Fp> seq);

}  // namespace koszul
