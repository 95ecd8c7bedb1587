#include "koszul/sparse_matrix.hpp"

#include <algorithm>
#include <unordered_map>

namespace koszul {

SparseMatrix SparseMatrix::from_triplets(std::size_t rows, std::size_t cols, std::vector<Triplet> entries) {
  std::erase_if(entries, [](const Triplet& t) { return t.value.is_zero(); });
  for (const Triplet& t : entries) {
    if (t.row >= rows || t.col >= cols) {
      throw InputError("sparse entry (" + std::to_string(t.row) + ", " + std::to_string(t.col) +
                       ") outside " + std::to_string(rows) + "x" + std::to_string(cols));
    }
  }
  std::sort(entries.begin(), entries.end(), [](const Triplet& a, const Triplet& b) {
    return a.row != b.row ? a.row < b.row : a.col < b.col;
  });
  auto dup = std::adjacent_find(entries.begin(), entries.end(), [](const Triplet& a, const Triplet& b) {
    return a.row == b.row && a.col == b.col;
  });
  if (dup != entries.end()) {
    throw InputError("duplicate sparse entry at (" + std::to_string(dup->row) + ", " +
                     std::to_string(dup->col) + ")");
  }
  SparseMatrix m;
  m.rows_ = rows;
  m.cols_ = cols;
  m.entries_ = std::move(entries);
  return m;
}

SparseMatrix SparseMatrix::transposed() const {
  std::vector<Triplet> t;
  t.reserve(entries_.size());
  for (const Triplet& e : entries_) t.push_back({e.col, e.row, e.value});
  return from_triplets(cols_, rows_, std::move(t));
}

SparseMatrix SparseMatrix::multiply(const PrimeField& field, const SparseMatrix& rhs) const {
  if (cols_ != rhs.rows_) throw InputError("matrix product dimension mismatch");
  // rhs rows as CSR.
  std::vector<std::size_t> start(rhs.rows_ + 1, 0);
  for (const Triplet& e : rhs.entries_) ++start[e.row + 1];
  for (std::size_t i = 0; i < rhs.rows_; ++i) start[i + 1] += start[i];

  std::vector<Triplet> out;
  std::vector<Fp> acc(rhs.cols_);
  std::vector<std::uint32_t> touched;
  std::vector<char> mark(rhs.cols_, 0);
  std::size_t i = 0;
  while (i < entries_.size()) {
    const std::uint32_t row = entries_[i].row;
    for (; i < entries_.size() && entries_[i].row == row; ++i) {
      const Triplet& a = entries_[i];
      for (std::size_t k = start[a.col]; k < start[a.col + 1]; ++k) {
        const Triplet& b = rhs.entries_[k];
        if (!mark[b.col]) {
          mark[b.col] = 1;
          touched.push_back(b.col);
        }
        acc[b.col] = field.fma(acc[b.col], a.value, b.value);
      }
    }
    for (std::uint32_t c : touched) {
      if (!acc[c].is_zero()) out.push_back({row, c, acc[c]});
      acc[c] = Fp(0);
      mark[c] = 0;
    }
    touched.clear();
  }
  return from_triplets(rows_, rhs.cols_, std::move(out));
}

std::string to_string(RankMethod m) {
  return m == RankMethod::kElimination ? "elimination" : "blackbox";
}

RankResult sparse_rank(const PrimeField& field, const SparseMatrix& m, const RankOptions& opts) {
  if (m.nnz() > opts.blackbox_threshold) {
    return blackbox_rank(field, m, opts.seed, opts.blackbox_trials);
  }
  return RankResult{elimination_rank(field, m), RankMethod::kElimination, 0, true};
}

}  // namespace koszul
