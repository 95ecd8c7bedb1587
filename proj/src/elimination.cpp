#include <algorithm>
#include <numeric>
#include <queue>

#include "koszul/sparse_matrix.hpp"

namespace koszul {

namespace {

struct PivotRow {
  std::uint32_t pivot_col;
  // Normalized so the pivot coefficient is 1; the pivot itself is not stored.
  std::vector<std::uint32_t> cols;
  std::vector<Fp> vals;
};

}  // namespace

std::size_t elimination_rank(const PrimeField& field, const SparseMatrix& input) {
  // Every processed row either becomes a pivot or dies, so walk the short side.
  const SparseMatrix m = input.rows() > input.cols() ? input.transposed() : input;
  const std::size_t nrows = m.rows();
  const std::size_t ncols = m.cols();
  const std::size_t max_rank = std::min(nrows, ncols);
  if (m.nnz() == 0 || max_rank == 0) return 0;

  std::vector<std::size_t> row_start(nrows + 1, 0);
  std::vector<std::uint32_t> col_count(ncols, 0);
  for (const Triplet& e : m.entries()) {
    ++row_start[e.row + 1];
    ++col_count[e.col];
  }
  for (std::size_t i = 0; i < nrows; ++i) row_start[i + 1] += row_start[i];
  const auto entries = m.entries();

  std::vector<std::uint32_t> order(nrows);
  std::iota(order.begin(), order.end(), 0u);
  std::stable_sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
    return row_start[a + 1] - row_start[a] < row_start[b + 1] - row_start[b];
  });

  constexpr std::uint32_t kNone = ~std::uint32_t{0};
  std::vector<std::uint32_t> pivot_of_col(ncols, kNone);  // index into pivots
  std::vector<PivotRow> pivots;
  pivots.reserve(max_rank);

  std::vector<Fp> acc(ncols);
  std::vector<char> touched_mark(ncols, 0), queued(ncols, 0);
  std::vector<std::uint32_t> touched;
  std::priority_queue<std::uint32_t, std::vector<std::uint32_t>, std::greater<>> heap;

  auto touch = [&](std::uint32_t c) {
    if (!touched_mark[c]) {
      touched_mark[c] = 1;
      touched.push_back(c);
    }
    const std::uint32_t pi = pivot_of_col[c];
    if (pi != kNone && !queued[c]) {
      queued[c] = 1;
      heap.push(pi);
    }
  };

  for (std::uint32_t r : order) {
    if (row_start[r] == row_start[r + 1]) continue;
    for (std::size_t k = row_start[r]; k < row_start[r + 1]; ++k) {
      acc[entries[k].col] = entries[k].value;
      touch(entries[k].col);
    }
    // Pivot rows are reduced against all earlier pivots, so eliminating in
    // pivot-creation order never reintroduces an already-cleared column.
    while (!heap.empty()) {
      const std::uint32_t pi = heap.top();
      heap.pop();
      const PivotRow& pr = pivots[pi];
      const std::uint32_t pc = pr.pivot_col;
      queued[pc] = 0;
      const Fp factor = acc[pc];
      if (factor.is_zero()) continue;
      acc[pc] = Fp(0);
      const Fp negf = field.neg(factor);
      for (std::size_t k = 0; k < pr.cols.size(); ++k) {
        const std::uint32_t c = pr.cols[k];
        acc[c] = field.fma(acc[c], negf, pr.vals[k]);
        touch(c);
      }
    }

    std::uint32_t best = kNone;
    for (std::uint32_t c : touched) {
      if (acc[c].is_zero()) continue;
      if (best == kNone || col_count[c] < col_count[best] || (col_count[c] == col_count[best] && c < best)) {
        best = c;
      }
    }
    if (best != kNone) {
      PivotRow pr;
      pr.pivot_col = best;
      const Fp scale = field.inv(acc[best]);
      std::sort(touched.begin(), touched.end());
      for (std::uint32_t c : touched) {
        if (c == best || acc[c].is_zero()) continue;
        pr.cols.push_back(c);
        pr.vals.push_back(field.mul(acc[c], scale));
      }
      pivot_of_col[best] = static_cast<std::uint32_t>(pivots.size());
      pivots.push_back(std::move(pr));
    }
    for (std::uint32_t c : touched) {
      acc[c] = Fp(0);
      touched_mark[c] = 0;
    }
    touched.clear();
    if (pivots.size() == max_rank) break;
  }
  return pivots.size();
}

}  // namespace koszul
