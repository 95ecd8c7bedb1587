#include "koszul/dense.hpp"

namespace koszul {

Echelon rref(const PrimeField& f, DenseRows rows, std::size_t cols) {
  Echelon out;
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows.size(); ++c) {
    std::size_t piv = rows.size();
    for (std::size_t r = rank; r < rows.size(); ++r) {
      if (!rows[r][c].is_zero()) {
        piv = r;
        break;
      }
    }
    if (piv == rows.size()) continue;
    std::swap(rows[piv], rows[rank]);
    const Fp s = f.inv(rows[rank][c]);
    for (Fp& x : rows[rank]) x = f.mul(x, s);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r == rank || rows[r][c].is_zero()) continue;
      const Fp factor = f.neg(rows[r][c]);
      for (std::size_t j = c; j < cols; ++j) rows[r][j] = f.fma(rows[r][j], factor, rows[rank][j]);
    }
    out.pivots.push_back(c);
    ++rank;
  }
  rows.resize(rank);
  out.rows = std::move(rows);
  return out;
}

DenseRows nullspace(const PrimeField& f, const DenseRows& a, std::size_t cols) {
  const Echelon e = rref(f, a, cols);
  std::vector<char> is_pivot(cols, 0);
  for (std::size_t c : e.pivots) is_pivot[c] = 1;
  DenseRows basis;
  for (std::size_t free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    std::vector<Fp> v(cols, Fp(0));
    v[free] = f.one();
    for (std::size_t i = 0; i < e.pivots.size(); ++i) v[e.pivots[i]] = f.neg(e.rows[i][free]);
    basis.push_back(std::move(v));
  }
  return basis;
}

}  // namespace koszul
