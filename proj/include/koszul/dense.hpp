#pragma once

#include <vector>

#include "koszul/field.hpp"

namespace koszul {

using DenseRows = std::vector<std::vector<Fp>>;

struct Echelon {
  DenseRows rows;              // reduced row echelon form, zero rows dropped
  std::vector<std::size_t> pivots;  // pivot column of each row, increasing
};

/// Reduced row echelon form; column order is the pivot priority.
Echelon rref(const PrimeField& f, DenseRows rows, std::size_t cols);

/// Basis of {x : A x = 0}.
DenseRows nullspace(const PrimeField& f, const DenseRows& a, std::size_t cols);

}  // namespace koszul
