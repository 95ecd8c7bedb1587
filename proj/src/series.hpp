#pragma once

// Truncated power series over GF(p); internal to the curve code.

#include <vector>

#include "koszul/field.hpp"

namespace koszul::series {

using Series = std::vector<Fp>;

inline Series mul(const PrimeField& f, const Series& a, const Series& b, std::size_t n) {
  Series r(n, Fp(0));
  for (std::size_t i = 0; i < a.size() && i < n; ++i) {
    if (a[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.size() && i + j < n; ++j) r[i + j] = f.fma(r[i + j], a[i], b[j]);
  }
  return r;
}

/// 1/a mod t^n; a[0] must be nonzero.
inline Series inverse(const PrimeField& f, const Series& a, std::size_t n) {
  Series r(n, Fp(0));
  const Fp inv0 = f.inv(a[0]);
  for (std::size_t k = 0; k < n; ++k) {
    Fp s = k == 0 ? f.one() : Fp(0);
    for (std::size_t i = 1; i <= k && i < a.size(); ++i) s = f.sub(s, f.mul(a[i], r[k - i]));
    r[k] = f.mul(s, inv0);
  }
  return r;
}

/// powers[k] = a^k mod t^n for k = 0..max_power.
inline std::vector<Series> powers(const PrimeField& f, const Series& a, int max_power, std::size_t n) {
  std::vector<Series> out;
  Series one(n, Fp(0));
  if (n > 0) one[0] = f.one();
  out.push_back(one);
  for (int k = 1; k <= max_power; ++k) out.push_back(mul(f, out.back(), a, n));
  return out;
}

}  // namespace koszul::series
