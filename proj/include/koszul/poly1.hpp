#pragma once

#include <cstdint>
#include <vector>

#include "koszul/field.hpp"

namespace koszul::poly1 {

/// Dense univariate polynomial, ascending coefficients, no trailing zeros.
using Poly = std::vector<Fp>;

void trim(Poly& a);
int degree(const Poly& a);  // -1 for the zero polynomial
Poly add(const PrimeField& f, const Poly& a, const Poly& b);
Poly sub(const PrimeField& f, const Poly& a, const Poly& b);
Poly mul(const PrimeField& f, const Poly& a, const Poly& b);
/// Quotient and remainder; throws DivisionByZero for b = 0.
std::pair<Poly, Poly> divmod(const PrimeField& f, const Poly& a, const Poly& b);
Poly mod(const PrimeField& f, const Poly& a, const Poly& b);
/// Monic gcd (zero if both are zero).
Poly gcd(const PrimeField& f, Poly a, Poly b);
Poly powmod(const PrimeField& f, Poly base, std::uint64_t e, const Poly& m);
Fp eval(const PrimeField& f, const Poly& a, Fp x);
Poly derivative(const PrimeField& f, const Poly& a);
/// Lagrange interpolation through (xs[i], ys[i]) with distinct xs.
Poly interpolate(const PrimeField& f, const std::vector<Fp>& xs, const std::vector<Fp>& ys);

/// Distinct roots in GF(p), ascending. `a` must be nonzero.
std::vector<Fp> roots(const PrimeField& f, const Poly& a);

struct RootMultiplicity {
  Fp root;
  int multiplicity;
};
/// Distinct roots in GF(p) with multiplicities, ascending by root.
std::vector<RootMultiplicity> roots_with_multiplicity(const PrimeField& f, const Poly& a);

/// Determinant of a small dense matrix by elimination.
Fp determinant(const PrimeField& f, std::vector<std::vector<Fp>> m);

/// Sylvester resultant of a and b taken with formal degrees da >= deg a, db >= deg b.
Fp resultant(const PrimeField& f, const Poly& a, int da, const Poly& b, int db);

}  // namespace koszul::poly1
