#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

#include "koszul/field.hpp"

namespace koszul {

/// Exponent triple (x, y, z).
struct Monomial {
  std::array<int, 3> e{0, 0, 0};

  int degree() const { return e[0] + e[1] + e[2]; }
  Monomial operator*(const Monomial& o) const { return {{e[0] + o.e[0], e[1] + o.e[1], e[2] + o.e[2]}}; }
  friend bool operator==(const Monomial&, const Monomial&) = default;
};

/// Graded-lexicographic with x > y > z; sorts the leading monomial first.
struct GradedLexGreater {
  bool operator()(const Monomial& a, const Monomial& b) const {
    if (a.degree() != b.degree()) return a.degree() > b.degree();
    return a.e > b.e;
  }
};

/// All monomials of degree k, leading first.
std::vector<Monomial> monomials_of_degree(int k);

/// Number of monomials of degree k in three variables (0 for k < 0).
long long monomial_count(int k);

using Vec3 = std::array<Fp, 3>;
using Mat3 = std::array<std::array<Fp, 3>, 3>;

/// Sparse homogeneous polynomial in x, y, z over a prime field.
/// Invariants: every stored monomial has the form's degree; no zero coefficients.
class HomogeneousForm {
 public:
  using Terms = std::map<Monomial, Fp, GradedLexGreater>;

  HomogeneousForm(PrimeField field, int degree);

  /// Integer coefficients are reduced mod p; throws InputError on a degree mismatch.
  static HomogeneousForm from_terms(PrimeField field, int degree,
                                    const std::vector<std::pair<Monomial, std::int64_t>>& terms);

  const PrimeField& field() const { return field_; }
  int degree() const { return degree_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  Fp coefficient(const Monomial& m) const;

  /// Accumulates c into the coefficient of m.
  void add_term(const Monomial& m, Fp c);

  HomogeneousForm operator+(const HomogeneousForm& o) const;
  HomogeneousForm operator-(const HomogeneousForm& o) const;
  HomogeneousForm operator*(const HomogeneousForm& o) const;
  HomogeneousForm scaled(Fp c) const;
  HomogeneousForm times_monomial(const Monomial& m, Fp c) const;

  Fp evaluate(const Vec3& point) const;
  /// d/dx_i
  HomogeneousForm partial(int i) const;
  /// F(T x): each variable x_i is replaced by sum_j T[i][j] x_j.
  HomogeneousForm substitute(const Mat3& t) const;

  std::string to_string() const;

  friend bool operator==(const HomogeneousForm& a, const HomogeneousForm& b) {
    return a.degree_ == b.degree_ && a.terms_ == b.terms_;
  }

 private:
  PrimeField field_;
  int degree_;
  Terms terms_;
};

Mat3 identity3();
Vec3 apply(const PrimeField& f, const Mat3& m, const Vec3& v);
Mat3 multiply(const PrimeField& f, const Mat3& a, const Mat3& b);
/// Throws DivisionByZero if singular.
Mat3 inverse(const PrimeField& f, const Mat3& m);

}  // namespace koszul
