#include "koszul/form.hpp"

#include <sstream>

namespace koszul {

std::vector<Monomial> monomials_of_degree(int k) {
  std::vector<Monomial> out;
  if (k < 0) return out;
  for (int a = k; a >= 0; --a) {
    for (int b = k - a; b >= 0; --b) out.push_back({{a, b, k - a - b}});
  }
  return out;
}

long long monomial_count(int k) {
  return k < 0 ? 0 : static_cast<long long>(k + 1) * (k + 2) / 2;
}

HomogeneousForm::HomogeneousForm(PrimeField field, int degree) : field_(field), degree_(degree) {
  if (degree < 0) throw InputError("form degree must be non-negative");
}

HomogeneousForm HomogeneousForm::from_terms(PrimeField field, int degree,
                                            const std::vector<std::pair<Monomial, std::int64_t>>& terms) {
  HomogeneousForm f(field, degree);
  for (const auto& [m, c] : terms) {
    if (m.e[0] < 0 || m.e[1] < 0 || m.e[2] < 0 || m.degree() != degree) {
      throw InputError("monomial exponents must be non-negative and sum to " + std::to_string(degree));
    }
    f.add_term(m, field.from_int(c));
  }
  return f;
}

Fp HomogeneousForm::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Fp(0) : it->second;
}

void HomogeneousForm::add_term(const Monomial& m, Fp c) {
  if (m.degree() != degree_) throw InputError("term degree does not match form degree");
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second = field_.add(it->second, c);
    if (it->second.is_zero()) terms_.erase(it);
  }
}

HomogeneousForm HomogeneousForm::operator+(const HomogeneousForm& o) const {
  HomogeneousForm r = *this;
  for (const auto& [m, c] : o.terms_) r.add_term(m, c);
  return r;
}

HomogeneousForm HomogeneousForm::operator-(const HomogeneousForm& o) const {
  HomogeneousForm r = *this;
  for (const auto& [m, c] : o.terms_) r.add_term(m, field_.neg(c));
  return r;
}

HomogeneousForm HomogeneousForm::operator*(const HomogeneousForm& o) const {
  HomogeneousForm r(field_, degree_ + o.degree_);
  for (const auto& [m1, c1] : terms_) {
    for (const auto& [m2, c2] : o.terms_) r.add_term(m1 * m2, field_.mul(c1, c2));
  }
  return r;
}

HomogeneousForm HomogeneousForm::scaled(Fp c) const {
  HomogeneousForm r(field_, degree_);
  if (c.is_zero()) return r;
  for (const auto& [m, v] : terms_) r.terms_.emplace(m, field_.mul(v, c));
  return r;
}

HomogeneousForm HomogeneousForm::times_monomial(const Monomial& mono, Fp c) const {
  HomogeneousForm r(field_, degree_ + mono.degree());
  if (c.is_zero()) return r;
  for (const auto& [m, v] : terms_) r.terms_.emplace(m * mono, field_.mul(v, c));
  return r;
}

Fp HomogeneousForm::evaluate(const Vec3& p) const {
  Fp sum(0);
  for (const auto& [m, c] : terms_) {
    Fp t = c;
    for (int i = 0; i < 3; ++i) t = field_.mul(t, field_.pow(p[i], static_cast<std::uint64_t>(m.e[i])));
    sum = field_.add(sum, t);
  }
  return sum;
}

HomogeneousForm HomogeneousForm::partial(int i) const {
  HomogeneousForm r(field_, degree_ > 0 ? degree_ - 1 : 0);
  if (degree_ == 0) return r;
  for (const auto& [m, c] : terms_) {
    if (m.e[i] == 0) continue;
    Monomial d = m;
    --d.e[i];
    r.add_term(d, field_.mul(c, field_.from_int(m.e[i])));
  }
  return r;
}

HomogeneousForm HomogeneousForm::substitute(const Mat3& t) const {
  // Linear forms l_i = sum_j t[i][j] x_j, then powers by repeated products.
  std::array<HomogeneousForm, 3> lin{HomogeneousForm(field_, 1), HomogeneousForm(field_, 1),
                                     HomogeneousForm(field_, 1)};
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      Monomial m;
      m.e[j] = 1;
      lin[i].add_term(m, t[i][j]);
    }
  }
  std::array<std::vector<HomogeneousForm>, 3> powers;
  for (int i = 0; i < 3; ++i) {
    HomogeneousForm one(field_, 0);
    one.add_term(Monomial{}, field_.one());
    powers[i].push_back(one);
    for (int k = 1; k <= degree_; ++k) powers[i].push_back(powers[i].back() * lin[i]);
  }
  HomogeneousForm r(field_, degree_);
  for (const auto& [m, c] : terms_) {
    HomogeneousForm term = powers[0][m.e[0]] * powers[1][m.e[1]] * powers[2][m.e[2]];
    r = r + term.scaled(c);
  }
  return r;
}

std::string HomogeneousForm::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  static constexpr const char* kVars[3] = {"x", "y", "z"};
  for (const auto& [m, c] : terms_) {
    std::int64_t v = field_.centered(c);
    if (!first) os << (v < 0 ? " - " : " + ");
    else if (v < 0) os << "-";
    first = false;
    std::int64_t a = v < 0 ? -v : v;
    bool bare = m.degree() == 0;
    if (a != 1 || bare) os << a;
    bool need_star = a != 1;
    for (int i = 0; i < 3; ++i) {
      if (m.e[i] == 0) continue;
      if (need_star) os << "*";
      os << kVars[i];
      if (m.e[i] > 1) os << "^" << m.e[i];
      need_star = true;
    }
  }
  return os.str();
}

Mat3 identity3() {
  Mat3 m{};
  for (int i = 0; i < 3; ++i) m[i][i] = Fp(1);
  return m;
}

Vec3 apply(const PrimeField& f, const Mat3& m, const Vec3& v) {
  Vec3 r{};
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) r[i] = f.fma(r[i], m[i][j], v[j]);
  }
  return r;
}

Mat3 multiply(const PrimeField& f, const Mat3& a, const Mat3& b) {
  Mat3 r{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) r[i][j] = f.fma(r[i][j], a[i][k], b[k][j]);
  return r;
}

Mat3 inverse(const PrimeField& f, const Mat3& m) {
  Mat3 a = m, inv = identity3();
  for (int col = 0; col < 3; ++col) {
    int piv = -1;
    for (int r = col; r < 3; ++r) {
      if (!a[r][col].is_zero()) {
        piv = r;
        break;
      }
    }
    if (piv < 0) throw DivisionByZero();
    std::swap(a[piv], a[col]);
    std::swap(inv[piv], inv[col]);
    const Fp s = f.inv(a[col][col]);
    for (int j = 0; j < 3; ++j) {
      a[col][j] = f.mul(a[col][j], s);
      inv[col][j] = f.mul(inv[col][j], s);
    }
    for (int r = 0; r < 3; ++r) {
      if (r == col || a[r][col].is_zero()) continue;
      const Fp factor = f.neg(a[r][col]);
      for (int j = 0; j < 3; ++j) {
        a[r][j] = f.fma(a[r][j], factor, a[col][j]);
        inv[r][j] = f.fma(inv[r][j], factor, inv[col][j]);
      }
    }
  }
  return inv;
}

}  // namespace koszul
