#include "koszul/poly1.hpp"

#include <algorithm>
#include <random>

namespace koszul::poly1 {

void trim(Poly& a) {
  while (!a.empty() && a.back().is_zero()) a.pop_back();
}

int degree(const Poly& a) { return static_cast<int>(a.size()) - 1; }

Poly add(const PrimeField& f, const Poly& a, const Poly& b) {
  Poly r(std::max(a.size(), b.size()));
  for (std::size_t i = 0; i < r.size(); ++i) {
    r[i] = f.add(i < a.size() ? a[i] : Fp(0), i < b.size() ? b[i] : Fp(0));
  }
  trim(r);
  return r;
}

Poly sub(const PrimeField& f, const Poly& a, const Poly& b) {
  Poly r(std::max(a.size(), b.size()));
  for (std::size_t i = 0; i < r.size(); ++i) {
    r[i] = f.sub(i < a.size() ? a[i] : Fp(0), i < b.size() ? b[i] : Fp(0));
  }
  trim(r);
  return r;
}

Poly mul(const PrimeField& f, const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = f.fma(r[i + j], a[i], b[j]);
  trim(r);
  return r;
}

std::pair<Poly, Poly> divmod(const PrimeField& f, const Poly& a, const Poly& b) {
  if (b.empty()) throw DivisionByZero();
  Poly r = a;
  trim(r);
  if (r.size() < b.size()) return {Poly{}, r};
  Poly q(r.size() - b.size() + 1);
  const Fp lead_inv = f.inv(b.back());
  for (std::size_t i = q.size(); i-- > 0;) {
    const Fp c = f.mul(r[i + b.size() - 1], lead_inv);
    q[i] = c;
    if (c.is_zero()) continue;
    const Fp negc = f.neg(c);
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = f.fma(r[i + j], negc, b[j]);
  }
  trim(q);
  trim(r);
  return {q, r};
}

Poly mod(const PrimeField& f, const Poly& a, const Poly& b) { return divmod(f, a, b).second; }

Poly gcd(const PrimeField& f, Poly a, Poly b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Poly r = mod(f, a, b);
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty()) {
    const Fp s = f.inv(a.back());
    for (Fp& c : a) c = f.mul(c, s);
  }
  return a;
}

Poly powmod(const PrimeField& f, Poly base, std::uint64_t e, const Poly& m) {
  Poly result{f.one()};
  result = mod(f, result, m);
  base = mod(f, base, m);
  while (e) {
    if (e & 1) result = mod(f, mul(f, result, base), m);
    base = mod(f, mul(f, base, base), m);
    e >>= 1;
  }
  return result;
}

Fp eval(const PrimeField& f, const Poly& a, Fp x) {
  Fp r(0);
  for (std::size_t i = a.size(); i-- > 0;) r = f.fma(a[i], r, x);
  return r;
}

Poly derivative(const PrimeField& f, const Poly& a) {
  if (a.size() <= 1) return {};
  Poly r(a.size() - 1);
  for (std::size_t i = 1; i < a.size(); ++i) r[i - 1] = f.mul(a[i], f.from_int(static_cast<std::int64_t>(i)));
  trim(r);
  return r;
}

Poly interpolate(const PrimeField& f, const std::vector<Fp>& xs, const std::vector<Fp>& ys) {
  Poly result;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    Poly basis{f.one()};
    Fp denom = f.one();
    for (std::size_t j = 0; j < xs.size(); ++j) {
      if (j == i) continue;
      basis = mul(f, basis, Poly{f.neg(xs[j]), f.one()});
      denom = f.mul(denom, f.sub(xs[i], xs[j]));
    }
    const Fp scale = f.div(ys[i], denom);
    for (Fp& c : basis) c = f.mul(c, scale);
    result = add(f, result, basis);
  }
  return result;
}

namespace {

// Equal-degree splitting of a squarefree product of distinct linear factors.
void split_linear(const PrimeField& f, const Poly& g, std::mt19937_64& rng, std::vector<Fp>& out) {
  const int d = degree(g);
  if (d <= 0) return;
  if (d == 1) {
    out.push_back(f.neg(f.div(g[0], g[1])));
    return;
  }
  std::uniform_int_distribution<std::uint32_t> dist(0, f.modulus() - 1);
  for (;;) {
    const Poly probe{Fp(dist(rng)), f.one()};
    Poly h = powmod(f, probe, (f.modulus() - 1) / 2, g);
    h = sub(f, h, Poly{f.one()});
    Poly factor = gcd(f, g, h);
    const int fd = degree(factor);
    if (fd > 0 && fd < d) {
      split_linear(f, factor, rng, out);
      split_linear(f, divmod(f, g, factor).first, rng, out);
      return;
    }
  }
}

}  // namespace

std::vector<Fp> roots(const PrimeField& f, const Poly& a_in) {
  Poly a = a_in;
  trim(a);
  if (a.empty()) throw InputError("roots of the zero polynomial are undefined");
  std::vector<Fp> out;
  if (degree(a) == 0) return out;
  // Product of the distinct linear factors: gcd(a, x^p - x).
  Poly xp = powmod(f, Poly{Fp(0), f.one()}, f.modulus(), a);
  Poly g = gcd(f, a, sub(f, xp, Poly{Fp(0), f.one()}));
  std::mt19937_64 rng(0x726f6f7473ULL);
  split_linear(f, g, rng, out);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<RootMultiplicity> roots_with_multiplicity(const PrimeField& f, const Poly& a) {
  std::vector<RootMultiplicity> out;
  for (Fp r : roots(f, a)) {
    Poly rest = a;
    trim(rest);
    int mult = 0;
    const Poly lin{f.neg(r), f.one()};
    for (;;) {
      auto [q, rem] = divmod(f, rest, lin);
      if (!rem.empty()) break;
      ++mult;
      rest = std::move(q);
    }
    out.push_back({r, mult});
  }
  return out;
}

Fp determinant(const PrimeField& f, std::vector<std::vector<Fp>> m) {
  const std::size_t n = m.size();
  Fp det = f.one();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = n;
    for (std::size_t r = col; r < n; ++r) {
      if (!m[r][col].is_zero()) {
        piv = r;
        break;
      }
    }
    if (piv == n) return Fp(0);
    if (piv != col) {
      std::swap(m[piv], m[col]);
      det = f.neg(det);
    }
    det = f.mul(det, m[col][col]);
    const Fp inv = f.inv(m[col][col]);
    for (std::size_t r = col + 1; r < n; ++r) {
      if (m[r][col].is_zero()) continue;
      const Fp factor = f.neg(f.mul(m[r][col], inv));
      for (std::size_t j = col; j < n; ++j) m[r][j] = f.fma(m[r][j], factor, m[col][j]);
    }
  }
  return det;
}

Fp resultant(const PrimeField& f, const Poly& a, int da, const Poly& b, int db) {
  const int n = da + db;
  if (n == 0) return f.one();
  std::vector<std::vector<Fp>> s(n, std::vector<Fp>(n, Fp(0)));
  auto coeff = [](const Poly& p, int i) { return i >= 0 && i < static_cast<int>(p.size()) ? p[i] : Fp(0); };
  // Rows hold descending coefficients shifted right.
  for (int r = 0; r < db; ++r)
    for (int k = 0; k <= da; ++k) s[r][r + k] = coeff(a, da - k);
  for (int r = 0; r < da; ++r)
    for (int k = 0; k <= db; ++k) s[db + r][r + k] = coeff(b, db - k);
  return determinant(f, std::move(s));
}

}  // namespace koszul::poly1
