#include <algorithm>
#include <random>

#include "koszul/sparse_matrix.hpp"

namespace koszul {

LinearRecurrence berlekamp_massey(const PrimeField& field, std::span<const Fp> seq) {
  std::vector<Fp> c{field.one()}, b{field.one()};
  std::size_t length = 0;
  std::size_t shift = 1;
  Fp last = field.one();
  for (std::size_t n = 0; n < seq.size(); ++n) {
    Fp disc = seq[n];
    for (std::size_t i = 1; i <= length && i < c.size(); ++i) disc = field.fma(disc, c[i], seq[n - i]);
    if (disc.is_zero()) {
      ++shift;
      continue;
    }
    const Fp coef = field.div(disc, last);
    std::vector<Fp> prev = c;
    if (c.size() < b.size() + shift) c.resize(b.size() + shift, Fp(0));
    const Fp negc = field.neg(coef);
    for (std::size_t i = 0; i < b.size(); ++i) c[i + shift] = field.fma(c[i + shift], negc, b[i]);
    if (2 * length <= n) {
      length = n + 1 - length;
      b = std::move(prev);
      last = disc;
      shift = 1;
    } else {
      ++shift;
    }
  }
  c.resize(length + 1, Fp(0));
  return {std::move(c), length};
}

namespace {

struct Csr {
  std::vector<std::size_t> start;
  std::vector<std::uint32_t> col;
  std::vector<Fp> val;
};

Csr to_csr(const SparseMatrix& m) {
  Csr out;
  out.start.assign(m.rows() + 1, 0);
  for (const Triplet& e : m.entries()) ++out.start[e.row + 1];
  for (std::size_t i = 0; i < m.rows(); ++i) out.start[i + 1] += out.start[i];
  out.col.reserve(m.nnz());
  out.val.reserve(m.nnz());
  for (const Triplet& e : m.entries()) {  // entries are row-sorted
    out.col.push_back(e.col);
    out.val.push_back(e.value);
  }
  return out;
}

void apply(const PrimeField& f, const Csr& a, std::span<const Fp> x, std::span<Fp> y) {
  for (std::size_t i = 0; i + 1 < a.start.size(); ++i) {
    std::uint64_t s = 0;
    const std::uint64_t p = f.modulus();
    for (std::size_t k = a.start[i]; k < a.start[i + 1]; ++k) {
      s += std::uint64_t{a.val[k].v} * x[a.col[k]].v % p;
      if (s >= (std::uint64_t{1} << 63)) s %= p;
    }
    y[i] = Fp(static_cast<std::uint32_t>(s % p));
  }
}

Fp random_nonzero(const PrimeField& f, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::uint32_t> dist(1, f.modulus() - 1);
  return Fp(dist(rng));
}

}  // namespace

RankResult blackbox_rank(const PrimeField& field, const SparseMatrix& input, std::uint64_t seed, int trials) {
  // Precondition the n x n Gram-like operator with n the short side.
  const SparseMatrix a = input.rows() < input.cols() ? input.transposed() : input;  // m x n, n <= m
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  RankResult result{0, RankMethod::kBlackbox, std::max(trials, 1), true};
  if (a.nnz() == 0 || n == 0) return result;

  const Csr fwd = to_csr(a);
  const Csr bwd = to_csr(a.transposed());

  std::vector<std::size_t> estimates;
  for (int t = 0; t < result.trials; ++t) {
    std::mt19937_64 rng(seed + 0x9e3779b97f4a7c15ULL * static_cast<std::uint64_t>(t + 1));
    std::vector<Fp> d1(n), d2(m), u(n), v(n);
    for (auto& x : d1) x = random_nonzero(field, rng);
    for (auto& x : d2) x = random_nonzero(field, rng);
    for (auto& x : u) x = random_nonzero(field, rng);
    for (auto& x : v) x = random_nonzero(field, rng);

    std::vector<Fp> w(n), tmp_m(m), tmp_n(n);
    std::vector<Fp> seq;
    seq.reserve(2 * n + 2);
    w = v;
    for (std::size_t i = 0; i < 2 * n + 2; ++i) {
      Fp dot(0);
      for (std::size_t k = 0; k < n; ++k) dot = field.fma(dot, u[k], w[k]);
      seq.push_back(dot);
      // w <- D1 A^T D2 A D1 w
      for (std::size_t k = 0; k < n; ++k) tmp_n[k] = field.mul(d1[k], w[k]);
      apply(field, fwd, tmp_n, tmp_m);
      for (std::size_t k = 0; k < m; ++k) tmp_m[k] = field.mul(d2[k], tmp_m[k]);
      apply(field, bwd, tmp_m, tmp_n);
      for (std::size_t k = 0; k < n; ++k) w[k] = field.mul(d1[k], tmp_n[k]);
    }
    const LinearRecurrence rec = berlekamp_massey(field, seq);
    // Minimal polynomial x^L C(1/x); its power of x is L - deg C.
    std::size_t deg_c = rec.connection.size() - 1;
    while (deg_c > 0 && rec.connection[deg_c].is_zero()) --deg_c;
    const std::size_t x_power = rec.length - deg_c;
    if (x_power > 1) continue;  // nilpotent block: preconditioning failed for this trial
    estimates.push_back(rec.length - x_power);
  }
  if (estimates.empty()) {
    result.certified = false;
    return result;
  }
  result.rank = *std::max_element(estimates.begin(), estimates.end());
  result.certified = static_cast<int>(estimates.size()) == result.trials &&
                     std::all_of(estimates.begin(), estimates.end(), [&](std::size_t e) { return e == result.rank; });
  return result;
}

}  // namespace koszul
