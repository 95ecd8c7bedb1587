#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "koszul/dense.hpp"
#include "koszul/poly1.hpp"
#include "koszul/sparse_matrix.hpp"

using namespace koszul;

namespace {

const PrimeField F = PrimeField::create(2147483647);
const PrimeField G = PrimeField::create(1048583);

bool trial_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

// Plain Gaussian elimination on a dense copy, written independently of the library.
std::size_t dense_rank_oracle(const PrimeField& f, std::size_t rows, std::size_t cols, const std::vector<Triplet>& t) {
  std::vector<std::vector<std::uint64_t>> a(rows, std::vector<std::uint64_t>(cols, 0));
  const std::uint64_t p = f.modulus();
  for (const Triplet& e : t) a[e.row][e.col] = e.value.v;
  auto power = [&](std::uint64_t b, std::uint64_t e) {
    std::uint64_t r = 1;
    for (b %= p; e; e >>= 1, b = b * b % p)
      if (e & 1) r = r * b % p;
    return r;
  };
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t piv = rank;
    while (piv < rows && a[piv][c] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(a[piv], a[rank]);
    const std::uint64_t inv = power(a[rank][c], p - 2);
    for (std::size_t r = rank + 1; r < rows; ++r) {
      if (a[r][c] == 0) continue;
      const std::uint64_t m = a[r][c] * inv % p;
      for (std::size_t k = c; k < cols; ++k) a[r][k] = (a[r][k] + (p - m) * a[rank][k]) % p;
    }
    ++rank;
  }
  return rank;
}

std::vector<Triplet> random_low_rank(const PrimeField& f, std::size_t rows, std::size_t cols, std::size_t k,
                                     double density, std::mt19937_64& rng) {
  // Sum of k sparse rank-one products, so the rank is at most k.
  std::uniform_real_distribution<double> u(0, 1);
  std::uniform_int_distribution<std::uint32_t> val(1, f.modulus() - 1);
  std::vector<std::vector<std::uint64_t>> a(rows, std::vector<std::uint64_t>(cols, 0));
  for (std::size_t i = 0; i < k; ++i) {
    std::vector<std::uint32_t> x(rows, 0), y(cols, 0);
    for (auto& v : x) v = u(rng) < density ? val(rng) : 0;
    for (auto& v : y) v = u(rng) < density ? val(rng) : 0;
    for (std::size_t r = 0; r < rows; ++r)
      for (std::size_t c = 0; c < cols; ++c)
        a[r][c] = (a[r][c] + std::uint64_t{x[r]} * y[c]) % f.modulus();
  }
  std::vector<Triplet> t;
  for (std::uint32_t r = 0; r < rows; ++r)
    for (std::uint32_t c = 0; c < cols; ++c)
      if (a[r][c]) t.push_back({r, c, Fp(static_cast<std::uint32_t>(a[r][c]))});
  return t;
}

}  // namespace

TEST_CASE("primality agrees with trial division") {
  for (std::uint64_t n = 0; n < 5000; ++n) CHECK(is_prime(n) == trial_prime(n));
  CHECK(is_prime(2147483647));
  CHECK_FALSE(is_prime(2147483647ULL * 3));
  CHECK(next_prime(1ULL << 31) == 2147483659ULL);
  CHECK(next_prime(13) == 13);
}

TEST_CASE("field construction validates the modulus") {
  CHECK_THROWS_AS(PrimeField::create(1000003 * 3), InputError);
  CHECK_THROWS_AS(PrimeField::create(101), InputError);
  CHECK_THROWS_AS(PrimeField::create(4294967311ULL), InputError);
  CHECK(PrimeField::create(4294967291ULL).modulus() == 4294967291U);
}

TEST_CASE("field inverse and Fermat") {
  std::mt19937_64 rng(7);
  for (const PrimeField& f : {F, G}) {
    std::uniform_int_distribution<std::uint32_t> d(1, f.modulus() - 1);
    for (int i = 0; i < 500; ++i) {
      const Fp a(d(rng));
      CHECK(f.mul(a, f.inv(a)) == f.one());
      CHECK(f.pow(a, f.modulus() - 1) == f.one());
      CHECK(f.add(a, f.neg(a)) == f.zero());
    }
    CHECK_THROWS_AS(f.inv(f.zero()), DivisionByZero);
  }
  CHECK(F.from_int(-1).v == 2147483646U);
  CHECK(F.centered(F.from_int(-5)) == -5);
}

TEST_CASE("univariate division and roots") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<std::uint32_t> d(0, F.modulus() - 1);
  for (int trial = 0; trial < 50; ++trial) {
    poly1::Poly a(9), b(4);
    for (auto& c : a) c = Fp(d(rng));
    for (auto& c : b) c = Fp(d(rng));
    b.back() = F.one();
    poly1::trim(a);
    const auto [q, r] = poly1::divmod(F, a, b);
    CHECK(poly1::degree(r) < poly1::degree(b));
    CHECK(poly1::add(F, poly1::mul(F, q, b), r) == a);
  }
  // (t - 3)^2 (t - 5) (t^2 + 1) over GF(2^31 - 1); -1 is a non-residue since p = 3 mod 4.
  poly1::Poly f{F.one()};
  for (std::uint32_t root : {3u, 3u, 5u}) f = poly1::mul(F, f, {F.neg(Fp(root)), F.one()});
  f = poly1::mul(F, f, {F.one(), F.zero(), F.one()});
  const auto rm = poly1::roots_with_multiplicity(F, f);
  REQUIRE(rm.size() == 2);
  CHECK(rm[0].root == Fp(3));
  CHECK(rm[0].multiplicity == 2);
  CHECK(rm[1].root == Fp(5));
  CHECK(rm[1].multiplicity == 1);
  CHECK(poly1::roots(F, f) == std::vector<Fp>{Fp(3), Fp(5)});
}

TEST_CASE("resultant vanishes exactly on a common root") {
  const poly1::Poly a = poly1::mul(F, {F.neg(Fp(2)), F.one()}, {F.neg(Fp(7)), F.one()});
  const poly1::Poly b = {F.neg(Fp(7)), F.one()};
  const poly1::Poly c = {F.neg(Fp(9)), F.one()};
  CHECK(poly1::resultant(F, a, 2, b, 1).is_zero());
  // Res((t-2)(t-7), t-9) = (9-2)(9-7) up to sign.
  const Fp r = poly1::resultant(F, a, 2, c, 1);
  CHECK((r == Fp(14) || r == F.neg(Fp(14))));
  const poly1::Poly xs_poly = poly1::interpolate(F, {Fp(1), Fp(2), Fp(3)}, {Fp(1), Fp(4), Fp(9)});
  CHECK(xs_poly == poly1::Poly{F.zero(), F.zero(), F.one()});
}

TEST_CASE("sparse rank matches the dense oracle") {
  std::mt19937_64 rng(2024);
  for (const PrimeField& f : {F, G}) {
    for (int trial = 0; trial < 40; ++trial) {
      const std::size_t rows = 5 + rng() % 40, cols = 5 + rng() % 40, k = rng() % 30;
      const auto t = random_low_rank(f, rows, cols, k, 0.3, rng);
      const SparseMatrix m = SparseMatrix::from_triplets(rows, cols, t);
      const std::size_t expect = dense_rank_oracle(f, rows, cols, t);
      CHECK(elimination_rank(f, m) == expect);
      const RankResult bb = blackbox_rank(f, m, 99 + trial, 3);
      CHECK(bb.rank == expect);
      CHECK(elimination_rank(f, m.transposed()) == expect);
    }
  }
}

TEST_CASE("rank dispatch reports its method") {
  std::mt19937_64 rng(5);
  const auto t = random_low_rank(F, 30, 20, 12, 0.5, rng);
  const SparseMatrix m = SparseMatrix::from_triplets(30, 20, t);
  RankOptions small;
  small.blackbox_threshold = 0;
  const RankResult a = sparse_rank(F, m, small);
  const RankResult b = sparse_rank(F, m);
  CHECK(a.method == RankMethod::kBlackbox);
  CHECK(b.method == RankMethod::kElimination);
  CHECK(a.rank == b.rank);
  CHECK(a.certified);
}

TEST_CASE("rank is invariant under row and column permutations") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t rows = 10 + rng() % 30, cols = 10 + rng() % 30;
    auto t = random_low_rank(F, rows, cols, rng() % 15, 0.4, rng);
    const std::size_t r0 = elimination_rank(F, SparseMatrix::from_triplets(rows, cols, t));
    std::vector<std::uint32_t> pr(rows), pc(cols);
    std::iota(pr.begin(), pr.end(), 0);
    std::iota(pc.begin(), pc.end(), 0);
    std::shuffle(pr.begin(), pr.end(), rng);
    std::shuffle(pc.begin(), pc.end(), rng);
    for (Triplet& e : t) {
      e.row = pr[e.row];
      e.col = pc[e.col];
    }
    CHECK(elimination_rank(F, SparseMatrix::from_triplets(rows, cols, t)) == r0);
  }
}

TEST_CASE("rank of a product is bounded by the factors") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 8 + rng() % 20, m = 8 + rng() % 20, k = 8 + rng() % 20;
    const SparseMatrix a = SparseMatrix::from_triplets(n, m, random_low_rank(F, n, m, rng() % 10, 0.4, rng));
    const SparseMatrix b = SparseMatrix::from_triplets(m, k, random_low_rank(F, m, k, rng() % 10, 0.4, rng));
    const std::size_t ra = elimination_rank(F, a), rb = elimination_rank(F, b);
    CHECK(elimination_rank(F, a.multiply(F, b)) <= std::min(ra, rb));
  }
}

TEST_CASE("triplet validation") {
  CHECK_THROWS_AS(SparseMatrix::from_triplets(2, 2, {{2, 0, Fp(1)}}), InputError);
  CHECK_THROWS_AS(SparseMatrix::from_triplets(2, 2, {{0, 0, Fp(1)}, {0, 0, Fp(2)}}), InputError);
  CHECK(SparseMatrix::from_triplets(2, 2, {{0, 0, Fp(0)}}).nnz() == 0);
  CHECK(elimination_rank(F, SparseMatrix::from_triplets(0, 5, {})) == 0);
}

TEST_CASE("Berlekamp-Massey finds the Fibonacci recurrence") {
  std::vector<Fp> seq{Fp(0), Fp(1)};
  for (int i = 2; i < 20; ++i) seq.push_back(F.add(seq[i - 1], seq[i - 2]));
  const LinearRecurrence lr = berlekamp_massey(F, seq);
  CHECK(lr.length == 2);
}

TEST_CASE("dense nullspace annihilates and has complementary dimension") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t rows = 2 + rng() % 8, cols = 2 + rng() % 10;
    const auto t = random_low_rank(G, rows, cols, rng() % 6, 0.6, rng);
    DenseRows a(rows, std::vector<Fp>(cols));
    for (const Triplet& e : t) a[e.row][e.col] = e.value;
    const std::size_t rank = dense_rank_oracle(G, rows, cols, t);
    const Echelon e = rref(G, a, cols);
    CHECK(e.rows.size() == rank);
    CHECK(std::is_sorted(e.pivots.begin(), e.pivots.end()));
    const DenseRows ns = nullspace(G, a, cols);
    CHECK(ns.size() == cols - rank);
    for (const auto& v : ns)
      for (const auto& row : a) {
        Fp s = G.zero();
        for (std::size_t c = 0; c < cols; ++c) s = G.fma(s, row[c], v[c]);
        CHECK(s.is_zero());
      }
  }
}
