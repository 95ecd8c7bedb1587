#include <doctest.h>

#include <algorithm>

#include "koszul/koszul.hpp"

using namespace koszul;

namespace {

const PrimeField F = PrimeField::create(2147483647);

std::shared_ptr<const PlaneCurve> fermat(int d) {
  return std::make_shared<const PlaneCurve>(PlaneCurve::create(
      HomogeneousForm::from_terms(F, d, {{{{d, 0, 0}}, 1}, {{{0, d, 0}}, 1}, {{{0, 0, d}}, 1}})));
}

Divisor quartic_x(const std::shared_ptr<const PlaneCurve>& c) {
  Divisor x;
  x.add(c->make_point({Fp(3), Fp(574907324), Fp(1)}), 1);
  return x;
}

std::size_t dense_rank(std::vector<std::vector<Fp>> a) {
  std::size_t rank = 0;
  const std::size_t cols = a.empty() ? 0 : a[0].size();
  for (std::size_t c = 0; c < cols && rank < a.size(); ++c) {
    std::size_t piv = rank;
    while (piv < a.size() && a[piv][c].is_zero()) ++piv;
    if (piv == a.size()) continue;
    std::swap(a[piv], a[rank]);
    const Fp inv = F.inv(a[rank][c]);
    for (std::size_t r = rank + 1; r < a.size(); ++r) {
      if (a[r][c].is_zero()) continue;
      const Fp m = F.neg(F.mul(a[r][c], inv));
      for (std::size_t k = c; k < cols; ++k) a[r][k] = F.fma(a[r][k], m, a[rank][k]);
    }
    ++rank;
  }
  return rank;
}

// Differential built from scratch: subsets enumerated by bitmask, signs by
// position, dense matrix with rows indexed by (target subset, coordinate).
std::vector<std::vector<Fp>> naive_differential(SectionCache& cache, const LineBundle& b, const LineBundle& l, int p,
                                                int q) {
  const auto v = cache.get(l);
  const int n = static_cast<int>(v->h0());
  auto strand = [&](int j) -> std::shared_ptr<const SectionSpace> {
    if (j < 0) return nullptr;
    return cache.get(b.tensor(l.power(j)));
  };
  const auto src = strand(q - 1), dst = strand(q);
  std::vector<unsigned> src_sets, dst_sets;
  for (unsigned m = 0; m < (1u << n); ++m) {
    if (__builtin_popcount(m) == p + 1) src_sets.push_back(m);
    if (__builtin_popcount(m) == p) dst_sets.push_back(m);
  }
  const std::size_t ws = src ? src->h0() : 0, wt = dst ? dst->h0() : 0;
  std::vector<std::vector<Fp>> a(dst_sets.size() * wt, std::vector<Fp>(src_sets.size() * ws));
  for (std::size_t si = 0; si < src_sets.size(); ++si) {
    int pos = 0;
    for (int i = 0; i < n; ++i) {
      if (!(src_sets[si] >> i & 1)) continue;
      const unsigned face = src_sets[si] & ~(1u << i);
      const std::size_t ti = std::find(dst_sets.begin(), dst_sets.end(), face) - dst_sets.begin();
      for (std::size_t s = 0; s < ws; ++s) {
        const auto coords = dst->coordinates(multiply_sections(l.curve(), v->basis()[i], src->basis()[s]));
        for (std::size_t k = 0; k < wt; ++k) {
          const Fp c = pos % 2 ? F.neg(coords[k]) : coords[k];
          a[ti * wt + k][si * ws + s] = F.add(a[ti * wt + k][si * ws + s], c);
        }
      }
      ++pos;
    }
  }
  return a;
}

std::uint64_t naive_kappa(SectionCache& cache, const LineBundle& b, const LineBundle& l, int p, int q) {
  const int n = static_cast<int>(cache.get(l)->h0());
  if (p < 0 || p > n) return 0;
  const std::size_t wq = q < 0 ? 0 : cache.get(b.tensor(l.power(q)))->h0();
  const std::uint64_t middle = binomial(n, p) * wq;
  const std::size_t r_in = q >= 1 ? dense_rank(naive_differential(cache, b, l, p, q)) : 0;
  const std::size_t r_out = p >= 1 ? dense_rank(naive_differential(cache, b, l, p - 1, q + 1)) : 0;
  return middle - r_in - r_out;
}

std::vector<std::uint64_t> row(const BettiTable& t, int q) {
  std::vector<std::uint64_t> out;
  for (int p = 0; p <= t.r; ++p) out.push_back(t.kappa(p, q));
  return out;
}

}  // namespace

TEST_CASE("binomial") {
  CHECK(binomial(6, 3) == 20);
  CHECK(binomial(10, 0) == 1);
  CHECK(binomial(4, 5) == 0);
  CHECK(binomial(4, -1) == 0);
  CHECK(binomial(40, 20) == 137846528820ULL);
}

TEST_CASE("wedge basis index round trip") {
  for (int n = 0; n <= 8; ++n) {
    for (int k = 0; k <= n; ++k) {
      const WedgeBasis w(n, k);
      CHECK(w.size() == binomial(n, k));
      std::size_t expect = 0;
      std::vector<int> prev;
      w.for_each([&](std::size_t idx, const std::vector<int>& s) {
        CHECK(idx == expect++);
        CHECK(w.index(s) == idx);
        CHECK(w.subset(idx) == s);
        CHECK(std::is_sorted(s.begin(), s.end()));
        if (!prev.empty()) CHECK(prev < s);
        prev = s;
      });
      CHECK(expect == w.size());
    }
  }
  CHECK(WedgeBasis(5, 6).size() == 0);
}

TEST_CASE("differentials compose to zero") {
  const auto c = fermat(4);
  SectionCache cache(c);
  const LineBundle l = LineBundle::create(c, 2, quartic_x(c));
  for (int kb : {0, 1, 2}) {
    const KoszulComplex cx(cache, LineBundle::create(c, kb), l);
    for (int q = 1; q <= 3; ++q) {
      for (int p = 1; p <= cx.r(); ++p) {
        const SparseMatrix a = cx.differential(p, q), b = cx.differential(p - 1, q + 1);
        CHECK(a.rows() == b.cols());
        CHECK(b.multiply(F, a).nnz() == 0);
      }
    }
  }
}

TEST_CASE("kappa matches a from-scratch dense computation") {
  const auto c = fermat(4);
  SectionCache cache(c);
  const LineBundle o2 = LineBundle::create(c, 2);
  const LineBundle o2x = LineBundle::create(c, 2, quartic_x(c));
  for (const LineBundle& l : {o2, o2x}) {
    for (int kb : {0, 1}) {
      const LineBundle b = LineBundle::create(c, kb);
      const KoszulComplex cx(cache, b, l);
      for (int q = 0; q <= 2; ++q)
        for (int p = 0; p <= cx.r() + 1; ++p) CHECK(koszul_dim(cx, p, q) == naive_kappa(cache, b, l, p, q));
    }
  }
}

TEST_CASE("blackbox ranks reproduce elimination ranks on a cell") {
  const auto c = fermat(4);
  SectionCache cache(c);
  const KoszulComplex cx(cache, LineBundle::create(c, 0), LineBundle::create(c, 2));
  RankOptions bb;
  bb.blackbox_threshold = 0;
  for (int p = 1; p <= 4; ++p) {
    const KoszulCell a = koszul_cell(cx, p, 1), b = koszul_cell(cx, p, 1, bb);
    CHECK(a.kappa == b.kappa);
    CHECK(b.methods[0] != "elimination");
  }
}

TEST_CASE("frozen tables with their property checks") {
  BettiOptions opts;
  opts.threads = 2;
  SUBCASE("quartic, L = O(2)") {
    const auto c = fermat(4);
    SectionCache cache(c);
    const BettiTable t = betti_table(KoszulComplex(cache, LineBundle::create(c, 0), LineBundle::create(c, 2)), opts);
    CHECK(row(t, 0) == std::vector<std::uint64_t>{1, 0, 0, 0, 0, 0});
    CHECK(row(t, 1) == std::vector<std::uint64_t>{0, 7, 8, 3, 0, 0});
    CHECK(row(t, 2) == std::vector<std::uint64_t>{0, 0, 6, 8, 3, 0});
    CHECK(row(t, 3) == std::vector<std::uint64_t>(6, 0));
    CHECK(t.dsquared.status == CheckStatus::kPass);
    CHECK(t.hilbert.status == CheckStatus::kPass);
    CHECK(t.duality.status == CheckStatus::kPass);
    CHECK(t.riemann_roch.status == CheckStatus::kPass);
  }
  SUBCASE("quartic, L = O(2)(-x)") {
    const auto c = fermat(4);
    SectionCache cache(c);
    const BettiTable t =
        betti_table(KoszulComplex(cache, LineBundle::create(c, 0), LineBundle::create(c, 2, quartic_x(c))), opts);
    CHECK(row(t, 1) == std::vector<std::uint64_t>{0, 3, 2, 0, 0});
    CHECK(row(t, 2) == std::vector<std::uint64_t>{0, 3, 6, 3, 0});
    CHECK(t.hilbert.status == CheckStatus::kPass);
    CHECK(t.duality.status == CheckStatus::kPass);
  }
  SUBCASE("quintic, L = O(3)") {
    const auto c = fermat(5);
    SectionCache cache(c);
    const BettiTable t = betti_table(KoszulComplex(cache, LineBundle::create(c, 0), LineBundle::create(c, 3)), opts);
    CHECK(row(t, 1) == std::vector<std::uint64_t>{0, 30, 120, 210, 189, 105, 27, 0, 0, 0});
    CHECK(row(t, 2) == std::vector<std::uint64_t>{0, 0, 0, 21, 105, 147, 105, 40, 6, 0});
    CHECK(t.hilbert.status == CheckStatus::kPass);
    CHECK(t.duality.status == CheckStatus::kPass);
  }
}

TEST_CASE("quadric count agrees with the multiplication map") {
  // kappa_{1,1}(C; L) = dim Sym^2 H0(L) - h0(L^2) when L is projectively normal.
  for (int d : {4, 5}) {
    const auto c = fermat(d);
    SectionCache cache(c);
    for (int k = d - 2; k <= d - 1; ++k) {
      const LineBundle l = LineBundle::create(c, k);
      const KoszulComplex cx(cache, LineBundle::create(c, 0), l);
      const std::uint64_t n = cx.h0_l();
      CHECK(koszul_dim(cx, 1, 1) == n * (n + 1) / 2 - cache.get(l.power(2))->h0());
    }
  }
}

TEST_CASE("base point free pencil consequence") {
  // kappa_{w,1}(C, B (x) L; L) = 0 for effective B != O_C and w <= deg L - 2g.
  struct Case {
    int d, kl, kb;
  };
  for (const Case cs : {Case{4, 2, 1}, Case{4, 2, 2}, Case{4, 3, 1}, Case{5, 3, 1}}) {
    const auto c = fermat(cs.d);
    SectionCache cache(c);
    const LineBundle l = LineBundle::create(c, cs.kl);
    const KoszulComplex cx(cache, LineBundle::create(c, cs.kb + cs.kl), l);
    for (int w = 0; w <= l.degree() - 2 * c->genus(); ++w) CHECK(koszul_dim(cx, w, 1) == 0);
  }
}

TEST_CASE("Hilbert identity detects a corrupted table") {
  const auto c = fermat(4);
  SectionCache cache(c);
  const KoszulComplex cx(cache, LineBundle::create(c, 0), LineBundle::create(c, 2));
  BettiOptions opts;
  opts.check_hilbert = false;
  BettiTable t = betti_table(cx, opts);
  t.cells.at({2, 1}).kappa += 1;
  const CheckResult r = hilbert_identity_check(cx, t, 4);
  CHECK(r.status == CheckStatus::kFail);
  CHECK(r.detail.find("m=3") != std::string::npos);
}

TEST_CASE("representability limits") {
  const auto c = fermat(4);
  SectionCache cache(c);
  const LineBundle l = LineBundle::create(c, 2, quartic_x(c));
  CHECK_THROWS_AS(KoszulComplex(cache, l, l), InputError);
  const KoszulComplex cx(cache, LineBundle::create(c, 3), l);
  CHECK_THROWS_AS(cx.strand_bundle(-1), NotRepresentable);
  CHECK_THROWS_AS(koszul_dim(cx, 1, 0), NotRepresentable);
  const KoszulComplex low(cache, LineBundle::create(c, 0), l);
  CHECK_FALSE(low.strand_bundle(-1).has_value());
  const auto other = fermat(5);
  CHECK_THROWS_AS(KoszulComplex(cache, LineBundle::create(other, 0), LineBundle::create(other, 1)),
                  std::invalid_argument);
}

TEST_CASE("weight three and above vanish for nonspecial L") {
  const auto c = fermat(4);
  SectionCache cache(c);
  BettiOptions opts;
  opts.q_max = 5;
  opts.check_hilbert = opts.check_duality = false;
  const BettiTable t = betti_table(KoszulComplex(cache, LineBundle::create(c, 0), LineBundle::create(c, 2)), opts);
  for (int q = 3; q <= 5; ++q)
    for (int p = 0; p <= t.r; ++p) CHECK(t.kappa(p, q) == 0);
}
