#include <doctest.h>

#include <random>
#include <thread>

#include "koszul/bundle.hpp"

using namespace koszul;

namespace {

const PrimeField F = PrimeField::create(2147483647);
const PrimeField P17 = PrimeField::create(1048721);

std::shared_ptr<const PlaneCurve> fermat(const PrimeField& f, int d) {
  return std::make_shared<const PlaneCurve>(PlaneCurve::create(
      HomogeneousForm::from_terms(f, d, {{{{d, 0, 0}}, 1}, {{{0, d, 0}}, 1}, {{{0, 0, d}}, 1}})));
}

// h0(O_C(k)) for a smooth plane curve of degree d: C(k+2, 2) - C(k-d+2, 2).
long long h0_pure(int d, int k) {
  auto tri = [](long long n) { return n < 0 ? 0 : (n + 1) * (n + 2) / 2; };
  return tri(k) - tri(k - d);
}

Divisor point(const CurvePoint& p, int mult = 1) {
  Divisor d;
  d.add(p, mult);
  return d;
}

}  // namespace

TEST_CASE("pure twists match the plane formula") {
  for (int d : {4, 5, 6}) {
    const auto c = fermat(F, d);
    SectionCache cache(c);
    for (int k = -2; k <= 2 * d; ++k) {
      const auto s = cache.get(LineBundle::create(c, k));
      CHECK(static_cast<long long>(s->h0()) == h0_pure(d, k));
    }
  }
}

TEST_CASE("small section spaces on the quartic") {
  const auto c = fermat(F, 4);
  SectionCache cache(c);
  const CurvePoint p = c->make_point({Fp(3), Fp(574907324), Fp(1)});
  CHECK(cache.get(LineBundle::create(c, 1))->h0() == 3);
  CHECK(cache.get(LineBundle::create(c, 2))->h0() == 6);
  CHECK(cache.get(LineBundle::create(c, 1, point(p)))->h0() == 2);
  CHECK(cache.get(LineBundle::create(c, -1))->h0() == 0);
  CHECK(cache.get(LineBundle::create(c, 0))->h0() == 1);
  CHECK(cache.get(LineBundle::create(c, 0, point(p)))->h0() == 0);
}

TEST_CASE("sections of a twist-down bundle vanish at its points") {
  for (const PrimeField& f : {F, P17}) {
    const auto c = fermat(f, 4);
    const auto pts = find_rational_points(*c, 6);
    for (int mult = 1; mult <= 3; ++mult) {
      const SectionSpace s = compute_sections(LineBundle::create(c, 2, point(pts[1], mult)));
      CHECK(static_cast<int>(s.h0()) == 6 - mult);
      const BranchExpansion br = branch_expansion(*c, pts[1], mult);
      for (const HomogeneousForm& g : s.basis()) {
        const auto jet = restrict_to_branch(g, br);
        for (int i = 0; i < mult; ++i) CHECK(jet[i].is_zero());
      }
    }
  }
}

TEST_CASE("nonspecial twist-down bundles obey Riemann-Roch") {
  for (const PrimeField& f : {F, P17}) {
    for (int d : {4, 5}) {
      const auto c = fermat(f, d);
      const int g = c->genus();
      SectionCache cache(c);
      const auto pts = find_rational_points(*c, 10);
      std::mt19937_64 rng(d);
      for (int trial = 0; trial < 12; ++trial) {
        Divisor D;
        const int n = 1 + static_cast<int>(rng() % 4);
        for (int i = 0; i < n; ++i) D.add(pts[rng() % pts.size()], 1 + static_cast<int>(rng() % 2));
        for (int k = 1; k <= d; ++k) {
          const LineBundle b = LineBundle::create(c, k, D);
          const long long h0 = static_cast<long long>(cache.get(b)->h0());
          if (b.degree() > 2 * g - 2) CHECK(h0 == b.degree() - g + 1);
          CHECK(h0 >= std::max<long long>(0, b.degree() - g + 1));
        }
      }
    }
  }
}

TEST_CASE("subtracting a point drops h0 by at most one") {
  const auto c = fermat(F, 5);
  SectionCache cache(c);
  const auto pts = find_rational_points(*c, 8);
  Divisor D;
  long long prev = static_cast<long long>(cache.get(LineBundle::create(c, 2))->h0());
  for (const CurvePoint& p : pts) {
    D.add(p, 1);
    const long long now = static_cast<long long>(cache.get(LineBundle::create(c, 2, D))->h0());
    CHECK((now == prev || now == prev - 1));
    prev = now;
  }
}

TEST_CASE("bundles of degree at least 2g are base point free") {
  const auto c = fermat(F, 4);
  SectionCache cache(c);
  const auto pts = find_rational_points(*c, 12);
  Divisor x;
  x.add(pts[0], 1);
  for (const LineBundle& l : {LineBundle::create(c, 2), LineBundle::create(c, 2, x), LineBundle::create(c, 3)}) {
    const std::size_t h = cache.get(l)->h0();
    for (const CurvePoint& p : pts) {
      Divisor D = l.minus();
      D.add(p, 1);
      CHECK(cache.get(LineBundle::create(c, l.twist(), D))->h0() == h - 1);
    }
  }
}

TEST_CASE("h1 routes") {
  const auto c = fermat(F, 4);
  SectionCache cache(c);
  const CurvePoint p = c->make_point({Fp(3), Fp(574907324), Fp(1)});
  const H1Value o = h1(cache, LineBundle::create(c, 0));
  CHECK(o.value == 3);
  CHECK(o.route == H1Route::kSerreDual);
  CHECK(h1(cache, LineBundle::create(c, 1)).value == 1);
  CHECK(h1(cache, LineBundle::create(c, 2)).value == 0);
  const H1Value big = h1(cache, LineBundle::create(c, 2, point(p)));
  CHECK(big.value == 0);
  CHECK(big.route == H1Route::kDegree);
  // O(1)(-P): degree 3, h0 = 2, so h1 = 2 - 3 + 3 - 1 = 1.
  const H1Value low = h1(cache, LineBundle::create(c, 1, point(p)));
  CHECK(low.value == 1);
  CHECK(low.route == H1Route::kRiemannRoch);
}

TEST_CASE("multiplication is commutative, bilinear and lands in the product space") {
  const auto c = fermat(F, 4);
  SectionCache cache(c);
  const auto pts = find_rational_points(*c, 3);
  Divisor x;
  x.add(pts[2], 1);
  const LineBundle a = LineBundle::create(c, 2, x), b = LineBundle::create(c, 1);
  const auto sa = cache.get(a), sb = cache.get(b), sab = cache.get(a.tensor(b));
  for (const auto& u : sa->basis())
    for (const auto& v : sb->basis()) {
      const HomogeneousForm uv = multiply_sections(*c, u, v);
      CHECK(uv == multiply_sections(*c, v, u));
      CHECK(sab->contains(uv));
    }
  const HomogeneousForm u = sa->basis()[0] + sa->basis()[1].scaled(Fp(5));
  const HomogeneousForm lhs = multiply_sections(*c, u, sb->basis()[2]);
  const HomogeneousForm rhs = multiply_sections(*c, sa->basis()[0], sb->basis()[2]) +
                              multiply_sections(*c, sa->basis()[1], sb->basis()[2]).scaled(Fp(5));
  CHECK(lhs == rhs);
}

TEST_CASE("coordinates reproduce elements") {
  const auto c = fermat(F, 5);
  const auto pts = find_rational_points(*c, 4);
  Divisor D;
  D.add(pts[0], 2);
  D.add(pts[3], 1);
  const SectionSpace s = compute_sections(LineBundle::create(c, 3, D));
  HomogeneousForm sum(F, 3);
  for (std::size_t i = 0; i < s.h0(); ++i) sum = sum + s.basis()[i].scaled(Fp(static_cast<std::uint32_t>(i + 2)));
  const auto coords = s.coordinates(sum);
  for (std::size_t i = 0; i < s.h0(); ++i) CHECK(coords[i] == Fp(static_cast<std::uint32_t>(i + 2)));
  // Generic monomials do not vanish at the divisor.
  CHECK_FALSE(s.contains(HomogeneousForm::from_terms(F, 3, {{{{0, 0, 3}}, 1}})));
}

TEST_CASE("p-very ampleness certificates") {
  const auto c = fermat(F, 4);
  SectionCache cache(c);
  const LineBundle omega = LineBundle::create(c, 1);
  CHECK(p_very_ample_certificate(cache, omega, 1).kind == VeryAmpleKind::kTheoretical);
  const VeryAmpleCertificate two = p_very_ample_certificate(cache, omega, 2);
  REQUIRE(two.kind == VeryAmpleKind::kCounterexample);
  CHECK(two.counterexample->degree() == 3);
  CHECK(two.counterexample_h0 == 1);
  CHECK(p_very_ample_certificate(cache, LineBundle::create(c, 2), 2).kind == VeryAmpleKind::kTheoretical);
  CHECK(p_very_ample_certificate(cache, LineBundle::create(c, 0), 0).kind == VeryAmpleKind::kRationalDivisor);
  CHECK(p_very_ample_certificate(cache, LineBundle::create(c, 0), 1).kind == VeryAmpleKind::kCounterexample);
  Divisor x;
  x.add(find_rational_points(*c, 1)[0], 1);
  CHECK_THROWS_AS(p_very_ample_certificate(cache, LineBundle::create(c, 2, x), 1), InputError);
}

TEST_CASE("line and tangent sections") {
  const auto c = fermat(P17, 4);
  const auto pts = find_rational_points(*c, 10);
  const Divisor line = line_section(*c, pts[0].coords, pts[5].coords);
  CHECK(line.degree() <= 4);
  CHECK(line.points().count(pts[0]) == 1);
  CHECK(line.points().count(pts[5]) == 1);
  for (const CurvePoint& p : pts) {
    const Divisor t = tangent_section(*c, p);
    REQUIRE(t.points().count(p) == 1);
    CHECK(t.points().at(p) >= 2);
    CHECK(t.degree() <= 4);
  }
}

TEST_CASE("bundle algebra and validation") {
  const auto c = fermat(F, 4);
  const auto other = fermat(F, 5);
  const auto pts = find_rational_points(*c, 2);
  Divisor D;
  D.add(pts[0], 1);
  const LineBundle l = LineBundle::create(c, 2, D);
  CHECK(l.degree() == 7);
  CHECK(l.power(2).degree() == 14);
  CHECK(l.power(0).key() == "O(0)");
  CHECK(l.tensor(LineBundle::create(c, 1)).twist() == 3);
  CHECK_THROWS_AS(l.power(-1), std::invalid_argument);
  CHECK_THROWS_AS(l.tensor(LineBundle::create(other, 1)), std::invalid_argument);
  Divisor bad;
  CHECK_THROWS(bad.add(c->make_point({Fp(1), Fp(1), Fp(1)}), 1));
  SectionCache cache(c);
  CHECK_THROWS_AS(cache.get(LineBundle::create(other, 1)), std::invalid_argument);
}

TEST_CASE("concurrent cache requests share one result") {
  const auto c = fermat(F, 5);
  SectionCache cache(c);
  const auto pts = find_rational_points(*c, 3);
  Divisor D;
  D.add(pts[1], 3);
  const LineBundle b = LineBundle::create(c, 4, D);
  std::vector<std::shared_ptr<const SectionSpace>> got(8);
  std::vector<std::thread> ts;
  for (int i = 0; i < 8; ++i) ts.emplace_back([&, i] { got[i] = cache.get(b); });
  for (auto& t : ts) t.join();
  for (const auto& g : got) CHECK(g.get() == got[0].get());
  CHECK(cache.size() == 1);
}
