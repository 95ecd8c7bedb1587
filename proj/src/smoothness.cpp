#include <random>

#include "koszul/curve.hpp"
#include "koszul/poly1.hpp"
#include "line_restriction.hpp"

namespace koszul {

namespace {

constexpr int kMaxResultantDegree = 6;
constexpr int kFrameAttempts = 8;
constexpr std::uint64_t kSampledLines = 4096;

bool gradient_vanishes(const std::array<HomogeneousForm, 3>& grad, const Vec3& p) {
  for (const auto& g : grad)
    if (!g.evaluate(p).is_zero()) return false;
  return true;
}

Vec3 normalized_point(const PrimeField& f, Vec3 v) {
  for (int i = 2; i >= 0; --i) {
    if (!v[i].is_zero()) {
      const Fp s = f.inv(v[i]);
      for (Fp& c : v) c = f.mul(c, s);
      break;
    }
  }
  return v;
}

/// Rational singular points on the line base + t*dir, and how many curve
/// points on it were inspected.
std::optional<Vec3> singular_on_line(const HomogeneousForm& F, const std::array<HomogeneousForm, 3>& grad,
                                     const Vec3& base, const Vec3& dir, std::size_t& checked) {
  const PrimeField& f = F.field();
  poly1::Poly h = restrict_to_line(F, base, dir);
  // A line component is singular wherever the gradient restricted to it vanishes.
  const bool line_component = h.empty();
  for (const auto& g : grad) {
    poly1::Poly r = restrict_to_line(g, base, dir);
    if (!r.empty()) h = poly1::gcd(f, h, r);
  }
  if (h.empty()) {
    ++checked;
    return normalized_point(f, base);
  }
  if (line_component && poly1::degree(h) <= 0) return std::nullopt;
  if (poly1::degree(h) <= 0) {
    checked += poly1::roots(f, restrict_to_line(F, base, dir)).size();
    return std::nullopt;
  }
  for (Fp t : poly1::roots(f, h)) {
    ++checked;
    Vec3 p;
    for (int i = 0; i < 3; ++i) p[i] = f.fma(base[i], t, dir[i]);
    if (gradient_vanishes(grad, p)) return normalized_point(f, p);
  }
  return std::nullopt;
}

/// Scans (1:0:0), the line z = 0 and the first `lines` affine lines x = a.
std::optional<Vec3> scan_for_singular(const HomogeneousForm& F, std::uint64_t lines, std::size_t& checked) {
  const PrimeField& f = F.field();
  const std::array<HomogeneousForm, 3> grad{F.partial(0), F.partial(1), F.partial(2)};
  const Vec3 e0{f.one(), Fp(0), Fp(0)};
  if (F.evaluate(e0).is_zero()) {
    ++checked;
    if (gradient_vanishes(grad, e0)) return e0;
  }
  if (auto w = singular_on_line(F, grad, {Fp(0), f.one(), Fp(0)}, e0, checked)) return w;
  for (std::uint64_t a = 0; a < lines && a < f.modulus(); ++a) {
    const Vec3 base{Fp(static_cast<std::uint32_t>(a)), Fp(0), f.one()};
    if (auto w = singular_on_line(F, grad, base, {Fp(0), f.one(), Fp(0)}, checked)) return w;
  }
  return std::nullopt;
}

Mat3 random_frame(const PrimeField& f, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::uint32_t> dist(0, f.modulus() - 1);
  for (;;) {
    Mat3 m;
    for (auto& row : m)
      for (auto& c : row) c = Fp(dist(rng));
    try {
      (void)inverse(f, m);
      return m;
    } catch (const DivisionByZero&) {
    }
  }
}

/// Res_y(g1(x, y), g2(x, y)) in the chart z = 1, formal y-degree n.
poly1::Poly resultant_in_y(const HomogeneousForm& g1, const HomogeneousForm& g2, int n) {
  const PrimeField& f = g1.field();
  const int bound = n * n;
  std::vector<Fp> xs, ys;
  for (int k = 0; k <= bound; ++k) {
    const Fp x0 = f.from_int(k);
    const Vec3 base{x0, Fp(0), f.one()};
    const Vec3 dir{Fp(0), f.one(), Fp(0)};
    xs.push_back(x0);
    ys.push_back(poly1::resultant(f, restrict_to_line(g1, base, dir), n, restrict_to_line(g2, base, dir), n));
  }
  return poly1::interpolate(f, xs, ys);
}

}  // namespace

SmoothnessReport smoothness_check(const HomogeneousForm& F) {
  const PrimeField& f = F.field();
  const int d = F.degree();
  SmoothnessReport rep;
  if (F.is_zero()) {
    rep.detail = "the zero form does not define a curve";
    return rep;
  }

  if (d <= kMaxResultantDegree) {
    std::mt19937_64 rng(0x736d6f6f7468ULL);
    for (int attempt = 0; attempt < kFrameAttempts; ++attempt) {
      const Mat3 frame = attempt == 0 ? identity3() : random_frame(f, rng);
      const HomogeneousForm G = F.substitute(frame);
      const std::array<HomogeneousForm, 3> grad{G.partial(0), G.partial(1), G.partial(2)};

      // No common zero of G_x, G_y on the line z = 0.
      const Vec3 base{Fp(0), f.one(), Fp(0)}, dir{f.one(), Fp(0), Fp(0)};
      if (poly1::resultant(f, restrict_to_line(grad[0], base, dir), d - 1, restrict_to_line(grad[1], base, dir),
                           d - 1)
              .is_zero()) {
        continue;
      }
      // No common affine zero: the two eliminants in x share no root.
      const poly1::Poly r12 = resultant_in_y(grad[0], grad[1], d - 1);
      const poly1::Poly r13 = resultant_in_y(grad[0], grad[2], d - 1);
      if (r12.empty() || r13.empty()) continue;
      const poly1::Poly common = poly1::gcd(f, r12, r13);
      if (poly1::degree(common) == 0) {
        rep.smooth = true;
        rep.certificate.kind = SmoothnessKind::kResultant;
        rep.certificate.frames_tried = attempt + 1;
        rep.certificate.detail = "gradient eliminants coprime in frame " + std::to_string(attempt);
        return rep;
      }
      std::size_t checked = 0;
      for (Fp x0 : poly1::roots(f, common)) {
        if (auto w = singular_on_line(G, grad, {x0, Fp(0), f.one()}, {Fp(0), f.one(), Fp(0)}, checked)) {
          rep.witness = normalized_point(f, apply(f, frame, *w));
          rep.detail = "singular point found by elimination";
          return rep;
        }
      }
    }
    std::size_t checked = 0;
    rep.witness = scan_for_singular(F, kSampledLines, checked);
    rep.detail = rep.witness ? "singular point found on a scanned line"
                             : "gradient has a common zero in every frame tried (no rational witness)";
    return rep;
  }

  std::size_t checked = 0;
  rep.witness = scan_for_singular(F, kSampledLines, checked);
  if (rep.witness) {
    rep.detail = "singular point found on a scanned line";
    return rep;
  }
  rep.smooth = true;
  rep.certificate.kind = SmoothnessKind::kSampled;
  rep.certificate.points_checked = checked;
  rep.certificate.detail = "no singular point among rational points of " + std::to_string(kSampledLines + 1) +
                           " scanned lines";
  return rep;
}

}  // namespace koszul
