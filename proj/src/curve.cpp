#include "koszul/curve.hpp"

#include <sstream>

#include "koszul/poly1.hpp"
#include "line_restriction.hpp"
#include "series.hpp"

namespace koszul {

std::string to_string(SmoothnessKind k) { return k == SmoothnessKind::kResultant ? "resultant" : "sampled"; }

int genus_of_degree(int d) { return (d - 1) * (d - 2) / 2; }

namespace {

Vec3 normalized(const PrimeField& f, Vec3 v) {
  for (int i = 2; i >= 0; --i) {
    if (!v[i].is_zero()) {
      const Fp s = f.inv(v[i]);
      for (Fp& c : v) c = f.mul(c, s);
      return v;
    }
  }
  throw InputError("the zero vector is not a projective point");
}

int last_nonzero(const Vec3& v) {
  for (int i = 2; i >= 0; --i)
    if (!v[i].is_zero()) return i;
  return -1;
}

std::array<int, 2> chart_axes(int chart) {
  switch (chart) {
    case 0: return {1, 2};
    case 1: return {0, 2};
    default: return {0, 1};
  }
}

Monomial pure_power(int var, int d) {
  Monomial m;
  m.e[var] = d;
  return m;
}

}  // namespace

PlaneCurve PlaneCurve::create(const HomogeneousForm& f) {
  const int d = f.degree();
  if (d < 3) throw InputError("plane curve degree must be at least 3, got " + std::to_string(d));
  if (static_cast<std::uint64_t>(f.field().modulus()) <= 4ull * static_cast<std::uint64_t>(d)) {
    throw InputError("field characteristic must exceed 4 * degree");
  }
  SmoothnessReport rep = smoothness_check(f);
  if (!rep.smooth) throw SingularCurveError(rep.detail, rep.witness);

  const PrimeField& field = f.field();
  Mat3 frame = identity3();
  if (f.coefficient(pure_power(2, d)).is_zero()) {
    if (!f.coefficient(pure_power(1, d)).is_zero()) {
      frame = Mat3{};
      frame[0][0] = frame[1][2] = frame[2][1] = Fp(1);
    } else if (!f.coefficient(pure_power(0, d)).is_zero()) {
      frame = Mat3{};
      frame[0][2] = frame[1][1] = frame[2][0] = Fp(1);
    } else {
      // Shear z toward a point (a:b:1) off the curve.
      bool found = false;
      for (std::int64_t a = 0; a < 64 && !found; ++a) {
        for (std::int64_t b = 0; b < 64 && !found; ++b) {
          if (!f.evaluate({field.from_int(a), field.from_int(b), field.one()}).is_zero()) {
            frame[0][2] = field.from_int(a);
            frame[1][2] = field.from_int(b);
            found = true;
          }
        }
      }
      if (!found) throw InputError("could not find a working frame making the curve monic in z");
    }
  }
  HomogeneousForm model = f.substitute(frame);
  model = model.scaled(field.inv(model.coefficient(pure_power(2, d))));
  return PlaneCurve(f, std::move(model), frame, rep.certificate);
}

CurvePoint PlaneCurve::make_point(const Vec3& coords) const {
  const PrimeField& f = field();
  CurvePoint pt;
  pt.coords = normalized(f, coords);
  if (!form_.evaluate(pt.coords).is_zero()) throw InputError("point is not on the curve");
  bool smooth = false;
  for (int i = 0; i < 3; ++i) smooth = smooth || !form_.partial(i).evaluate(pt.coords).is_zero();
  if (!smooth) throw InputError("point is a singular point of the curve");
  pt.model = normalized(f, apply(f, inverse(f, frame_), pt.coords));
  pt.chart = last_nonzero(pt.model);
  const auto axes = chart_axes(pt.chart);
  pt.tangent_vertical = model_.partial(axes[1]).evaluate(pt.model).is_zero();
  return pt;
}

HomogeneousForm PlaneCurve::normal_form(HomogeneousForm g) const {
  const int d = degree();
  const PrimeField& f = field();
  int max_z = 0;
  for (const auto& [m, c] : g.terms()) max_z = std::max(max_z, m.e[2]);
  if (max_z < d) return g;

  // tail = -(model - z^d); z^e for e >= d rewritten recursively.
  HomogeneousForm tail(f, d);
  for (const auto& [m, c] : model_.terms()) {
    if (m.e[2] != d) tail.add_term(m, f.neg(c));
  }
  std::vector<HomogeneousForm> z_power_nf;  // index e - d
  z_power_nf.push_back(tail);
  for (int e = d + 1; e <= max_z; ++e) {
    HomogeneousForm next(f, e);
    for (const auto& [m, c] : z_power_nf.back().terms()) {
      Monomial up = m;
      ++up.e[2];
      if (up.e[2] < d) {
        next.add_term(up, c);
      } else {
        Monomial rest = up;
        rest.e[2] -= d;
        next = next + tail.times_monomial(rest, c);
      }
    }
    z_power_nf.push_back(std::move(next));
  }

  HomogeneousForm out(f, g.degree());
  for (const auto& [m, c] : g.terms()) {
    if (m.e[2] < d) {
      out.add_term(m, c);
    } else {
      const Monomial xy{{m.e[0], m.e[1], 0}};
      out = out + z_power_nf[m.e[2] - d].times_monomial(xy, c);
    }
  }
  return out;
}

std::string PlaneCurve::describe() const {
  std::ostringstream os;
  os << "degree " << degree() << " curve " << form_.to_string() << " over GF(" << field().modulus() << ")";
  return os.str();
}

std::vector<CurvePoint> find_rational_points(const PlaneCurve& curve, std::size_t max_count) {
  std::vector<CurvePoint> out;
  if (max_count == 0) return out;
  const PrimeField& f = curve.field();
  const HomogeneousForm& F = curve.form();

  auto take = [&](const Vec3& p) {
    // Skip singular points defensively; a smooth curve has none.
    for (int i = 0; i < 3; ++i) {
      if (!F.partial(i).evaluate(p).is_zero()) {
        out.push_back(curve.make_point(p));
        return;
      }
    }
  };

  if (F.evaluate({f.one(), Fp(0), Fp(0)}).is_zero()) take({f.one(), Fp(0), Fp(0)});
  {
    poly1::Poly h = restrict_to_line(F, {Fp(0), f.one(), Fp(0)}, {f.one(), Fp(0), Fp(0)});
    if (!h.empty()) {
      for (Fp a : poly1::roots(f, h)) {
        if (out.size() >= max_count) return out;
        take({a, f.one(), Fp(0)});
      }
    }
  }
  for (std::uint64_t a = 0; a < f.modulus() && out.size() < max_count; ++a) {
    const Fp av(static_cast<std::uint32_t>(a));
    poly1::Poly h = restrict_to_line(F, {av, Fp(0), f.one()}, {Fp(0), f.one(), Fp(0)});
    if (h.empty()) continue;
    for (Fp b : poly1::roots(f, h)) {
      if (out.size() >= max_count) break;
      take({av, b, f.one()});
    }
  }
  if (out.size() > max_count) out.resize(max_count);
  return out;
}

namespace {

// g(u, v) in the chart of `axes`, evaluated on series.
series::Series eval_on_series(const PrimeField& f, const HomogeneousForm& g, const std::array<int, 2>& axes,
                              const std::vector<series::Series>& upow, const std::vector<series::Series>& vpow,
                              std::size_t n) {
  series::Series acc(n, Fp(0));
  for (const auto& [m, c] : g.terms()) {
    series::Series t = series::mul(f, upow[m.e[axes[0]]], vpow[m.e[axes[1]]], n);
    for (std::size_t k = 0; k < n; ++k) acc[k] = f.fma(acc[k], c, t[k]);
  }
  return acc;
}

}  // namespace

BranchExpansion branch_expansion(const PlaneCurve& curve, const CurvePoint& point, int precision) {
  if (precision < 1) throw InputError("branch precision must be at least 1");
  const PrimeField& f = curve.field();
  const HomogeneousForm& F = curve.model_form();
  if (!F.evaluate(point.model).is_zero()) throw InputError("point is not on the curve");
  const auto axes = chart_axes(point.chart);
  const HomogeneousForm fu = F.partial(axes[0]);
  const HomogeneousForm fv = F.partial(axes[1]);
  const bool vertical = fv.evaluate(point.model).is_zero();
  if (vertical && fu.evaluate(point.model).is_zero()) throw InputError("branch requested at a singular point");

  BranchExpansion br;
  br.point = point;
  br.precision = precision;
  br.axes = axes;
  // Columns (a, c) for s and (b, e) for w.
  br.change = vertical ? std::array<Fp, 4>{f.one(), f.one(), f.one(), Fp(0)}
                       : std::array<Fp, 4>{f.one(), Fp(0), Fp(0), f.one()};
  const Fp a = br.change[0], c = br.change[1], b = br.change[2], e = br.change[3];
  const Fp u0 = point.model[axes[0]], v0 = point.model[axes[1]];
  const int d = curve.degree();
  const std::size_t m = static_cast<std::size_t>(precision);

  auto coords = [&](const series::Series& w, std::size_t n) {
    series::Series u(n, Fp(0)), v(n, Fp(0));
    u[0] = u0;
    v[0] = v0;
    if (n > 1) {
      u[1] = a;
      v[1] = c;
    }
    for (std::size_t k = 0; k < n && k < w.size(); ++k) {
      u[k] = f.fma(u[k], b, w[k]);
      v[k] = f.fma(v[k], e, w[k]);
    }
    return std::pair{u, v};
  };

  // Newton lifting of w(t), doubling the precision each step.
  series::Series w(1, Fp(0));
  std::size_t prec = 1;
  while (prec < m) {
    prec = std::min(2 * prec, m);
    w.resize(prec, Fp(0));
    auto [u, v] = coords(w, prec);
    const auto upow = series::powers(f, u, d, prec);
    const auto vpow = series::powers(f, v, d, prec);
    const series::Series val = eval_on_series(f, F, axes, upow, vpow, prec);
    const series::Series du = eval_on_series(f, fu, axes, upow, vpow, prec);
    const series::Series dv = eval_on_series(f, fv, axes, upow, vpow, prec);
    series::Series dw(prec, Fp(0));
    for (std::size_t k = 0; k < prec; ++k) dw[k] = f.add(f.mul(b, du[k]), f.mul(e, dv[k]));
    const series::Series step = series::mul(f, val, series::inverse(f, dw, prec), prec);
    for (std::size_t k = 0; k < prec; ++k) w[k] = f.sub(w[k], step[k]);
  }
  auto [u, v] = coords(w, m);
  br.u = std::move(u);
  br.v = std::move(v);
  return br;
}

std::vector<Fp> restrict_to_branch(const HomogeneousForm& g, const BranchExpansion& br) {
  const PrimeField& f = g.field();
  const std::size_t n = static_cast<std::size_t>(br.precision);
  const auto upow = series::powers(f, br.u, g.degree(), n);
  const auto vpow = series::powers(f, br.v, g.degree(), n);
  return eval_on_series(f, g, br.axes, upow, vpow, n);
}

}  // namespace koszul
