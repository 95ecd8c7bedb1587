#include "koszul/bundle.hpp"

#include <chrono>
#include <sstream>
#include <stdexcept>

#include "koszul/dense.hpp"
#include "koszul/poly1.hpp"
#include "line_restriction.hpp"

namespace koszul {

void Divisor::add(const CurvePoint& p, int multiplicity) {
  if (multiplicity < 1) throw InputError("divisor multiplicities must be positive");
  points_[p] += multiplicity;
}

int Divisor::degree() const {
  int deg = 0;
  for (const auto& [p, m] : points_) deg += m;
  return deg;
}

Divisor Divisor::operator+(const Divisor& o) const {
  Divisor out = *this;
  for (const auto& [p, m] : o.points_) out.points_[p] += m;
  return out;
}

Divisor Divisor::scaled(int q) const {
  Divisor out;
  if (q <= 0) return out;
  for (const auto& [p, m] : points_) out.points_[p] = m * q;
  return out;
}

std::string Divisor::to_string(const PrimeField&) const {
  std::ostringstream os;
  bool first = true;
  for (const auto& [p, m] : points_) {
    if (!first) os << '+';
    first = false;
    if (m != 1) os << m << '*';
    os << '(' << p.coords[0].v << ':' << p.coords[1].v << ':' << p.coords[2].v << ')';
  }
  return os.str();
}

LineBundle LineBundle::create(std::shared_ptr<const PlaneCurve> curve, int twist, Divisor minus) {
  if (!curve) throw std::invalid_argument("bundle needs a curve");
  Divisor checked;
  for (const auto& [p, m] : minus.points()) checked.add(curve->make_point(p.coords), m);
  return LineBundle(std::move(curve), twist, std::move(checked));
}

LineBundle LineBundle::tensor(const LineBundle& o) const {
  if (curve_ != o.curve_) throw std::invalid_argument("bundles live on different curves");
  return LineBundle(curve_, twist_ + o.twist_, minus_ + o.minus_);
}

LineBundle LineBundle::power(int q) const {
  if (q < 0) throw std::invalid_argument("negative bundle powers are not representable");
  return LineBundle(curve_, twist_ * q, minus_.scaled(q));
}

std::string LineBundle::key() const {
  std::string s = "O(" + std::to_string(twist_) + ")";
  if (!minus_.empty()) s += "(-" + minus_.to_string(curve_->field()) + ")";
  return s;
}

std::vector<Fp> SectionSpace::coordinates(const HomogeneousForm& s) const {
  std::vector<Fp> out;
  out.reserve(pivots_.size());
  for (const Monomial& m : pivots_) out.push_back(s.coefficient(m));
  return out;
}

bool SectionSpace::contains(const HomogeneousForm& s) const {
  if (s.is_zero()) return true;
  if (basis_.empty() || s.degree() != basis_.front().degree()) return false;
  HomogeneousForm rest = s;
  const std::vector<Fp> c = coordinates(s);
  for (std::size_t i = 0; i < basis_.size(); ++i) rest = rest - basis_[i].scaled(c[i]);
  return rest.is_zero();
}

std::vector<Monomial> normal_form_monomials(int d, int k) {
  std::vector<Monomial> out;
  for (const Monomial& m : monomials_of_degree(k))
    if (m.e[2] < d) out.push_back(m);
  return out;
}

SectionSpace compute_sections(const LineBundle& bundle) {
  const PlaneCurve& curve = bundle.curve();
  const PrimeField& f = curve.field();
  const int k = bundle.twist();
  if (k < 0 || bundle.degree() < 0) return SectionSpace(bundle, {}, {});

  const std::vector<Monomial> mons = normal_form_monomials(curve.degree(), k);
  const std::size_t n = mons.size();
  auto to_form = [&](const std::vector<Fp>& v) {
    HomogeneousForm g(f, k);
    for (std::size_t j = 0; j < n; ++j)
      if (!v[j].is_zero()) g.add_term(mons[j], v[j]);
    return g;
  };

  if (bundle.is_pure_twist()) {
    std::vector<HomogeneousForm> basis;
    for (const Monomial& m : mons) {
      HomogeneousForm g(f, k);
      g.add_term(m, f.one());
      basis.push_back(std::move(g));
    }
    return SectionSpace(bundle, std::move(basis), mons);
  }

  // One row per jet condition: the t^i coefficient along each branch.
  DenseRows conditions;
  for (const auto& [pt, mult] : bundle.minus().points()) {
    const BranchExpansion br = branch_expansion(curve, pt, mult);
    const std::size_t first = conditions.size();
    conditions.resize(first + static_cast<std::size_t>(mult), std::vector<Fp>(n, Fp(0)));
    for (std::size_t j = 0; j < n; ++j) {
      HomogeneousForm g(f, k);
      g.add_term(mons[j], f.one());
      const std::vector<Fp> jet = restrict_to_branch(g, br);
      for (int i = 0; i < mult; ++i) conditions[first + i][j] = jet[i];
    }
  }
  const Echelon e = rref(f, nullspace(f, conditions, n), n);
  std::vector<HomogeneousForm> basis;
  std::vector<Monomial> pivots;
  for (std::size_t i = 0; i < e.rows.size(); ++i) {
    basis.push_back(to_form(e.rows[i]));
    pivots.push_back(mons[e.pivots[i]]);
  }
  return SectionSpace(bundle, std::move(basis), std::move(pivots));
}

std::shared_ptr<const SectionSpace> SectionCache::get(const LineBundle& bundle) {
  if (bundle.curve_ptr() != curve_) throw std::invalid_argument("section cache used with a foreign curve");
  const std::string key = bundle.key();
  std::promise<std::shared_ptr<const SectionSpace>> promise;
  std::shared_future<std::shared_ptr<const SectionSpace>> existing;
  {
    std::lock_guard lock(mu_);
    auto it = memo_.find(key);
    if (it != memo_.end()) {
      existing = it->second;
    } else {
      memo_.emplace(key, promise.get_future().share());
    }
  }
  if (existing.valid()) return existing.get();
  try {
    auto space = std::make_shared<const SectionSpace>(compute_sections(bundle));
    promise.set_value(space);
    return space;
  } catch (...) {
    promise.set_exception(std::current_exception());
    throw;
  }
}

std::size_t SectionCache::size() const {
  std::lock_guard lock(mu_);
  return memo_.size();
}

std::vector<std::shared_ptr<const SectionSpace>> SectionCache::spaces() const {
  std::lock_guard lock(mu_);
  std::vector<std::shared_ptr<const SectionSpace>> out;
  for (const auto& [key, fut] : memo_) {
    if (fut.wait_for(std::chrono::seconds(0)) != std::future_status::ready) continue;
    try {
      out.push_back(fut.get());
    } catch (...) {
    }
  }
  return out;
}

HomogeneousForm multiply_sections(const PlaneCurve& curve, const HomogeneousForm& a, const HomogeneousForm& b) {
  return curve.normal_form(a * b);
}

std::string to_string(H1Route r) {
  switch (r) {
    case H1Route::kSerreDual: return "serre-dual";
    case H1Route::kDegree: return "degree";
    case H1Route::kRiemannRoch: return "riemann-roch";
  }
  return "?";
}

H1Value h1(SectionCache& cache, const LineBundle& bundle) {
  const PlaneCurve& curve = bundle.curve();
  const int g = curve.genus();
  if (bundle.is_pure_twist()) {
    const LineBundle dual = LineBundle::create(bundle.curve_ptr(), curve.degree() - 3 - bundle.twist());
    return {static_cast<long long>(cache.get(dual)->h0()), H1Route::kSerreDual};
  }
  if (bundle.degree() > 2 * g - 2) return {0, H1Route::kDegree};
  const long long h0 = static_cast<long long>(cache.get(bundle)->h0());
  return {h0 - bundle.degree() + g - 1, H1Route::kRiemannRoch};
}

std::string to_string(VeryAmpleKind k) {
  switch (k) {
    case VeryAmpleKind::kTheoretical: return "theoretical";
    case VeryAmpleKind::kRationalDivisor: return "rational-divisor";
    case VeryAmpleKind::kCounterexample: return "counterexample";
  }
  return "?";
}

Divisor line_section(const PlaneCurve& curve, const Vec3& a, const Vec3& b) {
  const PrimeField& f = curve.field();
  const poly1::Poly h = restrict_to_line(curve.form(), a, b);
  if (h.empty()) throw std::logic_error("a smooth plane curve contains no line");
  Divisor out;
  for (const auto& [t, mult] : poly1::roots_with_multiplicity(f, h)) {
    Vec3 p;
    for (int i = 0; i < 3; ++i) p[i] = f.fma(a[i], t, b[i]);
    out.add(curve.make_point(p), mult);
  }
  // Roots lost to the degree drop sit at the point b itself.
  const int at_b = curve.degree() - poly1::degree(h);
  if (at_b > 0) out.add(curve.make_point(b), at_b);
  return out;
}

Divisor tangent_section(const PlaneCurve& curve, const CurvePoint& p) {
  const PrimeField& f = curve.field();
  Vec3 grad;
  for (int i = 0; i < 3; ++i) grad[i] = curve.form().partial(i).evaluate(p.coords);
  auto cross = [&](const Vec3& u, const Vec3& v) {
    return Vec3{f.sub(f.mul(u[1], v[2]), f.mul(u[2], v[1])), f.sub(f.mul(u[2], v[0]), f.mul(u[0], v[2])),
                f.sub(f.mul(u[0], v[1]), f.mul(u[1], v[0]))};
  };
  auto is_zero = [](const Vec3& v) { return v[0].is_zero() && v[1].is_zero() && v[2].is_zero(); };
  for (int k = 0; k < 3; ++k) {
    Vec3 e{};
    e[k] = f.one();
    const Vec3 r = cross(grad, e);
    if (!is_zero(r) && !is_zero(cross(r, p.coords))) return line_section(curve, p.coords, r);
  }
  throw std::logic_error("tangent line has no second point");
}

namespace {

constexpr std::size_t kSearchPoints = 8;
constexpr std::size_t kMaxMultisets = 256;

/// First `size` points of a divisor's multiset, in point order.
Divisor truncated(const Divisor& d, int size) {
  Divisor out;
  for (const auto& [p, m] : d.points()) {
    if (size == 0) break;
    const int take = std::min(m, size);
    out.add(p, take);
    size -= take;
  }
  return out;
}

}  // namespace

VeryAmpleCertificate p_very_ample_certificate(SectionCache& cache, const LineBundle& b, int p) {
  if (!b.is_pure_twist()) throw InputError("p-very ampleness is only certified for pure twists O(k)");
  if (p < 0) throw InputError("p must be non-negative");
  const PlaneCurve& curve = b.curve();
  const int g = curve.genus();
  const int d = curve.degree();
  VeryAmpleCertificate cert;
  if (b.degree() >= 2 * g + p) {
    cert.kind = VeryAmpleKind::kTheoretical;
    cert.reason = "deg B = " + std::to_string(b.degree()) + " >= 2g + p = " + std::to_string(2 * g + p);
    return cert;
  }
  if (b.twist() == d - 3 && p <= d - 3) {
    cert.kind = VeryAmpleKind::kTheoretical;
    cert.reason = "B is canonical and p <= gon - 2 = " + std::to_string(d - 3);
    return cert;
  }

  const long long h0 = static_cast<long long>(cache.get(b)->h0());
  const long long expected = h0 - p - 1;
  const std::vector<CurvePoint> pts = find_rational_points(curve, kSearchPoints);

  std::vector<Divisor> candidates;
  auto push = [&](const Divisor& xi) {
    if (xi.degree() != p + 1) return;
    for (const Divisor& c : candidates)
      if (c == xi) return;
    candidates.push_back(xi);
  };
  // Collinear points are the natural obstruction for low twists.
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = i + 1; j < pts.size(); ++j) push(truncated(line_section(curve, pts[i].coords, pts[j].coords), p + 1));
    push(truncated(tangent_section(curve, pts[i]), p + 1));
  }
  // Multisets of size p + 1 drawn from the scanned points.
  std::vector<std::size_t> idx(static_cast<std::size_t>(p) + 1, 0);
  for (std::size_t count = 0; !pts.empty() && count < kMaxMultisets; ++count) {
    Divisor xi;
    for (std::size_t i : idx) xi.add(pts[i], 1);
    push(xi);
    int pos = static_cast<int>(idx.size()) - 1;
    while (pos >= 0 && idx[pos] + 1 == pts.size()) --pos;
    if (pos < 0) break;
    const std::size_t v = idx[pos] + 1;
    for (std::size_t q = pos; q < idx.size(); ++q) idx[q] = v;
  }

  for (const Divisor& xi : candidates) {
    ++cert.divisors_checked;
    const LineBundle twisted = LineBundle::create(b.curve_ptr(), b.twist(), xi);
    const long long h = static_cast<long long>(compute_sections(twisted).h0());
    if (h != expected) {
      cert.kind = VeryAmpleKind::kCounterexample;
      cert.reason = "h0(B(-xi)) = " + std::to_string(h) + " but h0(B) - p - 1 = " + std::to_string(expected);
      cert.counterexample = xi;
      cert.counterexample_h0 = static_cast<std::size_t>(h);
      return cert;
    }
  }
  cert.kind = VeryAmpleKind::kRationalDivisor;
  cert.reason = "all " + std::to_string(cert.divisors_checked) + " checked rational divisors impose independent conditions";
  return cert;
}

}  // namespace koszul
