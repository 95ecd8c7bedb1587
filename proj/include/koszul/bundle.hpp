#pragma once

#include <future>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "koszul/curve.hpp"

namespace koszul {

/// Effective divisor supported on smooth rational points.
class Divisor {
 public:
  Divisor() = default;

  void add(const CurvePoint& p, int multiplicity);
  int degree() const;
  bool empty() const { return points_.empty(); }
  const std::map<CurvePoint, int>& points() const { return points_; }
  Divisor operator+(const Divisor& o) const;
  Divisor scaled(int q) const;
  std::string to_string(const PrimeField& f) const;

  friend bool operator==(const Divisor&, const Divisor&) = default;

 private:
  std::map<CurvePoint, int> points_;
};

/// O_C(k)(-D): a twist-down line bundle.
class LineBundle {
 public:
  /// Validates that every point of D lies on the curve and is smooth.
  static LineBundle create(std::shared_ptr<const PlaneCurve> curve, int twist, Divisor minus = {});

  const PlaneCurve& curve() const { return *curve_; }
  const std::shared_ptr<const PlaneCurve>& curve_ptr() const { return curve_; }
  int twist() const { return twist_; }
  const Divisor& minus() const { return minus_; }
  int degree() const { return twist_ * curve_->degree() - minus_.degree(); }
  bool is_pure_twist() const { return minus_.empty(); }

  LineBundle tensor(const LineBundle& o) const;
  /// L^q for q >= 0.
  LineBundle power(int q) const;

  /// Canonical text identity: "O(k)" or "O(k)(-D)".
  std::string key() const;

 private:
  LineBundle(std::shared_ptr<const PlaneCurve> c, int k, Divisor d)
      : curve_(std::move(c)), twist_(k), minus_(std::move(d)) {}

  std::shared_ptr<const PlaneCurve> curve_;
  int twist_;
  Divisor minus_;
};

/// Echelonized basis of H^0 of a twist-down bundle, as working-frame forms of
/// degree `twist` in normal form modulo the curve equation.
class SectionSpace {
 public:
  SectionSpace(LineBundle bundle, std::vector<HomogeneousForm> basis, std::vector<Monomial> pivots)
      : bundle_(std::move(bundle)), basis_(std::move(basis)), pivots_(std::move(pivots)) {}

  const LineBundle& bundle() const { return bundle_; }
  std::size_t h0() const { return basis_.size(); }
  const std::vector<HomogeneousForm>& basis() const { return basis_; }
  /// Leading (graded-lex) monomial of each basis form; no other basis form contains it.
  const std::vector<Monomial>& pivots() const { return pivots_; }

  /// Coordinates of a normal-form element of this space in the echelon basis.
  std::vector<Fp> coordinates(const HomogeneousForm& s) const;
  /// True if `s` (normal form) lies in the span.
  bool contains(const HomogeneousForm& s) const;

 private:
  LineBundle bundle_;
  std::vector<HomogeneousForm> basis_;
  std::vector<Monomial> pivots_;
};

/// Degree-k monomials with z-degree below d: a basis of H^0(O_C(k)).
std::vector<Monomial> normal_form_monomials(int d, int k);

/// Computes H^0(bundle) directly (no memo).
SectionSpace compute_sections(const LineBundle& bundle);

/// Per-curve memo of section spaces. The first requester of a key computes it;
/// concurrent requesters of the same key wait for that result.
class SectionCache {
 public:
  explicit SectionCache(std::shared_ptr<const PlaneCurve> curve) : curve_(std::move(curve)) {}

  const std::shared_ptr<const PlaneCurve>& curve_ptr() const { return curve_; }
  /// Throws std::invalid_argument for a bundle on a different curve.
  std::shared_ptr<const SectionSpace> get(const LineBundle& bundle);
  std::size_t size() const;
  /// Spaces computed so far, in key order.
  std::vector<std::shared_ptr<const SectionSpace>> spaces() const;

 private:
  std::shared_ptr<const PlaneCurve> curve_;
  mutable std::mutex mu_;
  std::map<std::string, std::shared_future<std::shared_ptr<const SectionSpace>>> memo_;
};

/// Product of two sections reduced to normal form.
HomogeneousForm multiply_sections(const PlaneCurve& curve, const HomogeneousForm& a, const HomogeneousForm& b);

enum class H1Route { kSerreDual, kDegree, kRiemannRoch };
std::string to_string(H1Route r);

struct H1Value {
  long long value;
  H1Route route;
};

/// h^1 by Serre duality (pure twists), by degree (deg > 2g - 2), or from h^0
/// through Riemann-Roch, tried in that order.
H1Value h1(SectionCache& cache, const LineBundle& bundle);

enum class VeryAmpleKind { kTheoretical, kRationalDivisor, kCounterexample };
std::string to_string(VeryAmpleKind k);

struct VeryAmpleCertificate {
  VeryAmpleKind kind;
  std::string reason;
  std::size_t divisors_checked = 0;
  std::optional<Divisor> counterexample;
  /// h^0(B(-xi)) for the counterexample.
  std::size_t counterexample_h0 = 0;
};

/// p-very ampleness of a pure twist B = O_C(k). Throws InputError for
/// divisor-twisted B.
VeryAmpleCertificate p_very_ample_certificate(SectionCache& cache, const LineBundle& b, int p);

/// Rational part of the intersection of the curve with the line through two
/// distinct points (user coordinates), with multiplicities.
Divisor line_section(const PlaneCurve& curve, const Vec3& a, const Vec3& b);
/// Rational part of the tangent-line section at a point.
Divisor tangent_section(const PlaneCurve& curve, const CurvePoint& p);

}  // namespace koszul
