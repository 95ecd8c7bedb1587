#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "koszul/form.hpp"

namespace koszul {

/// Smooth rational point of a plane curve.
/// `coords` are the user-facing coordinates, `model` the same point in the
/// curve's working frame; both are normalized so the last nonzero entry is 1.
struct CurvePoint {
  Vec3 coords{};
  Vec3 model{};
  /// Index of the working-frame coordinate set to 1 (the affine chart).
  int chart = 2;
  /// The curve's tangent at the point is parallel to the chart's second axis.
  bool tangent_vertical = false;

  friend bool operator==(const CurvePoint& a, const CurvePoint& b) { return a.coords == b.coords; }
  friend bool operator<(const CurvePoint& a, const CurvePoint& b) { return a.coords < b.coords; }
};

enum class SmoothnessKind { kResultant, kSampled };

struct SmoothnessCertificate {
  SmoothnessKind kind = SmoothnessKind::kResultant;
  /// Coordinate frames tried before the elimination certified (resultant kind).
  int frames_tried = 0;
  /// Rational points inspected (sampled kind).
  std::size_t points_checked = 0;
  std::string detail;
};

std::string to_string(SmoothnessKind k);

/// Thrown when a curve is singular. `witness` holds a rational singular point
/// when one was found.
class SingularCurveError : public InputError {
 public:
  SingularCurveError(const std::string& msg, std::optional<Vec3> witness)
      : InputError(msg), witness(witness) {}
  std::optional<Vec3> witness;
};

/// Either a certificate of smoothness or a rational singular point.
struct SmoothnessReport {
  bool smooth = false;
  SmoothnessCertificate certificate;
  std::optional<Vec3> witness;
  std::string detail;
};

/// Runs the resultant elimination (degree <= 6) or a sampled scan otherwise.
SmoothnessReport smoothness_check(const HomogeneousForm& f);

/// Validated smooth plane curve of degree d >= 3.
///
/// All section computations happen in a working frame where the curve is
/// monic in z: model(X) = c * F(T X), recorded as `frame()`. For most inputs
/// T is the identity.
class PlaneCurve {
 public:
  static PlaneCurve create(const HomogeneousForm& f);

  const PrimeField& field() const { return form_.field(); }
  const HomogeneousForm& form() const { return form_; }
  const HomogeneousForm& model_form() const { return model_; }
  /// User coordinates = frame() * working coordinates.
  const Mat3& frame() const { return frame_; }
  int degree() const { return form_.degree(); }
  int genus() const { return (degree() - 1) * (degree() - 2) / 2; }
  const SmoothnessCertificate& certificate() const { return certificate_; }

  /// Validates that (a:b:c) lies on the curve and is smooth there.
  CurvePoint make_point(const Vec3& coords) const;

  /// Rewrites a working-frame form so its z-degree is below d.
  HomogeneousForm normal_form(HomogeneousForm g) const;

  std::string describe() const;

 private:
  PlaneCurve(HomogeneousForm form, HomogeneousForm model, Mat3 frame, SmoothnessCertificate cert)
      : form_(std::move(form)), model_(std::move(model)), frame_(frame), certificate_(std::move(cert)) {}

  HomogeneousForm form_;
  HomogeneousForm model_;
  Mat3 frame_;
  SmoothnessCertificate certificate_;
};

int genus_of_degree(int d);

/// Deterministic scan: (1:0:0), then (a:1:0) by a, then (a:b:1) by a then b.
std::vector<CurvePoint> find_rational_points(const PlaneCurve& curve, std::size_t max_count);

/// Local parameterization t -> (u(t), v(t)) of the branch through a point, in
/// the affine chart of the working frame. The parameter is the coordinate s of
/// the linear change (u, v) = (u0, v0) + s * (a, c) + w * (b, e) with w = w(t), s = t.
struct BranchExpansion {
  CurvePoint point;
  int precision = 1;
  /// Working-frame coordinate indices used as (u, v).
  std::array<int, 2> axes{0, 1};
  /// Columns (a, c) and (b, e) of the recorded coordinate change.
  std::array<Fp, 4> change{};
  std::vector<Fp> u;
  std::vector<Fp> v;
};

BranchExpansion branch_expansion(const PlaneCurve& curve, const CurvePoint& point, int precision);

/// Coefficients of f(u(t), v(t)) mod t^precision for a working-frame form,
/// dehomogenized in the branch's chart.
std::vector<Fp> restrict_to_branch(const HomogeneousForm& g, const BranchExpansion& branch);

}  // namespace koszul
