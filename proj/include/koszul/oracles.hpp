#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace koszul {

/// Numerical invariants of a smooth plane curve of degree d.
struct CurveInvariants {
  int d = 0;
  int g = 0;
  int gon = 0;
  /// d - 4 for d >= 5; 0 for g <= 3 by convention.
  int cliff = 0;
};

CurveInvariants plane_invariants(int d);

enum class ClaimKind { kNonzero, kZero, kEquals };

/// A predicted property of kappa_{p,q}(C, O(b_twist); L).
struct Claim {
  int p = 0;
  int q = 1;
  ClaimKind kind = ClaimKind::kNonzero;
  std::uint64_t value = 0;  // for kEquals
  /// Which B the claim concerns: 0 for O_C, d - 3 for the canonical bundle.
  int b_twist = 0;

  bool holds(std::uint64_t kappa) const;
  std::string describe() const;
};

struct Prediction {
  std::string theorem;
  bool applicable = true;
  /// Why the oracle does not apply (violated inequality or missing data).
  std::string reason;
  std::vector<std::string> hypotheses;
  std::vector<Claim> claims;
  /// Exceptional-case or classification tag, empty when none.
  std::string tag;

  static Prediction not_applicable(std::string theorem, std::string reason);
};

/// Weight-one nonvanishing set for deg L >= 2g + gon - 2: p in [1, r - gon],
/// extended by one in the two exceptional constructions.
Prediction predict_weight_one(int g, int gon, int deg_l, bool plane_omega_h, bool omega_xi);

/// kappa_{r - gon, 1} != 0 (and hence every smaller p >= 1) once deg L >= 2g + gon - 2.
Prediction predict_gonality_nonvanishing(int g, int gon, int deg_l);

/// True when the weight-two vanishing applies: p <= deg L - 2g - 1.
bool green_vanishes(int g, int deg_l, int p);

/// Weight-two claims for p in [0, r]: vanishing for p <= deg L - 2g - 1 and,
/// when deg L >= 3g - 2, the exact window r - g <= p <= r - 1.
Prediction predict_green(int g, int deg_l);

/// kappa_{p,1}(C; M1 (x) M2) != 0 for 1 <= p <= r1 + r2 - 1.
Prediction predict_gl_nonvanishing(int r1, int r2);

/// Vanishing criterion for kappa_{p,1}(C, B; L) when B is p-very ample:
/// deg L >= 2g + p + h0(L - B) - h1(B).
bool effective_vanishing_holds(int g, int h1_b, int h0_l_minus_b, int deg_l, int p);
Prediction predict_vanishing_thm13(int g, int deg_b, int h1_b, int h0_l_minus_b, int deg_l, int p,
                                   bool b_p_very_ample, int b_twist);

/// Canonical-bundle criterion: kappa_{p,1}(C, omega; L) != 0 iff
/// h1(L - omega) >= g - p - 1, for omega p-very ample and deg L >= 2g + p.
/// With omega_not_next_very_ample, also kappa_{p+1,1}(C, omega; L) != 0 except
/// (g, p, deg L) = (2, 0, 4) where it vanishes.
Prediction predict_cor42(int g, int p, int deg_l, int h1_l_minus_omega, bool omega_p_very_ample,
                         bool omega_not_next_very_ample, int omega_twist);

struct ClassifyInput {
  int g = 0;
  int p = 0;
  int deg_b = 0;
  int h0_b = 0;
  int h1_b = 0;
  int deg_l = 0;
  int cliff = 0;
  int h0_l_minus_b = 0;
  int h1_l_minus_b = 0;
  bool b_p_very_ample = false;
  /// A witness showed B is not (p+1)-very ample.
  bool b_not_next_very_ample = false;
  bool l_globally_generated = false;
  /// B is a base point free pencil.
  bool b_bpf_pencil = false;
  /// |B| maps C isomorphically onto a plane curve of degree >= 4.
  bool b_plane_embedding = false;
  /// L - B computes Cliff(C); nullopt when unknown.
  std::optional<bool> l_minus_b_computes_cliff;
  int b_twist = 0;
};

/// Classification of kappa_{p,1}(C, B; L): tag in {vanish, exc1, exc2, exc3, no-claim}.
Prediction predict_thm14_classify(const ClassifyInput& in);

/// Degree bound 2g + floor((g-1)/2) with the plane and maximal-gonality exceptions.
Prediction predict_cor54(int g, int gon, int deg_l, bool plane_omega_h, bool omega_xi);

/// deg L >= 3g - 2 version; exceptional only for the plane quartic with
/// L = omega^2 or omega^2(-x) (and genus 2 with L = omega^2).
Prediction predict_three_g_minus_two(int g, int gon, int deg_l, bool quartic_omega_sq, bool quartic_omega_sq_minus_x,
                         bool genus2_omega_sq);

/// kappa_{p+1,1}(C, B; L) != 0 for B p-very ample but not (p+1)-very ample and deg L >= 2g + p + 1.
Prediction predict_not_very_ample(int g, int p, int deg_l, bool b_p_very_ample, bool b_not_next_very_ample, int b_twist);

/// dim kappa_{1,1}(C; L) = ((d - g)^2 - d - g) / 2 for deg L = d >= 2g + 1.
Prediction predict_quadric_count(int g, int deg_l);

/// deg L = 2g + p + 1 and H0(L - omega) != 0 imply kappa_{p+1,2}(C; L) != 0.
Prediction predict_np_failure(int g, int deg_l, bool h0_l_minus_omega_nonzero);

/// Contradiction between two claims on the same (p, q, B): one says zero and the
/// other nonzero, or two different exact values.
bool contradicts(const Claim& a, const Claim& b);

struct SweepResult {
  std::uint64_t tuples = 0;
  std::uint64_t comparisons = 0;
  std::vector<std::string> contradictions;
};

/// Exhaustive consistency sweep of the weight-one, weight-two and
/// Green-Lazarsfeld oracles over 2 <= g <= g_max, 2 <= gon <= floor((g+3)/2),
/// 2g + gon - 2 <= deg L <= 3g + 5.
SweepResult oracle_sweep(int g_max = 40);

}  // namespace koszul
