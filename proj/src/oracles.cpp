#include "koszul/oracles.hpp"

#include <map>
#include <tuple>

namespace koszul {

CurveInvariants plane_invariants(int d) {
  CurveInvariants c;
  c.d = d;
  c.g = (d - 1) * (d - 2) / 2;
  c.gon = d - 1;
  c.cliff = d >= 5 ? d - 4 : 0;
  return c;
}

bool Claim::holds(std::uint64_t kappa) const {
  switch (kind) {
    case ClaimKind::kNonzero: return kappa != 0;
    case ClaimKind::kZero: return kappa == 0;
    case ClaimKind::kEquals: return kappa == value;
  }
  return false;
}

std::string Claim::describe() const {
  std::string cell = "kappa(" + std::to_string(p) + "," + std::to_string(q) + ")";
  if (b_twist != 0) cell += "[B=O(" + std::to_string(b_twist) + ")]";
  switch (kind) {
    case ClaimKind::kNonzero: return cell + " != 0";
    case ClaimKind::kZero: return cell + " = 0";
    case ClaimKind::kEquals: return cell + " = " + std::to_string(value);
  }
  return cell;
}

Prediction Prediction::not_applicable(std::string theorem, std::string reason) {
  Prediction p;
  p.theorem = std::move(theorem);
  p.applicable = false;
  p.reason = std::move(reason);
  return p;
}

namespace {

std::string ineq(const std::string& lhs, long long a, const std::string& op, const std::string& rhs, long long b) {
  return lhs + " = " + std::to_string(a) + " " + op + " " + rhs + " = " + std::to_string(b);
}

/// Weight-one row claims over p in [0, r]: nonzero on [1, hi], zero elsewhere.
void weight_one_row(Prediction& pr, int r, int hi, int b_twist = 0) {
  for (int p = 0; p <= r; ++p) {
    Claim c;
    c.p = p;
    c.q = 1;
    c.b_twist = b_twist;
    c.kind = (p >= 1 && p <= hi) ? ClaimKind::kNonzero : ClaimKind::kZero;
    pr.claims.push_back(c);
  }
}

Claim claim(int p, int q, ClaimKind kind, int b_twist = 0, std::uint64_t value = 0) {
  Claim c;
  c.p = p;
  c.q = q;
  c.kind = kind;
  c.b_twist = b_twist;
  c.value = value;
  return c;
}

}  // namespace

Prediction predict_weight_one(int g, int gon, int deg_l, bool plane_omega_h, bool omega_xi) {
  const std::string id = "effective-gonality";
  if (g < 2) return Prediction::not_applicable(id, "g = " + std::to_string(g) + " < 2");
  const int bound = 2 * g + gon - 2;
  if (deg_l < bound) return Prediction::not_applicable(id, ineq("deg L", deg_l, "<", "2g + gon - 2", bound));
  if (deg_l <= 2 * g - 2) return Prediction::not_applicable(id, "L may be special");
  if (plane_omega_h && deg_l != 2 * g + gon - 1)
    return Prediction::not_applicable(id, "plane construction flagged but deg L != 2g + gon - 1");
  if (omega_xi && deg_l != 2 * g + gon - 2)
    return Prediction::not_applicable(id, "omega(xi) construction flagged but deg L != 2g + gon - 2");
  Prediction pr;
  pr.theorem = id;
  pr.hypotheses.push_back(ineq("deg L", deg_l, ">=", "2g + gon - 2", bound));
  const int r = deg_l - g;
  int hi = r - gon;
  if (plane_omega_h) {
    pr.tag = "plane-omega-h";
    ++hi;
  } else if (omega_xi) {
    pr.tag = "omega-xi";
    ++hi;
  }
  weight_one_row(pr, r, hi);
  return pr;
}

Prediction predict_gonality_nonvanishing(int g, int gon, int deg_l) {
  const std::string id = "gonality-nonvanishing";
  if (g < 2) return Prediction::not_applicable(id, "g < 2");
  const int bound = 2 * g + gon - 2;
  if (deg_l < bound) return Prediction::not_applicable(id, ineq("deg L", deg_l, "<", "2g + gon - 2", bound));
  Prediction pr;
  pr.theorem = id;
  pr.hypotheses.push_back(ineq("deg L", deg_l, ">=", "2g + gon - 2", bound));
  const int r = deg_l - g;
  for (int p = 1; p <= r - gon; ++p) pr.claims.push_back(claim(p, 1, ClaimKind::kNonzero));
  return pr;
}

bool green_vanishes(int g, int deg_l, int p) { return p >= 0 && p <= deg_l - 2 * g - 1; }

Prediction predict_green(int g, int deg_l) {
  const std::string id = "green-weight-two";
  if (g < 2) return Prediction::not_applicable(id, "g < 2");
  if (deg_l < 2 * g + 1) return Prediction::not_applicable(id, ineq("deg L", deg_l, "<", "2g + 1", 2 * g + 1));
  Prediction pr;
  pr.theorem = id;
  const int r = deg_l - g;
  pr.hypotheses.push_back("vanishing for p <= deg L - 2g - 1 = " + std::to_string(deg_l - 2 * g - 1));
  const bool window = deg_l >= 3 * g - 2;
  if (window) {
    pr.hypotheses.push_back(ineq("deg L", deg_l, ">=", "3g - 2", 3 * g - 2));
    pr.tag = "exact-window";
  }
  for (int p = 0; p <= r; ++p) {
    if (green_vanishes(g, deg_l, p)) {
      pr.claims.push_back(claim(p, 2, ClaimKind::kZero));
    } else if (window) {
      const bool inside = p >= r - g && p <= r - 1;
      pr.claims.push_back(claim(p, 2, inside ? ClaimKind::kNonzero : ClaimKind::kZero));
    }
  }
  return pr;
}

Prediction predict_gl_nonvanishing(int r1, int r2) {
  const std::string id = "gl-nonvanishing";
  if (r1 < 1 || r2 < 1)
    return Prediction::not_applicable(id, "r1 = " + std::to_string(r1) + ", r2 = " + std::to_string(r2) + "; both must be >= 1");
  Prediction pr;
  pr.theorem = id;
  pr.hypotheses.push_back("r1 = " + std::to_string(r1) + ", r2 = " + std::to_string(r2));
  for (int p = 1; p <= r1 + r2 - 1; ++p) pr.claims.push_back(claim(p, 1, ClaimKind::kNonzero));
  return pr;
}

bool effective_vanishing_holds(int g, int h1_b, int h0_l_minus_b, int deg_l, int p) {
  return deg_l >= 2 * g + p + h0_l_minus_b - h1_b;
}

Prediction predict_vanishing_thm13(int g, int deg_b, int h1_b, int h0_l_minus_b, int deg_l, int p,
                                   bool b_p_very_ample, int b_twist) {
  const std::string id = "effective-vanishing";
  (void)deg_b;
  if (!b_p_very_ample) return Prediction::not_applicable(id, "B is not certified " + std::to_string(p) + "-very ample");
  const int bound = 2 * g + p + h0_l_minus_b - h1_b;
  Prediction pr;
  pr.theorem = id;
  pr.hypotheses.push_back("B is " + std::to_string(p) + "-very ample");
  if (deg_l < bound) {
    pr.tag = "no-claim";
    pr.hypotheses.push_back(ineq("deg L", deg_l, "<", "2g + p + h0(L-B) - h1(B)", bound));
    return pr;
  }
  pr.hypotheses.push_back(ineq("deg L", deg_l, ">=", "2g + p + h0(L-B) - h1(B)", bound));
  pr.tag = "vanish";
  pr.claims.push_back(claim(p, 1, ClaimKind::kZero, b_twist));
  return pr;
}

Prediction predict_cor42(int g, int p, int deg_l, int h1_l_minus_omega, bool omega_p_very_ample,
                         bool omega_not_next_very_ample, int omega_twist) {
  const std::string id = "canonical-weight-one";
  if (g < 2) return Prediction::not_applicable(id, "g < 2");
  if (!omega_p_very_ample) return Prediction::not_applicable(id, "omega is not " + std::to_string(p) + "-very ample");
  if (deg_l < 2 * g + p) return Prediction::not_applicable(id, ineq("deg L", deg_l, "<", "2g + p", 2 * g + p));
  Prediction pr;
  pr.theorem = id;
  pr.hypotheses.push_back("omega is " + std::to_string(p) + "-very ample");
  pr.hypotheses.push_back(ineq("deg L", deg_l, ">=", "2g + p", 2 * g + p));
  const bool nonzero = h1_l_minus_omega >= g - p - 1;
  pr.hypotheses.push_back(ineq("h1(L - omega)", h1_l_minus_omega, nonzero ? ">=" : "<", "g - p - 1", g - p - 1));
  pr.claims.push_back(claim(p, 1, nonzero ? ClaimKind::kNonzero : ClaimKind::kZero, omega_twist));
  if (omega_not_next_very_ample) {
    const bool edge = g == 2 && p == 0 && deg_l == 4;
    pr.hypotheses.push_back("omega is not " + std::to_string(p + 1) + "-very ample");
    pr.claims.push_back(claim(p + 1, 1, edge ? ClaimKind::kZero : ClaimKind::kNonzero, omega_twist));
    if (edge) pr.tag = "genus-two-edge";
  }
  return pr;
}

Prediction predict_thm14_classify(const ClassifyInput& in) {
  const std::string id = "weight-one-classification";
  if (in.g < 2) return Prediction::not_applicable(id, "g < 2");
  if (!in.b_p_very_ample) return Prediction::not_applicable(id, "B is not certified " + std::to_string(in.p) + "-very ample");
  if (!in.l_globally_generated) return Prediction::not_applicable(id, "L not known to be globally generated");
  const int first = 2 * in.g + in.p + 1 - in.h1_b;
  const int second = 4 * in.g + 2 * in.p - 2 * in.h1_b - in.cliff;
  if (in.deg_l < first)
    return Prediction::not_applicable(id, ineq("deg L", in.deg_l, "<", "2g + p + 1 - h1(B)", first));
  if (in.deg_b + in.deg_l < second)
    return Prediction::not_applicable(id, ineq("deg B + deg L", in.deg_b + in.deg_l, "<", "4g + 2p - 2h1(B) - Cliff", second));

  Prediction pr;
  pr.theorem = id;
  pr.hypotheses.push_back(ineq("deg L", in.deg_l, ">=", "2g + p + 1 - h1(B)", first));
  pr.hypotheses.push_back(ineq("deg B + deg L", in.deg_b + in.deg_l, ">=", "4g + 2p - 2h1(B) - Cliff", second));
  for (int i = 0; i + 1 <= in.p; ++i) pr.claims.push_back(claim(i, 1, ClaimKind::kZero, in.b_twist));

  const int vanishing_bound = 2 * in.g + in.p + in.h0_l_minus_b - in.h1_b;
  if (in.deg_l >= vanishing_bound) {
    pr.tag = "vanish";
    pr.claims.push_back(claim(in.p, 1, ClaimKind::kZero, in.b_twist));
  } else if (in.h1_l_minus_b <= 1) {
    pr.hypotheses.push_back("h1(L - B) = " + std::to_string(in.h1_l_minus_b));
    if (in.h1_l_minus_b == 1 && in.p == 0 && in.b_bpf_pencil) {
      pr.tag = "exc1";
      pr.claims.push_back(claim(0, 1, ClaimKind::kNonzero, in.b_twist));
    } else if (in.h1_l_minus_b == 1 && in.p == 1 && in.b_plane_embedding && in.h0_l_minus_b > 0) {
      pr.tag = "exc2";
      pr.claims.push_back(claim(1, 1, ClaimKind::kNonzero, in.b_twist));
    } else {
      pr.tag = "vanish";
      pr.claims.push_back(claim(in.p, 1, ClaimKind::kZero, in.b_twist));
    }
  } else {
    const bool equalities = in.deg_l == vanishing_bound - 1 && in.deg_b + in.deg_l == second;
    if (!equalities) {
      pr.tag = "vanish";
      pr.claims.push_back(claim(in.p, 1, ClaimKind::kZero, in.b_twist));
    } else if (!in.l_minus_b_computes_cliff) {
      pr.tag = "no-claim";
      pr.hypotheses.push_back("whether L - B computes Cliff(C) is unknown");
    } else if (*in.l_minus_b_computes_cliff) {
      pr.tag = "exc3";
      pr.hypotheses.push_back("L - B computes Cliff(C) = " + std::to_string(in.cliff));
      pr.claims.push_back(claim(in.p, 1, ClaimKind::kNonzero, in.b_twist));
    } else {
      pr.tag = "vanish";
      pr.claims.push_back(claim(in.p, 1, ClaimKind::kZero, in.b_twist));
    }
  }
  if (in.b_not_next_very_ample && in.deg_l >= 2 * in.g + in.p + 1) {
    pr.hypotheses.push_back("B is not " + std::to_string(in.p + 1) + "-very ample");
    pr.claims.push_back(claim(in.p + 1, 1, ClaimKind::kNonzero, in.b_twist));
  }
  return pr;
}

Prediction predict_cor54(int g, int gon, int deg_l, bool plane_omega_h, bool omega_xi) {
  const std::string id = "half-genus-bound";
  if (g < 2) return Prediction::not_applicable(id, "g < 2");
  const int bound = 2 * g + (g - 1) / 2;
  if (deg_l < bound) return Prediction::not_applicable(id, ineq("deg L", deg_l, "<", "2g + floor((g-1)/2)", bound));
  Prediction pr;
  pr.theorem = id;
  pr.hypotheses.push_back(ineq("deg L", deg_l, ">=", "2g + floor((g-1)/2)", bound));
  const int r = deg_l - g;
  int hi = r - gon;
  const auto triple = std::make_tuple(g, gon, deg_l);
  const bool plane_triple =
      triple == std::make_tuple(3, 3, 8) || triple == std::make_tuple(6, 4, 15) || triple == std::make_tuple(10, 5, 24);
  if (plane_omega_h && plane_triple) {
    pr.tag = "plane-omega-h";
    ++hi;
  } else if (omega_xi && gon == (g + 3) / 2) {
    pr.tag = "maximal-gonality-omega-xi";
    ++hi;
  } else if (plane_omega_h || omega_xi) {
    return Prediction::not_applicable(id, "exceptional construction outside the listed cases");
  }
  weight_one_row(pr, r, hi);
  return pr;
}

Prediction predict_three_g_minus_two(int g, int gon, int deg_l, bool quartic_omega_sq, bool quartic_omega_sq_minus_x,
                         bool genus2_omega_sq) {
  const std::string id = "three-g-minus-two";
  if (g < 2) return Prediction::not_applicable(id, "g < 2");
  if (deg_l < 3 * g - 2) return Prediction::not_applicable(id, ineq("deg L", deg_l, "<", "3g - 2", 3 * g - 2));
  Prediction pr;
  pr.theorem = id;
  pr.hypotheses.push_back(ineq("deg L", deg_l, ">=", "3g - 2", 3 * g - 2));
  const int r = deg_l - g;
  int hi = r - gon;
  if (quartic_omega_sq || quartic_omega_sq_minus_x || genus2_omega_sq) {
    pr.tag = quartic_omega_sq ? "quartic-omega-squared" : quartic_omega_sq_minus_x ? "quartic-omega-squared-minus-x"
                                                                                   : "genus-two-omega-squared";
    ++hi;
  }
  weight_one_row(pr, r, hi);
  return pr;
}

Prediction predict_not_very_ample(int g, int p, int deg_l, bool b_p_very_ample, bool b_not_next_very_ample, int b_twist) {
  const std::string id = "not-very-ample-nonvanishing";
  if (g < 2) return Prediction::not_applicable(id, "g < 2");
  if (!b_p_very_ample || !b_not_next_very_ample)
    return Prediction::not_applicable(id, "needs B " + std::to_string(p) + "-very ample with a witness against " +
                                              std::to_string(p + 1) + "-very ampleness");
  if (deg_l < 2 * g + p + 1) return Prediction::not_applicable(id, ineq("deg L", deg_l, "<", "2g + p + 1", 2 * g + p + 1));
  Prediction pr;
  pr.theorem = id;
  pr.hypotheses.push_back("B is " + std::to_string(p) + "-very ample but not " + std::to_string(p + 1) + "-very ample");
  pr.hypotheses.push_back(ineq("deg L", deg_l, ">=", "2g + p + 1", 2 * g + p + 1));
  pr.claims.push_back(claim(p + 1, 1, ClaimKind::kNonzero, b_twist));
  return pr;
}

Prediction predict_quadric_count(int g, int deg_l) {
  const std::string id = "quadric-count";
  if (deg_l < 2 * g + 1) return Prediction::not_applicable(id, ineq("deg L", deg_l, "<", "2g + 1", 2 * g + 1));
  Prediction pr;
  pr.theorem = id;
  pr.hypotheses.push_back(ineq("deg L", deg_l, ">=", "2g + 1", 2 * g + 1));
  const long long d = deg_l;
  const long long value = ((d - g) * (d - g) - d - g) / 2;
  pr.claims.push_back(claim(1, 1, ClaimKind::kEquals, 0, static_cast<std::uint64_t>(value)));
  return pr;
}

Prediction predict_np_failure(int g, int deg_l, bool h0_l_minus_omega_nonzero) {
  const std::string id = "np-failure";
  if (g < 1) return Prediction::not_applicable(id, "g < 1");
  const int p = deg_l - 2 * g - 1;
  if (p < 0) return Prediction::not_applicable(id, "deg L < 2g + 1");
  if (!h0_l_minus_omega_nonzero) return Prediction::not_applicable(id, "H0(L - omega) = 0");
  Prediction pr;
  pr.theorem = id;
  pr.hypotheses.push_back("deg L = 2g + p + 1 with p = " + std::to_string(p));
  pr.hypotheses.push_back("H0(L - omega) != 0");
  pr.claims.push_back(claim(p + 1, 2, ClaimKind::kNonzero));
  return pr;
}

bool contradicts(const Claim& a, const Claim& b) {
  if (a.p != b.p || a.q != b.q || a.b_twist != b.b_twist) return false;
  auto zero = [](const Claim& c) {
    return c.kind == ClaimKind::kZero || (c.kind == ClaimKind::kEquals && c.value == 0);
  };
  auto nonzero = [](const Claim& c) {
    return c.kind == ClaimKind::kNonzero || (c.kind == ClaimKind::kEquals && c.value != 0);
  };
  if ((zero(a) && nonzero(b)) || (nonzero(a) && zero(b))) return true;
  return a.kind == ClaimKind::kEquals && b.kind == ClaimKind::kEquals && a.value != b.value;
}

SweepResult oracle_sweep(int g_max) {
  SweepResult res;
  for (int g = 2; g <= g_max; ++g) {
    for (int gon = 2; gon <= (g + 3) / 2; ++gon) {
      for (int deg = 2 * g + gon - 2; deg <= 3 * g + 5; ++deg) {
        ++res.tuples;
        const bool plane_possible = gon >= 3 && g == gon * (gon - 1) / 2 && deg == 2 * g + gon - 1;
        struct Variant {
          bool plane;
          bool xi;
        };
        std::vector<Variant> variants{{false, false}};
        if (deg == 2 * g + gon - 2) variants.push_back({false, true});
        if (plane_possible) variants.push_back({true, false});
        for (const Variant& v : variants) {
          // Green-Lazarsfeld inputs from the gonality pencil (or the plane splitting).
          int r1 = 1, r2 = deg - gon - g;
          if (v.xi) r2 = g - 1;
          if (v.plane) {
            r1 = 2;
            r2 = g - 1;
          }
          std::vector<Prediction> preds{predict_weight_one(g, gon, deg, v.plane, v.xi), predict_green(g, deg),
                                        predict_gl_nonvanishing(r1, r2)};
          std::vector<Claim> all;
          std::vector<std::string> owner;
          for (const Prediction& pr : preds) {
            if (!pr.applicable) continue;
            for (const Claim& c : pr.claims) {
              all.push_back(c);
              owner.push_back(pr.theorem);
            }
          }
          std::map<std::pair<int, int>, std::vector<std::size_t>> by_cell;
          for (std::size_t i = 0; i < all.size(); ++i) by_cell[{all[i].p, all[i].q}].push_back(i);
          for (const auto& [cell, ids] : by_cell) {
            for (std::size_t a = 0; a < ids.size(); ++a) {
              for (std::size_t b = a + 1; b < ids.size(); ++b) {
                ++res.comparisons;
                if (contradicts(all[ids[a]], all[ids[b]])) {
                  res.contradictions.push_back("(g, gon, deg) = (" + std::to_string(g) + ", " + std::to_string(gon) +
                                               ", " + std::to_string(deg) + "): " + owner[ids[a]] + " says " +
                                               all[ids[a]].describe() + ", " + owner[ids[b]] + " says " +
                                               all[ids[b]].describe());
                }
              }
            }
          }
        }
      }
    }
  }
  return res;
}

}  // namespace koszul
