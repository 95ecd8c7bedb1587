#include "koszul/report.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <random>
#include <sstream>

namespace koszul {

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::kMatch: return "match";
    case Verdict::kMismatch: return "mismatch";
    case Verdict::kNotApplicable: return "not-applicable";
  }
  return "?";
}

bool VerifyReport::all_match() const {
  for (const OracleVerdict& o : oracles)
    if (o.verdict == Verdict::kMismatch) return false;
  for (const CheckResult* c : {&table.dsquared, &table.hilbert, &table.duality, &table.two_prime, &table.riemann_roch})
    if (c->status == CheckStatus::kFail) return false;
  return true;
}

namespace {

using CellKey = std::tuple<int, int, int>;

/// Serves kappa_{p,q}(C, O(b); L) from the table, the duality row, or a fresh
/// computation.
class KappaSource {
 public:
  KappaSource(SectionCache& cache, const LineBundle& b, const LineBundle& l, BettiTable& table, const RankOptions& opts)
      : cache_(cache), b_(b), l_(l), table_(table), opts_(opts) {}

  std::uint64_t get(int b_twist, int p, int q) {
    if (p < 0 || p > table_.r + 1) return 0;
    const int d = l_.curve().degree();
    if (b_twist == b_.twist()) {
      if (auto it = table_.cells.find({p, q}); it != table_.cells.end()) return it->second.kappa;
      if (auto it = table_.extra_cells.find({p, q}); it != table_.extra_cells.end()) return it->second.kappa;
      KoszulCell c = koszul_cell(complex(b_twist), p, q, opts_);
      const std::uint64_t k = c.kappa;
      table_.extra_cells.emplace(std::pair{p, q}, std::move(c));
      return k;
    }
    if (q == 1 && b_twist == d - 3 - b_.twist()) {
      if (auto it = table_.duality_row.find(p); it != table_.duality_row.end()) return it->second;
    }
    const CellKey key{b_twist, p, q};
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    const std::uint64_t k = koszul_dim(complex(b_twist), p, q, opts_);
    memo_.emplace(key, k);
    return k;
  }

 private:
  const KoszulComplex& complex(int b_twist) {
    auto it = complexes_.find(b_twist);
    if (it == complexes_.end())
      it = complexes_
               .emplace(b_twist, std::make_unique<KoszulComplex>(
                                     cache_, b_twist == b_.twist() ? b_ : LineBundle::create(l_.curve_ptr(), b_twist), l_))
               .first;
    return *it->second;
  }

  SectionCache& cache_;
  const LineBundle& b_;
  const LineBundle& l_;
  BettiTable& table_;
  const RankOptions& opts_;
  std::map<int, std::unique_ptr<KoszulComplex>> complexes_;
  std::map<CellKey, std::uint64_t> memo_;
};

OracleVerdict evaluate(Prediction pr, KappaSource& src) {
  OracleVerdict out;
  out.prediction = std::move(pr);
  if (!out.prediction.applicable) {
    out.detail = out.prediction.reason;
    return out;
  }
  if (out.prediction.claims.empty()) {
    out.detail = "hypotheses hold but give no claim here";
    return out;
  }
  bool all = true;
  for (const Claim& c : out.prediction.claims) {
    ComputedClaim cc;
    cc.claim = c;
    try {
      cc.kappa = src.get(c.b_twist, c.p, c.q);
    } catch (const NotRepresentable& e) {
      out.computed.clear();
      out.verdict = Verdict::kNotApplicable;
      out.detail = std::string("cell not representable: ") + e.what();
      return out;
    }
    cc.holds = c.holds(*cc.kappa);
    if (!cc.holds) {
      all = false;
      if (!out.detail.empty()) out.detail += "; ";
      out.detail += c.describe() + " fails: computed " + std::to_string(*cc.kappa);
    }
    out.computed.push_back(std::move(cc));
  }
  out.verdict = all ? Verdict::kMatch : Verdict::kMismatch;
  return out;
}

int h0_of(SectionCache& cache, const LineBundle& b) { return static_cast<int>(cache.get(b)->h0()); }

/// L (x) O(-j): same divisor, twist lowered by j.
LineBundle minus_twist(const LineBundle& l, int j) { return LineBundle::create(l.curve_ptr(), l.twist() - j, l.minus()); }

/// Largest r1 + r2 over splittings O(a)(-D1) (x) O(k-a)(-D2) of L with the
/// divisor placed wholly on one side and r1, r2 >= 1.
Prediction gl_prediction(SectionCache& cache, const LineBundle& l) {
  int best = -1;
  std::pair<int, int> best_r{0, 0};
  std::string best_desc;
  const auto& curve = l.curve_ptr();
  for (int a = 1; a < l.twist(); ++a) {
    for (int side = 0; side < (l.is_pure_twist() ? 1 : 2); ++side) {
      const LineBundle m1 = LineBundle::create(curve, a, side == 0 ? Divisor{} : l.minus());
      const LineBundle m2 = LineBundle::create(curve, l.twist() - a, side == 0 ? l.minus() : Divisor{});
      const int r1 = h0_of(cache, m1) - 1;
      const int r2 = h0_of(cache, m2) - 1;
      if (r1 < 1 || r2 < 1 || r1 + r2 <= best) continue;
      best = r1 + r2;
      best_r = {r1, r2};
      best_desc = "L = " + m1.key() + " (x) " + m2.key();
    }
  }
  if (best < 0) return Prediction::not_applicable("gl-nonvanishing", "no splitting of L into two bundles with r >= 1");
  Prediction pr = predict_gl_nonvanishing(best_r.first, best_r.second);
  pr.hypotheses.insert(pr.hypotheses.begin(), best_desc);
  return pr;
}

/// Effective-vanishing, classification and not-very-ample oracles for B = O(kb)
/// over p = 0, 1, ... while B stays p-very ample.
void b_family(SectionCache& cache, const LineBundle& l, int kb, int r, std::vector<Prediction>& out) {
  const PlaneCurve& curve = l.curve();
  const int d = curve.degree();
  const int g = curve.genus();
  const CurveInvariants inv = plane_invariants(d);
  const LineBundle b = LineBundle::create(l.curve_ptr(), kb);
  const int h0_b = h0_of(cache, b);
  const int h1_b = static_cast<int>(h1(cache, b).value);
  const LineBundle lmb = minus_twist(l, kb);
  const int h0_lmb = h0_of(cache, lmb);
  const int h1_lmb = static_cast<int>(h1(cache, lmb).value);
  const bool l_gg = l.degree() >= 2 * g || (l.is_pure_twist() && l.twist() >= 0);
  const int top = std::min(r, h0_b - 1);
  VeryAmpleCertificate cert = p_very_ample_certificate(cache, b, 0);
  for (int p = 0; p <= top && cert.kind != VeryAmpleKind::kCounterexample; ++p) {
    const VeryAmpleCertificate next = p_very_ample_certificate(cache, b, p + 1);
    const bool not_next = next.kind == VeryAmpleKind::kCounterexample;
    const std::string cert_note = "B is " + std::to_string(p) + "-very ample (" + to_string(cert.kind) + ")";

    Prediction p13 = predict_vanishing_thm13(g, b.degree(), h1_b, h0_lmb, l.degree(), p, true, kb);
    p13.hypotheses.insert(p13.hypotheses.begin(), cert_note);
    out.push_back(std::move(p13));

    ClassifyInput in;
    in.g = g;
    in.p = p;
    in.deg_b = b.degree();
    in.h0_b = h0_b;
    in.h1_b = h1_b;
    in.deg_l = l.degree();
    in.cliff = inv.cliff;
    in.h0_l_minus_b = h0_lmb;
    in.h1_l_minus_b = h1_lmb;
    in.b_p_very_ample = true;
    in.b_not_next_very_ample = not_next;
    in.l_globally_generated = l_gg;
    in.b_bpf_pencil = h0_b == 2;
    in.b_plane_embedding = kb == 1 && d >= 4;
    // O(1) computes the Clifford index of a smooth plane curve of degree >= 4.
    if (kb == d - 3 && lmb.is_pure_twist() && lmb.twist() == 1 && d >= 4) in.l_minus_b_computes_cliff = true;
    in.b_twist = kb;
    Prediction p14 = predict_thm14_classify(in);
    if (p14.applicable) p14.hypotheses.insert(p14.hypotheses.begin(), cert_note);
    out.push_back(std::move(p14));

    if (not_next) {
      Prediction p48 = predict_not_very_ample(g, p, l.degree(), true, true, kb);
      if (p48.applicable)
        p48.hypotheses.push_back("witness " + next.counterexample->to_string(curve.field()) + " with h0(B(-xi)) = " +
                                 std::to_string(next.counterexample_h0));
      out.push_back(std::move(p48));
    }
    cert = next;
  }
}

}  // namespace

VerifyReport verify_report(SectionCache& cache, const LineBundle& b, const LineBundle& l, BettiTable table,
                           const RankOptions& opts) {
  VerifyReport rep;
  rep.table = std::move(table);
  if (!b.is_pure_twist()) throw NotRepresentable("B must be a pure twist O_C(k)");
  const PlaneCurve& curve = l.curve();
  const int d = curve.degree();
  const CurveInvariants inv = plane_invariants(d);
  const int g = inv.g;
  const int deg_l = l.degree();
  const int kb = b.twist();
  const int r = rep.table.r;
  const int omega = d - 3;

  const bool plane_omega_h = l.is_pure_twist() && l.twist() == d - 2 && d >= 4;
  const bool omega_xi = l.twist() == d - 2 && l.minus().degree() == 1;

  std::vector<Prediction> preds;
  if (kb == 0) {
    preds.push_back(predict_weight_one(g, inv.gon, deg_l, plane_omega_h, omega_xi));
    preds.push_back(predict_gonality_nonvanishing(g, inv.gon, deg_l));
    preds.push_back(predict_green(g, deg_l));
    preds.push_back(gl_prediction(cache, l));
    preds.push_back(predict_cor54(g, inv.gon, deg_l, plane_omega_h, omega_xi));
    preds.push_back(predict_three_g_minus_two(g, inv.gon, deg_l, d == 4 && plane_omega_h, d == 4 && omega_xi, false));
    preds.push_back(predict_quadric_count(g, deg_l));
    preds.push_back(predict_np_failure(g, deg_l, h0_of(cache, minus_twist(l, omega)) > 0));
  }
  if (kb == 0 || kb == omega) {
    const LineBundle w = LineBundle::create(l.curve_ptr(), omega);
    const int h1_lmw = static_cast<int>(h1(cache, minus_twist(l, omega)).value);
    VeryAmpleCertificate cert = p_very_ample_certificate(cache, w, 0);
    for (int p = 0; p <= deg_l - 2 * g && p <= r && cert.kind != VeryAmpleKind::kCounterexample; ++p) {
      const VeryAmpleCertificate next = p_very_ample_certificate(cache, w, p + 1);
      Prediction pr = predict_cor42(g, p, deg_l, h1_lmw, true, next.kind == VeryAmpleKind::kCounterexample, omega);
      if (pr.applicable)
        pr.hypotheses.insert(pr.hypotheses.begin(), "p = " + std::to_string(p) + ", certificate " + to_string(cert.kind));
      preds.push_back(std::move(pr));
      cert = next;
    }
  }
  if (g >= 2 && h0_of(cache, b) > 0) {
    b_family(cache, l, kb, r, preds);
    if (kb == 0) b_family(cache, l, omega, r, preds);
  }

  KappaSource src(cache, b, l, rep.table, opts);
  for (Prediction& pr : preds) rep.oracles.push_back(evaluate(std::move(pr), src));
  rep.table.riemann_roch = riemann_roch_check(cache);
  return rep;
}

std::uint64_t default_second_prime(std::uint64_t seed, std::uint64_t avoid) {
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
  std::uniform_int_distribution<std::uint64_t> dist(1ULL << 30, (1ULL << 31) - 1);
  std::uint64_t p = next_prime(dist(rng));
  if (p == avoid) p = next_prime(p + 1);
  return p;
}

namespace {

struct Run {
  Realization main;
  LineBundle b;
  LineBundle l;
  BettiTable table;
};

std::uint64_t run_prime(const CurveFile& file, const RunOptions& opts) {
  if (opts.prime) return *opts.prime;
  if (file.prime) return *file.prime;
  throw InputError(file.source + ": no prime in the file and none given");
}

CheckResult two_prime_check(const CurveFile& file, const RunOptions& opts, const BettiTable& t,
                            std::vector<std::string>& notes) {
  CheckResult res;
  std::uint64_t p2 = opts.second_prime ? *opts.second_prime : default_second_prime(opts.seed, t.prime);
  for (int attempt = 0; attempt < 8; ++attempt) {
    if (p2 == t.prime || !is_prime(p2)) {
      p2 = next_prime(p2 + 1);
      continue;
    }
    try {
      Realization r2 = realize(file, p2, true, {opts.bundle_b, opts.bundle_l});
      const KoszulComplex cx(*r2.cache, r2.bundle(opts.bundle_b), r2.bundle(opts.bundle_l));
      BettiOptions bo = opts.betti;
      bo.check_dsquared = bo.check_hilbert = bo.check_duality = false;
      bo.rank.seed = opts.seed;
      const BettiTable t2 = betti_table(cx, bo);
      for (const std::string& n : r2.notes) notes.push_back(n);
      std::vector<std::string> diffs;
      for (const auto& [key, cell] : t.cells) {
        auto it = t2.cells.find(key);
        if (it == t2.cells.end() || it->second.kappa != cell.kappa)
          diffs.push_back("(" + std::to_string(key.first) + "," + std::to_string(key.second) + "): " +
                          std::to_string(cell.kappa) + " vs " +
                          (it == t2.cells.end() ? std::string("missing") : std::to_string(it->second.kappa)));
      }
      if (t2.cells.size() != t.cells.size()) diffs.push_back("window sizes differ");
      const std::string at = "second prime " + std::to_string(p2);
      if (diffs.empty()) {
        res.status = CheckStatus::kPass;
        res.detail = at + ": all " + std::to_string(t.cells.size()) + " cells agree";
      } else {
        res.status = CheckStatus::kFail;
        res.detail = at + ": " + std::to_string(diffs.size()) + " cells differ, first " + diffs.front();
      }
      return res;
    } catch (const SingularCurveError&) {
      notes.push_back("curve is singular modulo " + std::to_string(p2) + "; trying the next prime");
      p2 = next_prime(p2 + 1);
    }
  }
  res.status = CheckStatus::kFail;
  res.detail = "no usable second prime found";
  return res;
}

Run run(const CurveFile& file, const RunOptions& opts) {
  Realization main = realize(file, run_prime(file, opts), false, {opts.bundle_b, opts.bundle_l});
  LineBundle b = main.bundle(opts.bundle_b);
  LineBundle l = main.bundle(opts.bundle_l);
  if (!b.is_pure_twist()) throw InputError("bundle " + opts.bundle_b + " must be a pure twist O_C(k)");
  const KoszulComplex cx(*main.cache, b, l);
  BettiOptions bo = opts.betti;
  bo.rank.seed = opts.seed;
  BettiTable t = betti_table(cx, bo);
  t.seed = opts.seed;
  t.notes = main.notes;
  if (opts.two_prime) {
    t.two_prime = two_prime_check(file, opts, t, t.notes);
  } else {
    t.two_prime.detail = "disabled";
  }
  return Run{std::move(main), std::move(b), std::move(l), std::move(t)};
}

}  // namespace

BettiTable run_betti(const CurveFile& file, const RunOptions& opts) { return run(file, opts).table; }

VerifyReport run_verify(const CurveFile& file, const RunOptions& opts) {
  Run r = run(file, opts);
  RankOptions ro = opts.betti.rank;
  ro.seed = opts.seed;
  return verify_report(*r.main.cache, r.b, r.l, std::move(r.table), ro);
}

namespace {

nlohmann::ordered_json check_json(const CheckResult& c) {
  return {{"status", to_string(c.status)}, {"detail", c.detail}};
}

nlohmann::ordered_json cell_json(const KoszulCell& c, bool timings) {
  nlohmann::ordered_json j;
  j["p"] = c.p;
  j["q"] = c.q;
  j["dims"] = c.dims;
  j["rank_in"] = c.rank_in;
  j["rank_out"] = c.rank_out;
  j["kappa"] = c.kappa;
  j["millis"] = timings ? std::round(c.millis * 1000.0) / 1000.0 : 0.0;
  j["methods"] = c.methods;
  j["certified"] = c.certified;
  return j;
}

nlohmann::ordered_json claim_json(const Claim& c) {
  nlohmann::ordered_json j;
  j["p"] = c.p;
  j["q"] = c.q;
  j["b_twist"] = c.b_twist;
  j["claim"] = c.kind == ClaimKind::kNonzero ? "nonzero" : c.kind == ClaimKind::kZero ? "zero" : "equals";
  if (c.kind == ClaimKind::kEquals) j["value"] = c.value;
  j["text"] = c.describe();
  return j;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

}  // namespace

nlohmann::ordered_json to_json(const BettiTable& t, bool timings) {
  nlohmann::ordered_json j;
  j["curve"] = t.curve;
  j["bundle_B"] = t.bundle_b;
  j["bundle_L"] = t.bundle_l;
  j["prime"] = t.prime;
  j["seed"] = t.seed;
  j["r"] = t.r;
  j["genus"] = t.genus;
  j["degree_L"] = t.degree_l;
  j["cells"] = nlohmann::ordered_json::array();
  for (const auto& [key, c] : t.cells) j["cells"].push_back(cell_json(c, timings));
  j["extra_cells"] = nlohmann::ordered_json::array();
  for (const auto& [key, c] : t.extra_cells) j["extra_cells"].push_back(cell_json(c, timings));
  j["checks"] = {{"duality", check_json(t.duality)},
                 {"hilbert", check_json(t.hilbert)},
                 {"dsquared", check_json(t.dsquared)},
                 {"two_prime", check_json(t.two_prime)},
                 {"riemann_roch", check_json(t.riemann_roch)}};
  j["notes"] = t.notes;
  return j;
}

nlohmann::ordered_json to_json(const VerifyReport& r, bool timings) {
  nlohmann::ordered_json j;
  j["verdict"] = r.all_match() ? "match" : "mismatch";
  j["oracles"] = nlohmann::ordered_json::array();
  for (const OracleVerdict& o : r.oracles) {
    nlohmann::ordered_json e;
    e["theorem"] = o.prediction.theorem;
    e["hypotheses"] = o.prediction.hypotheses;
    e["tag"] = o.prediction.tag;
    e["predicted"] = nlohmann::ordered_json::array();
    for (const Claim& c : o.prediction.claims) e["predicted"].push_back(claim_json(c));
    e["computed"] = nlohmann::ordered_json::array();
    for (const ComputedClaim& c : o.computed)
      e["computed"].push_back({{"p", c.claim.p}, {"q", c.claim.q}, {"b_twist", c.claim.b_twist},
                               {"kappa", *c.kappa}, {"holds", c.holds}});
    e["verdict"] = to_string(o.verdict);
    e["detail"] = o.detail;
    j["oracles"].push_back(std::move(e));
  }
  j["betti"] = to_json(r.table, timings);
  return j;
}

std::string to_csv(const BettiTable& t) {
  std::ostringstream os;
  os << "p,q,dim_source,dim_middle,dim_target,rank_in,rank_out,kappa,millis\n";
  for (const auto* group : {&t.cells, &t.extra_cells})
    for (const auto& [key, c] : *group)
      os << c.p << ',' << c.q << ',' << c.dims[0] << ',' << c.dims[1] << ',' << c.dims[2] << ',' << c.rank_in << ','
         << c.rank_out << ',' << c.kappa << ',' << std::fixed << std::setprecision(3) << c.millis << '\n';
  return os.str();
}

std::string to_csv(const VerifyReport& r) {
  std::ostringstream os;
  os << "theorem,tag,verdict,predicted,computed,detail\n";
  for (const OracleVerdict& o : r.oracles) {
    std::string pred, comp;
    for (const Claim& c : o.prediction.claims) pred += (pred.empty() ? "" : "; ") + c.describe();
    for (const ComputedClaim& c : o.computed)
      comp += (comp.empty() ? "" : "; ") + std::to_string(c.claim.p) + "," + std::to_string(c.claim.q) + "=" +
              std::to_string(*c.kappa);
    os << csv_field(o.prediction.theorem) << ',' << csv_field(o.prediction.tag) << ',' << to_string(o.verdict) << ','
       << csv_field(pred) << ',' << csv_field(comp) << ',' << csv_field(o.detail) << '\n';
  }
  return os.str();
}

std::string to_text(const BettiTable& t) {
  std::ostringstream os;
  os << "curve " << t.curve << " over GF(" << t.prime << "), g = " << t.genus << "\n";
  os << "B = " << t.bundle_b << ", L = " << t.bundle_l << " (deg " << t.degree_l << ", r = " << t.r << ")\n";
  int p_lo = 0, p_hi = -1, q_lo = 0, q_hi = -1;
  bool first = true;
  for (const auto& [key, c] : t.cells) {
    if (first) {
      p_lo = p_hi = key.first;
      q_lo = q_hi = key.second;
      first = false;
    }
    p_lo = std::min(p_lo, key.first);
    p_hi = std::max(p_hi, key.first);
    q_lo = std::min(q_lo, key.second);
    q_hi = std::max(q_hi, key.second);
  }
  std::size_t width = 2;
  for (const auto& [key, c] : t.cells) width = std::max(width, std::to_string(c.kappa).size() + 1);
  os << std::setw(4) << "q\\p";
  for (int p = p_lo; p <= p_hi; ++p) os << std::setw(static_cast<int>(width) + 1) << p;
  os << '\n';
  for (int q = q_lo; q <= q_hi; ++q) {
    os << std::setw(3) << q << ':';
    for (int p = p_lo; p <= p_hi; ++p) {
      auto it = t.cells.find({p, q});
      os << std::setw(static_cast<int>(width) + 1) << (it == t.cells.end() ? std::string(".") : std::to_string(it->second.kappa));
    }
    os << '\n';
  }
  const std::pair<const char*, const CheckResult*> checks[] = {{"dsquared", &t.dsquared},
                                                                {"hilbert", &t.hilbert},
                                                                {"duality", &t.duality},
                                                                {"riemann_roch", &t.riemann_roch},
                                                                {"two_prime", &t.two_prime}};
  for (const auto& [name, c] : checks) os << name << ": " << to_string(c->status) << " (" << c->detail << ")\n";
  for (const std::string& n : t.notes) os << "note: " << n << '\n';
  return os.str();
}

std::string to_text(const VerifyReport& r) {
  std::ostringstream os;
  os << to_text(r.table);
  for (const OracleVerdict& o : r.oracles) {
    os << to_string(o.verdict) << "  " << o.prediction.theorem;
    if (!o.prediction.tag.empty()) os << " [" << o.prediction.tag << "]";
    if (!o.detail.empty()) os << ": " << o.detail;
    os << '\n';
  }
  os << "overall: " << (r.all_match() ? "match" : "mismatch") << '\n';
  return os.str();
}

}  // namespace koszul
