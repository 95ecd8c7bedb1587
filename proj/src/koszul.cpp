#include "koszul/koszul.hpp"

#include <chrono>
#include <sstream>
#include <stdexcept>

#include "parallel.hpp"

namespace koszul {

std::uint64_t binomial(long long n, long long k) {
  if (k < 0 || n < 0 || k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t r = 1;
  for (long long i = 1; i <= k; ++i) r = r * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
  return r;
}

WedgeBasis::WedgeBasis(int n, int k) : n_(n), k_(k), size_(binomial(n, k)) {
  if (n < 0) throw std::invalid_argument("negative wedge ambient dimension");
}

std::size_t WedgeBasis::index(const std::vector<int>& s) const {
  std::size_t rank = 0;
  int prev = -1;
  for (int i = 0; i < k_; ++i) {
    for (int j = prev + 1; j < s[i]; ++j) rank += binomial(n_ - 1 - j, k_ - 1 - i);
    prev = s[i];
  }
  return rank;
}

std::vector<int> WedgeBasis::subset(std::size_t index) const {
  if (index >= size_) throw std::out_of_range("wedge index out of range");
  std::vector<int> s;
  int next = 0;
  for (int i = 0; i < k_; ++i) {
    for (;; ++next) {
      const std::size_t block = binomial(n_ - 1 - next, k_ - 1 - i);
      if (index < block) break;
      index -= block;
    }
    s.push_back(next++);
  }
  return s;
}

KoszulComplex::KoszulComplex(SectionCache& cache, LineBundle b, LineBundle l)
    : cache_(&cache), b_(std::move(b)), l_(std::move(l)) {
  if (!b_.is_pure_twist()) throw InputError("B must be a pure twist O(k)");
  if (b_.curve_ptr() != cache.curve_ptr() || l_.curve_ptr() != cache.curve_ptr())
    throw std::invalid_argument("bundles and section cache live on different curves");
  v_ = cache.get(l_);
}

std::optional<LineBundle> KoszulComplex::strand_bundle(int q) const {
  if (q >= 0) return b_.tensor(l_.power(q));
  const int deg = b_.degree() + q * l_.degree();
  const int twist = b_.twist() + q * l_.twist();
  if (l_.is_pure_twist()) return LineBundle::create(b_.curve_ptr(), twist);
  if (deg < 0 || twist < 0) return std::nullopt;
  throw NotRepresentable("B (x) L^" + std::to_string(q) + " has a positive divisor part");
}

std::size_t KoszulComplex::strand_dim(int q) const {
  const auto bundle = strand_bundle(q);
  return bundle ? cache_->get(*bundle)->h0() : 0;
}

std::array<std::uint64_t, 3> KoszulComplex::cell_dims(int p, int q) const {
  const int n = static_cast<int>(h0_l());
  auto piece = [&](int k, int j) -> std::uint64_t {
    const std::uint64_t w = binomial(n, k);
    return w == 0 ? 0 : w * strand_dim(j);
  };
  return {piece(p + 1, q - 1), piece(p, q), piece(p - 1, q + 1)};
}

SparseMatrix KoszulComplex::differential(int p, int q) const {
  const int n = static_cast<int>(h0_l());
  const WedgeBasis src_wedge(n, p + 1);
  const WedgeBasis dst_wedge(n, std::max(p, 0));
  const std::size_t dst_wedges = p < 0 ? 0 : dst_wedge.size();
  const auto src_bundle = src_wedge.size() == 0 ? std::nullopt : strand_bundle(q - 1);
  const auto dst_bundle = dst_wedges == 0 ? std::nullopt : strand_bundle(q);
  const auto src = src_bundle ? cache_->get(*src_bundle) : nullptr;
  const auto dst = dst_bundle ? cache_->get(*dst_bundle) : nullptr;
  const std::size_t ws = src ? src->h0() : 0;
  const std::size_t wt = dst ? dst->h0() : 0;
  const std::size_t rows = dst_wedges * wt;
  const std::size_t cols = src_wedge.size() * ws;
  if (rows == 0 || cols == 0) return SparseMatrix::from_triplets(rows, cols, {});

  const PlaneCurve& curve = l_.curve();
  const PrimeField& f = curve.field();
  // products[i][b]: v_i * s_b in the target echelon basis, sparse.
  std::vector<std::vector<std::vector<std::pair<std::uint32_t, Fp>>>> products(
      static_cast<std::size_t>(n), std::vector<std::vector<std::pair<std::uint32_t, Fp>>>(ws));
  for (int i = 0; i < n; ++i) {
    for (std::size_t b = 0; b < ws; ++b) {
      const HomogeneousForm prod = multiply_sections(curve, v_->basis()[i], src->basis()[b]);
      const std::vector<Fp> c = dst->coordinates(prod);
      for (std::size_t k = 0; k < c.size(); ++k)
        if (!c[k].is_zero()) products[i][b].emplace_back(static_cast<std::uint32_t>(k), c[k]);
    }
  }

  std::vector<Triplet> entries;
  std::vector<int> face(static_cast<std::size_t>(p));
  src_wedge.for_each([&](std::size_t si, const std::vector<int>& s) {
    for (int j = 0; j <= p; ++j) {
      for (int a = 0, w = 0; a <= p; ++a)
        if (a != j) face[w++] = s[a];
      const std::size_t ti = dst_wedge.index(face);
      const bool negate = (j % 2) == 1;
      for (std::size_t b = 0; b < ws; ++b) {
        const auto col = static_cast<std::uint32_t>(si * ws + b);
        for (const auto& [k, c] : products[s[j]][b]) {
          entries.push_back({static_cast<std::uint32_t>(ti * wt + k), col, negate ? f.neg(c) : c});
        }
      }
    }
  });
  return SparseMatrix::from_triplets(rows, cols, std::move(entries));
}

std::string to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::kPass: return "pass";
    case CheckStatus::kFail: return "fail";
    case CheckStatus::kNotApplicable: return "not-applicable";
  }
  return "?";
}

std::uint64_t BettiTable::kappa(int p, int q) const {
  auto it = cells.find({p, q});
  if (it == cells.end()) {
    it = extra_cells.find({p, q});
    if (it == extra_cells.end())
      throw std::out_of_range("cell (" + std::to_string(p) + "," + std::to_string(q) + ") not computed");
  }
  return it->second.kappa;
}

namespace {

using RankMemo = detail::OnceMap<std::pair<int, int>, RankResult>;

RankResult rank_of(const PrimeField& f, const SparseMatrix& m, const RankOptions& opts) {
  if (m.nnz() == 0) return RankResult{0, RankMethod::kElimination, 0, true};
  return sparse_rank(f, m, opts);
}

std::string method_name(const SparseMatrix& m, const RankResult& r) {
  if (m.rows() == 0 || m.cols() == 0 || m.nnz() == 0) return "trivial";
  return to_string(r.method);
}

struct CellOutcome {
  KoszulCell cell;
  /// Empty when d o d vanished or was not checked.
  std::string dsquared_failure;
};

CellOutcome compute_cell(const KoszulComplex& cx, int p, int q, const RankOptions& opts, RankMemo* memo,
                         bool check_dsquared) {
  const auto start = std::chrono::steady_clock::now();
  CellOutcome out;
  KoszulCell& cell = out.cell;
  cell.p = p;
  cell.q = q;
  cell.dims = cx.cell_dims(p, q);
  if (cell.dims[1] != 0) {
    const PrimeField& f = cx.l().curve().field();
    const SparseMatrix d_in = cx.differential(p, q);
    const SparseMatrix d_out = p >= 1 ? cx.differential(p - 1, q + 1) : SparseMatrix::from_triplets(0, cell.dims[1], {});
    if (check_dsquared && d_in.nnz() != 0 && d_out.nnz() != 0) {
      const SparseMatrix composite = d_out.multiply(f, d_in);
      if (composite.nnz() != 0) {
        out.dsquared_failure = "d o d has " + std::to_string(composite.nnz()) + " nonzero entries at (" +
                               std::to_string(p) + "," + std::to_string(q) + ")";
      }
    }
    auto ranked = [&](int a, int b, const SparseMatrix& m) {
      if (!memo) return rank_of(f, m, opts);
      return memo->get({a, b}, [&] { return rank_of(f, m, opts); });
    };
    const RankResult r_in = ranked(p, q, d_in);
    const RankResult r_out = p >= 1 ? ranked(p - 1, q + 1, d_out) : RankResult{};
    cell.rank_in = r_in.rank;
    cell.rank_out = r_out.rank;
    cell.methods = {method_name(d_in, r_in), method_name(d_out, r_out)};
    cell.certified = r_in.certified && r_out.certified;
    if (cell.rank_in + cell.rank_out > cell.dims[1])
      throw std::logic_error("rank sum exceeds the middle dimension; the complex is inconsistent");
    cell.kappa = cell.dims[1] - cell.rank_in - cell.rank_out;
  }
  cell.millis = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return out;
}

}  // namespace

KoszulCell koszul_cell(const KoszulComplex& cx, int p, int q, const RankOptions& opts) {
  return compute_cell(cx, p, q, opts, nullptr, false).cell;
}

std::uint64_t koszul_dim(const KoszulComplex& cx, int p, int q, const RankOptions& opts) {
  return koszul_cell(cx, p, q, opts).kappa;
}

CheckResult riemann_roch_check(SectionCache& cache) {
  CheckResult res;
  const int g = cache.curve_ptr()->genus();
  std::size_t checked = 0;
  std::size_t skipped = 0;
  for (const auto& space : cache.spaces()) {
    const LineBundle& b = space->bundle();
    const H1Value v = h1(cache, b);
    if (v.route == H1Route::kRiemannRoch) {
      ++skipped;
      continue;
    }
    ++checked;
    const long long lhs = static_cast<long long>(space->h0()) - v.value;
    const long long rhs = static_cast<long long>(b.degree()) - g + 1;
    if (lhs != rhs) {
      res.status = CheckStatus::kFail;
      res.detail = b.key() + ": h0 - h1 = " + std::to_string(lhs) + " but deg - g + 1 = " + std::to_string(rhs) +
                   " (h1 by " + to_string(v.route) + ")";
      return res;
    }
  }
  if (checked == 0) {
    res.detail = "no section space with an independent h1 route";
    return res;
  }
  res.status = CheckStatus::kPass;
  res.detail = std::to_string(checked) + " spaces checked, " + std::to_string(skipped) + " with h1 only by Riemann-Roch";
  return res;
}

CheckResult hilbert_identity_check(const KoszulComplex& cx, BettiTable& table, int m_max, const RankOptions& opts) {
  CheckResult res;
  try {
    if (cx.strand_dim(-1) != 0) {
      res.detail = "B (x) L^-1 has sections; the module starts below degree 0";
      return res;
    }
  } catch (const NotRepresentable& e) {
    res.detail = e.what();
    return res;
  }
  const int r = cx.r();
  auto kappa_at = [&](int p, int q) -> std::uint64_t {
    if (p > r + 1) return 0;
    if (table.cells.count({p, q})) return table.cells.at({p, q}).kappa;
    auto it = table.extra_cells.find({p, q});
    if (it != table.extra_cells.end()) return it->second.kappa;
    KoszulCell c = koszul_cell(cx, p, q, opts);
    const std::uint64_t k = c.kappa;
    table.extra_cells.emplace(std::pair{p, q}, std::move(c));
    return k;
  };
  std::ostringstream detail;
  bool ok = true;
  for (int m = 0; m <= m_max; ++m) {
    const long long lhs = static_cast<long long>(cx.strand_dim(m));
    long long rhs = 0;
    for (int p = 0; p <= m; ++p) {
      for (int q = 0; p + q <= m; ++q) {
        const long long term = static_cast<long long>(kappa_at(p, q)) *
                               static_cast<long long>(binomial(r + m - p - q, r));
        rhs += (p % 2 == 0) ? term : -term;
      }
    }
    if (m) detail << "; ";
    detail << "m=" << m << ": " << lhs << (lhs == rhs ? " = " : " != ") << rhs;
    ok = ok && lhs == rhs;
  }
  res.status = ok ? CheckStatus::kPass : CheckStatus::kFail;
  res.detail = detail.str();
  return res;
}

BettiTable betti_table(const KoszulComplex& cx, const BettiOptions& opts) {
  const PlaneCurve& curve = cx.l().curve();
  BettiTable t;
  t.curve = curve.form().to_string();
  t.bundle_b = cx.b().key();
  t.bundle_l = cx.l().key();
  t.prime = curve.field().modulus();
  t.seed = opts.rank.seed;
  t.r = cx.r();
  t.genus = curve.genus();
  t.degree_l = cx.l().degree();

  const int p_lo = std::max(0, opts.p_min);
  const int p_hi = opts.p_max < 0 ? t.r : opts.p_max;
  std::vector<std::pair<int, int>> jobs;
  for (int q = std::max(0, opts.q_min); q <= opts.q_max; ++q)
    for (int p = p_lo; p <= p_hi; ++p) jobs.emplace_back(p, q);

  RankMemo memo;
  std::vector<CellOutcome> outcomes(jobs.size());
  detail::parallel_for(jobs.size(), opts.threads, [&](std::size_t i) {
    outcomes[i] = compute_cell(cx, jobs[i].first, jobs[i].second, opts.rank, &memo, opts.check_dsquared);
  });
  std::vector<std::string> failures;
  for (auto& o : outcomes) {
    if (!o.dsquared_failure.empty()) failures.push_back(o.dsquared_failure);
    t.cells.emplace(std::pair{o.cell.p, o.cell.q}, std::move(o.cell));
  }

  if (opts.check_dsquared) {
    t.dsquared.status = failures.empty() ? CheckStatus::kPass : CheckStatus::kFail;
    t.dsquared.detail = failures.empty() ? "all adjacent pairs compose to zero" : failures.front();
  } else {
    t.dsquared.detail = "disabled";
  }

  if (opts.check_hilbert) {
    t.hilbert = hilbert_identity_check(cx, t, opts.hilbert_m_max, opts.rank);
  } else {
    t.hilbert.detail = "disabled";
  }

  const int d = curve.degree();
  const int kb = cx.b().twist();
  if (!opts.check_duality) {
    t.duality.detail = "disabled";
  } else if (kb != 0 && kb != d - 3) {
    t.duality.detail = "B is neither O_C nor the canonical bundle";
  } else if (cx.l().degree() <= 2 * t.genus - 2) {
    t.duality.detail = "L may be special";
  } else {
    std::vector<int> rows;
    for (int p = p_lo; p <= p_hi; ++p)
      if (t.has(p, 1)) rows.push_back(p);
    if (rows.empty()) {
      t.duality.detail = "weight-one row not in the requested window";
    } else {
      const KoszulComplex partner(cx.cache(), LineBundle::create(cx.b().curve_ptr(), d - 3 - kb), cx.l());
      std::vector<std::uint64_t> dual(rows.size(), 0);
      detail::parallel_for(rows.size(), opts.threads, [&](std::size_t i) {
        const int j = t.r - rows[i] - 1;
        dual[i] = j < 0 ? 0 : koszul_dim(partner, j, 1, opts.rank);
      });
      std::ostringstream os;
      bool ok = true;
      for (std::size_t i = 0; i < rows.size(); ++i) {
        const int j = t.r - rows[i] - 1;
        if (j >= 0) t.duality_row[j] = dual[i];
        const std::uint64_t here = t.kappa(rows[i], 1);
        if (here != dual[i]) {
          if (!ok) os << "; ";
          os << "kappa(" << rows[i] << ",1) = " << here << " but partner kappa(" << j << ",1) = " << dual[i];
          ok = false;
        }
      }
      t.duality.status = ok ? CheckStatus::kPass : CheckStatus::kFail;
      t.duality.detail = ok ? "weight-one row matches the partner row for " + std::to_string(rows.size()) + " values of p"
                            : os.str();
    }
  }
  t.two_prime.detail = "not run";
  t.riemann_roch = riemann_roch_check(cx.cache());
  return t;
}

}  // namespace koszul
