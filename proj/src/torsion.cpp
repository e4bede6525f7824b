#include "speclift/torsion.hpp"

#include <algorithm>
#include <atomic>
#include <thread>

namespace speclift {

namespace {

void check_rect(const IMatrix& m) {
  if (m.empty() || m[0].empty()) throw math_error("empty matrix");
  for (const auto& row : m)
    if (row.size() != m[0].size()) throw math_error("ragged matrix");
}

}  // namespace

SNFResult smith_normal_form_with_transforms(const IMatrix& m, IMatrix* u,
                                            IMatrix* v) {
  check_rect(m);
  size_t r = m.size(), c = m[0].size();
  IMatrix a = m;
  IMatrix U = mat_identity(r), V = mat_identity(c);

  auto row_sub = [&](size_t i, size_t t, const Int& q) {
    for (size_t j = 0; j < c; ++j) a[i][j] -= q * a[t][j];
    for (size_t j = 0; j < r; ++j) U[i][j] -= q * U[t][j];
  };
  auto col_sub = [&](size_t j, size_t t, const Int& q) {
    for (size_t i = 0; i < r; ++i) a[i][j] -= q * a[i][t];
    for (size_t i = 0; i < c; ++i) V[i][j] -= q * V[i][t];
  };

  size_t lim = std::min(r, c);
  size_t t = 0;
  for (; t < lim; ++t) {
    for (;;) {
      // Pivot: minimal nonzero absolute value in the trailing block.
      size_t pi = t, pj = t;
      Int best = 0;
      for (size_t i = t; i < r; ++i)
        for (size_t j = t; j < c; ++j) {
          if (a[i][j] == 0) continue;
          Int mag = boost::multiprecision::abs(a[i][j]);
          if (best == 0 || mag < best) {
            best = mag;
            pi = i;
            pj = j;
          }
        }
      if (best == 0) goto done;
      if (pi != t) {
        std::swap(a[pi], a[t]);
        std::swap(U[pi], U[t]);
      }
      if (pj != t) {
        for (size_t i = 0; i < r; ++i) std::swap(a[i][pj], a[i][t]);
        for (size_t i = 0; i < c; ++i) std::swap(V[i][pj], V[i][t]);
      }
      bool clean = true;
      for (size_t i = t + 1; i < r; ++i)
        if (a[i][t] != 0) {
          row_sub(i, t, a[i][t] / a[t][t]);
          if (a[i][t] != 0) clean = false;
        }
      for (size_t j = t + 1; j < c; ++j)
        if (a[t][j] != 0) {
          col_sub(j, t, a[t][j] / a[t][t]);
          if (a[t][j] != 0) clean = false;
        }
      if (!clean) continue;  // remainders shrank; re-pick the pivot
      // Divisibility fix-up: the pivot must divide the trailing block.
      bool fixed = true;
      for (size_t i = t + 1; i < r && fixed; ++i)
        for (size_t j = t + 1; j < c && fixed; ++j)
          if (a[i][j] % a[t][t] != 0) {
            for (size_t jj = 0; jj < c; ++jj) a[t][jj] += a[i][jj];
            for (size_t jj = 0; jj < r; ++jj) U[t][jj] += U[i][jj];
            fixed = false;
          }
      if (fixed) break;
    }
    if (a[t][t] < 0) {
      for (size_t j = 0; j < c; ++j) a[t][j] = -a[t][j];
      for (size_t j = 0; j < r; ++j) U[t][j] = -U[t][j];
    }
  }
done:
  SNFResult out;
  for (size_t i = 0; i < lim; ++i) out.diagonal.push_back(i < t ? a[i][i] : 0);
  out.rank_free = static_cast<int>(lim - t);
  if (u) *u = std::move(U);
  if (v) *v = std::move(V);
  return out;
}

SNFResult smith_normal_form(const IMatrix& m) {
  return smith_normal_form_with_transforms(m, nullptr, nullptr);
}

Int torsion_cyclic_cover(const LaurentPoly& delta, long n) {
  if (delta.num_vars() != 1)
    throw math_error("cyclic-cover torsion needs one variable");
  if (delta.is_zero()) throw math_error("zero polynomial");
  if (n < 1) throw math_error("cover degree must be positive");
  if (n == 1) return 1;
  LaurentPoly q(1);
  for (long i = 0; i < n; ++i) q.add_term(Mono{static_cast<Exp>(i)}, 1);
  LaurentPoly res = resultant(delta, q, 0);
  if (res.is_zero())
    throw math_error(
        "delta vanishes at a root of unity; the torsion formula is invalid");
  return boost::multiprecision::abs(res.coeff(Mono{0}));
}

std::pair<Int, int> torsion_abelian_cover_snf(
    const std::vector<std::vector<LaurentPoly>>& delta_presentation,
    const CoverSpec& cover, long dim_cap) {
  size_t s = delta_presentation.size();
  if (s == 0) throw math_error("empty presentation matrix");
  for (const auto& row : delta_presentation)
    if (row.size() != s) throw math_error("presentation matrix must be square");
  int n = delta_presentation[0][0].num_vars();
  for (const auto& row : delta_presentation)
    for (const auto& e : row)
      if (e.num_vars() != n) throw math_error("mixed variable counts");
  check_rect(cover.lattice);
  if (cover.lattice.size() != static_cast<size_t>(n) ||
      cover.lattice[0].size() != static_cast<size_t>(n))
    throw math_error("lattice shape differs from the variable count");
  if (det_int(cover.lattice) == 0)
    throw math_error("lattice is not of full rank");

  IMatrix u, v;
  SNFResult d = smith_normal_form_with_transforms(cover.lattice, &u, &v);
  std::vector<long> mod(static_cast<size_t>(n));
  Int order = 1;
  for (int i = 0; i < n; ++i) {
    order *= d.diagonal[static_cast<size_t>(i)];
    mod[static_cast<size_t>(i)] = d.diagonal[static_cast<size_t>(i)].convert_to<long>();
  }
  if (Int(s) * order > dim_cap)
    throw math_error("expanded matrix dimension exceeds the configured cap");
  long g_order = order.convert_to<long>();
  std::vector<long> stride(static_cast<size_t>(n));
  long acc = 1;
  for (int i = 0; i < n; ++i) {
    stride[static_cast<size_t>(i)] = acc;
    acc *= mod[static_cast<size_t>(i)];
  }
  auto decode = [&](long idx, std::vector<long>* g) {
    for (int i = 0; i < n; ++i) {
      (*g)[static_cast<size_t>(i)] = idx % mod[static_cast<size_t>(i)];
      idx /= mod[static_cast<size_t>(i)];
    }
  };

  size_t dim = s * static_cast<size_t>(g_order);
  IMatrix expanded(dim, std::vector<Int>(dim, 0));
  std::vector<long> g(static_cast<size_t>(n)), shifted(static_cast<size_t>(n));
  for (size_t a = 0; a < s; ++a)
    for (size_t b = 0; b < s; ++b)
      for (const auto& [e, coeff] : delta_presentation[a][b].terms()) {
        // Translation of the deck group induced by t^e, in SNF coordinates
        // y = U x: component i shifts by sum_j e_j * U[i][j].
        std::vector<long> shift(static_cast<size_t>(n));
        for (int i = 0; i < n; ++i) {
          Int si = 0;
          for (int j = 0; j < n; ++j)
            si += Int(e[static_cast<size_t>(j)]) *
                  u[static_cast<size_t>(i)][static_cast<size_t>(j)];
          Int red = si % mod[static_cast<size_t>(i)];
          if (red < 0) red += mod[static_cast<size_t>(i)];
          shift[static_cast<size_t>(i)] = red.convert_to<long>();
        }
        for (long gi = 0; gi < g_order; ++gi) {
          decode(gi, &g);
          long target = 0;
          for (int i = 0; i < n; ++i) {
            long val = (g[static_cast<size_t>(i)] + shift[static_cast<size_t>(i)]) %
                       mod[static_cast<size_t>(i)];
            target += val * stride[static_cast<size_t>(i)];
          }
          expanded[a * static_cast<size_t>(g_order) + static_cast<size_t>(target)]
                  [b * static_cast<size_t>(g_order) + static_cast<size_t>(gi)] +=
              coeff;
        }
      }

  SNFResult snf = smith_normal_form(expanded);
  Int torsion = 1;
  for (const Int& di : snf.diagonal)
    if (di != 0) torsion *= di;
  return {torsion, snf.rank_free};
}

std::vector<GrowthPoint> growth_series(const LaurentPoly& delta, long n_max,
                                       int jobs) {
  if (delta.num_vars() != 1)
    throw math_error("growth series needs one variable");
  if (delta.is_zero()) throw math_error("zero polynomial");
  if (n_max < 1) throw math_error("n_max must be positive");
  std::vector<GrowthPoint> out(static_cast<size_t>(n_max));
  std::atomic<long> next{1};
  auto worker = [&]() {
    for (;;) {
      long n = next.fetch_add(1);
      if (n > n_max) return;
      GrowthPoint& pt = out[static_cast<size_t>(n - 1)];
      pt.n = n;
      try {
        Int tor = torsion_cyclic_cover(delta, n);
        pt.value = log_int(tor) / static_cast<double>(n);
      } catch (const math_error&) {
        pt.skipped = true;
        pt.value = 0.0;
      }
    }
  };
  int workers = std::max(1, static_cast<int>(std::min<long>(jobs, n_max)));
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  return out;
}

}  // namespace speclift
