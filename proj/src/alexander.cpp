#include "speclift/alexander.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace speclift {

namespace {

constexpr double kTwoPi = 6.28318530717958647692;

// psi-image of generator j (1-based) as a Laurent monomial, with the given
// exponent sign for inverse letters.
LaurentPoly psi_monomial(const IntLinearMap& psi, int j, int sign) {
  int n = static_cast<int>(psi.rows());
  Mono e(static_cast<size_t>(n), 0);
  for (int i = 0; i < n; ++i) {
    Int v = psi.matrix[static_cast<size_t>(i)][static_cast<size_t>(j - 1)];
    e[static_cast<size_t>(i)] = static_cast<Exp>(sign) * v.convert_to<Exp>();
  }
  return LaurentPoly::monomial(n, e, 1);
}

void require_surjective_class(const IntLinearMap& a, int nvars) {
  if (a.rows() != 1 || static_cast<int>(a.cols()) != nvars)
    throw math_error("class must be a single row matching the variable count");
  Int g = 0;
  for (const auto& v : a.matrix[0]) g = boost::multiprecision::gcd(g, v);
  if (g != 1) throw math_error("class is not surjective");
}

}  // namespace

std::vector<std::complex<double>> CharacterSpec::values() const {
  if (k < 1) throw math_error("character modulus must be positive");
  std::vector<std::complex<double>> out;
  out.reserve(exponents.size());
  for (long e : exponents)
    out.push_back(std::polar(1.0, kTwoPi * static_cast<double>(((e % k) + k) % k) /
                                      static_cast<double>(k)));
  return out;
}

void validate_record(const ManifoldRecord& rec) {
  if (rec.b1 < 1) throw math_error("record needs positive first Betti number");
  if (!rec.delta_pi && !rec.presentation && rec.fibered_classes.empty())
    throw math_error("record carries no polynomial, presentation, or class");
  if (rec.delta_pi && rec.delta_pi->num_vars() != rec.b1)
    throw math_error("polynomial variable count differs from b1");
  for (const auto& fc : rec.fibered_classes) {
    if (static_cast<int>(fc.a.size()) != rec.b1)
      throw math_error("class length differs from b1");
    size_t n = fc.monodromy.size();
    if (n == 0) throw math_error("empty monodromy matrix");
    for (const auto& row : fc.monodromy)
      if (row.size() != n) throw math_error("monodromy matrix is not square");
    Int d = det_int(fc.monodromy);
    if (d != 1 && d != -1)
      throw math_error("monodromy matrix is not invertible over the integers");
  }
  if (rec.presentation) {
    const GroupPresentation& gp = *rec.presentation;
    if (gp.generators < 1) throw math_error("presentation needs generators");
    if (static_cast<int>(gp.psi.rows()) != rec.b1 ||
        static_cast<int>(gp.psi.cols()) != gp.generators)
      throw math_error("abelianization map has wrong shape");
    for (const Word& w : gp.relators) {
      if (!is_reduced(w)) throw math_error("relator word is not reduced");
      std::vector<Int> ab(static_cast<size_t>(gp.generators), 0);
      for (int l : w) {
        int j = l > 0 ? l : -l;
        if (j < 1 || j > gp.generators)
          throw math_error("relator uses an unknown generator");
        ab[static_cast<size_t>(j - 1)] += l > 0 ? 1 : -1;
      }
      for (int i = 0; i < gp.psi.rows(); ++i) {
        Int s = 0;
        for (int j = 0; j < gp.psi.cols(); ++j)
          s += gp.psi.matrix[static_cast<size_t>(i)][static_cast<size_t>(j)] *
               ab[static_cast<size_t>(j)];
        if (s != 0)
          throw math_error("abelianization map does not kill a relator");
      }
    }
  }
}

LaurentPoly char_poly_fibered(const FiberedClass& fc) {
  size_t n = fc.monodromy.size();
  if (n == 0) throw math_error("empty monodromy matrix");
  for (const auto& row : fc.monodromy)
    if (row.size() != n) throw math_error("monodromy matrix is not square");
  std::vector<std::vector<LaurentPoly>> m(
      n, std::vector<LaurentPoly>(n, LaurentPoly(1)));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) {
      LaurentPoly e(1);
      if (i == j) e.add_term(Mono{1}, 1);
      e.add_term(Mono{0}, -fc.monodromy[i][j]);
      m[i][j] = e;
    }
  return det_poly_matrix(m);
}

std::vector<std::vector<LaurentPoly>> fox_presentation_matrix(
    const GroupPresentation& gp) {
  if (gp.generators < 1) throw math_error("presentation needs generators");
  int n = static_cast<int>(gp.psi.rows());
  if (static_cast<int>(gp.psi.cols()) != gp.generators)
    throw math_error("abelianization map has wrong shape");
  std::vector<std::vector<LaurentPoly>> out;
  for (const Word& w : gp.relators) {
    std::vector<LaurentPoly> row(static_cast<size_t>(gp.generators),
                                 LaurentPoly(n));
    LaurentPoly prefix = LaurentPoly::constant(n, 1);
    for (int l : w) {
      int j = l > 0 ? l : -l;
      if (j < 1 || j > gp.generators) throw math_error("malformed word");
      if (l > 0) {
        row[static_cast<size_t>(j - 1)] += prefix;
        prefix = prefix * psi_monomial(gp.psi, j, 1);
      } else {
        prefix = prefix * psi_monomial(gp.psi, j, -1);
        row[static_cast<size_t>(j - 1)] -= prefix;
      }
    }
    out.push_back(std::move(row));
  }
  return out;
}

LaurentPoly alexander_from_presentation(
    const std::vector<std::vector<LaurentPoly>>& m) {
  size_t r = m.size();
  if (r == 0) throw math_error("empty presentation matrix");
  size_t s = m[0].size();
  if (s == 0) throw math_error("empty presentation matrix");
  int n = m[0][0].num_vars();
  for (const auto& row : m) {
    if (row.size() != s) throw math_error("ragged presentation matrix");
    for (const auto& e : row)
      if (e.num_vars() != n) throw math_error("mixed variable counts");
  }
  if (r + 1 < s)
    throw math_error("presentation matrix has deficiency above one");

  std::vector<LaurentPoly> minors;
  if (r >= s) {
    // All s x s row-selection minors.
    std::vector<size_t> pick(s);
    std::iota(pick.begin(), pick.end(), 0);
    for (;;) {
      std::vector<std::vector<LaurentPoly>> sub;
      for (size_t i : pick) sub.push_back(m[i]);
      minors.push_back(det_poly_matrix(sub));
      // next combination of rows
      size_t i = s;
      while (i > 0 && pick[i - 1] == r - s + i - 1) --i;
      if (i == 0) break;
      ++pick[i - 1];
      for (size_t j = i; j < s; ++j) pick[j] = pick[j - 1] + 1;
    }
  } else {  // r == s - 1: delete one column at a time
    for (size_t drop = 0; drop < s; ++drop) {
      std::vector<std::vector<LaurentPoly>> sub(
          r, std::vector<LaurentPoly>());
      for (size_t i = 0; i < r; ++i)
        for (size_t j = 0; j < s; ++j)
          if (j != drop) sub[i].push_back(m[i][j]);
      minors.push_back(det_poly_matrix(sub));
    }
  }
  LaurentPoly g(n);
  for (const auto& d : minors) {
    if (d.is_zero()) continue;
    g = g.is_zero() ? d : gcd_poly(g, d);
  }
  if (g.is_zero())
    throw order_zero_error("every maximal minor vanishes (order zero)");
  return normalize_unit(g).poly;
}

SpecializationResult specialize_with_correction(
    const LaurentPoly& delta, const IntLinearMap& a, bool xi_trivial_on_kernel,
    bool closed, std::complex<double> xi_at_dual) {
  if (delta.num_vars() < 2)
    throw math_error("restriction needs at least two variables");
  require_surjective_class(a, delta.num_vars());
  if (std::abs(std::abs(xi_at_dual) - 1.0) > 1e-9)
    throw math_error("character value must lie on the unit circle");
  SpecializationResult out;
  out.specialized = substitute_linear(delta, a);
  if (out.specialized.is_zero())
    throw zero_specialization_error("class specialization vanishes");
  if (xi_trivial_on_kernel) {
    out.correction_roots.push_back(std::conj(xi_at_dual));
    if (closed) out.correction_roots.push_back(xi_at_dual);
  }
  out.measure = mahler_univariate(out.specialized);
  return out;
}

LaurentPoly abelian_cover_alexander(const LaurentPoly& delta, long k,
                                    const std::vector<int>& twisted_vars) {
  if (delta.is_zero()) throw math_error("zero input");
  if (k < 1) throw math_error("cover order must be positive");
  int n = delta.num_vars();
  std::vector<int> tw = twisted_vars;
  std::sort(tw.begin(), tw.end());
  if (std::adjacent_find(tw.begin(), tw.end()) != tw.end())
    throw math_error("repeated twisted variable");
  for (int j : tw)
    if (j < 0 || j >= n) throw math_error("twisted variable out of range");
  if (k == 1) return normalize_unit(delta).poly;

  LaurentPoly cur = delta;
  for (int j : tw) {
    // z lives at index n; route t_j's exponent onto z.
    LaurentPoly withz = insert_var(cur, n);
    size_t nn = static_cast<size_t>(n) + 1;
    IMatrix route(nn, std::vector<Int>(nn, 0));
    for (size_t i = 0; i < nn; ++i) route[i][i] = 1;
    route[static_cast<size_t>(j)][static_cast<size_t>(j)] = 0;
    route[nn - 1][static_cast<size_t>(j)] = 1;
    LaurentPoly b = substitute_linear(withz, IntLinearMap{route});

    Mono ez(nn, 0), ej(nn, 0);
    ez[nn - 1] = k;
    ej[static_cast<size_t>(j)] = k;
    LaurentPoly a = LaurentPoly::monomial(static_cast<int>(nn), ez, 1) -
                    LaurentPoly::monomial(static_cast<int>(nn), ej, 1);

    cur = drop_var(resultant(a, b, n), n);
  }
  return normalize_unit(cur).poly;
}

LaurentPoly pullback_class_specialization(const LaurentPoly& cover_delta,
                                          const IntLinearMap& b1_class) {
  if (cover_delta.is_zero()) throw math_error("zero input");
  require_surjective_class(b1_class, cover_delta.num_vars());
  LaurentPoly out = substitute_linear(cover_delta, b1_class);
  if (out.is_zero())
    throw zero_specialization_error(
        "class specialization vanishes; correction-factor bookkeeping needed");
  return normalize_unit(out).poly;
}

}  // namespace speclift
