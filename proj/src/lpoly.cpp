#include "speclift/lpoly.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <mutex>
#include <numeric>

namespace speclift {

namespace {

Int int_gcd(const Int& a, const Int& b) {
  return boost::multiprecision::gcd(boost::multiprecision::abs(a),
                                    boost::multiprecision::abs(b));
}

void check_same_vars(const LaurentPoly& p, const LaurentPoly& q) {
  if (p.num_vars() != q.num_vars())
    throw math_error("variable-count mismatch");
}

// z^e for integer e, by squaring (exact reciprocal for negative e).
std::complex<double> cpow(std::complex<double> z, Exp e) {
  bool neg = e < 0;
  unsigned long long k = neg ? static_cast<unsigned long long>(-(e + 1)) + 1
                             : static_cast<unsigned long long>(e);
  std::complex<double> acc(1.0, 0.0);
  while (k) {
    if (k & 1) acc *= z;
    z *= z;
    k >>= 1;
  }
  return neg ? 1.0 / acc : acc;
}

}  // namespace

bool LaurentPoly::is_constant() const {
  if (terms_.empty()) return true;
  if (terms_.size() != 1) return false;
  const Mono& e = terms_.begin()->first;
  return std::all_of(e.begin(), e.end(), [](Exp x) { return x == 0; });
}

void LaurentPoly::add_term(const Mono& e, const Int& c) {
  if (static_cast<int>(e.size()) != nvars_)
    throw math_error("exponent vector length mismatch");
  if (c == 0) return;
  auto it = terms_.find(e);
  if (it == terms_.end()) {
    terms_.emplace(e, c);
  } else {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

Int LaurentPoly::coeff(const Mono& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? Int(0) : it->second;
}

LaurentPoly LaurentPoly::operator-() const {
  LaurentPoly r(nvars_);
  for (const auto& [e, c] : terms_) r.terms_.emplace(e, -c);
  return r;
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& q) {
  check_same_vars(*this, q);
  for (const auto& [e, c] : q.terms_) add_term(e, c);
  return *this;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& q) {
  check_same_vars(*this, q);
  for (const auto& [e, c] : q.terms_) add_term(e, -c);
  return *this;
}

LaurentPoly LaurentPoly::operator+(const LaurentPoly& q) const {
  LaurentPoly r = *this;
  r += q;
  return r;
}

LaurentPoly LaurentPoly::operator-(const LaurentPoly& q) const {
  LaurentPoly r = *this;
  r -= q;
  return r;
}

LaurentPoly LaurentPoly::operator*(const LaurentPoly& q) const {
  check_same_vars(*this, q);
  LaurentPoly r(nvars_);
  Mono e(static_cast<size_t>(nvars_));
  for (const auto& [ea, ca] : terms_) {
    for (const auto& [eb, cb] : q.terms_) {
      for (size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      r.add_term(e, ca * cb);
    }
  }
  return r;
}

LaurentPoly LaurentPoly::operator*(const Int& c) const {
  LaurentPoly r(nvars_);
  if (c == 0) return r;
  for (const auto& [e, k] : terms_) r.terms_.emplace(e, k * c);
  return r;
}

Exp LaurentPoly::min_exp(int var) const {
  if (terms_.empty()) throw math_error("exponent range of zero polynomial");
  Exp m = terms_.begin()->first.at(static_cast<size_t>(var));
  for (const auto& [e, c] : terms_)
    m = std::min(m, e[static_cast<size_t>(var)]);
  return m;
}

Exp LaurentPoly::max_exp(int var) const {
  if (terms_.empty()) throw math_error("exponent range of zero polynomial");
  Exp m = terms_.begin()->first.at(static_cast<size_t>(var));
  for (const auto& [e, c] : terms_)
    m = std::max(m, e[static_cast<size_t>(var)]);
  return m;
}

Mono LaurentPoly::min_exps() const {
  if (terms_.empty()) return Mono(static_cast<size_t>(nvars_), 0);
  Mono m = terms_.begin()->first;
  for (const auto& [e, c] : terms_)
    for (size_t i = 0; i < m.size(); ++i) m[i] = std::min(m[i], e[i]);
  return m;
}

const std::pair<const Mono, Int>& LaurentPoly::lex_leading() const {
  if (terms_.empty()) throw math_error("leading term of zero polynomial");
  return *terms_.rbegin();
}

std::complex<double> LaurentPoly::eval(
    const std::vector<std::complex<double>>& z) const {
  if (static_cast<int>(z.size()) != nvars_)
    throw math_error("evaluation point length mismatch");
  std::complex<double> acc(0.0, 0.0);
  for (const auto& [e, c] : terms_) {
    std::complex<double> t(c.convert_to<double>(), 0.0);
    for (size_t i = 0; i < z.size(); ++i) t *= cpow(z[i], e[i]);
    acc += t;
  }
  return acc;
}

UnitNormalForm normalize_unit(const LaurentPoly& p) {
  UnitNormalForm r;
  r.sign = 1;
  r.shift = Mono(static_cast<size_t>(p.num_vars()), 0);
  r.poly = p;
  if (p.is_zero()) return r;
  r.shift = p.min_exps();
  LaurentPoly shifted(p.num_vars());
  for (const auto& [e, c] : p.terms()) {
    Mono f = e;
    for (size_t i = 0; i < f.size(); ++i) f[i] -= r.shift[i];
    shifted.add_term(f, c);
  }
  if (shifted.lex_leading().second < 0) {
    r.sign = -1;
    shifted = -shifted;
  }
  r.poly = std::move(shifted);
  return r;
}

bool equal_up_to_unit(const LaurentPoly& p, const LaurentPoly& q) {
  if (p.num_vars() != q.num_vars()) return false;
  return normalize_unit(p).poly == normalize_unit(q).poly;
}

LaurentPoly substitute_linear(const LaurentPoly& p, const IntLinearMap& f) {
  if (f.cols() != p.num_vars() && !(p.num_vars() == 0 && f.rows() >= 0))
    throw math_error("linear map dimension mismatch");
  int out = f.rows();
  LaurentPoly r(out);
  Mono img(static_cast<size_t>(out));
  for (const auto& [e, c] : p.terms()) {
    for (int i = 0; i < out; ++i) {
      Int acc = 0;
      for (int j = 0; j < f.cols(); ++j)
        acc += f.matrix[static_cast<size_t>(i)][static_cast<size_t>(j)] *
               e[static_cast<size_t>(j)];
      img[static_cast<size_t>(i)] = acc.convert_to<Exp>();
    }
    r.add_term(img, c);
  }
  return r;
}

Int content(const LaurentPoly& p) {
  Int g = 0;
  for (const auto& [e, c] : p.terms()) {
    g = int_gcd(g, c);
    if (g == 1) break;
  }
  return g;
}

LaurentPoly primitive_part(const LaurentPoly& p) {
  if (p.is_zero()) return p;
  Int g = content(p);
  LaurentPoly r(p.num_vars());
  for (const auto& [e, c] : p.terms()) r.add_term(e, c / g);
  return r;
}

bool try_divide_exact(const LaurentPoly& p, const LaurentPoly& d,
                      LaurentPoly* quotient) {
  check_same_vars(p, d);
  if (d.is_zero()) throw math_error("division by zero polynomial");
  if (p.is_zero()) {
    if (quotient) *quotient = LaurentPoly(p.num_vars());
    return true;
  }
  UnitNormalForm np = normalize_unit(p), nd = normalize_unit(d);
  LaurentPoly r = np.poly;
  LaurentPoly q(p.num_vars());
  const auto& [ed, cd] = nd.poly.lex_leading();
  while (!r.is_zero()) {
    const auto& [er, cr] = r.lex_leading();
    Mono diff(er.size());
    for (size_t i = 0; i < er.size(); ++i) {
      if (er[i] < ed[i]) return false;
      diff[i] = er[i] - ed[i];
    }
    if (cr % cd != 0) return false;
    LaurentPoly qt = LaurentPoly::monomial(p.num_vars(), diff, cr / cd);
    q += qt;
    r -= qt * nd.poly;
  }
  if (quotient) {
    // p = s_p t^a np, d = s_d t^b nd  =>  p/d = s_p s_d t^(a-b) (np/nd)
    Mono sh(np.shift.size());
    for (size_t i = 0; i < sh.size(); ++i) sh[i] = np.shift[i] - nd.shift[i];
    *quotient =
        q * LaurentPoly::monomial(p.num_vars(), sh, Int(np.sign * nd.sign));
  }
  return true;
}

LaurentPoly divide_exact(const LaurentPoly& p, const LaurentPoly& d) {
  LaurentPoly q(p.num_vars());
  if (!try_divide_exact(p, d, &q)) throw math_error("inexact division");
  return q;
}

namespace {

Exp deg_in(const LaurentPoly& p, int var) { return p.max_exp(var); }

// Coefficient of var^k, with the var-exponent zeroed out.
LaurentPoly coeff_of(const LaurentPoly& p, int var, Exp k) {
  LaurentPoly r(p.num_vars());
  for (const auto& [e, c] : p.terms()) {
    if (e[static_cast<size_t>(var)] != k) continue;
    Mono f = e;
    f[static_cast<size_t>(var)] = 0;
    r.add_term(f, c);
  }
  return r;
}

LaurentPoly gcd_rec(const LaurentPoly& a, const LaurentPoly& b);

// gcd of the var-coefficients (the content with respect to var).
LaurentPoly content_in_var(const LaurentPoly& p, int var) {
  LaurentPoly g(p.num_vars());
  for (Exp k = 0; k <= deg_in(p, var); ++k) {
    LaurentPoly c = coeff_of(p, var, k);
    if (c.is_zero()) continue;
    g = g.is_zero() ? normalize_unit(c).poly : gcd_rec(g, c);
    if (g.is_constant() && content(g) == 1) break;
  }
  return g;
}

// Pseudo-remainder of f by g in var (both with nonnegative var-exponents).
LaurentPoly prem(LaurentPoly f, const LaurentPoly& g, int var) {
  Exp dg = deg_in(g, var);
  LaurentPoly lcg = coeff_of(g, var, dg);
  Exp e = deg_in(f, var) - dg + 1;
  while (!f.is_zero() && deg_in(f, var) >= dg) {
    Exp df = deg_in(f, var);
    LaurentPoly lf = coeff_of(f, var, df);
    Mono sh(static_cast<size_t>(f.num_vars()), 0);
    sh[static_cast<size_t>(var)] = df - dg;
    f = f * lcg - lf * LaurentPoly::monomial(f.num_vars(), sh, 1) * g;
    --e;
  }
  for (Exp i = 0; i < e; ++i) f = f * lcg;
  return f;
}

LaurentPoly primitive_wrt_var(const LaurentPoly& p, int var) {
  LaurentPoly c = content_in_var(p, var);
  return divide_exact(p, c);
}

// Both inputs nonzero with nonnegative exponents everywhere.
LaurentPoly gcd_rec(const LaurentPoly& a0, const LaurentPoly& b0) {
  Int ca = content(a0), cb = content(b0);
  Int c = int_gcd(ca, cb);
  LaurentPoly a = primitive_part(a0), b = primitive_part(b0);

  int var = -1;
  for (int i = 0; i < a.num_vars(); ++i) {
    if (deg_in(a, i) > 0 || deg_in(b, i) > 0) {
      var = i;
      break;
    }
  }
  if (var < 0) return LaurentPoly::constant(a.num_vars(), c);  // both constant

  if (deg_in(a, var) == 0)
    return gcd_rec(a, content_in_var(b, var)) * c;
  if (deg_in(b, var) == 0)
    return gcd_rec(content_in_var(a, var), b) * c;

  LaurentPoly ga = content_in_var(a, var), gb = content_in_var(b, var);
  LaurentPoly g_cont = gcd_rec(ga, gb);
  LaurentPoly f = divide_exact(a, ga), g = divide_exact(b, gb);
  if (deg_in(f, var) < deg_in(g, var)) std::swap(f, g);
  while (!g.is_zero()) {
    LaurentPoly r = prem(f, g, var);
    f = g;
    g = r.is_zero() ? r : primitive_wrt_var(r, var);
  }
  return g_cont * f * c;
}

}  // namespace

LaurentPoly gcd_poly(const LaurentPoly& p, const LaurentPoly& q) {
  check_same_vars(p, q);
  if (p.is_zero() && q.is_zero()) return LaurentPoly(p.num_vars());
  if (p.is_zero()) return normalize_unit(q).poly;
  if (q.is_zero()) return normalize_unit(p).poly;
  LaurentPoly g = gcd_rec(normalize_unit(p).poly, normalize_unit(q).poly);
  return normalize_unit(g).poly;
}

LaurentPoly derivative(const LaurentPoly& p, int var) {
  LaurentPoly r(p.num_vars());
  for (const auto& [e, c] : p.terms()) {
    Exp k = e[static_cast<size_t>(var)];
    if (k == 0) continue;
    Mono f = e;
    f[static_cast<size_t>(var)] = k - 1;
    r.add_term(f, c * Int(k));
  }
  return r;
}

LaurentPoly det_poly_matrix(std::vector<std::vector<LaurentPoly>> m) {
  size_t n = m.size();
  if (n == 0) throw math_error("determinant of empty matrix");
  for (const auto& row : m)
    if (row.size() != n) throw math_error("determinant of non-square matrix");
  int nvars = m[0][0].num_vars();
  int sign = 1;
  LaurentPoly prev = LaurentPoly::constant(nvars, 1);
  for (size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k].is_zero()) {
      size_t piv = k;
      while (piv < n && m[piv][k].is_zero()) ++piv;
      if (piv == n) return LaurentPoly(nvars);
      std::swap(m[k], m[piv]);
      sign = -sign;
    }
    for (size_t i = k + 1; i < n; ++i) {
      for (size_t j = k + 1; j < n; ++j) {
        m[i][j] = divide_exact(m[i][j] * m[k][k] - m[i][k] * m[k][j], prev);
      }
      m[i][k] = LaurentPoly(nvars);
    }
    prev = m[k][k];
  }
  return sign < 0 ? -m[n - 1][n - 1] : m[n - 1][n - 1];
}

namespace {

LaurentPoly shift_in_var(const LaurentPoly& p, int var, Exp delta) {
  LaurentPoly r(p.num_vars());
  for (const auto& [e, c] : p.terms()) {
    Mono f = e;
    f[static_cast<size_t>(var)] += delta;
    r.add_term(f, c);
  }
  return r;
}

LaurentPoly poly_pow(const LaurentPoly& p, Exp k) {
  LaurentPoly acc = LaurentPoly::constant(p.num_vars(), 1);
  for (Exp i = 0; i < k; ++i) acc = acc * p;
  return acc;
}

}  // namespace

LaurentPoly resultant(const LaurentPoly& p, const LaurentPoly& q, int var) {
  check_same_vars(p, q);
  if (p.is_zero() || q.is_zero())
    throw math_error("resultant of zero polynomial");
  LaurentPoly a = shift_in_var(p, var, -p.min_exp(var));
  LaurentPoly b = shift_in_var(q, var, -q.min_exp(var));
  Exp da = a.max_exp(var), db = b.max_exp(var);
  if (da == 0 && db == 0)
    throw math_error("resultant: both inputs free of the variable");
  if (da == 0) return poly_pow(a, db);
  if (db == 0) return poly_pow(b, da);

  std::vector<LaurentPoly> ac(static_cast<size_t>(da) + 1,
                              LaurentPoly(p.num_vars()));
  std::vector<LaurentPoly> bc(static_cast<size_t>(db) + 1,
                              LaurentPoly(p.num_vars()));
  for (Exp k = 0; k <= da; ++k) ac[static_cast<size_t>(k)] = coeff_of(a, var, k);
  for (Exp k = 0; k <= db; ++k) bc[static_cast<size_t>(k)] = coeff_of(b, var, k);

  size_t n = static_cast<size_t>(da + db);
  std::vector<std::vector<LaurentPoly>> s(
      n, std::vector<LaurentPoly>(n, LaurentPoly(p.num_vars())));
  for (Exp i = 0; i < db; ++i)
    for (Exp j = 0; j <= da; ++j)
      s[static_cast<size_t>(i)][static_cast<size_t>(i + j)] =
          ac[static_cast<size_t>(da - j)];
  for (Exp i = 0; i < da; ++i)
    for (Exp j = 0; j <= db; ++j)
      s[static_cast<size_t>(db + i)][static_cast<size_t>(i + j)] =
          bc[static_cast<size_t>(db - j)];
  return det_poly_matrix(std::move(s));
}

LaurentPoly cyclotomic(long n) {
  if (n < 1) throw math_error("cyclotomic index must be positive");
  static std::map<long, LaurentPoly> cache;
  static std::mutex mu;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
  }
  // z^n - 1 divided by Psi_d over all proper divisors d of n.
  std::vector<Int> zn(static_cast<size_t>(n) + 1, 0);
  zn[0] = -1;
  zn[static_cast<size_t>(n)] = 1;
  LaurentPoly r = from_dense_1var(zn);
  for (long d = 1; d < n; ++d)
    if (n % d == 0) r = divide_exact(r, cyclotomic(d));
  {
    std::lock_guard<std::mutex> lock(mu);
    cache.emplace(n, r);
  }
  return r;
}

LaurentPoly extended_cyclotomic(long n, const Mono& v) {
  if (v.empty()) throw math_error("extended cyclotomic needs a variable");
  if (std::all_of(v.begin(), v.end(), [](Exp x) { return x == 0; }))
    throw math_error("extended cyclotomic rejects the zero direction");
  LaurentPoly psi = cyclotomic(n);
  Exp deg = psi.max_exp(0);
  Mono b(v.size());
  for (size_t i = 0; i < v.size(); ++i)
    b[i] = std::max<Exp>(0, -v[i] * deg);
  LaurentPoly r(static_cast<int>(v.size()));
  Mono e(v.size());
  for (const auto& [pe, c] : psi.terms()) {
    Exp k = pe[0];
    for (size_t i = 0; i < v.size(); ++i) e[i] = k * v[i] + b[i];
    r.add_term(e, c);
  }
  return r;
}

std::optional<std::pair<Mono, Mono>> support_direction(const LaurentPoly& p) {
  if (p.is_zero()) throw math_error("support direction of zero polynomial");
  size_t m = static_cast<size_t>(p.num_vars());
  if (p.terms().size() == 1) {
    Mono dir(m, 0);
    if (m > 0) dir[0] = 1;
    return std::make_pair(p.terms().begin()->first, dir);
  }
  const Mono& lo = p.terms().begin()->first;
  const Mono& hi = p.terms().rbegin()->first;
  Mono u(m);
  Exp g = 0;
  for (size_t i = 0; i < m; ++i) {
    u[i] = hi[i] - lo[i];
    g = std::gcd(g, u[i] < 0 ? -u[i] : u[i]);
  }
  Mono v(m);
  for (size_t i = 0; i < m; ++i) v[i] = u[i] / g;
  size_t pivot = 0;
  while (v[pivot] == 0) ++pivot;
  for (const auto& [e, c] : p.terms()) {
    Exp num = e[pivot] - lo[pivot];
    if (num % v[pivot] != 0) return std::nullopt;
    Exp k = num / v[pivot];
    if (k < 0) return std::nullopt;
    for (size_t i = 0; i < m; ++i)
      if (e[i] - lo[i] != k * v[i]) return std::nullopt;
  }
  return std::make_pair(lo, v);
}

Int det_int(const IMatrix& m) {
  size_t n = m.size();
  if (n == 0) throw math_error("determinant of empty matrix");
  for (const auto& row : m)
    if (row.size() != n) throw math_error("determinant of non-square matrix");
  IMatrix a = m;
  int sign = 1;
  Int prev = 1;
  for (size_t k = 0; k + 1 < n; ++k) {
    if (a[k][k] == 0) {
      size_t piv = k;
      while (piv < n && a[piv][k] == 0) ++piv;
      if (piv == n) return 0;
      std::swap(a[k], a[piv]);
      sign = -sign;
    }
    for (size_t i = k + 1; i < n; ++i) {
      for (size_t j = k + 1; j < n; ++j)
        a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
      a[i][k] = 0;
    }
    prev = a[k][k];
  }
  return sign < 0 ? Int(-a[n - 1][n - 1]) : a[n - 1][n - 1];
}

int rank_int(const IMatrix& m) {
  if (m.empty()) return 0;
  IMatrix a = m;
  size_t rows = a.size(), cols = a[0].size();
  size_t r = 0;
  for (size_t c = 0; c < cols && r < rows; ++c) {
    size_t piv = r;
    while (piv < rows && a[piv][c] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(a[r], a[piv]);
    for (size_t i = r + 1; i < rows; ++i) {
      if (a[i][c] == 0) continue;
      Int g = int_gcd(a[r][c], a[i][c]);
      Int fr = a[i][c] / g, fi = a[r][c] / g;
      for (size_t j = c; j < cols; ++j) a[i][j] = a[i][j] * fi - a[r][j] * fr;
    }
    ++r;
  }
  return static_cast<int>(r);
}

IMatrix mat_mul(const IMatrix& a, const IMatrix& b) {
  if (a.empty() || b.empty() || a[0].size() != b.size())
    throw math_error("matrix product dimension mismatch");
  size_t n = a.size(), k = b.size(), m = b[0].size();
  IMatrix r(n, std::vector<Int>(m, 0));
  for (size_t i = 0; i < n; ++i)
    for (size_t l = 0; l < k; ++l) {
      if (a[i][l] == 0) continue;
      for (size_t j = 0; j < m; ++j) r[i][j] += a[i][l] * b[l][j];
    }
  return r;
}

IMatrix mat_identity(int n) {
  IMatrix r(static_cast<size_t>(n), std::vector<Int>(static_cast<size_t>(n), 0));
  for (int i = 0; i < n; ++i)
    r[static_cast<size_t>(i)][static_cast<size_t>(i)] = 1;
  return r;
}

IMatrix mat_pow(const IMatrix& a, long k) {
  if (k < 0) throw math_error("negative matrix power");
  IMatrix r = mat_identity(static_cast<int>(a.size()));
  for (long i = 0; i < k; ++i) r = mat_mul(r, a);
  return r;
}

IMatrix inverse_unimodular(const IMatrix& m) {
  Int d = det_int(m);
  if (d != 1 && d != -1)
    throw math_error("matrix is not unimodular");
  size_t n = m.size();
  if (n == 1) return {{d}};
  IMatrix inv(n, std::vector<Int>(n, 0));
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j < n; ++j) {
      IMatrix minor(n - 1, std::vector<Int>(n - 1, 0));
      for (size_t r = 0, rr = 0; r < n; ++r) {
        if (r == i) continue;
        for (size_t c = 0, cc = 0; c < n; ++c) {
          if (c == j) continue;
          minor[rr][cc++] = m[r][c];
        }
        ++rr;
      }
      Int cof = det_int(minor);
      if ((i + j) % 2 == 1) cof = -cof;
      inv[j][i] = cof * d;  // adj^T / det, det = +-1
    }
  }
  return inv;
}

std::vector<LaurentPoly> coeffs_in_var(const LaurentPoly& p, int var) {
  if (p.is_zero()) return {};
  if (p.min_exp(var) < 0)
    throw math_error("dense view requires nonnegative exponents");
  Exp d = p.max_exp(var);
  std::vector<LaurentPoly> r(static_cast<size_t>(d) + 1,
                             LaurentPoly(p.num_vars()));
  for (Exp k = 0; k <= d; ++k) r[static_cast<size_t>(k)] = coeff_of(p, var, k);
  return r;
}

std::vector<Int> dense_coeffs_1var(const LaurentPoly& p) {
  if (p.num_vars() != 1) throw math_error("dense view is univariate only");
  if (p.is_zero()) return {};
  if (p.min_exp(0) < 0)
    throw math_error("dense view requires nonnegative exponents");
  std::vector<Int> r(static_cast<size_t>(p.max_exp(0)) + 1, 0);
  for (const auto& [e, c] : p.terms()) r[static_cast<size_t>(e[0])] = c;
  return r;
}

LaurentPoly from_dense_1var(const std::vector<Int>& c) {
  LaurentPoly p(1);
  for (size_t k = 0; k < c.size(); ++k)
    p.add_term({static_cast<Exp>(k)}, c[k]);
  return p;
}

LaurentPoly drop_var(const LaurentPoly& p, int var) {
  LaurentPoly r(p.num_vars() - 1);
  for (const auto& [e, c] : p.terms()) {
    if (e[static_cast<size_t>(var)] != 0)
      throw math_error("dropped variable still occurs");
    Mono f;
    f.reserve(e.size() - 1);
    for (size_t i = 0; i < e.size(); ++i)
      if (static_cast<int>(i) != var) f.push_back(e[i]);
    r.add_term(f, c);
  }
  return r;
}

LaurentPoly insert_var(const LaurentPoly& p, int pos) {
  LaurentPoly r(p.num_vars() + 1);
  for (const auto& [e, c] : p.terms()) {
    Mono f;
    f.reserve(e.size() + 1);
    for (size_t i = 0; i <= e.size(); ++i) {
      if (static_cast<int>(i) == pos) f.push_back(0);
      if (i < e.size()) f.push_back(e[i]);
    }
    r.add_term(f, c);
  }
  return r;
}

Int euler_phi(long n) {
  if (n < 1) throw math_error("euler phi of nonpositive argument");
  long result = n, m = n;
  for (long p = 2; p * p <= m; ++p) {
    if (m % p == 0) {
      while (m % p == 0) m /= p;
      result -= result / p;
    }
  }
  if (m > 1) result -= result / m;
  return Int(result);
}

double log_int(const Int& a) {
  if (a <= 0) throw math_error("log of nonpositive integer");
  if (a == 1) return 0.0;
  unsigned bits = boost::multiprecision::msb(a);
  if (bits <= 900) return std::log(a.convert_to<double>());
  Int top = a >> (bits - 52);
  return std::log(top.convert_to<double>()) +
         static_cast<double>(bits - 52) * std::log(2.0);
}

std::string to_string(const LaurentPoly& p) {
  if (p.is_zero()) return "0";
  std::string out;
  auto var_name = [&](size_t i) {
    return p.num_vars() == 1 ? std::string("t")
                             : "x" + std::to_string(i + 1);
  };
  for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
    const auto& [e, c] = *it;
    bool neg = c < 0;
    Int mag = neg ? Int(-c) : c;
    if (out.empty()) {
      if (neg) out += "-";
    } else {
      out += neg ? " - " : " + ";
    }
    std::string mono;
    for (size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += var_name(i);
      if (e[i] != 1) mono += "^" + std::to_string(e[i]);
    }
    if (mono.empty()) {
      out += mag.str();
    } else {
      if (mag != 1) out += mag.str() + "*";
      out += mono;
    }
  }
  return out;
}

}  // namespace speclift
