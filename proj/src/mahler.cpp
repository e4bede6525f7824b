#include "speclift/mahler.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <map>
#include <numeric>
#include <thread>

namespace speclift {

namespace {

constexpr double kGolden = 0.61803398874989484820;
constexpr double kTwoPi = 6.28318530717958647692;

double frac(double x) { return x - std::floor(x); }

std::pair<std::complex<double>, std::complex<double>> horner(
    const std::vector<std::complex<double>>& c, std::complex<double> z) {
  std::complex<double> p = c.back(), dp = 0.0;
  for (size_t k = c.size() - 1; k-- > 0;) {
    dp = dp * z + p;
    p = p * z + c[k];
  }
  return {p, dp};
}

// Bini-style starting points: moduli from the upper convex hull of
// (k, log|c_k|), angles spread by the golden rotation.
std::vector<std::complex<double>> initial_roots(
    const std::vector<std::complex<double>>& c) {
  size_t d = c.size() - 1;
  std::vector<std::pair<double, double>> pts;  // (k, log|c_k|)
  for (size_t k = 0; k <= d; ++k)
    if (std::abs(c[k]) > 0.0)
      pts.emplace_back(static_cast<double>(k), std::log(std::abs(c[k])));
  std::vector<std::pair<double, double>> hull;
  for (const auto& p : pts) {
    while (hull.size() >= 2) {
      const auto& a = hull[hull.size() - 2];
      const auto& b = hull[hull.size() - 1];
      double cross = (b.first - a.first) * (p.second - a.second) -
                     (b.second - a.second) * (p.first - a.first);
      if (cross >= 0.0)
        hull.pop_back();  // b is not strictly above the chord a-p
      else
        break;
    }
    hull.push_back(p);
  }
  std::vector<double> radius(d, 1.0);
  for (size_t h = 0; h + 1 < hull.size(); ++h) {
    size_t k1 = static_cast<size_t>(hull[h].first);
    size_t k2 = static_cast<size_t>(hull[h + 1].first);
    double r = std::exp((hull[h].second - hull[h + 1].second) /
                        static_cast<double>(k2 - k1));
    for (size_t t = k1; t < k2; ++t) radius[t] = r;
  }
  std::vector<std::complex<double>> z(d);
  for (size_t t = 0; t < d; ++t) {
    double theta = kTwoPi * frac(static_cast<double>(t + 1) * kGolden) + 0.3;
    z[t] = std::polar(radius[t], theta);
  }
  return z;
}

}  // namespace

RootSet poly_roots(std::vector<std::complex<double>> coeffs) {
  RootSet out;
  while (!coeffs.empty() && std::abs(coeffs.back()) == 0.0) coeffs.pop_back();
  if (coeffs.empty()) throw math_error("roots of the zero polynomial");
  size_t origin = 0;
  while (origin < coeffs.size() - 1 && std::abs(coeffs[origin]) == 0.0)
    ++origin;
  coeffs.erase(coeffs.begin(), coeffs.begin() + static_cast<long>(origin));
  for (size_t i = 0; i < origin; ++i) {
    out.roots.emplace_back(0.0, 0.0);
    out.errors.push_back(0.0);
  }
  size_t d = coeffs.size() - 1;
  if (d == 0) return out;
  double scale = 0.0;
  for (const auto& c : coeffs) scale = std::max(scale, std::abs(c));
  for (auto& c : coeffs) c /= scale;

  std::vector<std::complex<double>> z = initial_roots(coeffs);
  for (int iter = 0; iter < 400; ++iter) {
    double worst = 0.0;
    for (size_t i = 0; i < d; ++i) {
      auto [p, dp] = horner(coeffs, z[i]);
      if (std::abs(dp) < 1e-300) {
        z[i] *= std::complex<double>(1.0, 1e-6);
        worst = 1.0;
        continue;
      }
      std::complex<double> newton = p / dp;
      std::complex<double> sum = 0.0;
      for (size_t j = 0; j < d; ++j) {
        if (j == i) continue;
        std::complex<double> diff = z[i] - z[j];
        if (std::abs(diff) < 1e-300) diff = std::complex<double>(1e-300, 0.0);
        sum += 1.0 / diff;
      }
      std::complex<double> denom = 1.0 - newton * sum;
      std::complex<double> corr =
          std::abs(denom) < 1e-300 ? newton : newton / denom;
      z[i] -= corr;
      worst = std::max(worst, std::abs(corr) / (1.0 + std::abs(z[i])));
    }
    if (worst < 1e-14) break;
  }
  for (size_t i = 0; i < d; ++i) {
    auto [p, dp] = horner(coeffs, z[i]);
    double err = static_cast<double>(d) * std::abs(p) /
                 std::max(std::abs(dp), 1e-300);
    out.roots.push_back(z[i]);
    out.errors.push_back(std::min(err, 1e-2));
  }
  return out;
}

std::vector<std::pair<LaurentPoly, int>> squarefree_decomposition(
    const LaurentPoly& p) {
  if (p.num_vars() != 1)
    throw math_error("squarefree decomposition is univariate only");
  if (p.is_zero()) throw math_error("squarefree decomposition of zero");
  LaurentPoly a = primitive_part(normalize_unit(p).poly);
  std::vector<std::pair<LaurentPoly, int>> out;
  if (a.is_constant()) return out;
  LaurentPoly b = gcd_poly(a, derivative(a, 0));
  if (b.is_constant()) {
    out.emplace_back(a, 1);
    return out;
  }
  LaurentPoly c = divide_exact(a, b);
  LaurentPoly d = b;
  int k = 1;
  while (!c.is_constant()) {
    LaurentPoly e = gcd_poly(c, d);
    LaurentPoly fk = divide_exact(c, e);
    if (!fk.is_constant()) out.emplace_back(normalize_unit(fk).poly, k);
    c = e;
    d = divide_exact(d, e);
    ++k;
  }
  return out;
}

MahlerResult mahler_univariate(const LaurentPoly& p) {
  if (p.num_vars() != 1) throw math_error("univariate measure needs one variable");
  if (p.is_zero()) throw math_error("Mahler measure of zero polynomial");
  LaurentPoly q = normalize_unit(p).poly;
  if (q.is_constant()) {
    Int c = q.coeff(Mono{0});  // positive after normalization
    if (c == 1) return MahlerResult{1.0, 0.0, "exact_one", 0.0};
    double lv = log_int(c);
    return MahlerResult{std::exp(lv), lv, "roots", 0.0};
  }
  Int cont = content(q);
  LaurentPoly prim = primitive_part(q);
  double log_value = log_int(cont);
  double err_sum = 0.0;
  Exp deg_total = q.max_exp(0);
  for (const auto& [f, mult] : squarefree_decomposition(prim)) {
    std::vector<Int> dense = dense_coeffs_1var(f);
    std::vector<std::complex<double>> c(dense.size());
    for (size_t i = 0; i < dense.size(); ++i)
      c[i] = std::complex<double>(dense[i].convert_to<double>(), 0.0);
    RootSet rs = poly_roots(c);
    double lf = log_int(boost::multiprecision::abs(dense.back()));
    double fe = 0.0;
    for (size_t i = 0; i < rs.roots.size(); ++i) {
      double m = std::abs(rs.roots[i]);
      if (m > 1.0) lf += std::log(m);
      fe += rs.errors[i];
    }
    log_value += mult * lf;
    err_sum += mult * fe;
  }
  double value = std::exp(log_value);
  double error = value * (err_sum + 1e-15 * static_cast<double>(deg_total));
  return MahlerResult{value, log_value, "roots", error};
}

namespace {

// Complex coefficients of the slice with the outer variables pinned at the
// given angles (in turns); returns false when the slice vanishes
// identically (all coefficients below 1e-13 of the largest).
bool slice_coeffs(const LaurentPoly& p, const std::vector<double>& turns,
                  std::vector<std::complex<double>>* out) {
  std::map<Exp, std::complex<double>> acc;
  for (const auto& [e, c] : p.terms()) {
    std::complex<double> w(c.convert_to<double>(), 0.0);
    for (size_t j = 0; j < turns.size(); ++j)
      w *= std::polar(1.0, kTwoPi * turns[j] *
                               static_cast<double>(e[j + 1]));
    acc[e[0]] += w;
  }
  Exp lo = acc.begin()->first, hi = acc.rbegin()->first;
  std::vector<std::complex<double>> v(static_cast<size_t>(hi - lo) + 1, 0.0);
  for (const auto& [k, w] : acc) v[static_cast<size_t>(k - lo)] = w;
  double big = 0.0;
  for (const auto& w : v) big = std::max(big, std::abs(w));
  if (big < 1e-300) return false;
  double thr = 1e-13 * big;
  while (!v.empty() && std::abs(v.back()) < thr) v.pop_back();   // degree fall
  size_t front = 0;
  while (front < v.size() && std::abs(v[front]) < thr) ++front;  // unit factor
  v.erase(v.begin(), v.begin() + static_cast<long>(front));
  if (v.empty()) return false;
  *out = std::move(v);
  return true;
}

double slice_log_measure(const std::vector<std::complex<double>>& coeffs) {
  double lv = std::log(std::abs(coeffs.back()));
  if (coeffs.size() == 1) return lv;
  RootSet rs = poly_roots(coeffs);
  for (const auto& r : rs.roots) {
    double m = std::abs(r);
    if (m > 1.0) lv += std::log(m);
  }
  return lv;
}

}  // namespace

SlicePoint make_slice_point(
    const std::vector<std::pair<long, long>>& coords) {
  SlicePoint pt;
  for (auto [num, den] : coords) {
    if (den == 0) throw math_error("slice coordinate with zero denominator");
    if (den < 0) {
      den = -den;
      num = -num;
    }
    num %= den;
    if (num < 0) num += den;
    long g = std::gcd(num, den);
    if (g == 0) g = den;  // num == 0
    pt.coords.emplace_back(num / g, den / g);
  }
  return pt;
}

double jensen_slice_integral(const LaurentPoly& p, const SlicePoint& point) {
  if (p.is_zero()) throw math_error("slice integral of zero polynomial");
  if (p.num_vars() != static_cast<int>(point.coords.size()) + 1)
    throw math_error("slice point length mismatch");
  std::vector<double> turns(point.coords.size());
  for (size_t j = 0; j < turns.size(); ++j)
    turns[j] = static_cast<double>(point.coords[j].first) /
               static_cast<double>(point.coords[j].second);
  std::vector<std::complex<double>> c;
  if (!slice_coeffs(p, turns, &c))
    throw zero_specialization_error("slice polynomial is identically zero");
  return slice_log_measure(c);
}

namespace {

// Mean of the slice log-measures over an offset uniform grid on the outer
// torus.  Chunked so the summation order is fixed regardless of the worker
// count: per-chunk sums are accumulated sequentially by chunk index.
double grid_estimate(const LaurentPoly& p, long grid, int jobs) {
  int outer = p.num_vars() - 1;
  double total_points = std::pow(static_cast<double>(grid), outer);
  if (total_points > 6.9e7)
    throw math_error("quadrature grid too large");
  long total = 1;
  for (int j = 0; j < outer; ++j) total *= grid;
  std::vector<double> offset(static_cast<size_t>(outer));
  for (int j = 0; j < outer; ++j)
    offset[static_cast<size_t>(j)] = frac(static_cast<double>(j + 1) * kGolden);

  const long chunk = 4096;
  long nchunks = (total + chunk - 1) / chunk;
  std::vector<double> partial(static_cast<size_t>(nchunks), 0.0);
  std::atomic<long> next{0};

  auto worker = [&]() {
    std::vector<double> turns(static_cast<size_t>(outer));
    std::vector<std::complex<double>> c;
    for (;;) {
      long ci = next.fetch_add(1);
      if (ci >= nchunks) return;
      double sum = 0.0;
      long lo = ci * chunk, hi = std::min(total, lo + chunk);
      for (long g = lo; g < hi; ++g) {
        long rest = g;
        for (int j = outer - 1; j >= 0; --j) {
          long idx = rest % grid;
          rest /= grid;
          turns[static_cast<size_t>(j)] =
              (static_cast<double>(idx) + offset[static_cast<size_t>(j)]) /
              static_cast<double>(grid);
        }
        if (!slice_coeffs(p, turns, &c)) {
          for (int j = 0; j < outer; ++j)
            turns[static_cast<size_t>(j)] +=
                1e-7 * offset[static_cast<size_t>(j)];
          if (!slice_coeffs(p, turns, &c)) continue;  // measure-zero event
        }
        sum += slice_log_measure(c);
      }
      partial[static_cast<size_t>(ci)] = sum;
    }
  };

  int workers = std::max(1, static_cast<int>(std::min<long>(jobs, nchunks)));
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  double acc = 0.0;
  for (double s : partial) acc += s;
  return acc / static_cast<double>(total);
}

}  // namespace

MahlerResult mahler_multivariate(const LaurentPoly& p, long grid, double tol,
                                 int jobs) {
  if (p.is_zero()) throw math_error("Mahler measure of zero polynomial");
  if (p.num_vars() < 2)
    throw math_error("multivariate measure needs at least two variables");
  if (grid < 1 || tol <= 0.0) throw math_error("invalid quadrature settings");
  if (p.is_monomial()) {
    Int c = boost::multiprecision::abs(p.terms().begin()->second);
    if (c == 1) return MahlerResult{1.0, 0.0, "exact_one", 0.0};
    double lv = log_int(c);
    return MahlerResult{std::exp(lv), lv, "roots", 0.0};
  }
  // Inner variable: largest degree span, ties to the lowest index.
  int inner = 0;
  for (int i = 1; i < p.num_vars(); ++i)
    if (p.span(i) > p.span(inner)) inner = i;
  LaurentPoly q = p;
  if (inner != 0) {
    size_t n = static_cast<size_t>(p.num_vars());
    IMatrix w(n, std::vector<Int>(n, 0));
    std::vector<size_t> order;
    order.push_back(static_cast<size_t>(inner));
    for (size_t i = 0; i < n; ++i)
      if (static_cast<int>(i) != inner) order.push_back(i);
    for (size_t i = 0; i < n; ++i) w[i][order[i]] = 1;
    q = substitute_linear(p, IntLinearMap{w});
  }
  double prev = grid_estimate(q, grid, jobs);
  long n = grid;
  for (int round = 0; round < 6; ++round) {
    n *= 2;
    double cur = grid_estimate(q, n, jobs);
    double diff = std::abs(std::exp(cur) - std::exp(prev));
    if (diff < tol)
      return MahlerResult{std::exp(cur), cur, "slice_quadrature", diff};
    prev = cur;
  }
  throw convergence_error("quadrature failed to stabilize within the doubling cap");
}

bool is_cyclotomic_product_univariate(const LaurentPoly& p) {
  if (p.num_vars() != 1) throw math_error("univariate detector needs one variable");
  if (p.is_zero()) throw math_error("cyclotomic test of zero polynomial");
  LaurentPoly q = normalize_unit(p).poly;
  if (q.is_constant()) return q.coeff(Mono{0}) == 1;
  if (content(q) != 1) return false;
  std::vector<Int> dense = dense_coeffs_1var(q);
  if (dense.back() != 1 || boost::multiprecision::abs(dense.front()) != 1)
    return false;
  // Quick numeric reject: every root of the squarefree part near the circle.
  for (const auto& [f, mult] : squarefree_decomposition(q)) {
    std::vector<Int> fc = dense_coeffs_1var(f);
    std::vector<std::complex<double>> c(fc.size());
    for (size_t i = 0; i < fc.size(); ++i)
      c[i] = std::complex<double>(fc[i].convert_to<double>(), 0.0);
    for (const auto& r : poly_roots(c).roots)
      if (std::abs(std::abs(r) - 1.0) > 1e-8) return false;
  }
  // Exact certificate: every cyclotomic factor satisfies phi(n) <= deg, so
  // exhausting those divisors decides q | (t^N - 1)-with-multiplicity.
  Exp deg = q.max_exp(0);
  LaurentPoly r = q;
  for (long n = 1; n <= 2 * deg * deg + 4 && !r.is_constant(); ++n) {
    if (euler_phi(n) > deg) continue;
    LaurentPoly psi = cyclotomic(n);
    LaurentPoly quo(1);
    while (try_divide_exact(r, psi, &quo)) r = quo;
  }
  return r.is_constant() && r.coeff(Mono{0}) == 1;
}

bool is_extended_cyclotomic_product(const LaurentPoly& p,
                                    const std::vector<LaurentPoly>& factors) {
  if (p.is_zero()) throw math_error("cyclotomic test of zero polynomial");
  LaurentPoly prod = LaurentPoly::constant(p.num_vars(), 1);
  for (const auto& f : factors) {
    if (f.num_vars() != p.num_vars())
      throw math_error("variable-count mismatch");
    prod = prod * f;
  }
  if (!equal_up_to_unit(prod, p))
    throw math_error("factor product does not match the polynomial");
  for (const auto& f : factors) {
    if (f.is_monomial()) continue;
    auto dir = support_direction(f);
    if (!dir) return false;
    const auto& [base, v] = *dir;
    size_t pivot = 0;
    while (v[pivot] == 0) ++pivot;
    LaurentPoly uni(1);
    for (const auto& [e, c] : f.terms()) {
      Exp k = (e[pivot] - base[pivot]) / v[pivot];
      uni.add_term({k}, c);
    }
    if (!is_cyclotomic_product_univariate(uni)) return false;
  }
  return true;
}

std::optional<SlicePoint> find_positive_slice(const LaurentPoly& p,
                                              long max_denominator,
                                              double delta) {
  if (p.is_zero()) throw math_error("slice search over zero polynomial");
  if (p.num_vars() < 2)
    throw math_error("slice search needs at least two variables");
  if (max_denominator < 1 || delta <= 0.0)
    throw math_error("invalid slice search settings");
  int outer = p.num_vars() - 1;
  for (long q = 1; q <= max_denominator; ++q) {
    std::vector<long> c(static_cast<size_t>(outer), 0);
    for (;;) {
      bool all_zero = std::all_of(c.begin(), c.end(),
                                  [](long x) { return x == 0; });
      if (!all_zero) {
        // Visit each rational point once, at its exact common denominator.
        long l = 1;
        for (long ci : c) {
          long g = std::gcd(ci, q);
          long den = q / (g == 0 ? q : g);
          l = l / std::gcd(l, den) * den;
        }
        if (l == q) {
          std::vector<std::pair<long, long>> coords;
          for (long ci : c) coords.emplace_back(ci, q);
          SlicePoint pt = make_slice_point(coords);
          try {
            if (jensen_slice_integral(p, pt) > delta) return pt;
          } catch (const zero_specialization_error&) {
            // a vanishing slice cannot witness positivity; keep scanning
          }
        }
      }
      int pos = outer - 1;
      while (pos >= 0 && c[static_cast<size_t>(pos)] == q - 1) {
        c[static_cast<size_t>(pos)] = 0;
        --pos;
      }
      if (pos < 0) break;
      ++c[static_cast<size_t>(pos)];
    }
  }
  return std::nullopt;
}

}  // namespace speclift
