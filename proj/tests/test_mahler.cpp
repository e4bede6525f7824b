#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <gsl/gsl_errno.h>
#include <gsl/gsl_integration.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include "speclift/lpoly.hpp"
#include "speclift/mahler.hpp"

using namespace speclift;

namespace {

constexpr double kTau = 6.283185307179586476925286766559;

LaurentPoly t_poly(std::vector<std::pair<Exp, long>> terms) {
  LaurentPoly p(1);
  for (auto& [e, c] : terms) p.add_term(Mono{e}, Int(c));
  return p;
}

LaurentPoly make(int nvars, std::vector<std::pair<Mono, long>> terms) {
  LaurentPoly p(nvars);
  for (auto& [e, c] : terms) p.add_term(e, Int(c));
  return p;
}

LaurentPoly lehmer_poly() {
  return t_poly({{0, 1}, {1, 1}, {3, -1}, {4, -1}, {5, -1},
                 {6, -1}, {7, -1}, {9, 1}, {10, 1}});
}

// log |p(e^{i theta})| for a dense univariate coefficient list.
struct CircleEval {
  std::vector<std::complex<double>> c;
};

double log_abs_on_circle(double theta, void* params) {
  const auto& c = static_cast<CircleEval*>(params)->c;
  std::complex<double> z = std::polar(1.0, theta), acc = 0.0;
  for (size_t k = c.size(); k-- > 0;) acc = acc * z + c[k];
  return std::log(std::abs(acc));
}

// log max(1, |1 + e^{i theta}|): the slice-measure integrand of 1 + x + y.
double smyth_integrand(double theta, void*) {
  double m = std::abs(1.0 + std::polar(1.0, theta));
  return m > 1.0 ? std::log(m) : 0.0;
}

double qags(double (*f)(double, void*), void* params) {
  gsl_set_error_handler_off();
  gsl_integration_workspace* w = gsl_integration_workspace_alloc(4000);
  gsl_function fn;
  fn.function = f;
  fn.params = params;
  double result = 0.0, abserr = 0.0;
  int status =
      gsl_integration_qags(&fn, 0.0, kTau, 1e-12, 1e-10, 4000, w, &result,
                           &abserr);
  gsl_integration_workspace_free(w);
  REQUIRE(status == GSL_SUCCESS);
  return result / kTau;
}

}  // namespace

TEST_CASE("simultaneous root refinement") {
  // (z-1)(z-2)(z-3), ascending coefficients.
  RootSet rs = poly_roots({{-6, 0}, {11, 0}, {-6, 0}, {1, 0}});
  REQUIRE(rs.roots.size() == 3);
  std::sort(rs.roots.begin(), rs.roots.end(),
            [](auto a, auto b) { return a.real() < b.real(); });
  CHECK(std::abs(rs.roots[0] - std::complex<double>(1, 0)) < 1e-9);
  CHECK(std::abs(rs.roots[1] - std::complex<double>(2, 0)) < 1e-9);
  CHECK(std::abs(rs.roots[2] - std::complex<double>(3, 0)) < 1e-9);
  for (double e : rs.errors) CHECK(e < 1e-8);

  RootSet ri = poly_roots({{1, 0}, {0, 0}, {1, 0}});  // z^2 + 1
  REQUIRE(ri.roots.size() == 2);
  for (const auto& r : ri.roots) CHECK(std::abs(std::abs(r.imag()) - 1.0) < 1e-10);

  // Zeros at the origin are split off exactly.
  RootSet rz = poly_roots({{0, 0}, {0, 0}, {-1, 0}, {1, 0}});  // z^3 - z^2
  REQUIRE(rz.roots.size() == 3);
  CHECK(rz.roots[0] == std::complex<double>(0, 0));
  CHECK(rz.roots[1] == std::complex<double>(0, 0));
  CHECK(rz.errors[0] == 0.0);

  // All twentieth roots of unity, found to high accuracy.
  std::vector<std::complex<double>> c(21, 0.0);
  c[0] = -1.0;
  c[20] = 1.0;
  RootSet ru = poly_roots(c);
  REQUIRE(ru.roots.size() == 20);
  for (const auto& r : ru.roots) CHECK(std::abs(std::abs(r) - 1.0) < 1e-10);

  CHECK_THROWS_AS(poly_roots({}), math_error);
}

TEST_CASE("squarefree decomposition over the integers") {
  LaurentPoly t = LaurentPoly::variable(1, 0);
  LaurentPoly one = LaurentPoly::constant(1, 1);
  LaurentPoly tm1 = t - one;
  LaurentPoly tp2 = t + LaurentPoly::constant(1, 2);

  auto dec = squarefree_decomposition(tm1 * tm1 * tp2);
  REQUIRE(dec.size() == 2);
  CHECK(dec[0].first == tp2);
  CHECK(dec[0].second == 1);
  CHECK(dec[1].first == tm1);
  CHECK(dec[1].second == 2);

  auto dsq = squarefree_decomposition(t_poly({{4, 1}, {2, -2}, {0, 1}}));
  REQUIRE(dsq.size() == 1);
  CHECK(dsq[0].first == t * t - one);
  CHECK(dsq[0].second == 2);

  auto dplain = squarefree_decomposition(t_poly({{2, 1}, {1, -3}, {0, 1}}));
  REQUIRE(dplain.size() == 1);
  CHECK(dplain[0].second == 1);

  // Sign and content are stripped before decomposing.
  auto dneg = squarefree_decomposition((tm1 * tm1) * Int(-2));
  REQUIRE(dneg.size() == 1);
  CHECK(dneg[0].first == tm1);
  CHECK(dneg[0].second == 2);

  // The factors multiply back to the primitive part.
  LaurentPoly p = tm1 * tm1 * tm1 * tp2 * Int(6);
  LaurentPoly prod = one;
  for (const auto& [f, k] : squarefree_decomposition(p))
    for (int i = 0; i < k; ++i) prod = prod * f;
  CHECK(equal_up_to_unit(prod, primitive_part(p)));

  CHECK_THROWS_AS(squarefree_decomposition(LaurentPoly(1)), math_error);
  CHECK_THROWS_AS(squarefree_decomposition(LaurentPoly::variable(2, 0)),
                  math_error);
}

TEST_CASE("univariate Mahler measures") {
  MahlerResult golden2 = mahler_univariate(t_poly({{2, 1}, {1, -3}, {0, 1}}));
  CHECK(golden2.method == "roots");
  CHECK(golden2.value == doctest::Approx(2.618033988749895).epsilon(1e-12));
  CHECK(golden2.log_value == doctest::Approx(std::log(2.618033988749895)));
  CHECK(golden2.error_estimate < 1e-9);

  MahlerResult lm = mahler_univariate(lehmer_poly());
  CHECK(lm.value == doctest::Approx(1.1762808182599191).epsilon(1e-12));

  CHECK(mahler_univariate(t_poly({{2, 1}, {1, -1}, {0, -1}})).value ==
        doctest::Approx(1.618033988749895).epsilon(1e-12));

  // Units have measure exactly one.
  CHECK(mahler_univariate(t_poly({{3, 1}})).method == "exact_one");
  CHECK(mahler_univariate(t_poly({{-2, -1}})).method == "exact_one");
  CHECK(mahler_univariate(LaurentPoly::constant(1, 1)).method == "exact_one");

  // Leading coefficients and inside-the-disc roots: M(2t - 1) = 2.
  CHECK(mahler_univariate(t_poly({{1, 2}, {0, -1}})).value ==
        doctest::Approx(2.0).epsilon(1e-12));
  CHECK(mahler_univariate(t_poly({{1, 1}, {0, -2}})).value ==
        doctest::Approx(2.0).epsilon(1e-12));
  CHECK(mahler_univariate(t_poly({{2, 5}})).value ==
        doctest::Approx(5.0).epsilon(1e-12));
  // Content multiplies in: M(2(t-3)) = 6.
  CHECK(mahler_univariate(t_poly({{1, 2}, {0, -6}})).value ==
        doctest::Approx(6.0).epsilon(1e-12));

  // Multiplicativity and unit invariance.
  LaurentPoly a = t_poly({{1, 1}, {0, -2}});
  LaurentPoly b = t_poly({{1, 1}, {0, -3}});
  CHECK(mahler_univariate(a * b).value == doctest::Approx(6.0).epsilon(1e-10));
  LaurentPoly shifted = t_poly({{0, 1}, {-1, -3}, {-2, 1}}) * Int(-1);
  CHECK(mahler_univariate(shifted).value ==
        doctest::Approx(2.618033988749895).epsilon(1e-10));

  // Repeated roots: M((t-2)^2) = 4.
  CHECK(mahler_univariate(t_poly({{2, 1}, {1, -4}, {0, 4}})).value ==
        doctest::Approx(4.0).epsilon(1e-10));

  // Cyclotomic values sit at 1 numerically.
  CHECK(mahler_univariate(cyclotomic(12)).value ==
        doctest::Approx(1.0).epsilon(1e-10));

  CHECK_THROWS_AS(mahler_univariate(LaurentPoly(1)), math_error);
  CHECK_THROWS_AS(mahler_univariate(LaurentPoly(2)), math_error);
}

TEST_CASE("univariate measure agrees with adaptive circle integration") {
  // Harness sanity: the circle mean of log|2 + e^{i theta}| is log 2.
  CircleEval two{{{2, 0}, {1, 0}}};
  CHECK(qags(&log_abs_on_circle, &two) ==
        doctest::Approx(std::log(2.0)).epsilon(1e-9));

  for (const LaurentPoly& p :
       {t_poly({{2, 1}, {1, -3}, {0, 1}}), lehmer_poly(),
        t_poly({{3, 2}, {1, -5}, {0, 1}}),
        t_poly({{4, 1}, {3, 1}, {2, -2}, {0, 3}})}) {
    CircleEval ev;
    for (const Int& c : dense_coeffs_1var(p))
      ev.c.emplace_back(c.convert_to<double>(), 0.0);
    double log_m = qags(&log_abs_on_circle, &ev);
    CHECK(mahler_univariate(p).log_value ==
          doctest::Approx(log_m).epsilon(1e-9));
  }
}

TEST_CASE("slice points reduce to the unit interval") {
  SlicePoint a = make_slice_point({{3, 6}, {-1, 4}, {5, -10}, {0, 7}});
  REQUIRE(a.coords.size() == 4);
  CHECK(a.coords[0] == std::pair<long, long>{1, 2});
  CHECK(a.coords[1] == std::pair<long, long>{3, 4});
  CHECK(a.coords[2] == std::pair<long, long>{1, 2});
  CHECK(a.coords[3] == std::pair<long, long>{0, 1});
  CHECK_THROWS_AS(make_slice_point({{1, 0}}), math_error);
}

TEST_CASE("slice integrals with an exact inner variable") {
  LaurentPoly p = make(2, {{{0, 0}, 1}, {{1, 0}, 1}, {{0, 1}, 1}});  // 1+x+y

  // y = 1: slice x + 2.
  CHECK(jensen_slice_integral(p, make_slice_point({{0, 1}})) ==
        doctest::Approx(std::log(2.0)).epsilon(1e-12));
  // y = i: slice x + (1 + i), measure sqrt 2.
  CHECK(jensen_slice_integral(p, make_slice_point({{1, 4}})) ==
        doctest::Approx(0.5 * std::log(2.0)).epsilon(1e-9));
  // y = -1: the constant term cancels and the slice is the unit x.
  CHECK(jensen_slice_integral(p, make_slice_point({{1, 2}})) ==
        doctest::Approx(0.0).epsilon(1e-10));

  // A monomial slice of a monomial.
  LaurentPoly xy = make(2, {{{1, 1}, 1}});
  CHECK(jensen_slice_integral(xy, make_slice_point({{1, 3}})) ==
        doctest::Approx(0.0).epsilon(1e-10));

  // (1+x)(1-y) vanishes identically on the y = 1 slice, where the
  // cancellation is exact in floating point.
  LaurentPoly q =
      make(2, {{{0, 0}, 1}, {{1, 0}, 1}, {{0, 1}, -1}, {{1, 1}, -1}});
  CHECK_THROWS_AS(jensen_slice_integral(q, make_slice_point({{0, 1}})),
                  zero_specialization_error);

  CHECK_THROWS_AS(jensen_slice_integral(p, make_slice_point({{1, 2}, {1, 3}})),
                  math_error);
  CHECK_THROWS_AS(jensen_slice_integral(LaurentPoly(2),
                                        make_slice_point({{1, 2}})),
                  math_error);
}

TEST_CASE("multivariate Mahler measure by slice quadrature") {
  LaurentPoly p = make(2, {{{0, 0}, 1}, {{1, 0}, 1}, {{0, 1}, 1}});  // 1+x+y

  MahlerResult m = mahler_multivariate(p, 256, 1e-3);
  CHECK(m.method == "slice_quadrature");
  CHECK(m.value == doctest::Approx(1.3813564445185835).epsilon(1e-5));
  CHECK(m.error_estimate < 1e-3);
  CHECK(m.value == doctest::Approx(std::exp(m.log_value)));

  // The independent adaptive oracle agrees.
  double oracle = std::exp(qags(&smyth_integrand, nullptr));
  CHECK(oracle == doctest::Approx(1.3813564445185835).epsilon(1e-8));
  CHECK(m.value == doctest::Approx(oracle).epsilon(1e-5));

  // Smooth case with a closed form: M(2 + x + y) = 2.
  LaurentPoly sm = make(2, {{{0, 0}, 2}, {{1, 0}, 1}, {{0, 1}, 1}});
  CHECK(mahler_multivariate(sm, 64, 1e-6).value ==
        doctest::Approx(2.0).epsilon(1e-6));

  // Products of cyclotomic shape evaluate to 1.
  LaurentPoly xy1 = make(2, {{{1, 1}, 1}, {{0, 0}, -1}});
  CHECK(mahler_multivariate(xy1, 32, 1e-6).value ==
        doctest::Approx(1.0).epsilon(1e-9));

  // Monomials short-circuit exactly.
  CHECK(mahler_multivariate(make(2, {{{2, 3}, -1}}), 32, 1e-6).method ==
        "exact_one");
  MahlerResult five = mahler_multivariate(make(2, {{{2, 3}, 5}}), 32, 1e-6);
  CHECK(five.value == doctest::Approx(5.0).epsilon(1e-12));

  // Three variables: x y z - 1 has measure 1.
  LaurentPoly xyz = make(3, {{{1, 1, 1}, 1}, {{0, 0, 0}, -1}});
  CHECK(mahler_multivariate(xyz, 16, 1e-6).value ==
        doctest::Approx(1.0).epsilon(1e-8));

  CHECK_THROWS_AS(mahler_multivariate(LaurentPoly(2), 64, 1e-4), math_error);
  CHECK_THROWS_AS(mahler_multivariate(t_poly({{1, 1}}), 64, 1e-4), math_error);
  CHECK_THROWS_AS(mahler_multivariate(p, 0, 1e-4), math_error);
  CHECK_THROWS_AS(mahler_multivariate(p, 64, 0.0), math_error);
  CHECK_THROWS_AS(mahler_multivariate(p, 100000000, 1e-4), math_error);
  CHECK_THROWS_AS(mahler_multivariate(p, 8, 1e-15), convergence_error);
}

TEST_CASE("quadrature is bit-identical across thread counts") {
  LaurentPoly p = make(2, {{{0, 0}, 1}, {{1, 0}, 1}, {{0, 1}, 1}});
  MahlerResult serial = mahler_multivariate(p, 256, 1e-3, 1);
  MahlerResult parallel = mahler_multivariate(p, 256, 1e-3, 4);
  CHECK(serial.value == parallel.value);
  CHECK(serial.log_value == parallel.log_value);
  CHECK(serial.error_estimate == parallel.error_estimate);

  LaurentPoly q = make(3, {{{0, 0, 0}, 2}, {{1, 0, 0}, 1},
                           {{0, 1, 0}, 1}, {{0, 0, 1}, 1}});
  CHECK(mahler_multivariate(q, 32, 1e-3, 1).value ==
        mahler_multivariate(q, 32, 1e-3, 3).value);
}

TEST_CASE("detector for monomial-times-cyclotomic products") {
  CHECK(is_cyclotomic_product_univariate(cyclotomic(6)));
  CHECK(is_cyclotomic_product_univariate(cyclotomic(1) * cyclotomic(2)));
  CHECK(is_cyclotomic_product_univariate(cyclotomic(105)));
  CHECK(is_cyclotomic_product_univariate(t_poly({{6, 1}, {0, -1}})));
  CHECK(is_cyclotomic_product_univariate(t_poly({{2, 1}, {1, 2}, {0, 1}})));
  CHECK(is_cyclotomic_product_univariate(LaurentPoly::constant(1, 1)));
  CHECK(is_cyclotomic_product_univariate(LaurentPoly::constant(1, -1)));
  CHECK(is_cyclotomic_product_univariate(t_poly({{1, 1}})));
  CHECK(is_cyclotomic_product_univariate(t_poly({{-3, -1}})));
  // Units, shifts, and repeated factors together.
  LaurentPoly messy = cyclotomic(1) * cyclotomic(1) * cyclotomic(3) *
                      t_poly({{5, -1}});
  CHECK(is_cyclotomic_product_univariate(messy));
  LaurentPoly sq6 = cyclotomic(6) * cyclotomic(6) * t_poly({{2, 1}, {0, -1}});
  CHECK(is_cyclotomic_product_univariate(sq6));

  CHECK(!is_cyclotomic_product_univariate(t_poly({{2, 1}, {1, -3}, {0, 1}})));
  CHECK(!is_cyclotomic_product_univariate(lehmer_poly()));
  CHECK(!is_cyclotomic_product_univariate(t_poly({{1, 1}, {0, -2}})));
  CHECK(!is_cyclotomic_product_univariate(t_poly({{1, 2}, {0, -2}})));
  CHECK(!is_cyclotomic_product_univariate(t_poly({{1, 1}, {0, 2}})));
  CHECK(!is_cyclotomic_product_univariate(t_poly({{2, 1}, {1, -1}, {0, -1}})));
  CHECK(!is_cyclotomic_product_univariate(LaurentPoly::constant(1, 2)));
  CHECK(!is_cyclotomic_product_univariate(LaurentPoly::constant(1, -3)));

  CHECK_THROWS_AS(is_cyclotomic_product_univariate(LaurentPoly(1)), math_error);
  CHECK_THROWS_AS(is_cyclotomic_product_univariate(LaurentPoly::variable(2, 0)),
                  math_error);
}

TEST_CASE("detector for extended cyclotomic factorizations") {
  LaurentPoly ext6 = extended_cyclotomic(6, Mono{1, -1});
  CHECK(is_extended_cyclotomic_product(ext6, {ext6}));

  LaurentPoly xy = make(2, {{{1, 1}, 1}});
  CHECK(is_extended_cyclotomic_product(ext6 * xy, {xy, ext6}));

  // Units between the product and the polynomial are forgiven.
  LaurentPoly negx = make(2, {{{1, 0}, -1}});
  CHECK(is_extended_cyclotomic_product(ext6, {negx, ext6}));

  LaurentPoly f1 = extended_cyclotomic(1, Mono{1, 1});   // xy - 1
  LaurentPoly f2 = extended_cyclotomic(2, Mono{1, -1});  // x + y
  CHECK(is_extended_cyclotomic_product(f1 * f2, {f1, f2}));

  // Non-collinear support in a factor is a clean rejection.
  LaurentPoly smyth = make(2, {{{0, 0}, 1}, {{1, 0}, 1}, {{0, 1}, 1}});
  CHECK(!is_extended_cyclotomic_product(smyth, {smyth}));
  // Collinear support that is not cyclotomic is rejected too.
  LaurentPoly coll = make(2, {{{2, 0}, 1}, {{1, 1}, -3}, {{0, 2}, 1}});
  CHECK(!is_extended_cyclotomic_product(coll, {coll}));

  CHECK_THROWS_AS(is_extended_cyclotomic_product(ext6, {xy}), math_error);
  CHECK_THROWS_AS(
      is_extended_cyclotomic_product(ext6, {LaurentPoly::constant(3, 1)}),
      math_error);
}

TEST_CASE("search for a strictly positive slice") {
  LaurentPoly p = make(2, {{{0, 0}, 1}, {{1, 0}, 1}, {{0, 1}, 1}});
  auto pt = find_positive_slice(p, 16, 1e-3);
  REQUIRE(pt.has_value());
  REQUIRE(pt->coords.size() == 1);
  CHECK(pt->coords[0] == std::pair<long, long>{1, 4});
  CHECK(jensen_slice_integral(p, *pt) > 1e-3);

  // Measure-one polynomials admit no positive slice.
  LaurentPoly xy1 = make(2, {{{1, 1}, 1}, {{0, 0}, -1}});
  CHECK(!find_positive_slice(xy1, 8, 1e-3));

  LaurentPoly q = make(3, {{{0, 0, 0}, 2}, {{1, 0, 0}, 1},
                           {{0, 1, 0}, 1}, {{0, 0, 1}, 1}});
  auto pq = find_positive_slice(q, 8, 1e-3);
  REQUIRE(pq.has_value());
  REQUIRE(pq->coords.size() == 2);
  CHECK(pq->coords[0] == std::pair<long, long>{0, 1});
  CHECK(pq->coords[1] == std::pair<long, long>{1, 2});

  CHECK_THROWS_AS(find_positive_slice(t_poly({{1, 1}}), 8, 1e-3), math_error);
  CHECK_THROWS_AS(find_positive_slice(p, 0, 1e-3), math_error);
  CHECK_THROWS_AS(find_positive_slice(p, 8, 0.0), math_error);
  CHECK_THROWS_AS(find_positive_slice(LaurentPoly(2), 8, 1e-3), math_error);
}
