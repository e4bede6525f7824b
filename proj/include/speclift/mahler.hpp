#pragma once

// Mahler measures: univariate values from simultaneous root refinement,
// multivariate values from slice quadrature with an exact inner variable,
// and the monomial-times-cyclotomics detector for deciding M = 1.

#include "speclift/lpoly.hpp"

#include <complex>
#include <optional>
#include <utility>
#include <vector>

namespace speclift {

// Invariants: value = exp(log_value) up to floating error; method
// "exact_one" implies value == 1 and error_estimate == 0; for integer
// inputs value >= 1 - error_estimate.
struct MahlerResult {
  double value = 1.0;
  double log_value = 0.0;
  std::string method = "exact_one";  // roots | slice_quadrature | exact_one
  double error_estimate = 0.0;
};

// Rational point (r_2,...,r_n), each coordinate reduced with value in [0,1).
struct SlicePoint {
  std::vector<std::pair<long, long>> coords;  // (numerator, denominator)
};

SlicePoint make_slice_point(const std::vector<std::pair<long, long>>& coords);

// All roots of a dense complex polynomial (ascending coefficients) by
// Aberth-Ehrlich simultaneous iteration; per-root residual error bounds.
struct RootSet {
  std::vector<std::complex<double>> roots;
  std::vector<double> errors;
};
RootSet poly_roots(std::vector<std::complex<double>> coeffs);

// |lc| * prod max{1, |w_k|} over the roots.  Exact squarefree decomposition
// over Z first, so the refined roots are simple; unit monomials report
// method exact_one.
MahlerResult mahler_univariate(const LaurentPoly& p);

// log M of the complex slice polynomial p(t, e^{2 pi i r_2}, ...) by the
// root-product formula; variable 0 is the inner variable.
double jensen_slice_integral(const LaurentPoly& p, const SlicePoint& point);

// Outer quadrature over the torus in all variables but the inner one
// (highest degree span, ties to the lowest index), inner variable exact per
// slice; the grid is doubled until successive estimates differ by < tol.
MahlerResult mahler_multivariate(const LaurentPoly& p, long grid, double tol,
                                 int jobs = 1);

// True iff p is +- a monomial times a product of cyclotomic polynomials.
// Exact certification: after the unit/content/extreme-coefficient filters
// and a numeric all-roots-near-the-circle check, every cyclotomic factor
// has phi(n) <= deg p, so dividing out all such Psi_n decides p | t^N - 1
// for N = lcm of those orders.
bool is_cyclotomic_product_univariate(const LaurentPoly& p);

// True iff every supplied factor is a monomial or has collinear support
// whose collapsed univariate image is a cyclotomic product.  The factor
// list must multiply to p up to a unit.
bool is_extended_cyclotomic_product(const LaurentPoly& p,
                                    const std::vector<LaurentPoly>& factors);

// First rational point (coarse-to-fine in the common denominator) whose
// slice integral exceeds delta; the all-zero point (trivial character) is
// not a candidate.  Absence is a legitimate return, not an error.
std::optional<SlicePoint> find_positive_slice(const LaurentPoly& p,
                                              long max_denominator = 16,
                                              double delta = 1e-3);

// Musser squarefree decomposition over Z of a univariate polynomial:
// pairs (factor, multiplicity) with product = primitive part up to sign.
std::vector<std::pair<LaurentPoly, int>> squarefree_decomposition(
    const LaurentPoly& p);

}  // namespace speclift
