#pragma once

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "speclift/lpoly.hpp"
#include "speclift/mahler.hpp"
#include "speclift/words.hpp"

namespace speclift {

// A cohomology class in H^1 together with the homology action of the
// monodromy of the fibration it defines.
struct FiberedClass {
  std::vector<Exp> a;  // H_1/Tor -> Z, length = b1 of the record
  IMatrix monodromy;   // integer matrix with det = +-1
};

// Finite presentation of the fundamental group together with the
// abelianization-to-free-part map used to push Fox derivatives into the
// Laurent ring.
struct GroupPresentation {
  int generators = 0;
  std::vector<Word> relators;  // reduced words
  IntLinearMap psi;            // Z^generators ->> Z^b1; kills each relator
};

struct ManifoldRecord {
  std::string name;
  int b1 = 1;
  bool closed = false;
  std::optional<LaurentPoly> delta_pi;  // b1 variables
  std::optional<GroupPresentation> presentation;
  std::vector<FiberedClass> fibered_classes;
};

// Character of (Z/k)^n on the torus: t_i maps to exp(2*pi*i*exponents[i]/k).
struct CharacterSpec {
  long k = 1;
  std::vector<long> exponents;  // reduced mod k
  std::vector<std::complex<double>> values() const;
};

// Result of restricting a multivariable polynomial along a class, with the
// unit-circle correction factor p(t) carried by its roots (symbolically;
// it never changes the measure).
struct SpecializationResult {
  LaurentPoly specialized;  // image of delta under the class, one variable
  std::vector<std::complex<double>> correction_roots;  // roots of p(t)
  MahlerResult measure;     // measure of specialized * p = of specialized
};

// Throws math_error when a record violates a structural invariant.
void validate_record(const ManifoldRecord& rec);

// det(tI - monodromy): monic, degree = size, constant term +-1.
LaurentPoly char_poly_fibered(const FiberedClass& fc);

// Entry (i,j) = Fox derivative of relator i by generator j, pushed through
// psi.  Satisfies sum_j (dw/dx_j)(psi(x_j) - 1) = psi(w) - 1 exactly.
std::vector<std::vector<LaurentPoly>> fox_presentation_matrix(
    const GroupPresentation& gp);

// Gcd of the maximal minors, in unit normal form.  r x s input needs
// r >= s-1; for r = s-1 the minors run over single column deletions.
// Throws order_zero_error when every maximal minor vanishes.
LaurentPoly alexander_from_presentation(
    const std::vector<std::vector<LaurentPoly>>& m);

// Restriction of delta along the surjective class a (1 x n), times the
// three-case correction p(t): p = 1 when the character is nontrivial on
// the kernel; otherwise p = (t - conj(xi(a*))), squared up to conjugation
// when the manifold is closed.  xi_at_dual must lie on the unit circle.
SpecializationResult specialize_with_correction(const LaurentPoly& delta,
                                                const IntLinearMap& a,
                                                bool xi_trivial_on_kernel,
                                                bool closed,
                                                std::complex<double> xi_at_dual);

// Character-product polynomial of the (Z/k)^{|twisted|} cover: for each
// twisted variable t_j (0-based, ascending) replace P by
// Res_z(z^k - t_j^k, P with t_j -> z).  Equals the product of delta over
// all conjugated character twists, up to unit; returned unit-normalized.
LaurentPoly abelian_cover_alexander(const LaurentPoly& delta, long k,
                                    const std::vector<int>& twisted_vars);

// Substitute along a surjective 1 x n class and unit-normalize; throws
// zero_specialization_error when the image vanishes (the caller must then
// apply the correction-factor bookkeeping).
LaurentPoly pullback_class_specialization(const LaurentPoly& cover_delta,
                                          const IntLinearMap& b1_class);

}  // namespace speclift
