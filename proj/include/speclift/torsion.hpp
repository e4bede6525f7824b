#pragma once

#include <utility>
#include <vector>

#include "speclift/lpoly.hpp"

namespace speclift {

// Finite-index sublattice of Z^n; the cover's deck group is Z^n / lattice.
struct CoverSpec {
  IMatrix lattice;  // n x n, columns span the sublattice, det != 0
};

struct SNFResult {
  std::vector<Int> diagonal;  // nonnegative, d1 | d2 | ...
  int rank_free = 0;          // count of zero diagonal entries
};

struct GrowthPoint {
  long n = 0;
  bool skipped = false;  // a root of unity was a zero of delta
  double value = 0.0;    // (1/n) * log torsion
};

SNFResult smith_normal_form(const IMatrix& m);

// Same, with unimodular U (rows x rows) and V (cols x cols) such that
// U * m * V is the diagonal form.
SNFResult smith_normal_form_with_transforms(const IMatrix& m, IMatrix* u,
                                            IMatrix* v);

// |Res(delta, 1 + t + ... + t^{n-1})|: the torsion order of the degree-n
// cyclic cover.  Throws math_error when delta vanishes at an n-th root of
// unity other than 1 (the formula is invalid there).
Int torsion_cyclic_cover(const LaurentPoly& delta, long n);

// Expand the presentation matrix over the regular representation of
// Z^n / lattice (each variable becomes a commuting translation
// permutation), then read torsion and free rank off the Smith form.
// Throws math_error when the expanded dimension exceeds dim_cap.
std::pair<Int, int> torsion_abelian_cover_snf(
    const std::vector<std::vector<LaurentPoly>>& delta_presentation,
    const CoverSpec& cover, long dim_cap = 4096);

// (n, (1/n) log torsion) for n = 1..n_max; n where the torsion formula is
// invalid are flagged skipped rather than reported as errors.
std::vector<GrowthPoint> growth_series(const LaurentPoly& delta, long n_max,
                                       int jobs = 1);

}  // namespace speclift
