#pragma once

#include <optional>
#include <vector>

#include "speclift/lpoly.hpp"
#include "speclift/words.hpp"

namespace speclift {

// Automorphism of the free group on rank generators, given by reduced image
// words.  A fixture must supply the inverse; validity is verified by
// composing both ways and checking the abelianized matrix is unimodular.
struct FreeAutomorphism {
  int rank = 0;
  std::vector<Word> images;
  std::vector<Word> inverse_images;  // may be empty for derived powers
};

// Degree-d cover of the wedge of rank circles: one permutation per
// generator, acting on points 0..d-1 (point p, generator j edge goes
// p -> perms[j-1][p]).  Must act transitively.
struct PermCover {
  int degree = 0;
  std::vector<std::vector<int>> perms;
};

struct LiftData {
  std::vector<int> tau;     // intertwiner: tau(sigma_j(p)) = sigma(phi(x_j))(tau(p))
  IMatrix homology_matrix;  // size degree*(rank-1)+1, det +-1
};

struct LiftSearchHit {
  PermCover cover;
  long power = 1;  // the k for which phi^k lifts
  LiftData lift;
  double radius = 0.0;
};

void validate_automorphism(const FreeAutomorphism& phi);
void validate_cover(const PermCover& cover);

// Column j = exponent-sum vector of images[j] (the action on H_1 of the base).
IMatrix abelianization_matrix(const FreeAutomorphism& phi);

FreeAutomorphism identity_automorphism(int rank);
// compose(f, g): x -> f(g(x)).
FreeAutomorphism compose(const FreeAutomorphism& f, const FreeAutomorphism& g);
FreeAutomorphism automorphism_power(const FreeAutomorphism& phi, long k);

// All intertwiners tau (lift candidates for phi to the cover); empty means
// phi does not lift.  Multiple results differ by deck transformations.
std::vector<std::vector<int>> lift_exists(const PermCover& cover,
                                          const FreeAutomorphism& phi);

// Permutations commuting with the whole cover action.
std::vector<std::vector<int>> deck_transformations(const PermCover& cover);

// Action of the lift on cover homology in the fixed non-tree-edge cycle
// basis of the Schreier graph (breadth-first spanning tree from point 0,
// generators in ascending order; basis edges ordered by (point, generator)).
// Throws math_error when tau is not a valid intertwiner.
IMatrix lifted_homology_action(const PermCover& cover,
                               const FreeAutomorphism& phi,
                               const std::vector<int>& tau);

// Largest root modulus of the characteristic polynomial, to 1e-9.
double spectral_radius(const IMatrix& m);

// Checks P*L = C*P with P surjective over the rationals (math_error
// otherwise), then returns whether charpoly(C) divides charpoly(L) exactly.
bool verify_quotient_divisibility(const IMatrix& base_c, const IMatrix& lift_l,
                                  const IMatrix& pushforward);

// All transitive covers of the given degree; with dedup they are reduced to
// canonical representatives of simultaneous-conjugation classes.  Degrees
// above the cap are refused.
std::vector<PermCover> enumerate_covers(int rank, int degree,
                                        bool dedup = true, int cap = 7);

// Scan covers by increasing degree and powers phi^k (k up to the number of
// cover classes at the degree) for a lift whose homology action has
// spectral radius > 1 + 1e-9.  Absence of a hit is inconclusive.
std::optional<LiftSearchHit> spectral_lift_search(const FreeAutomorphism& phi,
                                                  int d_max);

}  // namespace speclift
