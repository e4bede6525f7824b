#pragma once

#include <string>

#include <json.hpp>

#include "speclift/alexander.hpp"
#include "speclift/lpoly.hpp"
#include "speclift/surfcover.hpp"

namespace speclift {

using json = nlohmann::ordered_json;

// Term-list encoding: [[mono, coeff], ...] with mono an exponent array and
// coeff an integer (decimal string when outside the 64-bit range).  Terms
// serialize in ascending lexicographic monomial order.
json poly_to_json(const LaurentPoly& p);
// num_vars < 0 infers the count from the first monomial (rejected for an
// empty term list).  Duplicate monomials and ragged monomials are rejected.
LaurentPoly poly_from_json(const json& j, int num_vars = -1);

// {"vars": n, "poly": [term list]}
json poly_fixture_to_json(const LaurentPoly& p);
LaurentPoly poly_fixture_from_json(const json& j);
// Accepts either the fixture object or a bare term list.
LaurentPoly poly_from_any_json(const json& j);

json record_to_json(const ManifoldRecord& rec);
ManifoldRecord record_from_json(const json& j);  // validates invariants

json automorphism_to_json(const FreeAutomorphism& phi);
FreeAutomorphism automorphism_from_json(const json& j);  // validates

// Permutations in 1-indexed one-line notation.
json cover_to_json(const PermCover& cover);
PermCover cover_from_json(const json& j);  // validates

std::string canonical_dump(const json& j);  // dump(2) + trailing newline
json load_json_file(const std::string& path);

}  // namespace speclift
