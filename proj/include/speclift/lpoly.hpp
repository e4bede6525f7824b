#pragma once

// Sparse exact-integer multivariable Laurent polynomials and the exact linear
// algebra built on them (fraction-free determinants, resultants, gcds).
// All coefficients are arbitrary-precision; coefficient growth in iterated
// resultants is unbounded by design.

#include <boost/multiprecision/cpp_int.hpp>

#include <complex>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace speclift {

using Int = boost::multiprecision::cpp_int;
using Exp = std::int64_t;
using Mono = std::vector<Exp>;              // exponent vector, length = num_vars
using IMatrix = std::vector<std::vector<Int>>;

struct math_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
// The order of the module is zero (all maximal minors vanish).
struct order_zero_error : math_error {
  using math_error::math_error;
};
// A specialization collapsed to the zero polynomial.
struct zero_specialization_error : math_error {
  using math_error::math_error;
};
// An iterative numeric scheme failed to meet its tolerance within its cap.
struct convergence_error : math_error {
  using math_error::math_error;
};

// Invariants: no stored coefficient is zero; every key has length num_vars;
// zero is the empty map.
class LaurentPoly {
 public:
  explicit LaurentPoly(int num_vars = 1) : nvars_(num_vars) {
    if (num_vars < 0) throw math_error("negative variable count");
  }

  static LaurentPoly constant(int num_vars, Int c) {
    LaurentPoly p(num_vars);
    if (c != 0) p.terms_[Mono(static_cast<size_t>(num_vars), 0)] = std::move(c);
    return p;
  }
  static LaurentPoly monomial(int num_vars, Mono e, Int c) {
    LaurentPoly p(num_vars);
    if (static_cast<int>(e.size()) != num_vars)
      throw math_error("exponent vector length mismatch");
    if (c != 0) p.terms_[std::move(e)] = std::move(c);
    return p;
  }
  static LaurentPoly variable(int num_vars, int i) {
    Mono e(static_cast<size_t>(num_vars), 0);
    e.at(static_cast<size_t>(i)) = 1;
    return monomial(num_vars, std::move(e), 1);
  }

  int num_vars() const { return nvars_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_monomial() const { return terms_.size() == 1; }
  bool is_constant() const;
  const std::map<Mono, Int>& terms() const { return terms_; }

  // Accumulating insert; deletes the entry when the sum cancels.
  void add_term(const Mono& e, const Int& c);
  Int coeff(const Mono& e) const;

  LaurentPoly operator-() const;
  LaurentPoly& operator+=(const LaurentPoly& q);
  LaurentPoly& operator-=(const LaurentPoly& q);
  LaurentPoly operator+(const LaurentPoly& q) const;
  LaurentPoly operator-(const LaurentPoly& q) const;
  LaurentPoly operator*(const LaurentPoly& q) const;
  LaurentPoly operator*(const Int& c) const;
  bool operator==(const LaurentPoly& q) const {
    return nvars_ == q.nvars_ && terms_ == q.terms_;
  }
  bool operator!=(const LaurentPoly& q) const { return !(*this == q); }

  Exp min_exp(int var) const;  // nonzero polynomial required
  Exp max_exp(int var) const;
  Exp span(int var) const { return max_exp(var) - min_exp(var); }
  Mono min_exps() const;  // per-variable minima
  // Lexicographically greatest monomial and its coefficient.
  const std::pair<const Mono, Int>& lex_leading() const;

  std::complex<double> eval(const std::vector<std::complex<double>>& z) const;

 private:
  int nvars_;
  std::map<Mono, Int> terms_;
};

// sign * t^shift * poly reconstructs the input exactly; poly has minimum
// exponent 0 in every variable and positive lex-leading coefficient.
struct UnitNormalForm {
  int sign = 1;
  Mono shift;
  LaurentPoly poly;
};

UnitNormalForm normalize_unit(const LaurentPoly& p);

// Equality up to multiplication by a unit +-t^e.
bool equal_up_to_unit(const LaurentPoly& p, const LaurentPoly& q);

// Integer matrix acting on exponent vectors: variable monomials map through
// the matrix (rows = target rank, cols = source rank).
struct IntLinearMap {
  IMatrix matrix;
  int rows() const { return static_cast<int>(matrix.size()); }
  int cols() const {
    return matrix.empty() ? 0 : static_cast<int>(matrix[0].size());
  }
};

// Exponent vectors are mapped by f; colliding monomials are summed.
LaurentPoly substitute_linear(const LaurentPoly& p, const IntLinearMap& f);

Int content(const LaurentPoly& p);      // gcd of |coefficients|, 0 for zero
LaurentPoly primitive_part(const LaurentPoly& p);

// Exact division in the Laurent ring; returns false when d does not divide p.
bool try_divide_exact(const LaurentPoly& p, const LaurentPoly& d,
                      LaurentPoly* quotient);
LaurentPoly divide_exact(const LaurentPoly& p, const LaurentPoly& d);

// gcd up to units, returned in unit normal form (includes integer content).
LaurentPoly gcd_poly(const LaurentPoly& p, const LaurentPoly& q);

LaurentPoly derivative(const LaurentPoly& p, int var);

// Sylvester determinant in var (deg(q) rows of p first), computed by
// fraction-free elimination over the remaining-variable ring.  Negative
// powers of var are cleared first, so the result is defined up to a unit.
LaurentPoly resultant(const LaurentPoly& p, const LaurentPoly& q, int var);

LaurentPoly cyclotomic(long n);  // one variable, exact
// z^b * Psi_n(z^v) with b_k = max{0, -v_k * deg Psi_n}; v must be nonzero.
LaurentPoly extended_cyclotomic(long n, const Mono& v);

// (base, primitive direction) such that every exponent vector is
// base + k*direction with k >= 0, or nullopt when the support is not
// collinear.  A single monomial reports the first coordinate direction.
std::optional<std::pair<Mono, Mono>> support_direction(const LaurentPoly& p);

// --- exact integer / polynomial matrix helpers ---

LaurentPoly det_poly_matrix(std::vector<std::vector<LaurentPoly>> m);
Int det_int(const IMatrix& m);
int rank_int(const IMatrix& m);
IMatrix mat_mul(const IMatrix& a, const IMatrix& b);
IMatrix mat_identity(int n);
IMatrix mat_pow(const IMatrix& a, long k);  // k >= 0
// Exact inverse of a matrix with det +-1.
IMatrix inverse_unimodular(const IMatrix& m);

// Dense views.  coeffs_in_var requires min_exp(var) >= 0; index k holds the
// coefficient polynomial of var^k (with var-exponent zeroed).
std::vector<LaurentPoly> coeffs_in_var(const LaurentPoly& p, int var);
std::vector<Int> dense_coeffs_1var(const LaurentPoly& p);  // 1 var, exps >= 0
LaurentPoly from_dense_1var(const std::vector<Int>& c);

LaurentPoly drop_var(const LaurentPoly& p, int var);    // exponent 0 required
LaurentPoly insert_var(const LaurentPoly& p, int pos);  // fresh unused var

Int euler_phi(long n);
double log_int(const Int& a);  // natural log of a > 0, safe for huge values

std::string to_string(const LaurentPoly& p);

}  // namespace speclift
