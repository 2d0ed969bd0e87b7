#pragma once

#include "multipoly/norms.hpp"
#include "multipoly/polynomial.hpp"

namespace multipoly {

// Symmetric n-linear form on K^d, stored by its values on basis tuples.
// Keys are sorted coordinate tuples of length arity; the value at any
// permutation of a tuple is the stored value of its sorted form.
class SymmetricForm {
 public:
  struct Entry {
    std::vector<std::uint32_t> key;
    Scalar value{};

    friend bool operator==(const Entry&, const Entry&) = default;
  };

  // canonicalizes: sorts each key, merges duplicates, drops exact zeros
  static SymmetricForm create(Field field, std::uint32_t arity, std::uint32_t dim,
                              std::vector<Entry> entries);

  Field field() const { return field_; }
  std::uint32_t arity() const { return arity_; }
  std::uint32_t dim() const { return dim_; }
  const std::vector<Entry>& entries() const { return entries_; }

  // tuple in any order, length arity, coordinates < dim
  Scalar value(std::vector<std::uint32_t> tuple) const;

  // A(x_1, ..., x_n) for n vectors of length dim
  Scalar eval(const std::vector<std::vector<Scalar>>& xs) const;

  friend bool operator==(const SymmetricForm&, const SymmetricForm&) = default;

 private:
  SymmetricForm() = default;
  Field field_ = Field::real;
  std::uint32_t arity_ = 0;
  std::uint32_t dim_ = 0;
  std::vector<Entry> entries_;  // sorted by key
};

// Sign-averaged value of the symmetric form attached to a degree-n
// single-block polynomial:
//   A(x_1,...,x_n) = 1/(n! 2^n) sum_{eps in {-1,1}^n} eps_1...eps_n
//                      Phat(x0 + eps_1 x_1 + ... + eps_n x_n).
// The result does not depend on x0. The 2^n sum is enumerated exactly;
// n > 12 is refused.
Scalar polarization_value(const MultiPolynomial& phat, const std::vector<Scalar>& x0,
                          const std::vector<std::vector<Scalar>>& xs);

// Coefficients of the symmetric form whose diagonal restriction is phat.
SymmetricForm to_symmetric_form(const MultiPolynomial& phat);

// Inverse direction: the degree-n polynomial x -> A(x, ..., x).
MultiPolynomial poly_from_form(const SymmetricForm& a);

// A as an n-block multipolynomial of degree (1,...,1), one block of dim d per
// slot, so the norms module applies. Term count is sum over keys of the
// number of distinct permutations; more than 10^6 terms is refused.
MultiPolynomial form_as_multilinear(const SymmetricForm& a);

// Norm comparison for the pair (Ahat, A): always Ahat <= A, and
// A <= (n^n/n!) Ahat. Checks use the certified sides of the brackets,
// lower of the left against upper of the right.
struct FormNormBounds {
  NormEstimate poly;  // Ahat, the diagonal polynomial
  NormEstimate form;  // A, as a multilinear polynomial
  double factor = 1.0;       // n^n / n!
  bool poly_le_form = false;
  bool form_le_scaled = false;
  bool pass = false;
  double tol = 0.0;
};

FormNormBounds form_norm_bounds(const SymmetricForm& a, const NormEstimate& poly_est,
                                const NormEstimate& form_est, double tol = 1e-9);

// convenience: estimates both norms internally with the given options
FormNormBounds form_norm_bounds(const SymmetricForm& a, const SupNormOptions& opts = {},
                                double tol = 1e-9);

}  // namespace multipoly
