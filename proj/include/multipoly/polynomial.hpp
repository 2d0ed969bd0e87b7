#pragma once

#include <span>
#include <string>
#include <vector>

#include "multipoly/multiindex.hpp"

namespace multipoly {

// An (n_1,...,n_m)-homogeneous polynomial between finite-dimensional
// sup-norm spaces, stored as canonical sparse terms: sorted by key,
// no exactly-zero coefficients. Immutable after construction.
class MultiPolynomial {
 public:
  using Term = std::pair<CoefficientKey, Scalar>;

  MultiPolynomial() = default;

  // Canonicalizes the term list (sort, merge duplicates, drop zeros).
  // Throws ShapeError on block-count mismatch, invalid multidegree, or a
  // real-field coefficient with nonzero imaginary part. Deeper per-key checks
  // live in mp_validate so that data read from files can be inspected.
  static MultiPolynomial create(Field field, MultiDegree multidegree,
                                std::vector<std::uint32_t> dims, std::vector<Term> terms);

  Field field() const { return field_; }
  const MultiDegree& multidegree() const { return multidegree_; }
  const std::vector<std::uint32_t>& dims() const { return dims_; }
  std::size_t block_count() const { return dims_.size(); }
  const std::vector<Term>& terms() const { return terms_; }
  std::size_t term_count() const { return terms_.size(); }
  bool zero() const { return terms_.empty(); }

  Scalar coefficient(const CoefficientKey& key) const;  // 0 when absent

  bool operator==(const MultiPolynomial&) const = default;

 private:
  Field field_ = Field::real;
  MultiDegree multidegree_;
  std::vector<std::uint32_t> dims_;
  std::vector<Term> terms_;
};

// the declared multidegree (n_1,...,n_m)
MultiDegree degree(const MultiPolynomial& p);

// value of one monomial key at a block-structured point
Scalar eval_monomial(const CoefficientKey& key, const std::vector<std::vector<Scalar>>& xs);

struct Violation {
  CoefficientKey key;
  std::string reason;
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
};

// per-key checks: block count, per-block degree equals the multidegree,
// coordinates within dims, no zero exponents stored
ValidationReport mp_validate(const MultiPolynomial& p);

Scalar mp_eval(const MultiPolynomial& p, const std::vector<std::vector<Scalar>>& xs);

// P(x_1,...,x_m) = sum_i  phi_i^(1)(x_1)^{n_1} ... phi_i^(m)(x_m)^{n_m} * b_i
struct FiniteTypeSpec {
  struct Summand {
    std::vector<std::vector<Scalar>> functionals;  // one per block, length dims[j]
    Scalar weight;                                 // b_i
  };
  Field field = Field::real;
  MultiDegree multidegree;
  std::vector<std::uint32_t> dims;
  std::vector<Summand> summands;
};

// expands the defining sum into canonical sparse terms
MultiPolynomial finite_type(const FiniteTypeSpec& spec);

// accumulating construction without repeated canonicalization
class PolynomialBuilder {
 public:
  PolynomialBuilder(Field field, MultiDegree multidegree, std::vector<std::uint32_t> dims)
      : field_(field), multidegree_(std::move(multidegree)), dims_(std::move(dims)) {}

  void add(CoefficientKey key, Scalar coeff) { terms_.emplace_back(std::move(key), coeff); }
  std::size_t pending() const { return terms_.size(); }
  MultiPolynomial build();

 private:
  Field field_;
  MultiDegree multidegree_;
  std::vector<std::uint32_t> dims_;
  std::vector<MultiPolynomial::Term> terms_;
};

}  // namespace multipoly
