#pragma once

#include "multipoly/norms.hpp"
#include "multipoly/polynomial.hpp"

namespace multipoly {

// Dense linear map between sup-norm spaces. The operator norm is exactly
// the largest row l1 norm.
class LinearMap {
 public:
  static LinearMap create(std::uint32_t rows, std::uint32_t cols, std::vector<Scalar> entries);
  static LinearMap identity(std::uint32_t n);
  static LinearMap scaled_identity(std::uint32_t n, Scalar lambda);

  std::uint32_t rows() const { return rows_; }
  std::uint32_t cols() const { return cols_; }
  Scalar at(std::uint32_t i, std::uint32_t j) const { return entries_[std::size_t(i) * cols_ + j]; }
  const std::vector<Scalar>& entries() const { return entries_; }
  bool real_entries() const;

  std::vector<Scalar> apply(const std::vector<Scalar>& x) const;
  double op_norm_sup() const;

  friend bool operator==(const LinearMap&, const LinearMap&) = default;

 private:
  LinearMap() = default;
  std::uint32_t rows_ = 0, cols_ = 0;
  std::vector<Scalar> entries_;  // row-major
};

// a after b, i.e. (a * b) x = a(b(x))
LinearMap compose(const LinearMap& a, const LinearMap& b);

// One multipolynomial per output coordinate; all components share field,
// multidegree and dims.
struct VectorMultiPolynomial {
  std::vector<MultiPolynomial> components;

  static VectorMultiPolynomial create(std::vector<MultiPolynomial> components);
  static VectorMultiPolynomial scalar(MultiPolynomial p);

  std::size_t output_dim() const { return components.size(); }
  const MultiPolynomial& shape() const { return components.front(); }
  std::vector<Scalar> eval(const std::vector<std::vector<Scalar>>& xs) const;
};

struct VectorNormBracket {
  double lower = 0.0;
  double upper = 0.0;
};

// sup over the ball of the max component modulus = max over components of
// their sup norms
VectorNormBracket vector_sup_norm(const VectorMultiPolynomial& p, const SupNormOptions& opts = {});

// t after P after (u_1, ..., u_m): substitutes block j variables by u_j y,
// expands with exact multinomial counts, then combines components through t.
// More than 10^6 intermediate monomials is refused.
VectorMultiPolynomial compose_linear(const LinearMap& t, const VectorMultiPolynomial& p,
                                     const std::vector<LinearMap>& us);

// Both inequality checks report the same record shape. Only lhs_lower can
// falsify: pass iff lhs_lower <= rhs * (1 + tol).
struct InequalityReport {
  double lhs_lower = 0.0;
  double lhs_upper = 0.0;
  double rhs = 0.0;
  bool pass = false;
  double tol = 0.0;
};

// rhs = ||t|| * upper(P) * prod_j ||u_j||^{n_j}; operator norms are exact,
// so a failure would contradict the composition bound for sup norms.
InequalityReport ideal_inequality_report(const LinearMap& t, const VectorMultiPolynomial& p,
                                         const std::vector<LinearMap>& us, double tol = 1e-6,
                                         const SupNormOptions& opts = {});

// R after P after (Q_1, ..., Q_n). Block j of Q_i carries composite degree
// r_{ij} * k_i * r, r = deg R, k_i = deg_i P. Same 10^6 monomial budget.
VectorMultiPolynomial compose_hyper(const MultiPolynomial& r, const VectorMultiPolynomial& p,
                                    const std::vector<VectorMultiPolynomial>& qs);

// Degree-indexed constant sequences for the hyper bound; entry d reads
// seq[d-1], degrees past the end count as 1.
struct HyperIneqConfig {
  std::vector<double> c_seq = {1.0};
  std::vector<double> k_seq = {1.0};
  double tol = 1e-6;

  void validate() const;  // C_1 = K_1 = 1, every entry >= 1
  double c_at(std::uint32_t degree) const;
  double k_at(std::uint32_t degree) const;
};

// rhs = K_r * prod_i (prod_j C_{r_ij})^{r k_i} * ||R|| * ||P||^r
//         * prod_i ||Q_i||^{r k_i}, all norms by their upper estimates
InequalityReport hyper_inequality_report(const MultiPolynomial& r,
                                         const VectorMultiPolynomial& p,
                                         const std::vector<VectorMultiPolynomial>& qs,
                                         const HyperIneqConfig& config = {},
                                         const SupNormOptions& opts = {});

enum class SummingMode : std::uint8_t { abs, full };

struct SummingReport {
  double lhs = 0.0;
  double rhs = 0.0;
  double ratio = 0.0;
  bool infinite = false;  // rhs vanished while lhs did not
  SummingMode mode = SummingMode::abs;
};

// abs: diagonal sum over equal-length families; full: the m-fold sum over
// all index tuples. rhs = prod_k weak_lq_norm(family_k, q_k)^{n_k}.
SummingReport summing_ratio(const MultiPolynomial& p,
                            const std::vector<std::vector<std::vector<Scalar>>>& families,
                            double exponent, const std::vector<double>& qs, SummingMode mode);

}  // namespace multipoly
