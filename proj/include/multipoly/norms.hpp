#pragma once

#include "multipoly/polynomial.hpp"

namespace multipoly {

enum class NormMethod : std::uint8_t { vertex_exact, block_ascent, coeff_sum };

const char* norm_method_name(NormMethod m);

// Certified bracket lower <= ||P|| <= upper. The witness is a point of the
// product unit ball with |P(witness)| == lower (reproducible to 1e-10);
// vertex_exact implies lower == upper.
struct NormEstimate {
  double lower = 0.0;
  double upper = 0.0;
  NormMethod method = NormMethod::coeff_sum;
  std::vector<std::vector<Scalar>> witness;
};

// validates the bracket invariants against p; clamps a sub-1e-9 floating
// excess of lower over upper, throws beyond that
NormEstimate make_norm_estimate(const MultiPolynomial& p, double lower, double upper,
                                NormMethod method, std::vector<std::vector<Scalar>> witness);

// Exact sup norm of a real multilinear polynomial (all block degrees 1).
// Enumerates sign vertices of every block except the largest and solves that
// block in closed form; refuses when prod(2^d_i) over the enumerated blocks
// exceeds the budget. Complex input is not supported here.
NormEstimate sup_norm_multilinear_exact(const MultiPolynomial& p,
                                        std::uint64_t budget = std::uint64_t(1) << 22);

struct SupNormOptions {
  unsigned starts = 64;
  unsigned max_sweeps = 200;
  double stagnation_tol = 1e-10;
  std::uint64_t seed = 0x5EEDBA5Eu;   // start-point stream
  bool allow_exact = true;            // hand multilinear real inputs to the vertex oracle
  std::uint64_t vertex_budget = std::uint64_t(1) << 22;
};

// Multi-start cyclic coordinate ascent. Per coordinate the restriction is a
// univariate polynomial, maximized exactly over [-1,1] (derivative
// sign-change bisection plus endpoints); complex coordinates add a phase
// search (16 samples, then golden-section). lower comes from the best local
// maximum, upper = min(sum |c|, exact vertex norm when applicable).
NormEstimate sup_norm_estimate(const MultiPolynomial& p, const SupNormOptions& opts = {});

// (sum_alpha |c_alpha|^p)^(1/p), p >= 1
double lp_coeff_norm(const MultiPolynomial& p, double exponent);

// weak l_q norm of a finite family of vectors in a sup-norm space:
// max over coordinates k of (sum_j |x_j[k]|^q)^(1/q)
double weak_lq_norm(const std::vector<std::vector<Scalar>>& family, double q);

struct ContinuityReport {
  double bound = 0.0;      // upper estimate used on the right side
  double max_ratio = 0.0;  // max |P(x)| / prod ||x_i||^{n_i} over the samples
  std::size_t samples = 0;
  std::size_t violations = 0;  // ratios above bound * (1 + 1e-9)
  bool witness_ok = false;     // max_ratio >= lower * (1 - 1e-6)
  bool pass = false;
};

// Samples unconstrained points (norms far from 1) and checks
// |P(x)| <= upper * prod ||x_i||_inf^{n_i}; the rescaled witness is among the
// samples, so max_ratio also certifies the lower bound.
ContinuityReport continuity_certificate(const MultiPolynomial& p, const NormEstimate& est,
                                        std::size_t samples, std::uint64_t seed = 0xC0417EED);
ContinuityReport continuity_certificate(const MultiPolynomial& p, std::size_t samples);

struct BallTransferReport {
  double shifted_bound = 0.0;  // max |P| over Latin-hypercube probes of ball(center, radius)
  double centered_max = 0.0;   // max |P| over probes of ball(0, radius)
  double factor = 0.0;         // prod n_i^{n_i} / n_i!
  double slack = 0.0;
  bool pass = false;
};

// checks centered_max <= shifted_bound * factor * (1 + slack) with
// deterministic Latin-hypercube probes
BallTransferReport ball_transfer_check(const MultiPolynomial& p,
                                       const std::vector<std::vector<Scalar>>& center,
                                       double radius, std::size_t probes, double slack = 0.05,
                                       std::uint64_t seed = 0xBA117A4E);

namespace detail {

// real polynomial flattened over the concatenated block coordinates;
// the ascent hot path works on this view
struct RealView {
  std::vector<double> coeff;                 // per term
  std::vector<std::uint32_t> entry_begin;    // per term, index into coord/expo; +1 sentinel
  std::vector<std::uint16_t> coord;
  std::vector<std::uint8_t> expo;
  std::vector<std::uint32_t> offsets;        // block -> first flat coordinate
  std::vector<std::uint32_t> block_degree;   // per block
  std::vector<std::uint32_t> block_of;       // flat coordinate -> block
  unsigned total_dim = 0;

  static RealView from(const MultiPolynomial& p);
  double eval(const double* x) const;
};

// exact max of |q(t)| over [lo, hi]; returns (t, |q(t)|)
std::pair<double, double> max_abs_univariate(const std::vector<double>& q, double lo, double hi);

double coeff_sum(const MultiPolynomial& p);

// multi-start coordinate ascent; lower from the best local maximum,
// upper from the coefficient sum
NormEstimate ascent_estimate(const MultiPolynomial& p, const SupNormOptions& opts);

}  // namespace detail

}  // namespace multipoly
