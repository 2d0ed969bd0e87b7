#pragma once

#include "multipoly/norms.hpp"
#include "multipoly/polynomial.hpp"

namespace multipoly {

// critical exponent 2M/(M+1), M = total degree
double bh_exponent(const MultiDegree& n);

// Relabeling of source coordinates into one target block: assignment[i][j]
// is the target coordinate of (block i, coordinate j). Images must be
// disjoint and cover 0..sum(dims)-1.
struct BlockPartition {
  std::vector<std::vector<std::uint32_t>> assignment;

  // block i occupies target coordinates [offset_i, offset_i + dims[i])
  static BlockPartition contiguous(const std::vector<std::uint32_t>& dims);

  std::uint32_t target_dim() const;
  void validate(const std::vector<std::uint32_t>& dims) const;
};

// Q(z) = P restricted to the split variables: one block of degree M, the
// coefficient multiset carried over unchanged, so every lp coefficient norm
// is preserved exactly and ||Q|| <= ||P||.
MultiPolynomial split_embed(const MultiPolynomial& p, const BlockPartition& partition);

// Random-sign M-linear form on (K^r)^M: T(x) = sum over index tuples of
// +-1 * x^(1)_{i_1} ... x^(M)_{i_M}. Signs are drawn from the generator
// seeded by (r, arity, seed), one per tuple in odometer order (slot 0
// slowest), so instances are reproducible.
struct KszInstance {
  std::uint32_t r = 1;
  std::uint32_t arity = 1;
  std::uint64_t seed = 0;
  std::vector<std::int8_t> signs;  // r^arity entries, all +-1

  std::uint64_t tuple_count() const { return signs.size(); }
  double sign_at(const std::vector<std::uint32_t>& tuple) const;
  MultiPolynomial as_polynomial() const;  // arity blocks of dimension r
};

KszInstance ksz_build(std::uint32_t r, std::uint32_t arity, std::uint64_t seed);

// The (n_1, ..., n_m)-homogeneous lift of T: block i holds n_i disjoint
// copies of the r slot coordinates, ordered (copy 0)(copy 1)...; slot s of
// copy c in block i reads coordinate c*r + i_s. Shares T's coefficient
// multiset: sum |c|^p = r^M exactly, and ||P_r|| = ||T_r|| because the
// copies occupy disjoint coordinates.
MultiPolynomial ksz_lift(const KszInstance& inst, const MultiDegree& n);

struct ScanRow {
  std::uint32_t r = 1;
  std::uint64_t seed = 0;
  double norm_lower = 0.0;
  double norm_upper = 0.0;
  double lp_norm = 0.0;
  double ratio_lower = 0.0;  // lp_norm / norm_upper
  double ratio_upper = 0.0;  // lp_norm / norm_lower
};

struct RatioScanResult {
  MultiDegree n;
  double p = 1.0;
  std::vector<ScanRow> cells;  // every (r, seed), r ascending then seed
  std::vector<ScanRow> rows;   // per r the anchor seed: largest norm_upper
  double fitted_slope = 0.0;   // least-squares slope of log ratio_lower vs log r over rows
  double fitted_K = 0.0;       // max over rows of norm_upper / r^{(M+1)/2}
  double expected_slope = 0.0; // M/p - (M+1)/2
};

struct ScanOptions {
  unsigned starts = 256;       // ascent starts when the exact oracle is unavailable
  std::uint64_t vertex_budget = std::uint64_t(1) << 33;
};

// For each r and seed builds the lifted instance and brackets its norm:
// exact vertex norms for multilinear shapes within budget, block ascent
// otherwise with the unlifted form's exact norm imported as the upper
// bound. Deterministic for fixed inputs.
RatioScanResult ratio_scan(const MultiDegree& n, double p,
                           const std::vector<std::uint32_t>& r_values, unsigned seeds_per_r,
                           const ScanOptions& opts = {});

}  // namespace multipoly
