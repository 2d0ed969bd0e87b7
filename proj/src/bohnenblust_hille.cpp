#include "multipoly/bohnenblust_hille.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace multipoly {

double bh_exponent(const MultiDegree& n) {
  if (!n.valid()) throw ShapeError("invalid multidegree");
  const double m = double(n.total());
  return 2.0 * m / (m + 1.0);
}

BlockPartition BlockPartition::contiguous(const std::vector<std::uint32_t>& dims) {
  BlockPartition part;
  std::uint32_t offset = 0;
  for (auto d : dims) {
    std::vector<std::uint32_t> row(d);
    std::iota(row.begin(), row.end(), offset);
    part.assignment.push_back(std::move(row));
    offset += d;
  }
  return part;
}

std::uint32_t BlockPartition::target_dim() const {
  std::uint32_t total = 0;
  for (const auto& row : assignment) total += std::uint32_t(row.size());
  return total;
}

void BlockPartition::validate(const std::vector<std::uint32_t>& dims) const {
  if (assignment.size() != dims.size())
    throw ShapeError("partition block count differs from polynomial");
  const std::uint32_t total = target_dim();
  std::vector<bool> seen(total, false);
  for (std::size_t i = 0; i < dims.size(); ++i) {
    if (assignment[i].size() != dims[i])
      throw ShapeError("partition row length differs from block dimension");
    for (auto t : assignment[i]) {
      if (t >= total) throw ShapeError("partition target out of range");
      if (seen[t]) throw ShapeError("partition images overlap");
      seen[t] = true;
    }
  }
}

MultiPolynomial split_embed(const MultiPolynomial& p, const BlockPartition& partition) {
  partition.validate(p.dims());
  const std::uint32_t m_total = p.multidegree().total();

  std::vector<MultiPolynomial::Term> terms;
  terms.reserve(p.term_count());
  for (const auto& [key, coeff] : p.terms()) {
    std::vector<MultiIndex::Entry> entries;
    for (std::size_t i = 0; i < key.alphas.size(); ++i) {
      for (const auto& [coord, expo] : key.alphas[i].entries())
        entries.push_back({partition.assignment[i][coord], expo});
    }
    terms.push_back({CoefficientKey{{MultiIndex::from_entries(std::move(entries))}}, coeff});
  }
  return MultiPolynomial::create(p.field(), MultiDegree{{m_total}}, {partition.target_dim()},
                                 std::move(terms));
}

namespace {

std::uint64_t checked_tuple_count(std::uint32_t r, std::uint32_t arity) {
  constexpr std::uint64_t kMaxTuples = std::uint64_t(1) << 26;
  std::uint64_t count = 1;
  for (std::uint32_t s = 0; s < arity; ++s) {
    count *= r;
    if (count > kMaxTuples) throw BudgetError("sign tuple budget exceeded", count, kMaxTuples);
  }
  return count;
}

}  // namespace

double KszInstance::sign_at(const std::vector<std::uint32_t>& tuple) const {
  if (tuple.size() != arity) throw ShapeError("tuple length differs from arity");
  std::uint64_t idx = 0;
  for (auto i : tuple) {
    if (i >= r) throw ShapeError("tuple entry out of range");
    idx = idx * r + i;
  }
  return double(signs[idx]);
}

MultiPolynomial KszInstance::as_polynomial() const {
  std::vector<MultiPolynomial::Term> terms;
  terms.reserve(signs.size());
  std::vector<std::uint32_t> tuple(arity, 0);
  std::vector<MultiIndex::Entry> one(1);
  for (std::uint64_t idx = 0; idx < tuple_count(); ++idx) {
    CoefficientKey key;
    key.alphas.reserve(arity);
    for (std::uint32_t s = 0; s < arity; ++s) {
      one[0] = {tuple[s], 1};
      key.alphas.push_back(MultiIndex::from_entries(one));
    }
    terms.push_back({std::move(key), Scalar(double(signs[idx]), 0.0)});
    for (std::uint32_t s = arity; s-- > 0;) {
      if (++tuple[s] < r) break;
      tuple[s] = 0;
    }
  }
  MultiDegree md;
  md.degrees.assign(arity, 1);
  return MultiPolynomial::create(Field::real, md, std::vector<std::uint32_t>(arity, r),
                                 std::move(terms));
}

KszInstance ksz_build(std::uint32_t r, std::uint32_t arity, std::uint64_t seed) {
  if (r == 0 || arity == 0) throw ShapeError("sign form needs r >= 1 and arity >= 1");
  const std::uint64_t count = checked_tuple_count(r, arity);
  KszInstance inst;
  inst.r = r;
  inst.arity = arity;
  inst.seed = seed;
  inst.signs.resize(count);
  SplitMix64 rng(mix_seed(mix_seed(r, arity), seed));
  for (auto& s : inst.signs) s = rng.sign() > 0.0 ? 1 : -1;
  return inst;
}

MultiPolynomial ksz_lift(const KszInstance& inst, const MultiDegree& n) {
  if (!n.valid()) throw ShapeError("invalid multidegree");
  if (n.total() != inst.arity) throw ShapeError("multidegree total differs from arity");
  const std::uint32_t arity = inst.arity;
  const std::uint32_t r = inst.r;
  const std::size_t m = n.block_count();

  // slot s -> (block, copy)
  std::vector<std::size_t> slot_block(arity);
  std::vector<std::uint32_t> slot_copy(arity);
  {
    std::uint32_t s = 0;
    for (std::size_t b = 0; b < m; ++b) {
      for (std::uint32_t c = 0; c < n.degrees[b]; ++c, ++s) {
        slot_block[s] = b;
        slot_copy[s] = c;
      }
    }
  }

  std::vector<MultiPolynomial::Term> terms;
  terms.reserve(inst.signs.size());
  std::vector<std::uint32_t> tuple(arity, 0);
  std::vector<std::vector<MultiIndex::Entry>> block_entries(m);
  for (std::uint64_t idx = 0; idx < inst.tuple_count(); ++idx) {
    for (auto& be : block_entries) be.clear();
    for (std::uint32_t s = 0; s < arity; ++s)
      block_entries[slot_block[s]].push_back({slot_copy[s] * r + tuple[s], 1});
    CoefficientKey key;
    key.alphas.reserve(m);
    for (auto& be : block_entries) key.alphas.push_back(MultiIndex::from_entries(be));
    terms.push_back({std::move(key), Scalar(double(inst.signs[idx]), 0.0)});
    for (std::uint32_t s = arity; s-- > 0;) {
      if (++tuple[s] < r) break;
      tuple[s] = 0;
    }
  }

  std::vector<std::uint32_t> dims(m);
  for (std::size_t b = 0; b < m; ++b) dims[b] = n.degrees[b] * r;
  return MultiPolynomial::create(Field::real, n, dims, std::move(terms));
}

namespace {

bool all_ones(const MultiDegree& n) {
  return std::all_of(n.degrees.begin(), n.degrees.end(),
                     [](std::uint32_t d) { return d == 1; });
}

ScanRow scan_cell(const MultiDegree& n, double p, std::uint32_t r, std::uint64_t seed,
                  const ScanOptions& opts) {
  const auto inst = ksz_build(r, n.total(), seed);
  const auto lifted = ksz_lift(inst, n);

  ScanRow row;
  row.r = r;
  row.seed = seed;
  row.lp_norm = lp_coeff_norm(lifted, p);

  if (all_ones(n)) {
    // the lift is the sign form itself; exact when affordable
    SupNormOptions sopts;
    sopts.starts = opts.starts;
    sopts.vertex_budget = opts.vertex_budget;
    const auto est = sup_norm_estimate(lifted, sopts);
    row.norm_lower = est.lower;
    row.norm_upper = est.upper;
  } else {
    SupNormOptions sopts;
    sopts.starts = opts.starts;
    const auto est = sup_norm_estimate(lifted, sopts);
    row.norm_lower = est.lower;
    row.norm_upper = est.upper;
    // the unlifted form has the same norm (copies sit on disjoint
    // coordinates), so its exact value tightens the upper bound
    try {
      const auto exact = sup_norm_multilinear_exact(inst.as_polynomial(), opts.vertex_budget);
      row.norm_upper = std::min(row.norm_upper, exact.upper);
      row.norm_lower = std::min(row.norm_lower, row.norm_upper);
    } catch (const BudgetError&) {
    }
  }

  row.ratio_lower = row.norm_upper > 0.0 ? row.lp_norm / row.norm_upper
                                         : std::numeric_limits<double>::infinity();
  row.ratio_upper = row.norm_lower > 0.0 ? row.lp_norm / row.norm_lower
                                         : std::numeric_limits<double>::infinity();
  return row;
}

double least_squares_slope(const std::vector<double>& xs, const std::vector<double>& ys) {
  const std::size_t n = xs.size();
  if (n < 2) return 0.0;
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= double(n);
  my /= double(n);
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  if (sxx == 0.0) return 0.0;
  return sxy / sxx;
}

}  // namespace

RatioScanResult ratio_scan(const MultiDegree& n, double p,
                           const std::vector<std::uint32_t>& r_values, unsigned seeds_per_r,
                           const ScanOptions& opts) {
  if (!n.valid()) throw ShapeError("invalid multidegree");
  if (p <= 0.0) throw Error("lp exponent must be positive");
  if (!std::is_sorted(r_values.begin(), r_values.end()))
    throw Error("r values must be ascending");
  if (seeds_per_r == 0) throw Error("at least one seed per r is required");

  RatioScanResult result;
  result.n = n;
  result.p = p;
  const double m_total = double(n.total());
  result.expected_slope = m_total / p - (m_total + 1.0) / 2.0;

  for (auto r : r_values) {
    ScanRow best;
    bool have = false;
    for (std::uint64_t seed = 0; seed < seeds_per_r; ++seed) {
      const ScanRow cell = scan_cell(n, p, r, seed, opts);
      result.cells.push_back(cell);
      // Per r the row keeps the largest-norm draw. Small r admits freak
      // low-norm instances (the 2x2 sign floor); anchoring rows to the
      // conservative draw keeps the per-row constant flat and understates
      // ratio growth rather than manufacturing it.
      const bool better =
          !have || cell.norm_upper > best.norm_upper ||
          (cell.norm_upper == best.norm_upper && cell.norm_lower > best.norm_lower);
      if (better) {
        best = cell;
        have = true;
      }
    }
    result.rows.push_back(best);
  }

  std::vector<double> xs, ys;
  for (const auto& row : result.rows) {
    if (row.ratio_lower > 0.0 && std::isfinite(row.ratio_lower)) {
      xs.push_back(std::log(double(row.r)));
      ys.push_back(std::log(row.ratio_lower));
    }
    result.fitted_K = std::max(result.fitted_K,
                               row.norm_upper / std::pow(double(row.r), (m_total + 1.0) / 2.0));
  }
  result.fitted_slope = least_squares_slope(xs, ys);
  return result;
}

}  // namespace multipoly
