#pragma once

// deterministic generators shared by the suites; everything is driven by
// SplitMix64 so failures replay exactly
#include <cstdint>
#include <vector>

#include "multipoly/compose.hpp"
#include "multipoly/polynomial.hpp"

namespace testutil {

using namespace multipoly;

inline Scalar random_scalar(SplitMix64& rng, Field field) {
  const double re = rng.symmetric();
  return field == Field::complex ? Scalar{re, rng.symmetric()} : Scalar{re, 0.0};
}

inline std::vector<Scalar> random_vector(SplitMix64& rng, Field field, std::size_t n) {
  std::vector<Scalar> v(n);
  for (auto& e : v) e = random_scalar(rng, field);
  return v;
}

// one vector per block, entries in the unit ball
inline std::vector<std::vector<Scalar>> random_point(SplitMix64& rng,
                                                     const MultiPolynomial& p) {
  std::vector<std::vector<Scalar>> xs;
  xs.reserve(p.block_count());
  for (auto d : p.dims()) xs.push_back(random_vector(rng, p.field(), d));
  return xs;
}

inline MultiIndex index_of(const std::vector<std::uint32_t>& composition) {
  std::vector<MultiIndex::Entry> entries;
  for (std::uint32_t c = 0; c < composition.size(); ++c)
    if (composition[c] > 0) entries.push_back({c, composition[c]});
  return MultiIndex::from_entries(std::move(entries));
}

// dense-ish random polynomial: every monomial kept with probability `keep`
inline MultiPolynomial random_poly(SplitMix64& rng, Field field, MultiDegree md,
                                   std::vector<std::uint32_t> dims, double keep = 0.8) {
  std::vector<std::vector<std::vector<std::uint32_t>>> per_block;
  for (std::size_t b = 0; b < dims.size(); ++b)
    per_block.push_back(weak_compositions(md.degrees[b], dims[b]));

  PolynomialBuilder builder(field, md, dims);
  std::vector<std::size_t> pick(per_block.size(), 0);
  bool more = true;
  while (more) {
    if (rng.unit() < keep) {
      CoefficientKey key;
      for (std::size_t b = 0; b < per_block.size(); ++b)
        key.alphas.push_back(index_of(per_block[b][pick[b]]));
      builder.add(std::move(key), random_scalar(rng, field));
    }
    more = false;
    for (std::size_t b = per_block.size(); b-- > 0;) {
      if (++pick[b] < per_block[b].size()) {
        more = true;
        break;
      }
      pick[b] = 0;
    }
  }
  return builder.build();
}

inline LinearMap random_map(SplitMix64& rng, Field field, std::uint32_t rows,
                            std::uint32_t cols) {
  std::vector<Scalar> entries(std::size_t(rows) * cols);
  for (auto& e : entries) e = random_scalar(rng, field);
  return LinearMap::create(rows, cols, std::move(entries));
}

inline double rel_err(Scalar got, Scalar want) {
  return std::abs(got - want) / std::max(1.0, std::abs(want));
}

}  // namespace testutil
