#pragma once

#include <compare>
#include <cstdint>
#include <utility>
#include <vector>

#include "multipoly/common.hpp"

namespace multipoly {

// Exponent pattern of one block: sparse (coordinate, exponent) pairs,
// sorted by coordinate, exponents >= 1. The empty pattern is the constant
// monomial of that block.
class MultiIndex {
 public:
  using Entry = std::pair<std::uint32_t, std::uint32_t>;

  MultiIndex() = default;

  // merges duplicates, drops zero exponents, sorts
  static MultiIndex from_entries(std::vector<Entry> entries);

  std::uint32_t degree() const;
  std::uint32_t exponent_of(std::uint32_t coord) const;
  bool empty() const { return entries_.empty(); }
  // largest coordinate mentioned; only meaningful when !empty()
  std::uint32_t max_coordinate() const;
  const std::vector<Entry>& entries() const { return entries_; }

  friend auto operator<=>(const MultiIndex&, const MultiIndex&) = default;

 private:
  std::vector<Entry> entries_;
};

// merged pattern of a product of monomials (exponents add)
MultiIndex merge_add(const MultiIndex& a, const MultiIndex& b);

struct MultiDegree {
  std::vector<std::uint32_t> degrees;

  std::size_t block_count() const { return degrees.size(); }
  std::uint32_t total() const {
    std::uint32_t t = 0;
    for (auto d : degrees) t += d;
    return t;
  }
  // at least one block and every block degree >= 1
  bool valid() const {
    if (degrees.empty()) return false;
    for (auto d : degrees) {
      if (d == 0) return false;
    }
    return true;
  }

  friend auto operator<=>(const MultiDegree&, const MultiDegree&) = default;
};

// one exponent pattern per block; the sparse key of a coefficient
struct CoefficientKey {
  std::vector<MultiIndex> alphas;

  friend auto operator<=>(const CoefficientKey&, const CoefficientKey&) = default;
};

}  // namespace multipoly
