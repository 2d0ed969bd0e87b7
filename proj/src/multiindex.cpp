#include "multipoly/multiindex.hpp"

#include <algorithm>

namespace multipoly {

MultiIndex MultiIndex::from_entries(std::vector<Entry> entries) {
  std::sort(entries.begin(), entries.end());
  MultiIndex mi;
  for (const auto& [coord, exp] : entries) {
    if (exp == 0) continue;
    if (!mi.entries_.empty() && mi.entries_.back().first == coord) {
      mi.entries_.back().second += exp;
    } else {
      mi.entries_.emplace_back(coord, exp);
    }
  }
  return mi;
}

std::uint32_t MultiIndex::degree() const {
  std::uint32_t d = 0;
  for (const auto& [coord, exp] : entries_) d += exp;
  return d;
}

std::uint32_t MultiIndex::exponent_of(std::uint32_t coord) const {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), coord,
                             [](const Entry& e, std::uint32_t c) { return e.first < c; });
  return (it != entries_.end() && it->first == coord) ? it->second : 0;
}

std::uint32_t MultiIndex::max_coordinate() const {
  return entries_.empty() ? 0 : entries_.back().first;
}

MultiIndex merge_add(const MultiIndex& a, const MultiIndex& b) {
  std::vector<MultiIndex::Entry> joined = a.entries();
  joined.insert(joined.end(), b.entries().begin(), b.entries().end());
  return MultiIndex::from_entries(std::move(joined));
}

}  // namespace multipoly
