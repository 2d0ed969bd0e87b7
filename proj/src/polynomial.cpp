#include "multipoly/polynomial.hpp"

#include <algorithm>
#include <cmath>

namespace multipoly {

namespace {

std::vector<MultiPolynomial::Term> canonicalize(Field field, std::size_t blocks,
                                                std::vector<MultiPolynomial::Term> terms) {
  for (const auto& [key, coeff] : terms) {
    if (key.alphas.size() != blocks) {
      throw ShapeError("term key has " + std::to_string(key.alphas.size()) + " blocks, expected " +
                       std::to_string(blocks));
    }
    if (field == Field::real && coeff.imag() != 0.0) {
      throw ShapeError("real polynomial with nonzero imaginary coefficient");
    }
  }
  std::sort(terms.begin(), terms.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<MultiPolynomial::Term> out;
  out.reserve(terms.size());
  for (auto& t : terms) {
    if (!out.empty() && out.back().first == t.first) {
      out.back().second += t.second;
    } else {
      out.push_back(std::move(t));
    }
  }
  std::erase_if(out, [](const auto& t) { return t.second == Scalar(0.0, 0.0); });
  return out;
}

}  // namespace

MultiPolynomial MultiPolynomial::create(Field field, MultiDegree multidegree,
                                        std::vector<std::uint32_t> dims,
                                        std::vector<Term> terms) {
  if (!multidegree.valid()) throw ShapeError("multidegree must have m >= 1 blocks, all degrees >= 1");
  if (dims.size() != multidegree.block_count()) throw ShapeError("dims and multidegree disagree on block count");
  for (auto d : dims) {
    if (d == 0) throw ShapeError("zero-dimensional block");
  }
  MultiPolynomial p;
  p.field_ = field;
  p.multidegree_ = std::move(multidegree);
  p.dims_ = std::move(dims);
  p.terms_ = canonicalize(field, p.dims_.size(), std::move(terms));
  return p;
}

Scalar MultiPolynomial::coefficient(const CoefficientKey& key) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), key,
                             [](const Term& t, const CoefficientKey& k) { return t.first < k; });
  return (it != terms_.end() && it->first == key) ? it->second : Scalar(0.0);
}

MultiDegree degree(const MultiPolynomial& p) { return p.multidegree(); }

namespace {
Scalar pow_scalar(Scalar base, std::uint32_t e) {
  Scalar r(1.0);
  while (e) {
    if (e & 1) r *= base;
    base *= base;
    e >>= 1;
  }
  return r;
}
}  // namespace

Scalar eval_monomial(const CoefficientKey& key, const std::vector<std::vector<Scalar>>& xs) {
  if (key.alphas.size() != xs.size()) throw ShapeError("monomial key and point disagree on block count");
  Scalar v(1.0);
  for (std::size_t b = 0; b < xs.size(); ++b) {
    for (const auto& [coord, exp] : key.alphas[b].entries()) {
      if (coord >= xs[b].size()) throw ShapeError("monomial coordinate outside the block");
      v *= pow_scalar(xs[b][coord], exp);
    }
  }
  return v;
}

ValidationReport mp_validate(const MultiPolynomial& p) {
  ValidationReport report;
  const auto& degs = p.multidegree().degrees;
  for (const auto& [key, coeff] : p.terms()) {
    for (std::size_t b = 0; b < key.alphas.size(); ++b) {
      const MultiIndex& mi = key.alphas[b];
      std::uint32_t prev_coord = 0;
      bool first = true;
      for (const auto& [coord, exp] : mi.entries()) {
        if (exp == 0) {
          report.violations.push_back({key, "zero exponent stored in block " + std::to_string(b)});
        }
        if (!first && coord <= prev_coord) {
          report.violations.push_back({key, "unsorted coordinates in block " + std::to_string(b)});
        }
        first = false;
        prev_coord = coord;
        if (coord >= p.dims()[b]) {
          report.violations.push_back(
              {key, "coordinate " + std::to_string(coord) + " outside block " + std::to_string(b) +
                        " of dimension " + std::to_string(p.dims()[b])});
        }
      }
      if (mi.degree() != degs[b]) {
        report.violations.push_back(
            {key, "block " + std::to_string(b) + " degree " + std::to_string(mi.degree()) +
                      " != " + std::to_string(degs[b])});
      }
    }
  }
  return report;
}

Scalar mp_eval(const MultiPolynomial& p, const std::vector<std::vector<Scalar>>& xs) {
  if (xs.size() != p.block_count()) throw ShapeError("point has wrong block count");
  for (std::size_t b = 0; b < xs.size(); ++b) {
    if (xs[b].size() != p.dims()[b]) {
      throw ShapeError("block " + std::to_string(b) + " has dimension " +
                       std::to_string(xs[b].size()) + ", expected " + std::to_string(p.dims()[b]));
    }
  }
  Scalar acc(0.0);
  for (const auto& [key, coeff] : p.terms()) acc += coeff * eval_monomial(key, xs);
  return acc;
}

MultiPolynomial finite_type(const FiniteTypeSpec& spec) {
  const std::size_t m = spec.multidegree.block_count();
  if (spec.dims.size() != m) throw ShapeError("finite-type dims and multidegree disagree");
  PolynomialBuilder builder(spec.field, spec.multidegree, spec.dims);

  for (const auto& summand : spec.summands) {
    if (summand.functionals.size() != m) throw ShapeError("finite-type summand needs one functional per block");
    // start with the bare weight, then expand phi^(j)(x_j)^{n_j} block by block
    std::vector<std::pair<CoefficientKey, Scalar>> partial;
    partial.emplace_back(CoefficientKey{}, summand.weight);
    for (std::size_t j = 0; j < m; ++j) {
      const auto& phi = summand.functionals[j];
      if (phi.size() != spec.dims[j]) throw ShapeError("functional length != block dimension");
      const unsigned n = spec.multidegree.degrees[j];
      auto comps = weak_compositions(n, unsigned(phi.size()));
      std::vector<std::pair<CoefficientKey, Scalar>> next;
      next.reserve(partial.size() * comps.size());
      for (const auto& comp : comps) {
        Scalar w(double(multinomial_coefficient(n, comp)));
        std::vector<MultiIndex::Entry> entries;
        bool zero = false;
        for (std::uint32_t c = 0; c < comp.size(); ++c) {
          if (comp[c] == 0) continue;
          if (phi[c] == Scalar(0.0)) {
            zero = true;
            break;
          }
          w *= pow_scalar(phi[c], comp[c]);
          entries.emplace_back(c, comp[c]);
        }
        if (zero || w == Scalar(0.0)) continue;
        MultiIndex mi = MultiIndex::from_entries(entries);
        for (const auto& [key, coeff] : partial) {
          CoefficientKey k = key;
          k.alphas.push_back(mi);
          next.emplace_back(std::move(k), coeff * w);
        }
      }
      partial = std::move(next);
    }
    for (auto& [key, coeff] : partial) builder.add(std::move(key), coeff);
  }
  return builder.build();
}

MultiPolynomial PolynomialBuilder::build() {
  return MultiPolynomial::create(field_, std::move(multidegree_), std::move(dims_), std::move(terms_));
}

}  // namespace multipoly
