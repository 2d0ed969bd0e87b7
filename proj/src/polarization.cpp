#include "multipoly/polarization.hpp"

#include <algorithm>
#include <cmath>

namespace multipoly {

namespace {

void check_tuple(const std::vector<std::uint32_t>& key, std::uint32_t arity, std::uint32_t dim) {
  if (key.size() != arity) throw ShapeError("form key length differs from arity");
  for (auto c : key) {
    if (c >= dim) throw ShapeError("form key coordinate out of range");
  }
}

// multiplicity vector of a sorted tuple, as multi-index entries
std::vector<MultiIndex::Entry> tuple_multiplicities(const std::vector<std::uint32_t>& key) {
  std::vector<MultiIndex::Entry> entries;
  for (std::size_t i = 0; i < key.size();) {
    std::size_t j = i;
    while (j < key.size() && key[j] == key[i]) ++j;
    entries.push_back({key[i], std::uint32_t(j - i)});
    i = j;
  }
  return entries;
}

double key_factorial(const std::vector<std::uint32_t>& sorted_key) {
  double f = 1.0;
  for (std::size_t i = 0; i < sorted_key.size();) {
    std::size_t j = i;
    while (j < sorted_key.size() && sorted_key[j] == sorted_key[i]) ++j;
    f *= factorial(std::uint32_t(j - i));
    i = j;
  }
  return f;  // alpha! of the multiplicity vector
}

}  // namespace

SymmetricForm SymmetricForm::create(Field field, std::uint32_t arity, std::uint32_t dim,
                                    std::vector<Entry> entries) {
  if (arity == 0) throw ShapeError("form arity must be positive");
  if (dim == 0) throw ShapeError("form dimension must be positive");
  for (auto& e : entries) {
    check_tuple(e.key, arity, dim);
    std::sort(e.key.begin(), e.key.end());
    if (field == Field::real && e.value.imag() != 0.0)
      throw ShapeError("real form with nonzero imaginary entry");
  }
  std::sort(entries.begin(), entries.end(),
            [](const Entry& a, const Entry& b) { return a.key < b.key; });
  std::vector<Entry> merged;
  for (auto& e : entries) {
    if (!merged.empty() && merged.back().key == e.key)
      merged.back().value += e.value;
    else
      merged.push_back(std::move(e));
  }
  std::erase_if(merged, [](const Entry& e) { return e.value == Scalar(0.0, 0.0); });

  SymmetricForm a;
  a.field_ = field;
  a.arity_ = arity;
  a.dim_ = dim;
  a.entries_ = std::move(merged);
  return a;
}

Scalar SymmetricForm::value(std::vector<std::uint32_t> tuple) const {
  check_tuple(tuple, arity_, dim_);
  std::sort(tuple.begin(), tuple.end());
  auto it = std::lower_bound(entries_.begin(), entries_.end(), tuple,
                             [](const Entry& e, const std::vector<std::uint32_t>& k) {
                               return e.key < k;
                             });
  if (it == entries_.end() || it->key != tuple) return Scalar(0.0, 0.0);
  return it->value;
}

Scalar SymmetricForm::eval(const std::vector<std::vector<Scalar>>& xs) const {
  if (xs.size() != arity_) throw ShapeError("form eval needs one vector per slot");
  for (const auto& x : xs) {
    if (x.size() != dim_) throw ShapeError("form eval vector has wrong dimension");
  }
  Scalar total(0.0, 0.0);
  for (const auto& e : entries_) {
    auto perm = e.key;  // sorted; next_permutation walks each distinct order once
    Scalar orbit(0.0, 0.0);
    do {
      Scalar prod(1.0, 0.0);
      for (std::uint32_t s = 0; s < arity_; ++s) prod *= xs[s][perm[s]];
      orbit += prod;
    } while (std::next_permutation(perm.begin(), perm.end()));
    total += e.value * orbit;
  }
  return total;
}

Scalar polarization_value(const MultiPolynomial& phat, const std::vector<Scalar>& x0,
                          const std::vector<std::vector<Scalar>>& xs) {
  if (phat.block_count() != 1) throw ShapeError("polarization needs a single-block polynomial");
  const std::uint32_t n = phat.multidegree().degrees[0];
  const std::uint32_t d = phat.dims()[0];
  if (n > 12) throw BudgetError("polarization sign sum too large", std::uint64_t(1) << n,
                                std::uint64_t(1) << 12);
  if (xs.size() != n) throw ShapeError("polarization needs one vector per degree unit");
  if (x0.size() != d) throw ShapeError("polarization base point has wrong dimension");
  for (const auto& x : xs) {
    if (x.size() != d) throw ShapeError("polarization slot vector has wrong dimension");
  }

  std::vector<Scalar> y(d);
  std::vector<std::vector<Scalar>> arg(1);
  Scalar sum(0.0, 0.0);
  for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << n); ++mask) {
    double sign = 1.0;
    y.assign(x0.begin(), x0.end());
    for (std::uint32_t j = 0; j < n; ++j) {
      const double eps = (mask >> j) & 1u ? -1.0 : 1.0;
      sign *= eps;
      for (std::uint32_t k = 0; k < d; ++k) y[k] += eps * xs[j][k];
    }
    arg[0] = y;
    sum += sign * mp_eval(phat, arg);
  }
  return sum / (factorial(n) * std::pow(2.0, double(n)));
}

SymmetricForm to_symmetric_form(const MultiPolynomial& phat) {
  if (phat.block_count() != 1) throw ShapeError("symmetric form needs a single-block polynomial");
  const std::uint32_t n = phat.multidegree().degrees[0];
  const double nfact = factorial(n);

  std::vector<SymmetricForm::Entry> entries;
  for (const auto& [tkey, coeff] : phat.terms()) {
    const auto& alpha = tkey.alphas[0];
    std::vector<std::uint32_t> key;
    double alpha_fact = 1.0;
    for (const auto& [coord, expo] : alpha.entries()) {
      key.insert(key.end(), expo, coord);
      alpha_fact *= factorial(expo);
    }
    // A on the basis tuple of alpha = c_alpha * alpha! / n!
    entries.push_back(SymmetricForm::Entry{std::move(key), coeff * (alpha_fact / nfact)});
  }
  return SymmetricForm::create(phat.field(), n, phat.dims()[0], std::move(entries));
}

MultiPolynomial poly_from_form(const SymmetricForm& a) {
  const std::uint32_t n = a.arity();
  const double nfact = factorial(n);
  std::vector<MultiPolynomial::Term> terms;
  for (const auto& e : a.entries()) {
    const double count = nfact / key_factorial(e.key);  // distinct orderings of the tuple
    terms.push_back({CoefficientKey{{MultiIndex::from_entries(tuple_multiplicities(e.key))}},
                     e.value * count});
  }
  return MultiPolynomial::create(a.field(), MultiDegree{{n}}, {a.dim()}, std::move(terms));
}

MultiPolynomial form_as_multilinear(const SymmetricForm& a) {
  const std::uint32_t n = a.arity();
  constexpr std::uint64_t kTermBudget = 1000000;

  std::uint64_t total = 0;
  const double nfact = factorial(n);
  for (const auto& e : a.entries()) {
    total += std::uint64_t(nfact / key_factorial(e.key) + 0.5);
    if (total > kTermBudget)
      throw BudgetError("multilinear expansion too large", total, kTermBudget);
  }

  std::vector<MultiPolynomial::Term> terms;
  terms.reserve(total);
  std::vector<MultiIndex::Entry> one(1);
  for (const auto& e : a.entries()) {
    auto perm = e.key;
    do {
      CoefficientKey key;
      key.alphas.reserve(n);
      for (std::uint32_t s = 0; s < n; ++s) {
        one[0] = {perm[s], 1};
        key.alphas.push_back(MultiIndex::from_entries(one));
      }
      terms.push_back({std::move(key), e.value});
    } while (std::next_permutation(perm.begin(), perm.end()));
  }

  MultiDegree md;
  md.degrees.assign(n, 1);
  return MultiPolynomial::create(a.field(), md, std::vector<std::uint32_t>(n, a.dim()),
                                 std::move(terms));
}

FormNormBounds form_norm_bounds(const SymmetricForm& a, const NormEstimate& poly_est,
                                const NormEstimate& form_est, double tol) {
  const std::uint32_t n = a.arity();
  FormNormBounds out;
  out.poly = poly_est;
  out.form = form_est;
  out.factor = std::pow(double(n), double(n)) / factorial(n);
  out.tol = tol;
  out.poly_le_form = poly_est.lower <= form_est.upper * (1.0 + tol);
  out.form_le_scaled = form_est.lower <= out.factor * poly_est.upper * (1.0 + tol);
  out.pass = out.poly_le_form && out.form_le_scaled;
  return out;
}

FormNormBounds form_norm_bounds(const SymmetricForm& a, const SupNormOptions& opts, double tol) {
  const auto poly_est = sup_norm_estimate(poly_from_form(a), opts);
  const auto form_est = sup_norm_estimate(form_as_multilinear(a), opts);
  return form_norm_bounds(a, poly_est, form_est, tol);
}

}  // namespace multipoly
