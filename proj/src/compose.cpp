#include "multipoly/compose.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

namespace multipoly {

namespace {

constexpr std::uint64_t kMonomialBudget = 1000000;

// terms of a partial expansion, keyed over the full output block layout
using TermMap = std::map<CoefficientKey, Scalar>;

void check_budget(std::uint64_t required) {
  if (required > kMonomialBudget)
    throw BudgetError("composition monomial budget exceeded", required, kMonomialBudget);
}

Scalar ipow(Scalar base, std::uint32_t e) {
  Scalar out(1.0, 0.0);
  while (e) {
    if (e & 1u) out *= base;
    base *= base;
    e >>= 1;
  }
  return out;
}

CoefficientKey unit_key(std::size_t blocks) {
  CoefficientKey k;
  k.alphas.resize(blocks);
  return k;
}

TermMap mul(const TermMap& a, const TermMap& b) {
  check_budget(std::uint64_t(a.size()) * std::uint64_t(b.size()));
  TermMap out;
  for (const auto& [ka, ca] : a) {
    for (const auto& [kb, cb] : b) {
      CoefficientKey k;
      k.alphas.reserve(ka.alphas.size());
      for (std::size_t i = 0; i < ka.alphas.size(); ++i)
        k.alphas.push_back(merge_add(ka.alphas[i], kb.alphas[i]));
      out[std::move(k)] += ca * cb;
    }
    check_budget(out.size());
  }
  return out;
}

TermMap power(const TermMap& base, std::uint32_t e, std::size_t blocks) {
  TermMap out;
  out.emplace(unit_key(blocks), Scalar(1.0, 0.0));
  for (std::uint32_t i = 0; i < e; ++i) out = mul(out, base);
  return out;
}

std::vector<MultiPolynomial::Term> map_to_terms(TermMap m) {
  std::vector<MultiPolynomial::Term> terms;
  terms.reserve(m.size());
  for (auto& [k, v] : m) terms.emplace_back(k, v);
  return terms;
}

void require_real_maps(Field field, const LinearMap& t, const std::vector<LinearMap>& us) {
  if (field != Field::real) return;
  if (!t.real_entries()) throw ShapeError("real polynomial composed with complex output map");
  for (const auto& u : us) {
    if (!u.real_entries()) throw ShapeError("real polynomial composed with complex input map");
  }
}

}  // namespace

LinearMap LinearMap::create(std::uint32_t rows, std::uint32_t cols, std::vector<Scalar> entries) {
  if (rows == 0 || cols == 0) throw ShapeError("linear map needs positive dimensions");
  if (entries.size() != std::size_t(rows) * cols)
    throw ShapeError("linear map entry count differs from rows * cols");
  LinearMap m;
  m.rows_ = rows;
  m.cols_ = cols;
  m.entries_ = std::move(entries);
  return m;
}

LinearMap LinearMap::identity(std::uint32_t n) { return scaled_identity(n, Scalar(1.0, 0.0)); }

LinearMap LinearMap::scaled_identity(std::uint32_t n, Scalar lambda) {
  std::vector<Scalar> e(std::size_t(n) * n, Scalar(0.0, 0.0));
  for (std::uint32_t i = 0; i < n; ++i) e[std::size_t(i) * n + i] = lambda;
  return create(n, n, std::move(e));
}

bool LinearMap::real_entries() const {
  return std::all_of(entries_.begin(), entries_.end(),
                     [](Scalar v) { return v.imag() == 0.0; });
}

std::vector<Scalar> LinearMap::apply(const std::vector<Scalar>& x) const {
  if (x.size() != cols_) throw ShapeError("linear map applied to wrong dimension");
  std::vector<Scalar> y(rows_, Scalar(0.0, 0.0));
  for (std::uint32_t i = 0; i < rows_; ++i) {
    Scalar s(0.0, 0.0);
    for (std::uint32_t j = 0; j < cols_; ++j) s += entries_[std::size_t(i) * cols_ + j] * x[j];
    y[i] = s;
  }
  return y;
}

double LinearMap::op_norm_sup() const {
  double best = 0.0;
  for (std::uint32_t i = 0; i < rows_; ++i) {
    double row = 0.0;
    for (std::uint32_t j = 0; j < cols_; ++j) row += std::abs(entries_[std::size_t(i) * cols_ + j]);
    best = std::max(best, row);
  }
  return best;
}

LinearMap compose(const LinearMap& a, const LinearMap& b) {
  if (a.cols() != b.rows()) throw ShapeError("linear map composition dimension mismatch");
  std::vector<Scalar> e(std::size_t(a.rows()) * b.cols(), Scalar(0.0, 0.0));
  for (std::uint32_t i = 0; i < a.rows(); ++i) {
    for (std::uint32_t k = 0; k < a.cols(); ++k) {
      const Scalar aik = a.at(i, k);
      if (aik == Scalar(0.0, 0.0)) continue;
      for (std::uint32_t j = 0; j < b.cols(); ++j)
        e[std::size_t(i) * b.cols() + j] += aik * b.at(k, j);
    }
  }
  return LinearMap::create(a.rows(), b.cols(), std::move(e));
}

VectorMultiPolynomial VectorMultiPolynomial::create(std::vector<MultiPolynomial> components) {
  if (components.empty()) throw ShapeError("vector polynomial needs at least one component");
  const auto& head = components.front();
  for (const auto& c : components) {
    if (c.field() != head.field() || c.multidegree() != head.multidegree() ||
        c.dims() != head.dims())
      throw ShapeError("vector polynomial components disagree on shape");
  }
  VectorMultiPolynomial v;
  v.components = std::move(components);
  return v;
}

VectorMultiPolynomial VectorMultiPolynomial::scalar(MultiPolynomial p) {
  VectorMultiPolynomial v;
  v.components.push_back(std::move(p));
  return v;
}

std::vector<Scalar> VectorMultiPolynomial::eval(const std::vector<std::vector<Scalar>>& xs) const {
  std::vector<Scalar> out;
  out.reserve(components.size());
  for (const auto& c : components) out.push_back(mp_eval(c, xs));
  return out;
}

VectorNormBracket vector_sup_norm(const VectorMultiPolynomial& p, const SupNormOptions& opts) {
  VectorNormBracket out;
  for (const auto& c : p.components) {
    const auto est = sup_norm_estimate(c, opts);
    out.lower = std::max(out.lower, est.lower);
    out.upper = std::max(out.upper, est.upper);
  }
  return out;
}

VectorMultiPolynomial compose_linear(const LinearMap& t, const VectorMultiPolynomial& p,
                                     const std::vector<LinearMap>& us) {
  const auto& shape = p.shape();
  const std::size_t m = shape.block_count();
  if (us.size() != m) throw ShapeError("one input map per block is required");
  for (std::size_t j = 0; j < m; ++j) {
    if (us[j].rows() != shape.dims()[j])
      throw ShapeError("input map target dimension differs from block dimension");
  }
  if (t.cols() != p.output_dim())
    throw ShapeError("output map source dimension differs from component count");
  require_real_maps(shape.field(), t, us);

  // substituted components, before t
  std::vector<TermMap> composed(p.components.size());
  for (std::size_t c = 0; c < p.components.size(); ++c) {
    TermMap& acc = composed[c];
    for (const auto& [key, coeff] : p.components[c].terms()) {
      TermMap cur;
      cur.emplace(unit_key(m), Scalar(1.0, 0.0));
      for (std::size_t j = 0; j < m; ++j) {
        const auto& u = us[j];
        for (const auto& [coord, expo] : key.alphas[j].entries()) {
          // (sum_k u[coord][k] y_k)^expo by the multinomial theorem
          TermMap factor;
          for (const auto& gamma : weak_compositions(expo, u.cols())) {
            Scalar v(double(multinomial_coefficient(expo, gamma)), 0.0);
            std::vector<MultiIndex::Entry> entries;
            for (std::uint32_t k = 0; k < u.cols(); ++k) {
              if (gamma[k] == 0) continue;
              v *= ipow(u.at(coord, k), gamma[k]);
              entries.push_back({k, gamma[k]});
            }
            if (v == Scalar(0.0, 0.0)) continue;
            CoefficientKey fk = unit_key(m);
            fk.alphas[j] = MultiIndex::from_entries(std::move(entries));
            factor[std::move(fk)] += v;
          }
          cur = mul(cur, factor);
        }
      }
      for (auto& [k, v] : cur) acc[k] += coeff * v;  // term coefficient applied last
      check_budget(acc.size());
    }
  }

  std::vector<std::uint32_t> new_dims(m);
  for (std::size_t j = 0; j < m; ++j) new_dims[j] = us[j].cols();

  std::vector<MultiPolynomial> out;
  out.reserve(t.rows());
  for (std::uint32_t h = 0; h < t.rows(); ++h) {
    TermMap row;
    for (std::uint32_t c = 0; c < t.cols(); ++c) {
      const Scalar w = t.at(h, c);
      if (w == Scalar(0.0, 0.0)) continue;
      for (const auto& [k, v] : composed[c]) row[k] += w * v;
    }
    out.push_back(MultiPolynomial::create(shape.field(), shape.multidegree(), new_dims,
                                          map_to_terms(std::move(row))));
  }
  return VectorMultiPolynomial::create(std::move(out));
}

InequalityReport ideal_inequality_report(const LinearMap& t, const VectorMultiPolynomial& p,
                                         const std::vector<LinearMap>& us, double tol,
                                         const SupNormOptions& opts) {
  const auto composite = compose_linear(t, p, us);
  const auto lhs = vector_sup_norm(composite, opts);
  const auto pnorm = vector_sup_norm(p, opts);

  double rhs = t.op_norm_sup() * pnorm.upper;
  const auto& degrees = p.shape().multidegree().degrees;
  for (std::size_t j = 0; j < us.size(); ++j)
    rhs *= std::pow(us[j].op_norm_sup(), double(degrees[j]));

  InequalityReport rep;
  rep.lhs_lower = lhs.lower;
  rep.lhs_upper = lhs.upper;
  rep.rhs = rhs;
  rep.tol = tol;
  rep.pass = lhs.lower <= rhs * (1.0 + tol);
  return rep;
}

VectorMultiPolynomial compose_hyper(const MultiPolynomial& r, const VectorMultiPolynomial& p,
                                    const std::vector<VectorMultiPolynomial>& qs) {
  const auto& pshape = p.shape();
  const std::size_t n = pshape.block_count();
  if (r.block_count() != 1) throw ShapeError("outer polynomial must be single-block");
  if (r.dims()[0] != p.output_dim())
    throw ShapeError("outer polynomial dimension differs from middle component count");
  if (qs.size() != n) throw ShapeError("one inner polynomial per middle block is required");
  for (std::size_t i = 0; i < n; ++i) {
    if (qs[i].output_dim() != pshape.dims()[i])
      throw ShapeError("inner component count differs from middle block dimension");
    if (qs[i].shape().field() != pshape.field())
      throw ShapeError("field mismatch between composition stages");
  }
  if (r.field() != pshape.field()) throw ShapeError("field mismatch between composition stages");

  // global block layout: the blocks of Q_1, ..., Q_n in order
  std::vector<std::size_t> offset(n + 1, 0);
  for (std::size_t i = 0; i < n; ++i) offset[i + 1] = offset[i] + qs[i].shape().block_count();
  const std::size_t blocks = offset[n];

  std::vector<std::uint32_t> dims;
  MultiDegree md;
  const std::uint32_t rdeg = r.multidegree().degrees[0];
  for (std::size_t i = 0; i < n; ++i) {
    const auto& qshape = qs[i].shape();
    const std::uint32_t k_i = pshape.multidegree().degrees[i];
    for (std::size_t j = 0; j < qshape.block_count(); ++j) {
      dims.push_back(qshape.dims()[j]);
      md.degrees.push_back(qshape.multidegree().degrees[j] * k_i * rdeg);
    }
  }

  // inner components translated to the global layout
  auto translated = [&](std::size_t i, std::uint32_t coord) {
    TermMap out;
    const auto& q = qs[i].components[coord];
    for (const auto& [key, coeff] : q.terms()) {
      CoefficientKey k = unit_key(blocks);
      for (std::size_t j = 0; j < key.alphas.size(); ++j) k.alphas[offset[i] + j] = key.alphas[j];
      out.emplace(std::move(k), coeff);
    }
    return out;
  };

  // stage one: the middle components with the inner polynomials substituted
  std::vector<TermMap> mid(p.components.size());
  for (std::size_t c = 0; c < p.components.size(); ++c) {
    for (const auto& [key, coeff] : p.components[c].terms()) {
      TermMap cur;
      cur.emplace(unit_key(blocks), Scalar(1.0, 0.0));
      for (std::size_t i = 0; i < n; ++i) {
        for (const auto& [coord, expo] : key.alphas[i].entries())
          cur = mul(cur, power(translated(i, coord), expo, blocks));
      }
      for (auto& [k, v] : cur) mid[c][k] += coeff * v;
      check_budget(mid[c].size());
    }
  }

  // stage two: the outer polynomial applied to the stage-one components
  TermMap out;
  for (const auto& [key, coeff] : r.terms()) {
    TermMap cur;
    cur.emplace(unit_key(blocks), Scalar(1.0, 0.0));
    for (const auto& [coord, expo] : key.alphas[0].entries())
      cur = mul(cur, power(mid[coord], expo, blocks));
    for (auto& [k, v] : cur) out[k] += coeff * v;
    check_budget(out.size());
  }

  return VectorMultiPolynomial::scalar(
      MultiPolynomial::create(pshape.field(), md, dims, map_to_terms(std::move(out))));
}

void HyperIneqConfig::validate() const {
  if (c_seq.empty() || k_seq.empty() || c_seq[0] != 1.0 || k_seq[0] != 1.0)
    throw Error("constant sequences must start at 1");
  for (double v : c_seq) {
    if (v < 1.0) throw Error("constant sequences must stay >= 1");
  }
  for (double v : k_seq) {
    if (v < 1.0) throw Error("constant sequences must stay >= 1");
  }
}

double HyperIneqConfig::c_at(std::uint32_t degree) const {
  if (degree == 0 || degree > c_seq.size()) return 1.0;
  return c_seq[degree - 1];
}

double HyperIneqConfig::k_at(std::uint32_t degree) const {
  if (degree == 0 || degree > k_seq.size()) return 1.0;
  return k_seq[degree - 1];
}

InequalityReport hyper_inequality_report(const MultiPolynomial& r,
                                         const VectorMultiPolynomial& p,
                                         const std::vector<VectorMultiPolynomial>& qs,
                                         const HyperIneqConfig& config,
                                         const SupNormOptions& opts) {
  config.validate();
  const auto composite = compose_hyper(r, p, qs);
  const auto lhs = vector_sup_norm(composite, opts);

  const std::uint32_t rdeg = r.multidegree().degrees[0];
  const double r_upper = sup_norm_estimate(r, opts).upper;
  const double p_upper = vector_sup_norm(p, opts).upper;

  double rhs = config.k_at(rdeg) * r_upper * std::pow(p_upper, double(rdeg));
  for (std::size_t i = 0; i < qs.size(); ++i) {
    const double exponent = double(rdeg) * double(p.shape().multidegree().degrees[i]);
    double c_prod = 1.0;
    for (auto d : qs[i].shape().multidegree().degrees) c_prod *= config.c_at(d);
    rhs *= std::pow(c_prod, exponent) * std::pow(vector_sup_norm(qs[i], opts).upper, exponent);
  }

  InequalityReport rep;
  rep.lhs_lower = lhs.lower;
  rep.lhs_upper = lhs.upper;
  rep.rhs = rhs;
  rep.tol = config.tol;
  rep.pass = lhs.lower <= rhs * (1.0 + config.tol);
  return rep;
}

SummingReport summing_ratio(const MultiPolynomial& p,
                            const std::vector<std::vector<std::vector<Scalar>>>& families,
                            double exponent, const std::vector<double>& qs, SummingMode mode) {
  const std::size_t m = p.block_count();
  if (families.size() != m) throw ShapeError("one vector family per block is required");
  if (qs.size() != m) throw ShapeError("one weak exponent per block is required");
  if (exponent <= 0.0) throw Error("summing exponent must be positive");
  for (double q : qs) {
    if (q <= 0.0) throw Error("weak exponents must be positive");
  }
  for (std::size_t k = 0; k < m; ++k) {
    for (const auto& x : families[k]) {
      if (x.size() != p.dims()[k]) throw ShapeError("family vector dimension differs from block");
    }
  }

  double sum = 0.0;
  if (mode == SummingMode::abs) {
    const std::size_t count = families[0].size();
    for (const auto& f : families) {
      if (f.size() != count) throw ShapeError("diagonal mode needs equal family lengths");
    }
    std::vector<std::vector<Scalar>> xs(m);
    for (std::size_t j = 0; j < count; ++j) {
      for (std::size_t k = 0; k < m; ++k) xs[k] = families[k][j];
      sum += std::pow(std::abs(mp_eval(p, xs)), exponent);
    }
  } else {
    std::uint64_t tuples = 1;
    bool empty = false;
    for (const auto& f : families) {
      if (f.empty()) empty = true;
      tuples *= std::max<std::uint64_t>(f.size(), 1);
      if (tuples > 10000000) throw BudgetError("summing tuple budget exceeded", tuples, 10000000);
    }
    if (!empty) {
      std::vector<std::size_t> idx(m, 0);
      std::vector<std::vector<Scalar>> xs(m);
      bool running = true;
      while (running) {
        for (std::size_t k = 0; k < m; ++k) xs[k] = families[k][idx[k]];
        sum += std::pow(std::abs(mp_eval(p, xs)), exponent);
        running = false;
        for (std::size_t k = m; k-- > 0;) {
          if (++idx[k] < families[k].size()) {
            running = true;
            break;
          }
          idx[k] = 0;
        }
      }
    }
  }

  SummingReport rep;
  rep.mode = mode;
  rep.lhs = std::pow(sum, 1.0 / exponent);
  rep.rhs = 1.0;
  const auto& degrees = p.multidegree().degrees;
  for (std::size_t k = 0; k < m; ++k)
    rep.rhs *= std::pow(weak_lq_norm(families[k], qs[k]), double(degrees[k]));
  if (rep.rhs > 0.0) {
    rep.ratio = rep.lhs / rep.rhs;
  } else if (rep.lhs > 0.0) {
    rep.infinite = true;
    rep.ratio = std::numeric_limits<double>::infinity();
  }
  return rep;
}

}  // namespace multipoly
