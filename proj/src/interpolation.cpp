#include "multipoly/interpolation.hpp"

#include <Eigen/Dense>
#include <cmath>

namespace multipoly {

namespace {

constexpr std::uint32_t kMaxDim = 8;
constexpr std::uint32_t kMaxDeg = 5;
constexpr std::uint64_t kMaxGrid = 250000;
constexpr double kResidualScale = 1e-8;

const double kPrimes[kMaxDim] = {2, 3, 5, 7, 11, 13, 17, 19};

void check_shape(const MultiDegree& md, const std::vector<std::uint32_t>& dims) {
  if (!md.valid() || dims.size() != md.block_count()) throw ShapeError("bad recovery shape");
  for (std::size_t i = 0; i < dims.size(); ++i) {
    if (dims[i] == 0 || dims[i] > kMaxDim || md.degrees[i] > kMaxDeg) {
      throw UnsupportedError("coefficient recovery supports 1 <= dim <= 8 and degree <= 5 per block");
    }
  }
}

std::vector<double> block_point(const std::vector<std::uint32_t>& comp, unsigned n) {
  std::vector<double> x(comp.size());
  for (std::size_t j = 0; j < comp.size(); ++j) {
    x[j] = std::exp(std::log(kPrimes[j]) * double(comp[j]) / (2.0 * double(n)));
  }
  return x;
}

}  // namespace

std::vector<std::vector<std::vector<double>>> interpolation_points(
    const MultiDegree& md, const std::vector<std::uint32_t>& dims) {
  check_shape(md, dims);
  std::vector<std::vector<std::vector<double>>> out(dims.size());
  for (std::size_t i = 0; i < dims.size(); ++i) {
    for (const auto& comp : weak_compositions(md.degrees[i], dims[i])) {
      out[i].push_back(block_point(comp, md.degrees[i]));
    }
  }
  return out;
}

RecoveryResult coeffs_from_values(
    const std::function<Scalar(const std::vector<std::vector<Scalar>>&)>& f, Field field,
    const MultiDegree& md, const std::vector<std::uint32_t>& dims) {
  check_shape(md, dims);
  const std::size_t m = dims.size();

  std::vector<std::vector<std::vector<std::uint32_t>>> comps(m);
  std::vector<std::size_t> sizes(m);
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < m; ++i) {
    comps[i] = weak_compositions(md.degrees[i], dims[i]);
    sizes[i] = comps[i].size();
    total *= sizes[i];
    if (total > kMaxGrid) throw BudgetError("interpolation grid too large", total, kMaxGrid);
  }

  auto points = interpolation_points(md, dims);

  // sample the black box over the full product grid, block 0 slowest
  std::vector<Scalar> values(total);
  double value_scale = 0.0;
  {
    std::vector<std::size_t> idx(m, 0);
    std::vector<std::vector<Scalar>> xs(m);
    for (std::uint64_t flat = 0; flat < total; ++flat) {
      for (std::size_t i = 0; i < m; ++i) {
        const auto& pt = points[i][idx[i]];
        xs[i].assign(pt.begin(), pt.end());
      }
      values[flat] = f(xs);
      value_scale = std::max(value_scale, std::abs(values[flat]));
      for (std::size_t i = m; i-- > 0;) {
        if (++idx[i] < sizes[i]) break;
        idx[i] = 0;
      }
    }
  }

  // per-block Vandermonde-type matrices V[row gamma][col alpha] = x_gamma^alpha
  std::vector<Eigen::MatrixXd> V(m);
  for (std::size_t i = 0; i < m; ++i) {
    const std::size_t n = sizes[i];
    V[i].resize(Eigen::Index(n), Eigen::Index(n));
    for (std::size_t g = 0; g < n; ++g) {
      for (std::size_t a = 0; a < n; ++a) {
        double v = 1.0;
        for (std::size_t j = 0; j < dims[i]; ++j) {
          v *= std::pow(points[i][g][j], double(comps[i][a][j]));
        }
        V[i](Eigen::Index(g), Eigen::Index(a)) = v;
      }
    }
  }

  // solve mode by mode; the full system is the Kronecker product of the V[i]
  std::vector<Scalar> coeffs = values;
  for (std::size_t i = 0; i < m; ++i) {
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(V[i]);
    std::size_t stride = 1;
    for (std::size_t j = i + 1; j < m; ++j) stride *= sizes[j];
    const std::size_t outer = total / (sizes[i] * stride);
    Eigen::VectorXd re(Eigen::Index(sizes[i])), im(Eigen::Index(sizes[i]));
    for (std::size_t o = 0; o < outer; ++o) {
      for (std::size_t s = 0; s < stride; ++s) {
        const std::size_t base = o * sizes[i] * stride + s;
        for (std::size_t k = 0; k < sizes[i]; ++k) {
          re(Eigen::Index(k)) = coeffs[base + k * stride].real();
          im(Eigen::Index(k)) = coeffs[base + k * stride].imag();
        }
        Eigen::VectorXd sre = lu.solve(re), sim = lu.solve(im);
        for (std::size_t k = 0; k < sizes[i]; ++k) {
          coeffs[base + k * stride] = Scalar(sre(Eigen::Index(k)), sim(Eigen::Index(k)));
        }
      }
    }
  }

  // forward check against the sampled values
  std::vector<Scalar> predicted = coeffs;
  for (std::size_t i = 0; i < m; ++i) {
    std::size_t stride = 1;
    for (std::size_t j = i + 1; j < m; ++j) stride *= sizes[j];
    const std::size_t outer = total / (sizes[i] * stride);
    std::vector<Scalar> fiber(sizes[i]);
    for (std::size_t o = 0; o < outer; ++o) {
      for (std::size_t s = 0; s < stride; ++s) {
        const std::size_t base = o * sizes[i] * stride + s;
        for (std::size_t k = 0; k < sizes[i]; ++k) fiber[k] = predicted[base + k * stride];
        for (std::size_t g = 0; g < sizes[i]; ++g) {
          Scalar acc(0.0);
          for (std::size_t a = 0; a < sizes[i]; ++a) {
            acc += V[i](Eigen::Index(g), Eigen::Index(a)) * fiber[a];
          }
          predicted[base + g * stride] = acc;
        }
      }
    }
  }

  RecoveryResult result;
  for (std::uint64_t flat = 0; flat < total; ++flat) {
    result.max_residual = std::max(result.max_residual, std::abs(predicted[flat] - values[flat]));
  }
  const double threshold = kResidualScale * (1.0 + value_scale);
  if (result.max_residual > threshold) {
    result.ok = false;
    result.message = "interpolation residual " + std::to_string(result.max_residual) +
                     " exceeds " + std::to_string(threshold);
    result.poly = MultiPolynomial::create(field, md, dims, {});
    return result;
  }

  // assemble the polynomial, pruning numerically-zero coefficients
  double coeff_scale = 0.0;
  for (const auto& c : coeffs) coeff_scale = std::max(coeff_scale, std::abs(c));
  const double prune = 1e-11 * coeff_scale;

  std::vector<MultiPolynomial::Term> terms;
  std::vector<std::size_t> idx(m, 0);
  for (std::uint64_t flat = 0; flat < total; ++flat) {
    Scalar c = coeffs[flat];
    if (field == Field::real) c = Scalar(c.real(), 0.0);
    if (std::abs(c) > prune) {
      CoefficientKey key;
      key.alphas.reserve(m);
      for (std::size_t i = 0; i < m; ++i) {
        std::vector<MultiIndex::Entry> entries;
        for (std::uint32_t j = 0; j < dims[i]; ++j) {
          if (comps[i][idx[i]][j] > 0) entries.emplace_back(j, comps[i][idx[i]][j]);
        }
        key.alphas.push_back(MultiIndex::from_entries(std::move(entries)));
      }
      terms.emplace_back(std::move(key), c);
    }
    for (std::size_t i = m; i-- > 0;) {
      if (++idx[i] < sizes[i]) break;
      idx[i] = 0;
    }
  }

  result.ok = true;
  result.poly = MultiPolynomial::create(field, md, dims, std::move(terms));
  return result;
}

}  // namespace multipoly
