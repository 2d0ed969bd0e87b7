#include <algorithm>
#include <cmath>

#include "multipoly/norms.hpp"

namespace multipoly {
namespace detail {

RealView RealView::from(const MultiPolynomial& p) {
  RealView v;
  v.offsets.resize(p.block_count());
  std::uint32_t off = 0;
  for (std::size_t b = 0; b < p.block_count(); ++b) {
    v.offsets[b] = off;
    off += p.dims()[b];
  }
  v.total_dim = off;
  v.block_degree = p.multidegree().degrees;
  v.block_of.resize(off);
  for (std::size_t b = 0, f = 0; b < p.block_count(); ++b) {
    for (std::uint32_t c = 0; c < p.dims()[b]; ++c) v.block_of[f++] = std::uint32_t(b);
  }
  for (const auto& [key, coeff] : p.terms()) {
    v.coeff.push_back(coeff.real());
    v.entry_begin.push_back(std::uint32_t(v.coord.size()));
    for (std::size_t b = 0; b < key.alphas.size(); ++b) {
      for (const auto& [c, e] : key.alphas[b].entries()) {
        v.coord.push_back(std::uint16_t(v.offsets[b] + c));
        v.expo.push_back(std::uint8_t(e));
      }
    }
  }
  v.entry_begin.push_back(std::uint32_t(v.coord.size()));
  return v;
}

double RealView::eval(const double* x) const {
  double acc = 0.0;
  for (std::size_t t = 0; t < coeff.size(); ++t) {
    double prod = coeff[t];
    for (std::uint32_t e = entry_begin[t]; e < entry_begin[t + 1]; ++e) {
      double base = x[coord[e]];
      for (unsigned k = 0; k < expo[e]; ++k) prod *= base;
    }
    acc += prod;
  }
  return acc;
}

namespace {

double horner(const std::vector<double>& q, double t) {
  double v = 0.0;
  for (std::size_t i = q.size(); i-- > 0;) v = v * t + q[i];
  return v;
}

std::vector<double> derivative(const std::vector<double>& q) {
  std::vector<double> d;
  for (std::size_t i = 1; i < q.size(); ++i) d.push_back(double(i) * q[i]);
  return d;
}

}  // namespace

std::pair<double, double> max_abs_univariate(const std::vector<double>& q, double lo, double hi) {
  double best_t = lo;
  double best_v = std::abs(horner(q, lo));
  auto offer = [&](double t) {
    const double v = std::abs(horner(q, t));
    if (v > best_v) {
      best_v = v;
      best_t = t;
    }
  };
  offer(hi);

  // interior extrema of q sit at sign changes of q'
  const std::vector<double> dq = derivative(q);
  bool nonzero = false;
  for (double c : dq) nonzero = nonzero || c != 0.0;
  if (nonzero) {
    const std::size_t grid = 8 * dq.size() + 9;
    double prev_t = lo, prev_v = horner(dq, lo);
    for (std::size_t i = 1; i <= grid; ++i) {
      const double t = lo + (hi - lo) * double(i) / double(grid);
      const double v = horner(dq, t);
      if ((prev_v < 0.0 && v > 0.0) || (prev_v > 0.0 && v < 0.0)) {
        double a = prev_t, fa = prev_v, b = t;
        while (b - a > 1e-12) {
          const double mid = 0.5 * (a + b);
          const double fm = horner(dq, mid);
          if ((fa < 0.0) == (fm < 0.0)) {
            a = mid;
            fa = fm;
          } else {
            b = mid;
          }
        }
        offer(0.5 * (a + b));
      } else if (v == 0.0) {
        offer(t);
      }
      prev_t = t;
      prev_v = v;
    }
  }
  return {best_t, best_v};
}

namespace {

// ---- real ascent ----

struct RealAscent {
  const RealView& view;
  std::vector<double> x;
  std::vector<double> restriction;  // reused buffer

  explicit RealAscent(const RealView& v) : view(v), x(v.total_dim, 0.0) {}

  // coefficients of t -> P(x with coordinate f set to t)
  void restrict_to(std::uint32_t f) {
    const unsigned deg = view.block_degree[view.block_of[f]];
    restriction.assign(deg + 1, 0.0);
    for (std::size_t t = 0; t < view.coeff.size(); ++t) {
      double prod = view.coeff[t];
      unsigned pivot_exp = 0;
      for (std::uint32_t e = view.entry_begin[t]; e < view.entry_begin[t + 1]; ++e) {
        if (view.coord[e] == f) {
          pivot_exp = view.expo[e];
        } else {
          double base = x[view.coord[e]];
          for (unsigned k = 0; k < view.expo[e]; ++k) prod *= base;
        }
      }
      restriction[pivot_exp] += prod;
    }
  }

  double run(unsigned max_sweeps, double tol) {
    double value = std::abs(view.eval(x.data()));
    double last_sweep = -1.0;
    for (unsigned sweep = 0; sweep < max_sweeps; ++sweep) {
      for (std::uint32_t f = 0; f < view.total_dim; ++f) {
        restrict_to(f);
        const auto [t, v] = max_abs_univariate(restriction, -1.0, 1.0);
        x[f] = t;
        value = v;
      }
      if (sweep > 0 && value <= last_sweep + tol * std::max(1.0, value)) break;
      last_sweep = value;
    }
    return value;
  }
};

// ---- complex ascent ----

struct ComplexView {
  std::vector<Scalar> coeff;
  std::vector<std::uint32_t> entry_begin;
  std::vector<std::uint16_t> coord;
  std::vector<std::uint8_t> expo;
  std::vector<std::uint32_t> offsets;
  std::vector<std::uint32_t> block_degree;
  std::vector<std::uint32_t> block_of;
  unsigned total_dim = 0;

  static ComplexView from(const MultiPolynomial& p) {
    ComplexView v;
    v.offsets.resize(p.block_count());
    std::uint32_t off = 0;
    for (std::size_t b = 0; b < p.block_count(); ++b) {
      v.offsets[b] = off;
      off += p.dims()[b];
    }
    v.total_dim = off;
    v.block_degree = p.multidegree().degrees;
    v.block_of.resize(off);
    for (std::size_t b = 0, f = 0; b < p.block_count(); ++b) {
      for (std::uint32_t c = 0; c < p.dims()[b]; ++c) v.block_of[f++] = std::uint32_t(b);
    }
    for (const auto& [key, coeff] : p.terms()) {
      v.coeff.push_back(coeff);
      v.entry_begin.push_back(std::uint32_t(v.coord.size()));
      for (std::size_t b = 0; b < key.alphas.size(); ++b) {
        for (const auto& [c, e] : key.alphas[b].entries()) {
          v.coord.push_back(std::uint16_t(v.offsets[b] + c));
          v.expo.push_back(std::uint8_t(e));
        }
      }
    }
    v.entry_begin.push_back(std::uint32_t(v.coord.size()));
    return v;
  }

  Scalar eval(const Scalar* z) const {
    Scalar acc(0.0);
    for (std::size_t t = 0; t < coeff.size(); ++t) {
      Scalar prod = coeff[t];
      for (std::uint32_t e = entry_begin[t]; e < entry_begin[t + 1]; ++e) {
        Scalar base = z[coord[e]];
        for (unsigned k = 0; k < expo[e]; ++k) prod *= base;
      }
      acc += prod;
    }
    return acc;
  }
};

struct ComplexAscent {
  const ComplexView& view;
  std::vector<Scalar> z;
  std::vector<Scalar> restriction;

  explicit ComplexAscent(const ComplexView& v) : view(v), z(v.total_dim, Scalar(0.0)) {}

  void restrict_to(std::uint32_t f) {
    const unsigned deg = view.block_degree[view.block_of[f]];
    restriction.assign(deg + 1, Scalar(0.0));
    for (std::size_t t = 0; t < view.coeff.size(); ++t) {
      Scalar prod = view.coeff[t];
      unsigned pivot_exp = 0;
      for (std::uint32_t e = view.entry_begin[t]; e < view.entry_begin[t + 1]; ++e) {
        if (view.coord[e] == f) {
          pivot_exp = view.expo[e];
        } else {
          Scalar base = z[view.coord[e]];
          for (unsigned k = 0; k < view.expo[e]; ++k) prod *= base;
        }
      }
      restriction[pivot_exp] += prod;
    }
  }

  // |restriction(t e^{i theta})|^2 as a real polynomial in t on [0,1]
  std::vector<double> modulus_square(double theta) const {
    const std::size_t n = restriction.size();
    std::vector<double> g(2 * n - 1, 0.0);
    for (std::size_t e = 0; e < n; ++e) {
      for (std::size_t f2 = 0; f2 < n; ++f2) {
        const Scalar prod = restriction[e] * std::conj(restriction[f2]);
        const double angle = double(e) - double(f2);
        g[e + f2] += (prod * std::exp(Scalar(0.0, angle * theta))).real();
      }
    }
    return g;
  }

  std::pair<double, double> best_on_ray(double theta) const {
    const auto [t, v2] = max_abs_univariate(modulus_square(theta), 0.0, 1.0);
    return {t, std::sqrt(std::max(0.0, v2))};
  }

  double run(unsigned max_sweeps, double tol) {
    double value = std::abs(view.eval(z.data()));
    double last_sweep = -1.0;
    for (unsigned sweep = 0; sweep < max_sweeps; ++sweep) {
      for (std::uint32_t f = 0; f < view.total_dim; ++f) {
        restrict_to(f);
        double best_theta = std::arg(z[f] == Scalar(0.0) ? Scalar(1.0) : z[f]);
        auto [best_t, best_v] = best_on_ray(best_theta);
        for (int k = 0; k < 16; ++k) {
          const double theta = 2.0 * M_PI * double(k) / 16.0;
          const auto [t, v] = best_on_ray(theta);
          if (v > best_v) {
            best_v = v;
            best_t = t;
            best_theta = theta;
          }
        }
        // golden-section refinement of the phase around the best sample
        {
          const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
          double a = best_theta - 2.0 * M_PI / 16.0, b = best_theta + 2.0 * M_PI / 16.0;
          double c = b - gr * (b - a), d = a + gr * (b - a);
          auto fc = best_on_ray(c), fd = best_on_ray(d);
          for (int it = 0; it < 40; ++it) {
            if (fc.second > fd.second) {
              b = d;
              d = c;
              fd = fc;
              c = b - gr * (b - a);
              fc = best_on_ray(c);
            } else {
              a = c;
              c = d;
              fc = fd;
              d = a + gr * (b - a);
              fd = best_on_ray(d);
            }
          }
          const double mid = 0.5 * (a + b);
          const auto fm = best_on_ray(mid);
          if (fm.second > best_v) {
            best_v = fm.second;
            best_t = fm.first;
            best_theta = mid;
          }
        }
        z[f] = Scalar(best_t * std::cos(best_theta), best_t * std::sin(best_theta));
        value = best_v;
      }
      if (sweep > 0 && value <= last_sweep + tol * std::max(1.0, value)) break;
      last_sweep = value;
    }
    return value;
  }
};

}  // namespace

NormEstimate ascent_estimate(const MultiPolynomial& p, const SupNormOptions& opts) {
  if (opts.starts == 0) throw ShapeError("ascent needs at least one start");
  const double upper = coeff_sum(p);

  if (p.field() == Field::real) {
    const RealView view = RealView::from(p);
    std::vector<std::pair<double, std::vector<double>>> results(opts.starts);
    parallel_for(opts.starts, [&](std::size_t s) {
      RealAscent ascent(view);
      if (s == 0) {
        std::fill(ascent.x.begin(), ascent.x.end(), 1.0);  // deterministic vertex start
      } else {
        SplitMix64 rng(mix_seed(opts.seed, s));
        for (auto& c : ascent.x) c = rng.symmetric();
      }
      const double v = ascent.run(opts.max_sweeps, opts.stagnation_tol);
      results[s] = {v, std::move(ascent.x)};
    });
    std::size_t best = 0;
    for (std::size_t s = 1; s < results.size(); ++s) {
      if (results[s].first > results[best].first) best = s;
    }
    std::vector<std::vector<Scalar>> witness(p.block_count());
    const auto& bx = results[best].second;
    for (std::size_t b = 0, f = 0; b < p.block_count(); ++b) {
      for (std::uint32_t c = 0; c < p.dims()[b]; ++c) witness[b].emplace_back(bx[f++], 0.0);
    }
    const double lower = std::abs(mp_eval(p, witness));
    return make_norm_estimate(p, lower, upper, NormMethod::block_ascent, std::move(witness));
  }

  const ComplexView view = ComplexView::from(p);
  std::vector<std::pair<double, std::vector<Scalar>>> results(opts.starts);
  parallel_for(opts.starts, [&](std::size_t s) {
    ComplexAscent ascent(view);
    if (s == 0) {
      std::fill(ascent.z.begin(), ascent.z.end(), Scalar(1.0, 0.0));
    } else {
      SplitMix64 rng(mix_seed(opts.seed, s));
      for (auto& c : ascent.z) {
        const double rho = std::sqrt(rng.unit());
        const double theta = 2.0 * M_PI * rng.unit();
        c = Scalar(rho * std::cos(theta), rho * std::sin(theta));
      }
    }
    const double v = ascent.run(opts.max_sweeps, opts.stagnation_tol);
    results[s] = {v, std::move(ascent.z)};
  });
  std::size_t best = 0;
  for (std::size_t s = 1; s < results.size(); ++s) {
    if (results[s].first > results[best].first) best = s;
  }
  std::vector<std::vector<Scalar>> witness(p.block_count());
  const auto& bz = results[best].second;
  for (std::size_t b = 0, f = 0; b < p.block_count(); ++b) {
    for (std::uint32_t c = 0; c < p.dims()[b]; ++c) witness[b].push_back(bz[f++]);
  }
  const double lower = std::abs(mp_eval(p, witness));
  return make_norm_estimate(p, lower, upper, NormMethod::block_ascent, std::move(witness));
}

}  // namespace detail
}  // namespace multipoly
