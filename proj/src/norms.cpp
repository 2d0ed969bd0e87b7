#include "multipoly/norms.hpp"

#include <algorithm>
#include <cmath>

namespace multipoly {

const char* norm_method_name(NormMethod m) {
  switch (m) {
    case NormMethod::vertex_exact: return "vertex_exact";
    case NormMethod::block_ascent: return "block_ascent";
    case NormMethod::coeff_sum: return "coeff_sum";
  }
  return "?";
}

NormEstimate make_norm_estimate(const MultiPolynomial& p, double lower, double upper,
                                NormMethod method, std::vector<std::vector<Scalar>> witness) {
  if (lower > upper) {
    if (lower <= upper * (1.0 + 1e-9) + 1e-12) {
      lower = upper;  // floating excess from independent bound computations
    } else {
      throw Error("norm bracket inverted: lower " + std::to_string(lower) + " > upper " +
                  std::to_string(upper));
    }
  }
  if (method == NormMethod::vertex_exact && lower != upper) {
    throw Error("vertex_exact estimate must have lower == upper");
  }
  if (witness.size() != p.block_count()) throw ShapeError("witness has wrong block count");
  for (std::size_t b = 0; b < witness.size(); ++b) {
    if (witness[b].size() != p.dims()[b]) throw ShapeError("witness block dimension mismatch");
    for (const auto& c : witness[b]) {
      if (std::abs(c) > 1.0 + 1e-12) throw Error("witness outside the unit ball");
    }
  }
  const double reproduced = std::abs(mp_eval(p, witness));
  if (std::abs(reproduced - lower) > 1e-10 * std::max(1.0, lower)) {
    throw Error("witness does not reproduce the lower bound: " + std::to_string(reproduced) +
                " vs " + std::to_string(lower));
  }
  NormEstimate est;
  est.lower = lower;
  est.upper = upper;
  est.method = method;
  est.witness = std::move(witness);
  return est;
}

namespace detail {
double coeff_sum(const MultiPolynomial& p) {
  double s = 0.0;
  for (const auto& [key, c] : p.terms()) s += std::abs(c);
  return s;
}
}  // namespace detail

NormEstimate sup_norm_estimate(const MultiPolynomial& p, const SupNormOptions& opts) {
  if (opts.allow_exact && p.field() == Field::real) {
    bool multilinear = true;
    for (auto d : p.multidegree().degrees) multilinear = multilinear && d == 1;
    if (multilinear) {
      try {
        return sup_norm_multilinear_exact(p, opts.vertex_budget);
      } catch (const BudgetError&) {
        // too wide for enumeration; fall through to ascent
      }
    }
  }
  return detail::ascent_estimate(p, opts);
}

double lp_coeff_norm(const MultiPolynomial& p, double exponent) {
  if (exponent < 1.0) throw ShapeError("lp_coeff_norm needs p >= 1");
  double acc = 0.0;
  for (const auto& [key, c] : p.terms()) acc += std::pow(std::abs(c), exponent);
  return std::pow(acc, 1.0 / exponent);
}

double weak_lq_norm(const std::vector<std::vector<Scalar>>& family, double q) {
  if (q < 1.0) throw ShapeError("weak_lq_norm needs q >= 1");
  if (family.empty()) return 0.0;
  const std::size_t dim = family.front().size();
  for (const auto& v : family) {
    if (v.size() != dim) throw ShapeError("weak_lq_norm family has mixed dimensions");
  }
  double best = 0.0;
  for (std::size_t k = 0; k < dim; ++k) {
    double acc = 0.0;
    for (const auto& v : family) acc += std::pow(std::abs(v[k]), q);
    best = std::max(best, std::pow(acc, 1.0 / q));
  }
  return best;
}

namespace {

double block_sup(const std::vector<Scalar>& x) {
  double n = 0.0;
  for (const auto& c : x) n = std::max(n, std::abs(c));
  return n;
}

}  // namespace

ContinuityReport continuity_certificate(const MultiPolynomial& p, const NormEstimate& est,
                                        std::size_t samples, std::uint64_t seed) {
  const auto& degs = p.multidegree().degrees;
  ContinuityReport report;
  report.bound = est.upper;
  report.samples = samples;

  SplitMix64 rng(seed);
  auto consider = [&](const std::vector<std::vector<Scalar>>& xs) {
    double scale = 1.0;
    for (std::size_t b = 0; b < xs.size(); ++b) {
      const double nb = block_sup(xs[b]);
      if (nb == 0.0) return;  // both sides vanish
      for (std::uint32_t e = 0; e < degs[b]; ++e) scale *= nb;
    }
    const double ratio = std::abs(mp_eval(p, xs)) / scale;
    report.max_ratio = std::max(report.max_ratio, ratio);
    if (ratio > est.upper * (1.0 + 1e-9)) ++report.violations;
  };

  std::vector<std::vector<Scalar>> xs(p.block_count());
  for (std::size_t s = 0; s < samples; ++s) {
    for (std::size_t b = 0; b < p.block_count(); ++b) {
      // block norms spread over a few decades around 1
      const double scale = std::exp((rng.unit() * 4.0 - 2.0) * std::log(10.0) / 2.0);
      xs[b].resize(p.dims()[b]);
      for (auto& c : xs[b]) {
        c = p.field() == Field::real ? Scalar(rng.symmetric() * scale, 0.0)
                                     : Scalar(rng.symmetric() * scale, rng.symmetric() * scale);
      }
    }
    consider(xs);
  }

  // rescaled witness: the ratio is scale-invariant, so these certify the lower bound
  if (est.witness.size() == p.block_count()) {
    for (int rep = 0; rep < 5; ++rep) {
      for (std::size_t b = 0; b < p.block_count(); ++b) {
        const double scale = 0.25 + 4.0 * rng.unit();
        xs[b] = est.witness[b];
        for (auto& c : xs[b]) c *= scale;
      }
      consider(xs);
    }
  }

  report.witness_ok = report.max_ratio >= est.lower * (1.0 - 1e-6);
  report.pass = report.violations == 0 && report.witness_ok;
  return report;
}

ContinuityReport continuity_certificate(const MultiPolynomial& p, std::size_t samples) {
  return continuity_certificate(p, sup_norm_estimate(p), samples);
}

namespace {

// Latin hypercube over the coordinates of every block: one stratum per probe
// and coordinate, shuffled deterministically.
std::vector<std::vector<std::vector<Scalar>>> lh_probes(const MultiPolynomial& p,
                                                        const std::vector<std::vector<Scalar>>& center,
                                                        double radius, std::size_t probes,
                                                        SplitMix64& rng) {
  const std::size_t m = p.block_count();
  std::vector<std::vector<std::vector<Scalar>>> out(
      probes, std::vector<std::vector<Scalar>>(m));
  for (std::size_t s = 0; s < probes; ++s) {
    for (std::size_t b = 0; b < m; ++b) out[s][b].resize(p.dims()[b]);
  }
  std::vector<std::uint32_t> perm(probes);
  auto shuffle = [&] {
    for (std::size_t i = 0; i < probes; ++i) perm[i] = std::uint32_t(i);
    for (std::size_t i = probes; i > 1; --i) {
      std::swap(perm[i - 1], perm[rng.below(i)]);
    }
  };
  for (std::size_t b = 0; b < m; ++b) {
    for (std::uint32_t c = 0; c < p.dims()[b]; ++c) {
      if (p.field() == Field::real) {
        shuffle();
        for (std::size_t s = 0; s < probes; ++s) {
          const double u = (double(perm[s]) + rng.unit()) / double(probes);
          out[s][b][c] = center[b][c] + Scalar(-radius + 2.0 * radius * u, 0.0);
        }
      } else {
        // disc of radius `radius` around the center coordinate
        shuffle();
        std::vector<std::uint32_t> perm2 = perm;
        shuffle();
        for (std::size_t s = 0; s < probes; ++s) {
          const double u = (double(perm2[s]) + rng.unit()) / double(probes);
          const double v = (double(perm[s]) + rng.unit()) / double(probes);
          const double rho = radius * std::sqrt(u);
          const double theta = 2.0 * M_PI * v;
          out[s][b][c] = center[b][c] + Scalar(rho * std::cos(theta), rho * std::sin(theta));
        }
      }
    }
  }
  return out;
}

}  // namespace

BallTransferReport ball_transfer_check(const MultiPolynomial& p,
                                       const std::vector<std::vector<Scalar>>& center,
                                       double radius, std::size_t probes, double slack,
                                       std::uint64_t seed) {
  if (center.size() != p.block_count()) throw ShapeError("ball center has wrong block count");
  for (std::size_t b = 0; b < center.size(); ++b) {
    if (center[b].size() != p.dims()[b]) throw ShapeError("ball center block dimension mismatch");
  }
  if (probes == 0) throw ShapeError("ball_transfer_check needs probes >= 1");

  BallTransferReport report;
  report.slack = slack;
  report.factor = 1.0;
  for (auto n : p.multidegree().degrees) {
    report.factor *= std::pow(double(n), double(n)) / factorial(n);
  }

  SplitMix64 rng(seed);
  for (const auto& xs : lh_probes(p, center, radius, probes, rng)) {
    report.shifted_bound = std::max(report.shifted_bound, std::abs(mp_eval(p, xs)));
  }
  std::vector<std::vector<Scalar>> origin(p.block_count());
  for (std::size_t b = 0; b < origin.size(); ++b) origin[b].assign(p.dims()[b], Scalar(0.0));
  SplitMix64 rng2(mix_seed(seed, 0x0FF5E7));
  for (const auto& xs : lh_probes(p, origin, radius, probes, rng2)) {
    report.centered_max = std::max(report.centered_max, std::abs(mp_eval(p, xs)));
  }
  report.pass = report.centered_max <= report.shifted_bound * report.factor * (1.0 + slack);
  return report;
}

}  // namespace multipoly
