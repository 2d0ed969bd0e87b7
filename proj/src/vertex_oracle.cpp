#include <algorithm>
#include <cmath>
#include <cstring>

#include "multipoly/norms.hpp"

namespace multipoly {

namespace {

constexpr std::uint64_t kMaxTensorDoubles = std::uint64_t(1) << 24;

struct DenseProblem {
  std::vector<std::uint32_t> enum_dims;      // enumerated blocks, original order
  std::vector<std::size_t> enum_blocks;      // their original indices
  std::uint32_t closed_dim = 0;
  std::size_t closed_block = 0;
  std::vector<double> tensor;                // [enum dims ..., closed dim] row-major
};

DenseProblem densify(const MultiPolynomial& p) {
  const auto& dims = p.dims();
  const std::size_t m = dims.size();

  DenseProblem prob;
  prob.closed_block = 0;
  for (std::size_t b = 0; b < m; ++b) {
    if (dims[b] >= dims[prob.closed_block]) prob.closed_block = b;  // ties -> last
  }
  prob.closed_dim = dims[prob.closed_block];

  std::uint64_t total = 1;
  for (std::size_t b = 0; b < m; ++b) {
    total *= dims[b];
    if (total > kMaxTensorDoubles) {
      throw BudgetError("vertex oracle tensor too large", total, kMaxTensorDoubles);
    }
    if (b != prob.closed_block) {
      prob.enum_dims.push_back(dims[b]);
      prob.enum_blocks.push_back(b);
    }
  }

  // strides in the permuted layout
  std::vector<std::uint64_t> stride(m, 0);
  std::uint64_t s = 1;
  stride[prob.closed_block] = 1;
  s = prob.closed_dim;
  for (std::size_t k = prob.enum_blocks.size(); k-- > 0;) {
    stride[prob.enum_blocks[k]] = s;
    s *= prob.enum_dims[k];
  }

  prob.tensor.assign(total, 0.0);
  for (const auto& [key, coeff] : p.terms()) {
    std::uint64_t flat = 0;
    for (std::size_t b = 0; b < m; ++b) {
      const auto& entries = key.alphas[b].entries();
      if (entries.size() != 1 || entries[0].second != 1) {
        throw ShapeError("vertex oracle needs one degree-1 coordinate per block in every term");
      }
      flat += std::uint64_t(entries[0].first) * stride[b];
    }
    prob.tensor[flat] += coeff.real();
  }
  return prob;
}

// Depth-first sign enumeration. Level l contracts away enumerated block l;
// the last enumerated level folds the closed-form scan into its Gray loop.
class VertexSearch {
 public:
  explicit VertexSearch(const DenseProblem& prob) : prob_(prob), levels_(prob.enum_dims.size()) {
    suffix_.assign(levels_ + 1, prob_.closed_dim);
    for (std::size_t l = levels_; l-- > 0;) suffix_[l] = suffix_[l + 1] * prob_.enum_dims[l];
    signs_.resize(levels_);
    bufs_.resize(levels_);
    for (std::size_t l = 0; l < levels_; ++l) {
      signs_[l].assign(prob_.enum_dims[l], 1);
      bufs_[l].assign(suffix_[l + 1], 0.0);
    }
  }

  void run() {
    if (levels_ == 0) {
      scan(prob_.tensor.data());
      return;
    }
    if (levels_ == 1 && bilinear_int_run()) return;
    descend(0, prob_.tensor.data());
  }

  double best() const { return best_; }
  const std::vector<std::vector<std::int8_t>>& best_signs() const { return best_signs_; }
  const std::vector<std::int8_t>& best_closed() const { return best_closed_; }

 private:
  void descend(std::size_t level, const double* in) {
    const std::size_t out_size = suffix_[level + 1];
    double* out = bufs_[level].data();
    auto& s = signs_[level];
    std::fill(s.begin(), s.end(), std::int8_t(1));

    const std::uint32_t d = prob_.enum_dims[level];
    // all-plus contraction over this block
    std::memcpy(out, in, out_size * sizeof(double));
    for (std::uint32_t i = 1; i < d; ++i) {
      const double* row = in + std::size_t(i) * out_size;
      for (std::size_t k = 0; k < out_size; ++k) out[k] += row[k];
    }

    // a global sign flip of block 0 leaves |P| unchanged, so pin its first sign
    const std::uint32_t free_bits = (level == 0) ? d - 1 : d;
    const std::uint64_t count = std::uint64_t(1) << free_bits;
    const bool last = (level + 1 == levels_);

    if (last) {
      scan(out);
    } else {
      descend(level + 1, out);
    }
    for (std::uint64_t step = 1; step < count; ++step) {
      const unsigned bit = unsigned(__builtin_ctzll(step)) + (level == 0 ? 1u : 0u);
      s[bit] = std::int8_t(-s[bit]);
      const double a = 2.0 * double(s[bit]);
      const double* __restrict row = in + std::size_t(bit) * out_size;
      double* __restrict w = out;
      if (last) {
        // fused flip + rescan; this loop carries nearly all the work
        double sum = 0.0;
        for (std::size_t k = 0; k < out_size; ++k) {
          const double v = w[k] + a * row[k];
          w[k] = v;
          sum += std::abs(v);
        }
        consider(sum, out);
      } else {
        for (std::size_t k = 0; k < out_size; ++k) w[k] += a * row[k];
        descend(level + 1, out);
      }
    }
  }

  // Bilinear tensors with small integer entries (the random-signs instances)
  // take an integer Gray walk: int16 updates vectorize several times denser
  // than the double path. Returns false when the entries do not qualify.
  bool bilinear_int_run() {
    const std::uint32_t d = prob_.enum_dims[0];
    const std::uint32_t n = prob_.closed_dim;
    double max_abs = 0.0;
    for (double v : prob_.tensor) {
      if (v != std::floor(v)) return false;
      max_abs = std::max(max_abs, std::abs(v));
    }
    if (max_abs > 31.0 || double(d) * max_abs > 16000.0) return false;

    // row copies with both signs so the inner loop is add-only
    std::vector<std::int16_t> pos(std::size_t(d) * n), neg(std::size_t(d) * n);
    for (std::size_t i = 0; i < pos.size(); ++i) {
      pos[i] = std::int16_t(2.0 * prob_.tensor[i]);
      neg[i] = std::int16_t(-pos[i]);
    }
    std::vector<std::int16_t> w(n, 0);
    for (std::uint32_t i = 0; i < d; ++i) {
      for (std::uint32_t k = 0; k < n; ++k) w[k] = std::int16_t(w[k] + pos[std::size_t(i) * n + k] / 2);
    }
    auto& s = signs_[0];
    std::fill(s.begin(), s.end(), std::int8_t(1));

    long best_sum = -1;
    std::vector<std::int8_t> best_s;
    std::vector<std::int16_t> best_w;
    auto consider_int = [&](long sum) {
      if (sum <= best_sum) return;
      best_sum = sum;
      best_s = s;
      best_w = w;
    };
    {
      long sum = 0;
      for (std::uint32_t k = 0; k < n; ++k) sum += std::abs(int(w[k]));
      consider_int(sum);
    }
    const std::uint64_t count = std::uint64_t(1) << (d - 1);
    for (std::uint64_t step = 1; step < count; ++step) {
      const unsigned bit = unsigned(__builtin_ctzll(step)) + 1u;
      s[bit] = std::int8_t(-s[bit]);
      const std::int16_t* __restrict row =
          (s[bit] > 0 ? pos.data() : neg.data()) + std::size_t(bit) * n;
      std::int16_t* __restrict wp = w.data();
      int sum = 0;
      for (std::uint32_t k = 0; k < n; ++k) {
        const std::int16_t v = std::int16_t(wp[k] + row[k]);
        wp[k] = v;
        sum += v < 0 ? -int(v) : int(v);
      }
      consider_int(sum);
    }

    best_ = double(best_sum);
    best_signs_.assign(1, best_s);
    best_closed_.assign(n, 1);
    for (std::uint32_t k = 0; k < n; ++k) {
      if (best_w[k] < 0) best_closed_[k] = -1;
    }
    return true;
  }

  void scan(const double* w) {
    double sum = 0.0;
    for (std::uint32_t k = 0; k < prob_.closed_dim; ++k) sum += std::abs(w[k]);
    consider(sum, w);
  }

  void consider(double sum, const double* w) {
    if (sum <= best_) return;
    best_ = sum;
    best_signs_ = signs_;
    best_closed_.assign(prob_.closed_dim, 1);
    for (std::uint32_t k = 0; k < prob_.closed_dim; ++k) {
      if (w[k] < 0.0) best_closed_[k] = -1;
    }
  }

  const DenseProblem& prob_;
  std::size_t levels_;
  std::vector<std::size_t> suffix_;
  std::vector<std::vector<std::int8_t>> signs_;
  std::vector<std::vector<double>> bufs_;
  double best_ = -1.0;
  std::vector<std::vector<std::int8_t>> best_signs_;
  std::vector<std::int8_t> best_closed_;
};

}  // namespace

NormEstimate sup_norm_multilinear_exact(const MultiPolynomial& p, std::uint64_t budget) {
  if (p.field() != Field::real) {
    throw UnsupportedError("exact vertex norm is for the real field; use block ascent");
  }
  for (auto d : p.multidegree().degrees) {
    if (d != 1) throw UnsupportedError("exact vertex norm needs a multilinear polynomial");
  }

  DenseProblem prob = densify(p);

  std::uint32_t exponent_sum = 0;
  for (auto d : prob.enum_dims) exponent_sum += d;
  const std::uint64_t required =
      exponent_sum >= 64 ? ~std::uint64_t(0) : std::uint64_t(1) << exponent_sum;
  if (required > budget) throw BudgetError("vertex enumeration budget exceeded", required, budget);

  VertexSearch search(prob);
  search.run();

  std::vector<std::vector<Scalar>> witness(p.block_count());
  for (std::size_t l = 0; l < prob.enum_blocks.size(); ++l) {
    auto& w = witness[prob.enum_blocks[l]];
    for (auto s : search.best_signs()[l]) w.emplace_back(double(s), 0.0);
  }
  {
    auto& w = witness[prob.closed_block];
    for (auto s : search.best_closed()) w.emplace_back(double(s), 0.0);
  }

  // re-evaluate at the witness so the reported value and the witness agree bitwise
  const double value = std::abs(mp_eval(p, witness));
  return make_norm_estimate(p, value, value, NormMethod::vertex_exact, std::move(witness));
}

}  // namespace multipoly
