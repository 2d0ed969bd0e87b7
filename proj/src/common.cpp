#include "multipoly/common.hpp"

#include <algorithm>
#include <cstdlib>
#include <thread>

namespace multipoly {

unsigned worker_count() {
  unsigned hw = std::thread::hardware_concurrency();
  if (hw == 0) hw = 1;
  if (const char* env = std::getenv("MULTIPOLY_THREADS")) {
    char* end = nullptr;
    long cap = std::strtol(env, &end, 10);
    if (end != env && cap > 0) hw = std::min<unsigned>(hw, unsigned(cap));
  }
  return std::max(1u, hw);
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& task) {
  unsigned workers = worker_count();
  if (workers <= 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) task(i);
    return;
  }
  workers = std::min<std::size_t>(workers, n);
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      for (std::size_t i = w; i < n; i += workers) task(i);
    });
  }
  for (auto& t : pool) t.join();
}

double factorial(unsigned n) {
  double r = 1.0;
  for (unsigned i = 2; i <= n; ++i) r *= double(i);
  return r;
}

std::uint64_t binomial(unsigned n, unsigned k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t r = 1;
  for (unsigned i = 1; i <= k; ++i) {
    r = r * (n - k + i) / i;  // exact: r*(n-k+i) is divisible by i here
  }
  return r;
}

std::uint64_t multinomial_coefficient(unsigned n, const std::vector<std::uint32_t>& parts) {
  std::uint64_t r = 1;
  unsigned used = 0;
  for (std::uint32_t p : parts) {
    used += p;
    r *= binomial(used, p);
  }
  if (used != n) throw ShapeError("multinomial parts do not sum to the degree");
  return r;
}

namespace {
void compositions_rec(unsigned n, unsigned k, std::vector<std::uint32_t>& cur,
                      std::vector<std::vector<std::uint32_t>>& out) {
  if (k == 1) {
    cur.push_back(n);
    out.push_back(cur);
    cur.pop_back();
    return;
  }
  for (unsigned head = 0; head <= n; ++head) {
    cur.push_back(head);
    compositions_rec(n - head, k - 1, cur, out);
    cur.pop_back();
  }
}
}  // namespace

std::vector<std::vector<std::uint32_t>> weak_compositions(unsigned n, unsigned k) {
  if (k == 0) throw ShapeError("weak_compositions needs at least one part");
  std::vector<std::vector<std::uint32_t>> out;
  std::vector<std::uint32_t> cur;
  compositions_rec(n, k, cur, out);
  return out;
}

}  // namespace multipoly
