#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace multipoly {

// One scalar type for both fields; Field::real restricts stored
// coefficients and evaluation points to zero imaginary part.
using Scalar = std::complex<double>;

enum class Field : std::uint8_t { real, complex };

inline const char* field_name(Field f) { return f == Field::real ? "real" : "complex"; }

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// operand shapes do not fit the operation
struct ShapeError : Error {
  using Error::Error;
};

// work estimate exceeds a hard cap; carries both numbers so callers can report
struct BudgetError : Error {
  std::uint64_t required;
  std::uint64_t budget;
  BudgetError(const std::string& what, std::uint64_t req, std::uint64_t bud)
      : Error(what + " (required " + std::to_string(req) + ", budget " + std::to_string(bud) + ")"),
        required(req), budget(bud) {}
};

struct UnsupportedError : Error {
  using Error::Error;
};

// splitmix64; bit-identical on every platform, unlike the <random> distributions
struct SplitMix64 {
  std::uint64_t state;

  explicit SplitMix64(std::uint64_t seed) : state(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  double unit() { return double(next() >> 11) * 0x1.0p-53; }  // [0,1)
  double symmetric() { return 2.0 * unit() - 1.0; }           // [-1,1)
  int sign() { return (next() >> 63) ? -1 : 1; }
  std::uint64_t below(std::uint64_t n) { return next() % n; }
};

inline std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b) {
  SplitMix64 g(a ^ 0xD1B54A32D192ED03ull);
  g.state += b;
  g.next();
  return g.next();
}

// min(hardware_concurrency, MULTIPOLY_THREADS), at least 1
unsigned worker_count();

// Runs task(0..n-1) on up to worker_count() threads. Tasks must write to
// disjoint slots; merging by task index afterwards keeps results independent
// of the schedule.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& task);

double factorial(unsigned n);
std::uint64_t binomial(unsigned n, unsigned k);
std::uint64_t multinomial_coefficient(unsigned n, const std::vector<std::uint32_t>& parts);

// every c >= 0 with sum(c) == n and length k, in lexicographic order
std::vector<std::vector<std::uint32_t>> weak_compositions(unsigned n, unsigned k);

}  // namespace multipoly
