#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <atomic>
#include <complex>
#include <numeric>

#include "doctest.h"
#include "multipoly/interpolation.hpp"
#include "multipoly/polynomial.hpp"
#include "test_util.hpp"

using namespace multipoly;
using testutil::random_point;
using testutil::random_poly;

TEST_CASE("multi-index entries canonicalize") {
  auto mi = MultiIndex::from_entries({{3, 1}, {0, 2}, {3, 1}, {5, 0}});
  REQUIRE(mi.entries().size() == 2);
  CHECK(mi.entries()[0] == MultiIndex::Entry{0, 2});
  CHECK(mi.entries()[1] == MultiIndex::Entry{3, 2});  // duplicates merged
  CHECK(mi.degree() == 4);
  CHECK(mi.exponent_of(0) == 2);
  CHECK(mi.exponent_of(1) == 0);
  CHECK(mi.max_coordinate() == 3);
  CHECK(MultiIndex{}.empty());
  CHECK(MultiIndex{}.degree() == 0);

  auto merged = merge_add(mi, MultiIndex::from_entries({{1, 1}, {3, 4}}));
  CHECK(merged.degree() == 9);
  CHECK(merged.exponent_of(3) == 6);
  CHECK(merged.exponent_of(1) == 1);
}

TEST_CASE("counting helpers match closed forms") {
  CHECK(factorial(0) == 1.0);
  CHECK(factorial(5) == 120.0);
  CHECK(binomial(10, 3) == 120);
  CHECK(binomial(4, 0) == 1);
  CHECK(multinomial_coefficient(4, {2, 1, 1}) == 12);
  CHECK(multinomial_coefficient(3, {3}) == 1);

  auto comps = weak_compositions(3, 2);
  REQUIRE(comps.size() == 4);  // binomial(3+1, 1)
  CHECK(comps[0] == std::vector<std::uint32_t>{0, 3});
  CHECK(comps[3] == std::vector<std::uint32_t>{3, 0});
  for (const auto& c : comps)
    CHECK(std::accumulate(c.begin(), c.end(), 0u) == 3u);
  CHECK(weak_compositions(4, 3).size() == binomial(6, 2));
}

TEST_CASE("seeded generator reproduces the reference stream") {
  SplitMix64 g(0);
  CHECK(g.next() == 0xE220A8397B1DCDAFull);
  CHECK(g.next() == 0x6E789E6AA1B965F4ull);
  CHECK(g.next() == 0x06C45D188009454Full);

  SplitMix64 h(42);
  const double u = h.unit();
  CHECK(u >= 0.0);
  CHECK(u < 1.0);
  CHECK(mix_seed(2, 0) == mix_seed(2, 0));
  CHECK(mix_seed(2, 0) != mix_seed(2, 1));
  CHECK(mix_seed(2, 0) != mix_seed(3, 0));
}

TEST_CASE("square of a sum expands to binomial coefficients") {
  FiniteTypeSpec spec;
  spec.field = Field::real;
  spec.multidegree = MultiDegree{{2}};
  spec.dims = {2};
  spec.summands = {{{{1.0, 1.0}}, 1.0}};  // (x_0 + x_1)^2
  auto p = finite_type(spec);
  REQUIRE(p.term_count() == 3);
  CHECK(p.coefficient({{MultiIndex::from_entries({{0, 2}})}}) == Scalar(1.0));
  CHECK(p.coefficient({{MultiIndex::from_entries({{0, 1}, {1, 1}})}}) == Scalar(2.0));
  CHECK(p.coefficient({{MultiIndex::from_entries({{1, 2}})}}) == Scalar(1.0));
}

TEST_CASE("rank-one bilinear form expands coordinatewise") {
  // (x_0 + 2 x_1)(y_0 - y_1)
  FiniteTypeSpec spec;
  spec.multidegree = MultiDegree{{1, 1}};
  spec.dims = {2, 2};
  spec.summands = {{{{1.0, 2.0}, {1.0, -1.0}}, 1.0}};
  auto p = finite_type(spec);
  REQUIRE(p.term_count() == 4);
  auto key = [](std::uint32_t i, std::uint32_t j) {
    return CoefficientKey{{MultiIndex::from_entries({{i, 1}}),
                           MultiIndex::from_entries({{j, 1}})}};
  };
  CHECK(p.coefficient(key(0, 0)) == Scalar(1.0));
  CHECK(p.coefficient(key(0, 1)) == Scalar(-1.0));
  CHECK(p.coefficient(key(1, 0)) == Scalar(2.0));
  CHECK(p.coefficient(key(1, 1)) == Scalar(-2.0));
}

TEST_CASE("term lists canonicalize on construction") {
  auto xx = CoefficientKey{{MultiIndex::from_entries({{0, 2}})}};
  auto xy = CoefficientKey{{MultiIndex::from_entries({{0, 1}, {1, 1}})}};
  auto p = MultiPolynomial::create(Field::real, MultiDegree{{2}}, {2},
                                   {{xy, 1.0}, {xx, 2.0}, {xy, 3.0}, {xx, -2.0}});
  REQUIRE(p.term_count() == 1);  // xx cancelled exactly, xy merged
  CHECK(p.terms()[0].first == xy);
  CHECK(p.terms()[0].second == Scalar(4.0));
  CHECK(p.coefficient(xx) == Scalar(0.0));

  PolynomialBuilder b(Field::real, MultiDegree{{2}}, {2});
  b.add(xy, 1.0);
  b.add(xx, 2.0);
  b.add(xy, 3.0);
  b.add(xx, -2.0);
  CHECK(b.build() == p);
}

TEST_CASE("construction rejects malformed shapes") {
  CHECK_THROWS_AS(MultiPolynomial::create(Field::real, MultiDegree{{}}, {}, {}), ShapeError);
  CHECK_THROWS_AS(MultiPolynomial::create(Field::real, MultiDegree{{1, 0}}, {2, 2}, {}),
                  ShapeError);
  CHECK_THROWS_AS(MultiPolynomial::create(Field::real, MultiDegree{{1, 1}}, {2}, {}),
                  ShapeError);
  CHECK_THROWS_AS(MultiPolynomial::create(Field::real, MultiDegree{{1}}, {0}, {}), ShapeError);
  // real field forbids imaginary coefficients
  auto k = CoefficientKey{{MultiIndex::from_entries({{0, 1}})}};
  CHECK_THROWS_AS(MultiPolynomial::create(Field::real, MultiDegree{{1}}, {1},
                                          {{k, Scalar{0.0, 1.0}}}),
                  ShapeError);
  CHECK_NOTHROW(MultiPolynomial::create(Field::complex, MultiDegree{{1}}, {1},
                                        {{k, Scalar{0.0, 1.0}}}));
}

TEST_CASE("per-key validation flags degree and range faults") {
  auto ok = MultiPolynomial::create(
      Field::real, MultiDegree{{2}}, {2},
      {{CoefficientKey{{MultiIndex::from_entries({{0, 1}, {1, 1}})}}, 1.0}});
  CHECK(mp_validate(ok).ok());

  // wrong block degree
  auto bad_degree = MultiPolynomial::create(
      Field::real, MultiDegree{{2}}, {2},
      {{CoefficientKey{{MultiIndex::from_entries({{0, 1}})}}, 1.0}});
  CHECK_FALSE(mp_validate(bad_degree).ok());

  // coordinate out of range
  auto bad_coord = MultiPolynomial::create(
      Field::real, MultiDegree{{2}}, {2},
      {{CoefficientKey{{MultiIndex::from_entries({{5, 2}})}}, 1.0}});
  CHECK_FALSE(mp_validate(bad_coord).ok());
}

TEST_CASE("evaluation is homogeneous per block") {
  SplitMix64 rng(0xA11CE);
  for (int it = 0; it < 12; ++it) {
    const Field field = it % 2 ? Field::complex : Field::real;
    auto p = random_poly(rng, field, MultiDegree{{2, 1}}, {2, 3});
    auto xs = random_point(rng, p);
    const Scalar base = mp_eval(p, xs);

    const Scalar l1 = testutil::random_scalar(rng, field);
    const Scalar l2 = testutil::random_scalar(rng, field);
    auto scaled = xs;
    for (auto& e : scaled[0]) e *= l1;
    for (auto& e : scaled[1]) e *= l2;
    const Scalar want = l1 * l1 * l2 * base;
    CHECK(testutil::rel_err(mp_eval(p, scaled), want) < 1e-10);
  }
}

TEST_CASE("finite type evaluates as its defining sum") {
  SplitMix64 rng(0xF17E);
  for (int it = 0; it < 10; ++it) {
    const Field field = it % 2 ? Field::complex : Field::real;
    FiniteTypeSpec spec;
    spec.field = field;
    spec.multidegree = MultiDegree{{2, 1}};
    spec.dims = {2, 2};
    for (int s = 0; s < 3; ++s)
      spec.summands.push_back({{testutil::random_vector(rng, field, 2),
                                testutil::random_vector(rng, field, 2)},
                               testutil::random_scalar(rng, field)});
    auto p = finite_type(spec);
    CHECK(mp_validate(p).ok());

    auto xs = random_point(rng, p);
    Scalar want = 0.0;
    for (const auto& s : spec.summands) {
      Scalar phi1 = 0.0, phi2 = 0.0;
      for (std::size_t k = 0; k < 2; ++k) phi1 += s.functionals[0][k] * xs[0][k];
      for (std::size_t k = 0; k < 2; ++k) phi2 += s.functionals[1][k] * xs[1][k];
      want += phi1 * phi1 * phi2 * s.weight;
    }
    CHECK(testutil::rel_err(mp_eval(p, xs), want) < 1e-12);
  }
}

TEST_CASE("monomial evaluation multiplies block powers") {
  CoefficientKey key{{MultiIndex::from_entries({{0, 2}}),
                      MultiIndex::from_entries({{1, 1}})}};
  std::vector<std::vector<Scalar>> xs = {{3.0, 0.0}, {0.0, 5.0}};
  CHECK(eval_monomial(key, xs) == Scalar(45.0));
}

TEST_CASE("parallel map covers every index exactly once") {
  std::vector<int> hits(257, 0);
  parallel_for(hits.size(), [&](std::size_t i) { hits[i]++; });
  for (int h : hits) CHECK(h == 1);
  CHECK(worker_count() >= 1);
}

TEST_CASE("interpolation grid recovers random coefficients") {
  SplitMix64 rng(0x1407);
  for (int it = 0; it < 6; ++it) {
    const Field field = it % 2 ? Field::complex : Field::real;
    auto p = random_poly(rng, field, MultiDegree{{2, 1}}, {3, 2});
    auto rec = coeffs_from_values(
        [&](const std::vector<std::vector<Scalar>>& xs) { return mp_eval(p, xs); },
        field, p.multidegree(), p.dims());
    REQUIRE(rec.ok);
    REQUIRE(rec.poly.multidegree() == p.multidegree());
    for (const auto& [key, coeff] : p.terms())
      CHECK(std::abs(rec.poly.coefficient(key) - coeff) < 1e-7);
    for (const auto& [key, coeff] : rec.poly.terms())
      CHECK(std::abs(p.coefficient(key) - coeff) < 1e-7);
  }
}

TEST_CASE("interpolation grid holds one point per composition") {
  MultiDegree md{{2, 3}};
  std::vector<std::uint32_t> dims = {3, 2};
  auto pts = interpolation_points(md, dims);
  REQUIRE(pts.size() == 2);
  CHECK(pts[0].size() == binomial(2 + 2, 2));  // compositions of 2 into 3
  CHECK(pts[1].size() == binomial(3 + 1, 1));
  for (const auto& x : pts[0]) CHECK(x.size() == 3);
}
