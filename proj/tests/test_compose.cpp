#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "doctest.h"
#include "multipoly/compose.hpp"
#include "multipoly/interpolation.hpp"
#include "test_util.hpp"

using namespace multipoly;
using testutil::random_map;
using testutil::random_point;
using testutil::random_poly;
using testutil::random_scalar;
using testutil::random_vector;

TEST_CASE("operator norm is the largest row sum") {
  auto m = LinearMap::create(2, 2, {1.0, -2.0, 3.0, 0.5});
  CHECK(m.op_norm_sup() == doctest::Approx(3.5).epsilon(1e-15));
  CHECK(LinearMap::identity(4).op_norm_sup() == 1.0);
  CHECK(LinearMap::scaled_identity(3, -2.0).op_norm_sup() == doctest::Approx(2.0));

  auto x = m.apply({1.0, 1.0});
  CHECK(x[0] == Scalar(-1.0));
  CHECK(x[1] == Scalar(3.5));

  auto c = compose(m, LinearMap::scaled_identity(2, 2.0));
  CHECK(c.at(0, 1) == Scalar(-4.0));
  CHECK_THROWS_AS(compose(LinearMap::identity(2), LinearMap::identity(3)), ShapeError);
  CHECK_THROWS_AS(LinearMap::create(2, 2, {1.0}), ShapeError);
}

TEST_CASE("vector polynomials share one shape") {
  SplitMix64 rng(0x7EC);
  auto p1 = random_poly(rng, Field::real, MultiDegree{{1, 1}}, {2, 2});
  auto p2 = random_poly(rng, Field::real, MultiDegree{{1, 1}}, {2, 2});
  auto v = VectorMultiPolynomial::create({p1, p2});
  CHECK(v.output_dim() == 2);
  auto xs = random_point(rng, p1);
  auto val = v.eval(xs);
  CHECK(val[0] == mp_eval(p1, xs));
  CHECK(val[1] == mp_eval(p2, xs));

  auto odd = random_poly(rng, Field::real, MultiDegree{{2, 1}}, {2, 2});
  CHECK_THROWS_AS(VectorMultiPolynomial::create({p1, odd}), ShapeError);
  CHECK_THROWS_AS(VectorMultiPolynomial::create({}), ShapeError);

  auto bracket = vector_sup_norm(v);
  auto e1 = sup_norm_estimate(p1);
  auto e2 = sup_norm_estimate(p2);
  CHECK(bracket.upper == doctest::Approx(std::max(e1.upper, e2.upper)));
  CHECK(bracket.lower == doctest::Approx(std::max(e1.lower, e2.lower)));
}

TEST_CASE("linear composition matches pointwise evaluation") {
  SplitMix64 rng(0x11F7);
  for (int it = 0; it < 10; ++it) {
    const Field field = it % 2 ? Field::complex : Field::real;
    auto p = VectorMultiPolynomial::create(
        {random_poly(rng, field, MultiDegree{{2, 1}}, {2, 2}),
         random_poly(rng, field, MultiDegree{{2, 1}}, {2, 2})});
    auto t = random_map(rng, field, 3, 2);
    std::vector<LinearMap> us = {random_map(rng, field, 2, 3),
                                 random_map(rng, field, 2, 2)};
    auto q = compose_linear(t, p, us);
    REQUIRE(q.output_dim() == 3);
    CHECK(q.shape().multidegree() == p.shape().multidegree());
    CHECK(q.shape().dims() == std::vector<std::uint32_t>{3, 2});

    for (int pt = 0; pt < 10; ++pt) {
      std::vector<std::vector<Scalar>> ys = {random_vector(rng, field, 3),
                                             random_vector(rng, field, 2)};
      auto inner = p.eval({us[0].apply(ys[0]), us[1].apply(ys[1])});
      auto want = t.apply(inner);
      auto got = q.eval(ys);
      for (std::size_t k = 0; k < want.size(); ++k)
        CHECK(testutil::rel_err(got[k], want[k]) < 1e-8);
    }
  }
}

TEST_CASE("linear composition matches interpolation recovery") {
  SplitMix64 rng(0x11F8);
  for (int it = 0; it < 5; ++it) {
    auto p = VectorMultiPolynomial::scalar(
        random_poly(rng, Field::real, MultiDegree{{2, 1}}, {2, 2}));
    auto t = LinearMap::scaled_identity(1, 1.5);
    std::vector<LinearMap> us = {random_map(rng, Field::real, 2, 2),
                                 random_map(rng, Field::real, 2, 2)};
    auto q = compose_linear(t, p, us);

    auto rec = coeffs_from_values(
        [&](const std::vector<std::vector<Scalar>>& ys) { return q.eval(ys)[0]; },
        Field::real, q.shape().multidegree(), q.shape().dims());
    REQUIRE(rec.ok);
    for (const auto& [key, coeff] : q.components[0].terms())
      CHECK(std::abs(rec.poly.coefficient(key) - coeff) < 1e-7);
    for (const auto& [key, coeff] : rec.poly.terms())
      CHECK(std::abs(q.components[0].coefficient(key) - coeff) < 1e-7);
  }
}

TEST_CASE("identity maps leave a polynomial unchanged") {
  SplitMix64 rng(0x1D);
  auto p = VectorMultiPolynomial::scalar(
      random_poly(rng, Field::real, MultiDegree{{2, 2}}, {2, 2}));
  auto q = compose_linear(LinearMap::identity(1), p,
                          {LinearMap::identity(2), LinearMap::identity(2)});
  REQUIRE(q.output_dim() == 1);
  REQUIRE(q.components[0].term_count() == p.components[0].term_count());
  for (const auto& [key, coeff] : p.components[0].terms())
    CHECK(std::abs(q.components[0].coefficient(key) - coeff) < 1e-12);
}

TEST_CASE("sup-norm composition inequality never fails") {
  SplitMix64 rng(0x1DEA1);
  SupNormOptions opts;
  opts.starts = 16;
  for (int it = 0; it < 25; ++it) {
    const Field field = it % 5 == 4 ? Field::complex : Field::real;
    auto p = VectorMultiPolynomial::create(
        {random_poly(rng, field, MultiDegree{{1, 2}}, {2, 2}),
         random_poly(rng, field, MultiDegree{{1, 2}}, {2, 2})});
    auto t = random_map(rng, field, 2, 2);
    std::vector<LinearMap> us = {random_map(rng, field, 2, 2),
                                 random_map(rng, field, 2, 2)};
    auto rep = ideal_inequality_report(t, p, us, 1e-6, opts);
    CHECK(rep.pass);
    CHECK(rep.lhs_lower <= rep.rhs * (1 + 1e-6));
    CHECK(rep.lhs_lower <= rep.lhs_upper * (1 + 1e-9));
  }
}

TEST_CASE("hyper composition multiplies block degrees") {
  SplitMix64 rng(0xDE6);
  for (int it = 0; it < 100; ++it) {
    // random shape tuple, kept tiny so only the bookkeeping is exercised
    const std::uint32_t rdeg = 1 + std::uint32_t(rng.below(3));
    const std::size_t pm = 1 + std::size_t(rng.below(2));
    MultiDegree pdeg;
    for (std::size_t i = 0; i < pm; ++i)
      pdeg.degrees.push_back(1 + std::uint32_t(rng.below(2)));

    // single-monomial building blocks
    auto mono = [&](Field, MultiDegree md, std::vector<std::uint32_t> dims) {
      CoefficientKey key;
      for (std::size_t b = 0; b < dims.size(); ++b)
        key.alphas.push_back(MultiIndex::from_entries({{0, md.degrees[b]}}));
      return MultiPolynomial::create(Field::real, md, dims, {{key, 1.0}});
    };

    auto r = mono(Field::real, MultiDegree{{rdeg}}, {1});
    auto p = VectorMultiPolynomial::scalar(
        mono(Field::real, pdeg, std::vector<std::uint32_t>(pm, 1)));

    std::vector<VectorMultiPolynomial> qs;
    std::vector<std::uint32_t> want_degrees;
    for (std::size_t i = 0; i < pm; ++i) {
      const std::size_t qm = 1 + std::size_t(rng.below(2));
      MultiDegree qdeg;
      for (std::size_t j = 0; j < qm; ++j) {
        qdeg.degrees.push_back(1 + std::uint32_t(rng.below(2)));
        want_degrees.push_back(qdeg.degrees.back() * pdeg.degrees[i] * rdeg);
      }
      qs.push_back(VectorMultiPolynomial::scalar(
          mono(Field::real, qdeg, std::vector<std::uint32_t>(qm, 1))));
    }

    auto out = compose_hyper(r, p, qs);
    CHECK(out.shape().multidegree().degrees == want_degrees);
  }
}

TEST_CASE("hyper composition matches pointwise evaluation") {
  SplitMix64 rng(0x907);
  for (int it = 0; it < 8; ++it) {
    const Field field = it % 2 ? Field::complex : Field::real;
    // R: degree 2 on K^2, P: (1,1) into K^2, Q_i scalar bilinear/linear
    auto r = random_poly(rng, field, MultiDegree{{2}}, {2});
    auto p = VectorMultiPolynomial::create(
        {random_poly(rng, field, MultiDegree{{1, 1}}, {2, 2}),
         random_poly(rng, field, MultiDegree{{1, 1}}, {2, 2})});
    std::vector<VectorMultiPolynomial> qs;
    qs.push_back(VectorMultiPolynomial::create(
        {random_poly(rng, field, MultiDegree{{1}}, {2}),
         random_poly(rng, field, MultiDegree{{1}}, {2})}));
    qs.push_back(VectorMultiPolynomial::create(
        {random_poly(rng, field, MultiDegree{{1, 1}}, {2, 2}),
         random_poly(rng, field, MultiDegree{{1, 1}}, {2, 2})}));

    auto out = compose_hyper(r, p, qs);
    REQUIRE(out.output_dim() == 1);
    // blocks: q1 contributes (1*1*2), q2 contributes (1*1*2, 1*1*2)
    CHECK(out.shape().multidegree().degrees == std::vector<std::uint32_t>{2, 2, 2});

    for (int pt = 0; pt < 10; ++pt) {
      std::vector<std::vector<Scalar>> xs = {random_vector(rng, field, 2),
                                             random_vector(rng, field, 2),
                                             random_vector(rng, field, 2)};
      auto q1v = qs[0].eval({xs[0]});
      auto q2v = qs[1].eval({xs[1], xs[2]});
      auto pv = p.eval({q1v, q2v});
      const Scalar want = mp_eval(r, {pv});
      CHECK(testutil::rel_err(mp_eval(out.components[0], xs), want) < 1e-8);
    }
  }
}

TEST_CASE("hyper bound holds with unit constants") {
  SplitMix64 rng(0x907B);
  SupNormOptions opts;
  opts.starts = 16;
  for (int it = 0; it < 10; ++it) {
    auto r = random_poly(rng, Field::real, MultiDegree{{2}}, {2});
    auto p = VectorMultiPolynomial::create(
        {random_poly(rng, Field::real, MultiDegree{{1, 1}}, {2, 2}),
         random_poly(rng, Field::real, MultiDegree{{1, 1}}, {2, 2})});
    std::vector<VectorMultiPolynomial> qs;
    qs.push_back(VectorMultiPolynomial::create(
        {random_poly(rng, Field::real, MultiDegree{{1}}, {2}),
         random_poly(rng, Field::real, MultiDegree{{1}}, {2})}));
    qs.push_back(VectorMultiPolynomial::create(
        {random_poly(rng, Field::real, MultiDegree{{1}}, {2}),
         random_poly(rng, Field::real, MultiDegree{{1}}, {2})}));
    auto rep = hyper_inequality_report(r, p, qs, {}, opts);
    CHECK(rep.pass);
    CHECK(rep.lhs_lower <= rep.rhs * (1 + 1e-6));
  }
}

TEST_CASE("hyper constant tables read by degree") {
  HyperIneqConfig config;
  config.c_seq = {1.0, 2.0, 4.0};
  config.k_seq = {1.0, 3.0};
  CHECK_NOTHROW(config.validate());
  CHECK(config.c_at(1) == 1.0);
  CHECK(config.c_at(3) == 4.0);
  CHECK(config.c_at(7) == 1.0);  // past the table
  CHECK(config.k_at(2) == 3.0);

  HyperIneqConfig bad;
  bad.c_seq = {2.0};  // C_1 must be one
  CHECK_THROWS_AS(bad.validate(), Error);
  HyperIneqConfig low;
  low.k_seq = {1.0, 0.5};
  CHECK_THROWS_AS(low.validate(), Error);
}

TEST_CASE("summing ratios on the product bilinear form") {
  auto p = MultiPolynomial::create(
      Field::real, MultiDegree{{1, 1}}, {1, 1},
      {{{{MultiIndex::from_entries({{0, 1}}), MultiIndex::from_entries({{0, 1}})}}, 1.0}});
  std::vector<std::vector<std::vector<Scalar>>> families = {
      {{1.0}, {1.0}}, {{1.0}, {1.0}}};

  auto abs_rep = summing_ratio(p, families, 1.0, {1.0, 1.0}, SummingMode::abs);
  CHECK(abs_rep.lhs == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(abs_rep.rhs == doctest::Approx(4.0).epsilon(1e-15));
  CHECK(abs_rep.ratio == doctest::Approx(0.5).epsilon(1e-15));
  CHECK_FALSE(abs_rep.infinite);

  auto full_rep = summing_ratio(p, families, 1.0, {1.0, 1.0}, SummingMode::full);
  CHECK(full_rep.lhs == doctest::Approx(4.0).epsilon(1e-15));
  CHECK(full_rep.ratio == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("full sum dominates the diagonal sum") {
  SplitMix64 rng(0x5D11);
  for (int it = 0; it < 10; ++it) {
    auto p = random_poly(rng, Field::real, MultiDegree{{1, 1}}, {2, 2});
    std::vector<std::vector<std::vector<Scalar>>> families(2);
    for (auto& fam : families)
      for (int k = 0; k < 4; ++k) fam.push_back(random_vector(rng, Field::real, 2));
    auto a = summing_ratio(p, families, 1.0, {2.0, 2.0}, SummingMode::abs);
    auto f = summing_ratio(p, families, 1.0, {2.0, 2.0}, SummingMode::full);
    CHECK(f.lhs >= a.lhs * (1 - 1e-12));
    CHECK(a.rhs == f.rhs);
  }
}

TEST_CASE("summing input faults are rejected") {
  auto p = MultiPolynomial::create(
      Field::real, MultiDegree{{1, 1}}, {1, 1},
      {{{{MultiIndex::from_entries({{0, 1}}), MultiIndex::from_entries({{0, 1}})}}, 1.0}});
  std::vector<std::vector<std::vector<Scalar>>> families = {{{1.0}}, {{1.0}, {2.0}}};
  // diagonal mode needs equal family lengths
  CHECK_THROWS_AS(summing_ratio(p, families, 1.0, {1.0, 1.0}, SummingMode::abs), ShapeError);
  CHECK_NOTHROW(summing_ratio(p, families, 1.0, {1.0, 1.0}, SummingMode::full));
  CHECK_THROWS_AS(summing_ratio(p, {{{1.0}}}, 1.0, {1.0}, SummingMode::abs), ShapeError);
  // sub-one outer exponents are legitimate; only nonpositive ones are not
  CHECK_NOTHROW(summing_ratio(p, {{{1.0}}, {{1.0}}}, 0.5, {1.0, 1.0}, SummingMode::full));
  CHECK_THROWS_AS(summing_ratio(p, families, -1.0, {1.0, 1.0}, SummingMode::full), Error);
  CHECK_THROWS_AS(summing_ratio(p, families, 1.0, {1.0, 0.2}, SummingMode::full), Error);

  // the m-fold budget refuses runaway index spaces
  std::vector<std::vector<std::vector<Scalar>>> huge(2);
  for (auto& fam : huge) fam.assign(3200, {1.0});
  CHECK_THROWS_AS(summing_ratio(p, huge, 1.0, {1.0, 1.0}, SummingMode::full), BudgetError);
}

TEST_CASE("composition budget refuses runaway expansions") {
  SplitMix64 rng(0xB1D6);
  // one monomial x_0^3 x_1^3 into 20 columns: each cube expands to 1540
  // monomials, and their product needs ~2.4e6 pair merges
  auto p = VectorMultiPolynomial::scalar(MultiPolynomial::create(
      Field::real, MultiDegree{{6}}, {2},
      {{{{MultiIndex::from_entries({{0, 3}, {1, 3}})}}, 1.0}}));
  auto u = random_map(rng, Field::real, 2, 20);
  CHECK_THROWS_AS(compose_linear(LinearMap::identity(1), p, {u}), BudgetError);
}
