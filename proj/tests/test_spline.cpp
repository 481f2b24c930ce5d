#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <random>

#include "doctest.h"
#include "iwq/knot_vector.hpp"
#include "iwq/subdivision.hpp"
#include "oracles.hpp"

using namespace iwq;

TEST_CASE("find_span basics") {
  KnotVector kv1({0, 0, 1, 1}, 1);
  CHECK(kv1.find_span(0.0) == 1);
  CHECK(kv1.find_span(1.0) == 1);  // endpoint rule: last nonempty span

  KnotVector kv2({0, 0, 0, 1, 2, 2, 2}, 2);
  CHECK(kv2.find_span(1.5) == 3);  // span of [1,2)

  CHECK_THROWS_AS(kv2.find_span(-0.1), std::domain_error);
  CHECK_THROWS_AS(kv2.find_span(2.1), std::domain_error);
}

TEST_CASE("degree-0 basis is the indicator") {
  UnivariateBasis b{KnotVector({0, 1}, 0)};
  std::vector<std::vector<double>> vals;
  for (double u : {0.0, 0.25, 0.99}) {
    b.eval(u, 0, vals);
    CHECK(vals[0][0] == 1.0);
  }
}

TEST_CASE("partition of unity and derivative sum") {
  std::mt19937 rng(7);
  for (int p : {1, 2, 3, 5}) {
    UnivariateBasis b{KnotVector::uniform_open(p, 7, 0.0, 3.5)};
    std::uniform_real_distribution<double> dist(0.0, 3.5);
    std::vector<std::vector<double>> vals;
    for (int t = 0; t < 1000; ++t) {
      const double u = dist(rng);
      b.eval(u, std::min(1, p), vals);
      double s0 = 0.0, s1 = 0.0;
      for (int j = 0; j <= p; ++j) {
        s0 += vals[0][static_cast<std::size_t>(j)];
        if (p >= 1) s1 += vals[1][static_cast<std::size_t>(j)];
      }
      CHECK(s0 == doctest::Approx(1.0).epsilon(1e-13));
      CHECK(std::abs(s1) < 1e-11);
    }
  }
}

TEST_CASE("local support: inactive functions evaluate to zero") {
  UnivariateBasis b{KnotVector::uniform_open(3, 8)};
  for (Index i = 0; i < b.num_functions(); ++i) {
    if (b.support_hi(i) < 1.0 - 0.06) CHECK(b.value(i, b.support_hi(i) + 0.05, 0) == 0.0);
    if (b.support_lo(i) > 0.06) CHECK(b.value(i, b.support_lo(i) - 0.05, 0) == 0.0);
  }
}

TEST_CASE("eval matches the Cox-de Boor recursion oracle") {
  const int p = 3;
  UnivariateBasis b{KnotVector::uniform_open(p, 4, 0.0, 4.0)};
  const auto& U = b.kv().knots();
  std::vector<std::vector<double>> vals;
  for (double u : {2.0, 0.3, 1.7, 3.999, 4.0}) {
    const Index first = b.eval(u, 0, vals);
    for (int j = 0; j <= p; ++j) {
      const double ref = oracles::cox_de_boor(U, static_cast<std::size_t>(first + j), p, u);
      CHECK(vals[0][static_cast<std::size_t>(j)] == doctest::Approx(ref).epsilon(1e-14));
    }
  }
}

TEST_CASE("derivative_basis: coefficients and hand case") {
  UnivariateBasis b{KnotVector({0, 0, 1, 1}, 1)};
  auto [lower, c] = derivative_basis(b);
  CHECK(lower.degree() == 0);
  CHECK(c.a[0] == 0.0);  // 0/0 convention
  CHECK(c.b[0] == doctest::Approx(1.0));
  // B'_0 = -B_{1,0} = -1 on (0,1)
  CHECK(b.value(0, 0.5, 1) == doctest::Approx(-1.0));

  CHECK_THROWS_AS(derivative_basis(UnivariateBasis{KnotVector({0, 1}, 0)}), std::invalid_argument);
}

TEST_CASE("derivative identity: lower-degree combination sums to zero pointwise") {
  const int p = 3;
  UnivariateBasis b{KnotVector::uniform_open(p, 6)};
  auto [lower, c] = derivative_basis(b);
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> dist(0.0, 1.0);
  for (int t = 0; t < 50; ++t) {
    const double u = dist(rng);
    double sum = 0.0;
    for (Index i = 0; i < b.num_functions(); ++i) {
      double v = 0.0;
      if (i - 1 >= 0 && i - 1 < lower.num_functions()) v += c.a[static_cast<std::size_t>(i)] * lower.value(i - 1, u);
      if (i < lower.num_functions()) v -= c.b[static_cast<std::size_t>(i)] * lower.value(i, u);
      sum += v;
      // and the combination equals the derivative of B_i
      CHECK(v == doctest::Approx(b.value(i, u, 1)).epsilon(1e-12));
    }
    CHECK(std::abs(sum) < 1e-11);
  }
}

TEST_CASE("derivative matches central differences at second order") {
  const int p = 4;
  UnivariateBasis b{KnotVector::uniform_open(p, 5, 0.0, 2.0)};
  const Index i = 4;
  const double u = 0.77;
  const double exact = b.value(i, u, 1);
  double prev_err = -1.0;
  for (double h : {1e-3, 5e-4, 2.5e-4}) {
    const double fd = (b.value(i, u + h) - b.value(i, u - h)) / (2.0 * h);
    const double err = std::abs(fd - exact);
    if (prev_err > 0.0) CHECK(prev_err / err > 3.0);  // O(h^2): factor ~4 per halving
    prev_err = err;
  }
  const double fd = (b.value(i, u + 1e-5) - b.value(i, u - 1e-5)) / 2e-5;
  CHECK(fd == doctest::Approx(exact).epsilon(1e-6));
}

TEST_CASE("single insertion matrix, hand case") {
  UnivariateBasis b{KnotVector({0, 0, 1, 1}, 1)};
  auto [refined, s] = insert_knot(b, 0.5, 1);
  CHECK(refined.num_functions() == 3);
  REQUIRE(s.rows() == 3);
  REQUIRE(s.cols() == 2);
  const auto r0 = s.row(0), r1 = s.row(1), r2 = s.row(2);
  REQUIRE(r0.size() == 1);
  CHECK(r0[0].col == 0);
  CHECK(r0[0].value == doctest::Approx(1.0));
  REQUIRE(r1.size() == 2);
  CHECK(r1[0].value == doctest::Approx(0.5));
  CHECK(r1[1].value == doctest::Approx(0.5));
  REQUIRE(r2.size() == 1);
  CHECK(r2[0].col == 1);
}

TEST_CASE("insertion preserves the curve and keeps affine rows") {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> dist(-2.0, 2.0);
  for (int p : {2, 3, 4}) {
    UnivariateBasis b{KnotVector::uniform_open(p, 6, 0.0, 3.0)};
    std::vector<double> coeff(static_cast<std::size_t>(b.num_functions()));
    for (auto& c : coeff) c = dist(rng);

    auto [refined, s] = insert_knot(b, 1.3, p + 1);
    for (Index i = 0; i < s.rows(); ++i) {
      double row_sum = 0.0;
      for (const auto& e : s.row(i)) row_sum += e.value;
      CHECK(std::abs(row_sum - 1.0) <= 1e-14);
    }

    const auto fine = s.apply(coeff);
    auto eval_spline = [](const UnivariateBasis& basis, const std::vector<double>& c, double u) {
      std::vector<std::vector<double>> vals;
      const Index first = basis.eval(u, 0, vals);
      double v = 0.0;
      for (int j = 0; j <= basis.degree(); ++j)
        v += c[static_cast<std::size_t>(first + j)] * vals[0][static_cast<std::size_t>(j)];
      return v;
    };
    for (int t = 0; t < 100; ++t) {
      const double u = 3.0 * (t + 0.5) / 100.0;
      CHECK(eval_spline(b, coeff, u) == doctest::Approx(eval_spline(refined, fine, u)).epsilon(1e-13));
    }
  }
}

TEST_CASE("insertion to multiplicity p+1 decouples the two sides") {
  const int p = 2;
  UnivariateBasis b{KnotVector::uniform_open(p, 4)};
  auto [refined, s] = insert_knot(b, 0.5, p + 1);
  CHECK(refined.kv().multiplicity(0.5) == p + 1);

  // A coefficient vector jumping at the discontinuity: left side 0, right 1.
  std::vector<double> c(static_cast<std::size_t>(refined.num_functions()), 0.0);
  for (Index i = 0; i < refined.num_functions(); ++i)
    if (refined.support_lo(i) >= 0.5) c[static_cast<std::size_t>(i)] = 1.0;

  std::vector<std::vector<double>> vals;
  auto eval_at = [&](double u) {
    const Index first = refined.eval(u, 0, vals);
    double v = 0.0;
    for (int j = 0; j <= p; ++j) v += c[static_cast<std::size_t>(first + j)] * vals[0][static_cast<std::size_t>(j)];
    return v;
  };
  CHECK(eval_at(0.5 - 1e-12) == doctest::Approx(0.0).epsilon(1e-9));
  CHECK(eval_at(0.5) == doctest::Approx(1.0));  // right limit: γ evaluates in the right span

  CHECK_THROWS_AS(insert_knot(b, 0.0, 1), std::domain_error);
  CHECK_THROWS_AS(insert_knot(b, 0.5, p + 2), std::invalid_argument);
}

TEST_CASE("refined bases keep the partition of unity") {
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> dist(0.0, 1.0);
  UnivariateBasis b{KnotVector::uniform_open(3, 5)};
  auto [refined, s] = insert_discontinuities(b, {0.4, 0.6});
  std::vector<std::vector<double>> vals;
  for (int t = 0; t < 1000; ++t) {
    const double u = dist(rng);
    refined.eval(u, 0, vals);
    double s0 = 0.0;
    for (double v : vals[0]) s0 += v;
    CHECK(s0 == doctest::Approx(1.0).epsilon(1e-13));
  }
}

TEST_CASE("tensor basis factorizes and indexes lexicographically") {
  UnivariateBasis bx{KnotVector::uniform_open(2, 3)};
  UnivariateBasis by{KnotVector::uniform_open(1, 2)};
  TensorBasis tb({bx, by});
  CHECK(tb.num_functions() == bx.num_functions() * by.num_functions());
  CHECK(tb.function_indexer().flat({1, 0, 0}) == 1);  // axis 1 fastest
  CHECK(tb.function_indexer().flat({0, 1, 0}) == bx.num_functions());
  const Vec3 x{0.37, 0.81, 0.0};
  CHECK(tb.value({2, 1, 0}, x) == doctest::Approx(bx.value(2, x[0]) * by.value(1, x[1])));
}

TEST_CASE("split at discontinuities yields open segment bases") {
  const int p = 3;
  UnivariateBasis b{KnotVector::uniform_open(p, 10)};
  auto [refined, s] = insert_discontinuities(b, {0.3, 0.7});
  const auto parts = split_at_discontinuities(refined, {0.3, 0.7});
  REQUIRE(parts.size() == 3);
  Index total = 0;
  for (const auto& [sub, offset] : parts) {
    CHECK(sub.kv().is_open());
    CHECK(offset == total);
    total += sub.num_functions();
  }
  CHECK(total == refined.num_functions());
}
