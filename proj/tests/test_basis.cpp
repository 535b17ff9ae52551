#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "basis.hpp"
#include "errors.hpp"
#include "oracles.hpp"

using namespace modalfit;

TEST_CASE("bernstein_eval endpoint and symmetry values") {
  Vec v0 = bernstein_eval(2, 0.0);
  CHECK(v0[0] == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(v0[1] == 0.0);
  CHECK(v0[2] == 0.0);

  Vec vh = bernstein_eval(2, 0.5);
  CHECK(vh[0] == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(vh[1] == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(vh[2] == doctest::Approx(0.25).epsilon(1e-15));

  Vec v23 = bernstein_eval(23, 0.37);
  CHECK(std::abs(v23.sum() - 1.0) <= 1e-14);
}

TEST_CASE("bernstein_eval matches the naive binomial formula at modest degree") {
  for (int n = 0; n <= 10; ++n) {
    for (int rep = 0; rep < 10; ++rep) {
      const double t = oracle::uniform(0.0, 1.0);
      Vec v = bernstein_eval(n, t);
      REQUIRE(v.size() == n + 1);
      for (int k = 0; k <= n; ++k)
        CHECK(v[k] == doctest::Approx(oracle::bernstein_naive(n, k, t)).epsilon(1e-12));
    }
  }
}

TEST_CASE("bernstein_eval rejects bad arguments") {
  CHECK_THROWS_AS(bernstein_eval(2, -0.1), std::domain_error);
  CHECK_THROWS_AS(bernstein_eval(2, 1.1), std::domain_error);
  CHECK_THROWS_AS(bernstein_eval(-1, 0.5), std::domain_error);
}

TEST_CASE("bernstein_derivative base cases") {
  Vec d1 = bernstein_derivative(1, 0.42, 1);
  CHECK(d1[0] == doctest::Approx(-1.0).epsilon(1e-15));
  CHECK(d1[1] == doctest::Approx(1.0).epsilon(1e-15));

  Vec d0 = bernstein_derivative(3, 0.5, 0);
  Vec ev = bernstein_eval(3, 0.5);
  for (int k = 0; k <= 3; ++k) CHECK(d0[k] == ev[k]);

  Vec over = bernstein_derivative(2, 0.3, 3);  // d > n: identically zero
  CHECK(over.norm() == 0.0);

  CHECK_THROWS_AS(bernstein_derivative(3, 0.5, -1), std::domain_error);
}

TEST_CASE("bernstein_derivative matches central finite differences") {
  // Second derivative at n=8, t=0.3 against FD of the plain evaluation.
  const int n = 8;
  const double t = 0.3, h = 1e-5;
  Vec d2 = bernstein_derivative(n, t, 2);
  for (int k = 0; k <= n; ++k) {
    const double fd = oracle::fd2(
        [&](double s) { return bernstein_eval(n, s)[k]; }, t, h);
    CHECK(d2[k] == doctest::Approx(fd).epsilon(1e-6));
  }
  // First derivative, a few random degrees/points.
  for (int rep = 0; rep < 8; ++rep) {
    const int m = 2 + rep;
    const double s = oracle::uniform(0.1, 0.9);
    Vec d1 = bernstein_derivative(m, s, 1);
    for (int k = 0; k <= m; ++k) {
      const double fd = oracle::fd1(
          [&](double u) { return bernstein_eval(m, u)[k]; }, s, 1e-6);
      CHECK(d1[k] == doctest::Approx(fd).epsilon(1e-6));
    }
  }
}

TEST_CASE("partition of unity and derivative sums") {
  for (int n = 0; n <= 30; ++n) {
    for (int rep = 0; rep < 100; ++rep) {
      const double t = oracle::uniform(0.0, 1.0);
      CHECK(std::abs(bernstein_eval(n, t).sum() - 1.0) <= 1e-13);
    }
  }
  for (int n = 1; n <= 25; n += 3) {
    for (int d = 1; d <= 4 && d <= n; ++d) {
      const double t = oracle::uniform(0.0, 1.0);
      // Derivatives of a constant sum vanish; scale by the row magnitude.
      Vec row = bernstein_derivative(n, t, d);
      CHECK(std::abs(row.sum()) <= 1e-12 * std::max(1.0, row.cwiseAbs().maxCoeff()));
    }
  }
}

TEST_CASE("endpoint interpolation") {
  for (int n = 1; n <= 23; n += 11) {
    Vec a = bernstein_eval(n, 0.0);
    Vec b = bernstein_eval(n, 1.0);
    CHECK(std::abs(a[0] - 1.0) <= 1e-15);
    CHECK(std::abs(b[n] - 1.0) <= 1e-15);
    for (int k = 1; k <= n; ++k) CHECK(std::abs(a[k]) <= 1e-15);
    for (int k = 0; k < n; ++k) CHECK(std::abs(b[k]) <= 1e-15);
  }
}

TEST_CASE("eval_features 1D chain rule") {
  BasisSpec spec = BasisSpec::interval(1, 2.0);
  Vec row = eval_features_1d(spec, 0.0, 1);
  CHECK(row[0] == doctest::Approx(-0.5).epsilon(1e-15));
  CHECK(row[1] == doctest::Approx(0.5).epsilon(1e-15));

  // Chain-rule consistency: physical derivative equals (1/L)^d reference one.
  BasisSpec long_spec = BasisSpec::interval(9, 3.7);
  for (int d = 0; d <= 4; ++d) {
    const double x = oracle::uniform(0.0, 3.7);
    Vec phys = eval_features_1d(long_spec, x, d);
    Vec ref = bernstein_derivative(9, x / 3.7, d) / std::pow(3.7, d);
    for (int k = 0; k < phys.size(); ++k)
      CHECK(phys[k] == doctest::Approx(ref[k]).epsilon(1e-14));
  }
}

TEST_CASE("eval_features 2D corner and tensor structure") {
  BasisSpec spec = BasisSpec::rectangle(1, 1, 1.0, 1.0);
  Vec corner = eval_features_2d(spec, 0.0, 0.0, 0, 0);
  REQUIRE(corner.size() == 4);
  CHECK(corner[0] == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(std::abs(corner[1]) <= 1e-15);
  CHECK(std::abs(corner[2]) <= 1e-15);
  CHECK(std::abs(corner[3]) <= 1e-15);

  // Row-major flattening: entry (i,j) of the outer product lands at i*(ny+1)+j.
  BasisSpec s2 = BasisSpec::rectangle(3, 2, 2.0, 1.5);
  const double x = 1.3, y = 0.4;
  Vec fx = eval_features_1d(BasisSpec::interval(3, 2.0), x, 1);
  Vec fy = eval_features_1d(BasisSpec::interval(2, 1.5), y, 2);
  Vec full = eval_features_2d(s2, x, y, 1, 2);
  for (int i = 0; i <= 3; ++i)
    for (int j = 0; j <= 2; ++j)
      CHECK(full[s2.flatten(i, j)] == doctest::Approx(fx[i] * fy[j]).epsilon(1e-14));
}

TEST_CASE("eval_features 2D second derivative matches finite differences") {
  BasisSpec spec = BasisSpec::rectangle(2, 2, 1.0, 1.0);
  const double x = 0.45, y = 0.6, h = 1e-5;
  Vec d20 = eval_features_2d(spec, x, y, 2, 0);
  for (int k = 0; k < spec.size(); ++k) {
    const double fd = oracle::fd2(
        [&](double s) { return eval_features_2d(spec, s, y, 0, 0)[k]; }, x, h);
    CHECK(d20[k] == doctest::Approx(fd).epsilon(1e-6));
  }
}

TEST_CASE("eval_features argument validation") {
  BasisSpec spec = BasisSpec::interval(5, 1.0);
  CHECK_THROWS_AS(eval_features_1d(spec, -0.01, 0), std::domain_error);
  CHECK_THROWS_AS(eval_features_1d(spec, 1.01, 0), std::domain_error);
  CHECK_THROWS_AS(eval_features_1d(spec, 0.5, 5), std::domain_error);
  CHECK_THROWS_AS(eval_features_1d(spec, 0.5, -1), std::domain_error);
}

TEST_CASE("BasisSpec factories validate and size correctly") {
  CHECK_THROWS_AS(BasisSpec::interval(-1, 1.0), ConfigError);
  CHECK_THROWS_AS(BasisSpec::interval(3, 0.0), ConfigError);
  CHECK_THROWS_AS(BasisSpec::rectangle(2, 2, 1.0, -1.0), ConfigError);

  CHECK(BasisSpec::interval(23, 0.12).size() == 24);
  CHECK(BasisSpec::rectangle(13, 13, 5.0, 3.0).size() == 196);

  // Flatten round-trip over the whole index box.
  BasisSpec s = BasisSpec::rectangle(4, 6, 1.0, 1.0);
  for (int i = 0; i <= 4; ++i)
    for (int j = 0; j <= 6; ++j) {
      const int k = s.flatten(i, j);
      CHECK(k / (s.deg_y + 1) == i);
      CHECK(k % (s.deg_y + 1) == j);
    }
}
