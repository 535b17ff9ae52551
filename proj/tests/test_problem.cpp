#include <doctest.h>

#include <cmath>
#include <set>

#include "errors.hpp"
#include "oracles.hpp"
#include "problem.hpp"

using namespace modalfit;

namespace {

const double kPi = 3.14159265358979323846;

BeamProblem paper_beam(BeamBC bc) {
  // E = 210 GPa, I = bh^3/12 with b = 3 mm, h = 2 mm, rho = 7800, L = 0.12.
  return BeamProblem{2.1e11, 2e-12, 7800.0, 6e-6, 0.12, bc};
}

}  // namespace

TEST_CASE("operator_row: fourth derivative of x^4 is 24") {
  BeamProblem beam{1.0, 1.0, 1.0, 1.0, 1.0, BeamBC::SimplySupported};
  BasisSpec spec = basis_for(beam, 4, 0);
  Vec coeffs = oracle::monomial_in_bernstein(4, 4);  // x^4 on [0,1]
  for (double x : {0.2, 0.5, 0.83}) {
    const double pt[2] = {x, 0.0};
    CHECK(operator_row(beam, spec, pt).dot(coeffs) == doctest::Approx(24.0).epsilon(1e-10));
  }
}

TEST_CASE("operator_row: cavity Laplacian of constant and of x^2 + y^2") {
  CavityProblem cav{1.0, 1.0, 340.0};
  BasisSpec spec = basis_for(cav, 2, 2);
  const double pt[2] = {0.4, 0.7};

  Vec ones = Vec::Ones(spec.size());  // P == 1 by partition of unity
  CHECK(std::abs(operator_row(cav, spec, pt).dot(ones)) <= 1e-10);

  // x^2 + y^2 in tensor Bernstein form: c_{ij} = a_i + b_j.
  Vec a = oracle::monomial_in_bernstein(2, 2);
  Vec b = oracle::monomial_in_bernstein(2, 2);
  Vec c(spec.size());
  for (int i = 0; i <= 2; ++i)
    for (int j = 0; j <= 2; ++j) c[spec.flatten(i, j)] = a[i] + b[j];
  CHECK(operator_row(cav, spec, pt).dot(c) == doctest::Approx(-4.0).epsilon(1e-10));
}

TEST_CASE("operator_row: cavity on physical rectangle") {
  CavityProblem cav{5.0, 3.0, 340.0};
  BasisSpec spec = basis_for(cav, 3, 3);
  // x^2 + y^2 with x = L t: coefficients scale by L^2 (resp. H^2).
  Vec a = 25.0 * oracle::monomial_in_bernstein(3, 2);
  Vec b = 9.0 * oracle::monomial_in_bernstein(3, 2);
  Vec c(spec.size());
  for (int i = 0; i <= 3; ++i)
    for (int j = 0; j <= 3; ++j) c[spec.flatten(i, j)] = a[i] + b[j];
  const double pt[2] = {1.9, 2.2};
  CHECK(operator_row(cav, spec, pt).dot(c) == doctest::Approx(-4.0).epsilon(1e-10));
}

TEST_CASE("operator_row is linear in the coefficients") {
  BeamProblem beam = paper_beam(BeamBC::FixedFixed);
  BasisSpec spec = basis_for(beam, 8, 0);
  const double pt[2] = {0.07, 0.0};
  Vec row = operator_row(beam, spec, pt);
  Vec f(spec.size()), g(spec.size());
  for (int k = 0; k < spec.size(); ++k) {
    f[k] = oracle::uniform(-1.0, 1.0);
    g[k] = oracle::uniform(-1.0, 1.0);
  }
  const double alpha = 2.375;
  const double lhs = row.dot(alpha * f + g);
  const double rhs = alpha * row.dot(f) + row.dot(g);
  CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
}

TEST_CASE("basis_for validates degree against operator order") {
  BeamProblem beam = paper_beam(BeamBC::SimplySupported);
  CHECK_THROWS_AS(basis_for(beam, 3, 0), ConfigError);
  CHECK(basis_for(beam, 4, 0).size() == 5);

  CavityProblem cav{5.0, 3.0, 340.0};
  CHECK_THROWS_AS(basis_for(cav, 1, 5), ConfigError);
  CHECK_THROWS_AS(basis_for(cav, 5, 1), ConfigError);
  CHECK(basis_for(cav, 2, 2).size() == 9);

  BeamProblem bad = paper_beam(BeamBC::SimplySupported);
  bad.E = 0.0;
  CHECK_THROWS_AS(basis_for(bad, 23, 0), ConfigError);
}

TEST_CASE("boundary_constraints: beam variants") {
  const double L = 0.12;

  auto ss = boundary_constraints(paper_beam(BeamBC::SimplySupported), 0);
  REQUIRE(ss.size() == 4);
  CHECK(ss[0].point[0] == 0.0);
  CHECK(ss[0].orders[0] == 0);
  CHECK(ss[1].point[0] == 0.0);
  CHECK(ss[1].orders[0] == 2);
  CHECK(ss[2].point[0] == L);
  CHECK(ss[2].orders[0] == 0);
  CHECK(ss[3].point[0] == L);
  CHECK(ss[3].orders[0] == 2);
  for (const auto& c : ss) CHECK(c.value == 0.0);

  auto ff = boundary_constraints(paper_beam(BeamBC::FixedFixed), 0);
  REQUIRE(ff.size() == 4);
  CHECK(ff[0].orders[0] == 0);
  CHECK(ff[1].orders[0] == 1);
  CHECK(ff[2].point[0] == L);
  CHECK(ff[2].orders[0] == 0);
  CHECK(ff[3].orders[0] == 1);

  auto cf = boundary_constraints(paper_beam(BeamBC::FixedFree), 0);
  REQUIRE(cf.size() == 4);
  CHECK(cf[0].point[0] == 0.0);
  CHECK(cf[0].orders[0] == 0);
  CHECK(cf[1].point[0] == 0.0);
  CHECK(cf[1].orders[0] == 1);
  CHECK(cf[2].point[0] == L);
  CHECK(cf[2].orders[0] == 2);
  CHECK(cf[3].point[0] == L);
  CHECK(cf[3].orders[0] == 3);
}

TEST_CASE("boundary_constraints: cavity walls") {
  CavityProblem cav{5.0, 3.0, 340.0};
  auto rows = boundary_constraints(cav, 4);
  REQUIRE(rows.size() == 16);

  // All locations distinct (corners owned by exactly one edge).
  std::set<std::pair<double, double>> pts;
  for (const auto& c : rows) pts.insert({c.point[0], c.point[1]});
  CHECK(pts.size() == 16);

  BasisSpec spec = basis_for(cav, 3, 3);
  Vec ones = Vec::Ones(spec.size());
  for (const auto& c : rows) {
    // Normal derivative rows annihilate the constant function.
    Vec row = eval_features(spec, c.point, c.orders);
    CHECK(std::abs(row.dot(ones)) <= 1e-12);
    // Each constraint is a pure first derivative normal to its wall.
    const bool on_x_wall = c.point[0] == 0.0 || c.point[0] == 5.0;
    const bool on_y_wall = c.point[1] == 0.0 || c.point[1] == 3.0;
    CHECK((on_x_wall || on_y_wall));
    if (c.orders[0] == 1)
      CHECK(on_x_wall);
    else
      CHECK((c.orders[1] == 1 && on_y_wall));
    CHECK(c.value == 0.0);
  }

  CHECK_THROWS_AS(boundary_constraints(cav, 1), ConfigError);
}

TEST_CASE("boundary rows annihilate polynomials satisfying the condition") {
  // w(t) = t - 2t^3 + t^4 satisfies w = w'' = 0 at both ends of [0,1].
  BeamProblem beam{1.0, 1.0, 1.0, 1.0, 1.0, BeamBC::SimplySupported};
  BasisSpec spec = basis_for(beam, 7, 0);
  Vec w = oracle::poly_in_bernstein(7, {0.0, 1.0, 0.0, -2.0, 1.0});
  for (const auto& c : boundary_constraints(beam, 0)) {
    Vec row = eval_features(spec, c.point, c.orders);
    CHECK(std::abs(row.dot(w)) <= 1e-12 * row.cwiseAbs().maxCoeff());
  }

  // w(t) = t^2 (1-t)^2 satisfies clamped-clamped conditions.
  BeamProblem ff{1.0, 1.0, 1.0, 1.0, 1.0, BeamBC::FixedFixed};
  Vec q = oracle::poly_in_bernstein(7, {0.0, 0.0, 1.0, -2.0, 1.0});
  for (const auto& c : boundary_constraints(ff, 0)) {
    Vec row = eval_features(spec, c.point, c.orders);
    CHECK(std::abs(row.dot(q)) <= 1e-12 * row.cwiseAbs().maxCoeff());
  }
}

TEST_CASE("generate_interior: open equispaced grids") {
  // Coordinate formula, checked with a small stand-alone basis (3 features).
  BeamProblem beam{1.0, 1.0, 1.0, 1.0, 1.0, BeamBC::SimplySupported};
  InteriorSet s = generate_interior(beam, BasisSpec::interval(2, 1.0), 3, 0);
  REQUIRE(s.xs.size() == 3);
  CHECK(s.xs[0] == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(s.xs[1] == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(s.xs[2] == doctest::Approx(0.75).epsilon(1e-15));
}

TEST_CASE("generate_interior: 2D tensor grid and bounds") {
  CavityProblem cav{1.0, 1.0, 340.0};

  // 2x2 on the unit square is the {1/3, 2/3}^2 grid.
  InteriorSet g2 = generate_interior(cav, BasisSpec::rectangle(1, 1, 1.0, 1.0), 2, 2);
  REQUIRE(g2.dim == 2);
  REQUIRE(g2.xs.size() == 2);
  REQUIRE(g2.ys.size() == 2);
  CHECK(g2.xs[0] == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  CHECK(g2.xs[1] == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
  CHECK(g2.ys[0] == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  CHECK(g2.ys[1] == doctest::Approx(2.0 / 3.0).epsilon(1e-15));

  BasisSpec spec = basis_for(cav, 2, 2);  // 9 features
  InteriorSet g = generate_interior(cav, spec, 3, 3);
  CHECK(g.count() == 9);
  CHECK(g.xs[0] == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(g.ys[2] == doctest::Approx(0.75).epsilon(1e-15));

  // A 2x2 grid offers 4 < 9 points for this spec: rejected.
  CHECK_THROWS_AS(generate_interior(cav, spec, 2, 2), ConfigError);
}

TEST_CASE("generate_interior: paper-scale spacing is uniform and strictly interior") {
  BeamProblem beam = paper_beam(BeamBC::SimplySupported);
  BasisSpec spec = basis_for(beam, 23, 0);
  const int N = 50000;
  InteriorSet s = generate_interior(beam, spec, N, 0);
  REQUIRE(static_cast<int>(s.xs.size()) == N);
  const double h = 0.12 / (N + 1);
  CHECK(s.xs.front() > 0.0);
  CHECK(s.xs.back() < 0.12);
  CHECK(s.xs.front() == doctest::Approx(h).epsilon(1e-12));
  double max_dev = 0.0;
  for (int i = 1; i < N; ++i)
    max_dev = std::max(max_dev, std::abs((s.xs[i] - s.xs[i - 1]) - h));
  CHECK(max_dev <= 1e-15 * 0.12);  // spacing variance at rounding level

  CHECK_THROWS_AS(generate_interior(beam, spec, 20, 0), ConfigError);
}

TEST_CASE("eigen_to_frequency maps") {
  BeamProblem beam = paper_beam(BeamBC::SimplySupported);
  const double lambda1 = std::pow(kPi / 0.12, 4);
  const double omega1 = eigen_to_frequency(beam, lambda1);
  CHECK(omega1 == doctest::Approx(2.0532e3).epsilon(1e-4));
  // Against the closed form directly: sqrt(lambda * EI / (rho A)).
  CHECK(omega1 ==
        doctest::Approx(std::sqrt(lambda1 * 0.42 / 0.0468)).epsilon(1e-14));

  CavityProblem cav{5.0, 3.0, 340.0};
  CHECK(eigen_to_frequency(cav, 0.0) == 0.0);
  CHECK(eigen_to_frequency(cav, std::pow(kPi / 5.0, 2)) ==
        doctest::Approx(2.1363e2).epsilon(1e-4));

  CHECK_THROWS_AS(eigen_to_frequency(beam, -1.0), NumericError);
}

TEST_CASE("operator_order per problem") {
  CHECK(operator_order(paper_beam(BeamBC::FixedFree)) == 4);
  CHECK(operator_order(CavityProblem{5.0, 3.0, 340.0}) == 2);
}
