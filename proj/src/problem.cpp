#include "problem.hpp"

#include <cmath>

#include "errors.hpp"

namespace modalfit {

int operator_order(const Problem& p) {
  return std::holds_alternative<BeamProblem>(p) ? 4 : 2;
}

BasisSpec basis_for(const Problem& p, int deg_x, int deg_y) {
  const int order = operator_order(p);
  if (const auto* beam = std::get_if<BeamProblem>(&p)) {
    if (!(beam->E > 0 && beam->I > 0 && beam->rho > 0 && beam->area > 0 && beam->L > 0))
      throw ConfigError("beam constants must be strictly positive");
    if (deg_x < order)
      throw ConfigError("basis degree " + std::to_string(deg_x) +
                        " below operator order " + std::to_string(order));
    return BasisSpec::interval(deg_x, beam->L);
  }
  const auto& cav = std::get<CavityProblem>(p);
  if (!(cav.L > 0 && cav.H > 0 && cav.c > 0))
    throw ConfigError("cavity constants must be strictly positive");
  if (deg_x < order || deg_y < order)
    throw ConfigError("basis degrees (" + std::to_string(deg_x) + "," +
                      std::to_string(deg_y) + ") below operator order " +
                      std::to_string(order));
  return BasisSpec::rectangle(deg_x, deg_y, cav.L, cav.H);
}

namespace {

std::vector<double> open_grid(double length, int n) {
  std::vector<double> pts(n);
  for (int i = 1; i <= n; ++i) pts[i - 1] = length * i / (n + 1);
  return pts;
}

}  // namespace

InteriorSet generate_interior(const Problem& p, const BasisSpec& spec, int nx, int ny) {
  InteriorSet set;
  if (std::holds_alternative<BeamProblem>(p)) {
    if (nx < spec.size())
      throw ConfigError("interior count " + std::to_string(nx) +
                        " below feature count " + std::to_string(spec.size()));
    set.dim = 1;
    set.xs = open_grid(spec.len_x, nx);
    return set;
  }
  if (nx < 1 || ny < 1 || static_cast<long long>(nx) * ny < spec.size())
    throw ConfigError("interior grid " + std::to_string(nx) + "x" + std::to_string(ny) +
                      " below feature count " + std::to_string(spec.size()));
  set.dim = 2;
  set.xs = open_grid(spec.len_x, nx);
  set.ys = open_grid(spec.len_y, ny);
  return set;
}

std::vector<BoundaryConstraint> boundary_constraints(const Problem& p, int per_edge) {
  std::vector<BoundaryConstraint> out;
  if (const auto* beam = std::get_if<BeamProblem>(&p)) {
    const double L = beam->L;
    auto add = [&](double x, int d) {
      BoundaryConstraint c;
      c.point[0] = x;
      c.orders[0] = d;
      out.push_back(c);
    };
    switch (beam->bc) {
      case BeamBC::SimplySupported:   // w = w'' = 0 at both ends
        add(0.0, 0); add(0.0, 2); add(L, 0); add(L, 2);
        break;
      case BeamBC::FixedFixed:        // w = w' = 0 at both ends
        add(0.0, 0); add(0.0, 1); add(L, 0); add(L, 1);
        break;
      case BeamBC::FixedFree:         // w = w' = 0 at x=0; w'' = w''' = 0 at x=L
        add(0.0, 0); add(0.0, 1); add(L, 2); add(L, 3);
        break;
    }
    return out;
  }
  const auto& cav = std::get<CavityProblem>(p);
  if (per_edge < 2) throw ConfigError("cavity needs at least 2 boundary points per edge");
  auto add = [&](double x, double y, int ox, int oy) {
    BoundaryConstraint c;
    c.point[0] = x;
    c.point[1] = y;
    c.orders[0] = ox;
    c.orders[1] = oy;
    out.push_back(c);
  };
  // dP/dx = 0 on x = 0 and x = L; these edges own the corners (closed in y).
  for (double xv : {0.0, cav.L})
    for (int j = 0; j < per_edge; ++j)
      add(xv, cav.H * j / (per_edge - 1), 1, 0);
  // dP/dy = 0 on y = 0 and y = H; open in x so corners are not duplicated.
  for (double yv : {0.0, cav.H})
    for (int i = 1; i <= per_edge; ++i)
      add(cav.L * i / (per_edge + 1), yv, 0, 1);
  return out;
}

Vec operator_row(const Problem& p, const BasisSpec& spec, const double* point) {
  if (std::holds_alternative<BeamProblem>(p)) {
    if (spec.deg_x < 4) throw ConfigError("beam operator needs basis degree >= 4");
    return eval_features_1d(spec, point[0], 4);
  }
  if (spec.deg_x < 2 || spec.deg_y < 2)
    throw ConfigError("cavity operator needs basis degree >= 2 per axis");
  return -(eval_features_2d(spec, point[0], point[1], 2, 0) +
           eval_features_2d(spec, point[0], point[1], 0, 2));
}

double eigen_to_frequency(const Problem& p, double lambda) {
  if (lambda < 0.0)
    throw NumericError("spurious negative eigenvalue cannot be converted to a frequency");
  if (const auto* beam = std::get_if<BeamProblem>(&p))
    return std::sqrt(lambda * beam->E * beam->I / (beam->rho * beam->area));
  return std::get<CavityProblem>(p).c * std::sqrt(lambda);
}

}  // namespace modalfit
