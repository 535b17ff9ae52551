#pragma once

#include <cstddef>
#include <variant>
#include <vector>

#include "basis.hpp"

namespace modalfit {

enum class BeamBC { SimplySupported, FixedFixed, FixedFree };

// Transverse beam vibration: w'''' = lambda w on [0, L].
// Constants enter only through the map lambda = rho*area*omega^2 / (E*I).
struct BeamProblem {
  double E;      // Young's modulus [Pa]
  double I;      // second moment of area [m^4]
  double rho;    // density [kg/m^3]
  double area;   // cross-section area [m^2]
  double L;      // length [m]
  BeamBC bc = BeamBC::SimplySupported;
};

// Acoustic pressure modes of a rigid-wall rectangular cavity:
// -laplace(P) = lambda P on [0,L]x[0,H], dP/dn = 0 on all walls,
// lambda = k^2 and omega = c*k.
struct CavityProblem {
  double L;   // width [m]
  double H;   // height [m]
  double c;   // speed of sound [m/s]
};

using Problem = std::variant<BeamProblem, CavityProblem>;

// One homogeneous boundary condition row: the constrained quantity is the
// mixed derivative of the field at a boundary point.
struct BoundaryConstraint {
  double point[2] = {0.0, 0.0};
  int orders[2] = {0, 0};
  double value = 0.0;   // 0 for all eigenproblems
};

// Interior collocation points with tensor structure (1D leaves ys empty).
struct InteriorSet {
  int dim = 1;
  std::vector<double> xs, ys;
  std::size_t count() const { return dim == 1 ? xs.size() : xs.size() * ys.size(); }
};

// Order of the differential operator: 4 (beam) or 2 (cavity).
int operator_order(const Problem&);

// Basis over the problem's domain; validates degree >= operator order.
BasisSpec basis_for(const Problem&, int deg_x, int deg_y);

// Equispaced points on the open interior (endpoints excluded); 2D is the
// tensor grid of the per-axis open sets. Total count must be >= N_phi.
InteriorSet generate_interior(const Problem&, const BasisSpec&, int nx, int ny);

// The problem's boundary condition set. Beams: 4 endpoint constraints per
// variant. Cavity: per_edge normal-derivative rows per edge; corner points
// belong to the x-normal edges, the y-normal edges use open interior abscissae
// so every constraint location is distinct.
std::vector<BoundaryConstraint> boundary_constraints(const Problem&, int per_edge);

// Row of the differential operator applied to all features at one point:
// beam d^4/dx^4, cavity -(d^2/dx^2 + d^2/dy^2).
Vec operator_row(const Problem&, const BasisSpec&, const double* point);

// lambda -> omega [rad/s]: beam sqrt(lambda*EI/(rho*area)), cavity c*sqrt(lambda).
double eigen_to_frequency(const Problem&, double lambda);

}  // namespace modalfit
