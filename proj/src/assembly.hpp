#pragma once

#include <vector>

#include "problem.hpp"

namespace modalfit {

// Quadratic-form design matrices accumulated over interior collocation points:
//   A = sum (Lphi)(Lphi)^T,  S = sum (Lphi) phi^T,  P = S + S^T,  G = sum phi phi^T.
struct DesignMatrices {
  Mat A, S, P, G;
  std::size_t n_points = 0;
};

DesignMatrices assemble_design(const BasisSpec&, const Problem&, const InteriorSet&);

// 2D tensor-factor assembly (per-axis Gram factors combined per operator term).
// Optimization only; must agree with the point-loop reference to rounding.
DesignMatrices assemble_design_tensor(const BasisSpec&, const CavityProblem&,
                                      const InteriorSet&);

// Boundary constraint matrix: row j = features of constraint j. Rejects
// all-zero rows (degenerate constraints).
Mat assemble_boundary(const BasisSpec&, const std::vector<BoundaryConstraint>&);

// Orthonormal basis of the null space of the boundary matrix: coefficients
// beta = T y satisfy every boundary row exactly (to rounding).
struct AdmissibleMap {
  Mat T;                        // N_phi x r, orthonormal columns
  int rank = 0;                 // numerical rank of the boundary matrix
  bool rank_deficient = false;  // rank < row count (redundant constraints)
};

AdmissibleMap nullspace_map(const Mat& B, double rank_tol = 1e-10);

// Projected pencil. `op` is the orientation that is exact for representable
// eigenfunctions (for beta = T y with L u = lambda u pointwise,
// T^T S^T T y = lambda T^T G T y holds with zero quadrature error), and is what
// the eigensolver consumes. `sym` is the symmetrized projection, kept as a
// diagnostic together with the relative asymmetry of the projected matrix:
// the skew part is quadrature error and grows to O(1) for free/Neumann walls.
struct ReducedSystem {
  Mat op;                  // T^T S^T T
  Mat sym;                 // (T^T S T + T^T S^T T) / 2, exactly symmetric
  Mat G;                   // T^T G T, symmetrized
  double asymmetry = 0.0;  // skew fraction ||skew(S_raw)||_F / ||S_raw||_F, in [0,1]
  bool ridge_applied = false;
  double ridge_value = 0.0;
};

ReducedSystem reduce(const DesignMatrices&, const AdmissibleMap&);

// Validates that G is positive definite (Cholesky). On failure: if allow_ridge,
// applies the shift eps*trace(G)/r with eps = 1e-12 and records it (never
// silent); otherwise throws NumericError carrying a smallest-eigenvalue estimate.
void ensure_spd(ReducedSystem&, bool allow_ridge);

}  // namespace modalfit
