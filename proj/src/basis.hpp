#pragma once

#include <Eigen/Dense>

namespace modalfit {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

// Frozen polynomial feature family (Bernstein basis) on an interval [0, len_x]
// or a tensor-product rectangle [0, len_x] x [0, len_y].
struct BasisSpec {
  int dim = 1;                        // 1 or 2
  int deg_x = 0, deg_y = 0;           // per-dimension polynomial degree
  double len_x = 1.0, len_y = 1.0;    // physical side lengths

  static BasisSpec interval(int degree, double length);
  static BasisSpec rectangle(int deg_x, int deg_y, double len_x, double len_y);

  // Number of features: n+1 (1D), (n_x+1)(n_y+1) (2D).
  int size() const;
  // 2D row-major feature index, i along x, j along y.
  int flatten(int i, int j) const { return i * (deg_y + 1) + j; }
};

// All degree-n Bernstein values at reference coordinate t in [0,1], via the
// de Casteljau triangle (each level a convex combination; stable at degree 23).
Vec bernstein_eval(int n, double t);

// d-th reference-coordinate derivative of the degree-n Bernstein row, via the
// exact recurrence B'_{k,n} = n (B_{k-1,n-1} - B_{k,n-1}) applied d times.
// d = 0 reduces to bernstein_eval; d > n yields the zero vector.
Vec bernstein_derivative(int n, double t, int d);

// Feature vector (or a mixed partial derivative of it) at a physical point.
// Maps x -> t = x/len per dimension and applies chain-rule scaling (1/len)^d.
// 2D output is the outer product of the per-axis rows, flattened row-major.
// Derivative orders are capped at 4 (highest order any attached operator uses).
Vec eval_features(const BasisSpec& spec, const double* point, const int* orders);

// Convenience wrappers.
Vec eval_features_1d(const BasisSpec& spec, double x, int order);
Vec eval_features_2d(const BasisSpec& spec, double x, double y, int ox, int oy);

}  // namespace modalfit
