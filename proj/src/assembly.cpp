#include "assembly.hpp"

#include <cmath>
#include <string>

#include "errors.hpp"

namespace modalfit {

namespace {

void accumulate_point(DesignMatrices& dm, const Vec& phi, const Vec& lphi) {
  if (!phi.allFinite() || !lphi.allFinite())
    throw NumericError("non-finite feature values during assembly");
  dm.A.noalias() += lphi * lphi.transpose();
  dm.S.noalias() += lphi * phi.transpose();
  dm.G.noalias() += phi * phi.transpose();
}

}  // namespace

DesignMatrices assemble_design(const BasisSpec& spec, const Problem& p,
                               const InteriorSet& interior) {
  if (interior.count() == 0) throw ConfigError("interior collocation set is empty");
  const int N = spec.size();
  DesignMatrices dm;
  dm.A = Mat::Zero(N, N);
  dm.S = Mat::Zero(N, N);
  dm.G = Mat::Zero(N, N);
  if (interior.dim == 1) {
    for (double x : interior.xs) {
      const Vec phi = eval_features_1d(spec, x, 0);
      const Vec lphi = operator_row(p, spec, &x);
      accumulate_point(dm, phi, lphi);
    }
  } else {
    for (double x : interior.xs)
      for (double y : interior.ys) {
        const double pt[2] = {x, y};
        const Vec phi = eval_features_2d(spec, x, y, 0, 0);
        const Vec lphi = operator_row(p, spec, pt);
        accumulate_point(dm, phi, lphi);
      }
  }
  dm.P = dm.S + dm.S.transpose();
  dm.n_points = interior.count();
  return dm;
}

DesignMatrices assemble_design_tensor(const BasisSpec& spec, const CavityProblem&,
                                      const InteriorSet& interior) {
  if (interior.dim != 2) throw ConfigError("tensor assembly requires a 2D interior grid");
  const int nx = spec.deg_x, ny = spec.deg_y;
  // Per-axis Gram factors: F[d1][d2] = sum_pts (d1-deriv row)(d2-deriv row)^T.
  auto axis_factor = [](int n, double len, const std::vector<double>& pts, int d1,
                        int d2) {
    Mat M = Mat::Zero(n + 1, n + 1);
    const double s1 = std::pow(1.0 / len, d1), s2 = std::pow(1.0 / len, d2);
    for (double p : pts) {
      const Vec a = s1 * bernstein_derivative(n, p / len, d1);
      const Vec b = s2 * bernstein_derivative(n, p / len, d2);
      M.noalias() += a * b.transpose();
    }
    return M;
  };
  const Mat Gx0 = axis_factor(nx, spec.len_x, interior.xs, 0, 0);
  const Mat Gy0 = axis_factor(ny, spec.len_y, interior.ys, 0, 0);
  const Mat Sx20 = axis_factor(nx, spec.len_x, interior.xs, 2, 0);
  const Mat Sy20 = axis_factor(ny, spec.len_y, interior.ys, 2, 0);
  const Mat Ax2 = axis_factor(nx, spec.len_x, interior.xs, 2, 2);
  const Mat Ay2 = axis_factor(ny, spec.len_y, interior.ys, 2, 2);

  const int N = spec.size();
  DesignMatrices dm;
  dm.A = Mat::Zero(N, N);
  dm.S = Mat::Zero(N, N);
  dm.G = Mat::Zero(N, N);
  auto kron_add = [&](Mat& out, const Mat& X, const Mat& Y, double w) {
    for (int i = 0; i <= nx; ++i)
      for (int k = 0; k <= nx; ++k) {
        const double xik = w * X(i, k);
        if (xik == 0.0) continue;
        out.block(i * (ny + 1), k * (ny + 1), ny + 1, ny + 1) += xik * Y;
      }
  };
  // With Lphi = -(phi_xx + phi_yy), the sums factor per term:
  kron_add(dm.G, Gx0, Gy0, 1.0);
  kron_add(dm.S, Sx20, Gy0, -1.0);
  kron_add(dm.S, Gx0, Sy20, -1.0);
  kron_add(dm.A, Ax2, Gy0, 1.0);
  kron_add(dm.A, Sx20, Sy20.transpose(), 1.0);
  kron_add(dm.A, Mat(Sx20.transpose()), Sy20, 1.0);
  kron_add(dm.A, Gx0, Ay2, 1.0);
  dm.P = dm.S + dm.S.transpose();
  dm.n_points = interior.count();
  return dm;
}

Mat assemble_boundary(const BasisSpec& spec,
                      const std::vector<BoundaryConstraint>& constraints) {
  if (constraints.empty()) throw ConfigError("boundary constraint set is empty");
  Mat B(constraints.size(), spec.size());
  for (std::size_t j = 0; j < constraints.size(); ++j) {
    const auto& c = constraints[j];
    B.row(j) = eval_features(spec, c.point, c.orders);
    if (B.row(j).cwiseAbs().maxCoeff() == 0.0)
      throw ConfigError("degenerate boundary constraint (all-zero row) at index " +
                        std::to_string(j));
  }
  return B;
}

AdmissibleMap nullspace_map(const Mat& B, double rank_tol) {
  const int N = static_cast<int>(B.cols());
  Eigen::JacobiSVD<Mat> svd(B, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  int rank = 0;
  if (sv.size() > 0 && sv[0] > 0.0) {
    for (int i = 0; i < sv.size(); ++i)
      if (sv[i] > rank_tol * sv[0]) ++rank;
  }
  AdmissibleMap map;
  map.rank = rank;
  map.rank_deficient = rank < B.rows();
  if (N - rank < 1)
    throw NumericError("boundary constraints leave no admissible directions");
  map.T = svd.matrixV().rightCols(N - rank);
  return map;
}

ReducedSystem reduce(const DesignMatrices& dm, const AdmissibleMap& map) {
  const Mat raw = map.T.transpose() * dm.S * map.T;
  ReducedSystem sys;
  sys.op = raw.transpose();
  sys.sym = 0.5 * (raw + raw.transpose());
  // Skew fraction in [0, 1]: 1 means purely skew (symmetric part vanishes).
  const double denom = raw.norm();
  sys.asymmetry = denom > 0.0 ? 0.5 * (raw - raw.transpose()).norm() / denom : 0.0;
  const Mat g = map.T.transpose() * dm.G * map.T;
  sys.G = 0.5 * (g + g.transpose());
  return sys;
}

void ensure_spd(ReducedSystem& sys, bool allow_ridge) {
  Eigen::LLT<Mat> llt(sys.G);
  if (llt.info() == Eigen::Success) return;
  if (allow_ridge) {
    const double r = static_cast<double>(sys.G.rows());
    const double shift = 1e-12 * sys.G.trace() / r;
    Mat shifted = sys.G + shift * Mat::Identity(sys.G.rows(), sys.G.cols());
    Eigen::LLT<Mat> retry(shifted);
    if (retry.info() == Eigen::Success) {
      sys.G = std::move(shifted);
      sys.ridge_applied = true;
      sys.ridge_value = shift;
      return;
    }
  }
  const double min_eig =
      Eigen::SelfAdjointEigenSolver<Mat>(sys.G, Eigen::EigenvaluesOnly)
          .eigenvalues()
          .minCoeff();
  throw NumericError("reduced mass matrix is not positive definite (smallest eigenvalue ~ " +
                     std::to_string(min_eig) + ")" +
                     (allow_ridge ? "; ridge shift did not help" : "; ridge shift not enabled"));
}

}  // namespace modalfit
