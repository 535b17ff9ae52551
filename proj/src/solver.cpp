#include "solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "errors.hpp"

namespace modalfit {

std::vector<EigenPair> solve_gep(const ReducedSystem& sys) {
  const int r = static_cast<int>(sys.op.rows());
  Eigen::GeneralizedEigenSolver<Mat> ges;
  ges.compute(sys.op, sys.G, /*computeEigenvectors=*/true);
  if (ges.info() != Eigen::Success)
    throw NumericError("generalized eigensolver failed to converge");
  std::vector<EigenPair> pairs(r);
  for (int i = 0; i < r; ++i) {
    const std::complex<double> a = ges.alphas()[i];
    const double b = ges.betas()[i];
    EigenPair& p = pairs[i];
    if (b == 0.0) {
      p.finite = false;
      p.lambda = std::numeric_limits<double>::infinity();
    } else {
      const std::complex<double> lam = a / b;
      p.lambda = lam.real();
      p.imag = lam.imag();
      p.finite = std::isfinite(p.lambda) && std::isfinite(p.imag);
    }
    p.y = ges.eigenvectors().col(i).real();
  }
  return pairs;
}

ModeSet select_modes(const std::vector<EigenPair>& pairs, const Problem& problem,
                     const AdmissibleMap& map, int K, double zero_tol) {
  if (K < 1) throw ConfigError("mode count must be at least 1");
  ModeSet set;
  // Reference scale: largest finite real eigenvalue magnitude.
  for (const auto& p : pairs)
    if (p.finite && p.imag == 0.0)
      set.lambda_max = std::max(set.lambda_max, std::abs(p.lambda));
  std::vector<int> keep;
  for (int i = 0; i < static_cast<int>(pairs.size()); ++i) {
    const auto& p = pairs[i];
    if (!p.finite) continue;
    if (std::abs(p.imag) > 1e-10 * (std::abs(p.lambda) + std::abs(p.imag))) continue;
    if (p.lambda <= zero_tol * set.lambda_max) continue;   // constant mode, junk, negatives
    keep.push_back(i);
  }
  std::stable_sort(keep.begin(), keep.end(), [&](int a, int b) {
    return pairs[a].lambda < pairs[b].lambda;
  });
  set.retained = static_cast<int>(keep.size());
  set.filtered = static_cast<int>(pairs.size()) - set.retained;
  if (set.retained < K)
    throw NumericError("only " + std::to_string(set.retained) + " physical modes retained, " +
                       std::to_string(K) + " requested; increase the basis degree");
  set.modes.resize(K);
  for (int k = 0; k < K; ++k) {
    const auto& p = pairs[keep[k]];
    Mode& m = set.modes[k];
    m.lambda = p.lambda;
    m.omega = eigen_to_frequency(problem, p.lambda);
    m.y = p.y;
    m.beta = map.T * p.y;
  }
  return set;
}

void refine_modes(ModeSet& set, const DesignMatrices& dm, const AdmissibleMap& map) {
  if (set.modes.empty()) return;
  const Mat A_red = map.T.transpose() * dm.A * map.T;
  const Mat P_red = map.T.transpose() * dm.P * map.T;
  const Mat G_red = map.T.transpose() * dm.G * map.T;
  const int r = static_cast<int>(A_red.rows());
  for (Mode& m : set.modes) {
    const double n0 = m.y.norm();
    if (!(n0 > 0.0)) continue;
    Mat M = A_red - m.lambda * P_red + (m.lambda * m.lambda) * G_red;
    M = 0.5 * (M + M.transpose());
    // Shift sits far below the rough-direction eigenvalues (~ the mean
    // diagonal) yet above the loss minimum, keeping the factorization stable.
    const double sigma = 1e-14 * M.trace() / r;
    if (!(sigma > 0.0)) continue;
    Eigen::LDLT<Mat> ldlt(M + sigma * Mat::Identity(r, r));
    if (ldlt.info() != Eigen::Success) continue;
    Vec y = m.y / n0;
    bool ok = true;
    for (int it = 0; it < 2 && ok; ++it) {
      const Vec z = ldlt.solve(y);
      const double n = z.norm();
      if (!z.allFinite() || !(n > 0.0)) {
        ok = false;
        break;
      }
      y = z / n;
    }
    if (!ok) continue;
    if (y.dot(m.y) < 0.0) y = -y;
    m.y = y;
    m.beta = map.T * y;
  }
}

SampledMode sample_mode(const BasisSpec& spec, const Vec& beta, int grid_x, int grid_y) {
  if (grid_x < 2 || (spec.dim == 2 && grid_y < 2))
    throw ConfigError("reporting grid needs at least 2 points per axis");
  SampledMode out;
  if (spec.dim == 1) {
    out.xs.resize(grid_x);
    out.values.resize(grid_x);
    for (int i = 0; i < grid_x; ++i) {
      const double x = spec.len_x * i / (grid_x - 1);
      out.xs[i] = x;
      out.values[i] = eval_features_1d(spec, x, 0).dot(beta);
    }
  } else {
    out.xs.resize(static_cast<std::size_t>(grid_x) * grid_y);
    out.ys.resize(out.xs.size());
    out.values.resize(out.xs.size());
    std::size_t k = 0;
    for (int i = 0; i < grid_x; ++i) {
      const double x = spec.len_x * i / (grid_x - 1);
      const Vec fx = bernstein_eval(spec.deg_x, x / spec.len_x);
      for (int j = 0; j < grid_y; ++j, ++k) {
        const double y = spec.len_y * j / (grid_y - 1);
        const Vec fy = bernstein_eval(spec.deg_y, y / spec.len_y);
        double v = 0.0;
        for (int a = 0; a <= spec.deg_x; ++a)
          for (int b = 0; b <= spec.deg_y; ++b) v += fx[a] * fy[b] * beta[spec.flatten(a, b)];
        out.xs[k] = x;
        out.ys[k] = y;
        out.values[k] = v;
      }
    }
  }
  // Normalize so the largest-magnitude sample is exactly +1 (deterministic sign).
  std::size_t imax = 0;
  double vmax = 0.0;
  for (std::size_t i = 0; i < out.values.size(); ++i) {
    const double a = std::abs(out.values[i]);
    if (a > vmax) {
      vmax = a;
      imax = i;
    }
  }
  if (vmax == 0.0) throw NumericError("degenerate mode: all samples vanish");
  const double scale = 1.0 / out.values[imax];
  for (double& v : out.values) v *= scale;
  return out;
}

ForcedSolution forced_solve(const Mat& Psi, const Vec& f, const Mat& B, const Vec& g,
                            double ridge) {
  if (Psi.cols() != B.cols()) throw ConfigError("operator and boundary column counts differ");
  if (Psi.rows() + B.rows() < Psi.cols())
    throw ConfigError("stacked collocation system is underdetermined");
  const int N = static_cast<int>(Psi.cols());
  Mat H = Psi.transpose() * Psi + B.transpose() * B;
  const Vec q = Psi.transpose() * f + B.transpose() * g;
  if (ridge != 0.0) H += ridge * Mat::Identity(N, N);
  ForcedSolution sol;
  Eigen::LDLT<Mat> ldlt(H);
  sol.rcond = ldlt.rcond();
  if (ldlt.info() == Eigen::Success && sol.rcond > 1e-14) {
    sol.beta = ldlt.solve(q);
    // The normal equations square the conditioning of the stacked system;
    // refinement with an extended-precision residual restores the digits the
    // factorization loses.
    for (int pass = 0; pass < 2; ++pass) {
      Vec r(N);
      for (int i = 0; i < N; ++i) {
        long double acc = static_cast<long double>(q[i]);
        for (int j = 0; j < N; ++j)
          acc -= static_cast<long double>(H(i, j)) * static_cast<long double>(sol.beta[j]);
        r[i] = static_cast<double>(acc);
      }
      sol.beta += ldlt.solve(r);
    }
    return sol;
  }
  // Singular normal equations: documented pseudo-inverse fallback.
  sol.fallback_used = true;
  Eigen::BDCSVD<Mat> svd(H, Eigen::ComputeThinU | Eigen::ComputeThinV);
  svd.setThreshold(1e-12);
  sol.beta = svd.solve(q);
  return sol;
}

double quadratic_loss(const DesignMatrices& dm, const Vec& beta, double lambda) {
  if (beta.size() != dm.A.rows()) throw ConfigError("coefficient length mismatch");
  const double a = beta.dot(dm.A * beta);
  const double p = beta.dot(dm.P * beta);
  const double g = beta.dot(dm.G * beta);
  return 0.5 * (a - lambda * p + lambda * lambda * g);
}

}  // namespace modalfit
