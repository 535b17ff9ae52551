#pragma once

#include <vector>

#include "assembly.hpp"

namespace modalfit {

// One generalized eigenpair of the projected pencil op y = lambda G y.
// Complex or infinite pairs arise only as QZ artifacts in rough near-null
// directions; they carry their diagnostics here and are dropped by
// select_modes.
struct EigenPair {
  double lambda = 0.0;   // real part
  double imag = 0.0;     // imaginary part (0 for physical pairs)
  bool finite = true;    // false when the pencil's beta underflows (lambda -> inf)
  Vec y;                 // reduced coordinates (real part)
};

// All r pairs of the reduced pencil via the real QZ decomposition.
std::vector<EigenPair> solve_gep(const ReducedSystem&);

struct Mode {
  double lambda = 0.0;
  double omega = 0.0;
  Vec y;      // reduced coordinates
  Vec beta;   // full coefficients T y
};

// Mode shape sampled on the reporting grid, max-normalized with the
// largest-magnitude entry positive. 2D samples are row-major over (x, y).
struct SampledMode {
  std::vector<double> xs, ys;   // ys empty in 1D
  std::vector<double> values;
};

struct ModeSet {
  std::vector<Mode> modes;            // K lowest retained, strictly ascending
  std::vector<SampledMode> samples;   // filled by the pipeline
  int retained = 0;                   // pairs surviving all filters
  int filtered = 0;                   // spurious: complex, non-finite, near-zero, negative
  double lambda_max = 0.0;            // largest real finite eigenvalue (filter reference)
};

// Drops non-finite, significantly complex, and lambda <= zero_tol * lambda_max
// pairs (the Neumann constant mode and numerical junk), sorts ascending with
// stable index order on ties, converts to frequencies, recovers beta = T y.
ModeSet select_modes(const std::vector<EigenPair>&, const Problem&, const AdmissibleMap&,
                     int K, double zero_tol = 1e-8);

// Re-solves each selected coefficient vector as the minimizer of the
// collocation loss at its converged eigenvalue (shifted inverse iteration on
// the positive-semidefinite residual form T^T (A - lambda P + lambda^2 G) T).
// The QZ vectors satisfy the projected pencil to machine precision but carry
// noise in the boundary-row directions, which the fourth-derivative scale
// amplifies pointwise; this pass removes it. Eigenvalues and frequencies are
// untouched; each y is renormalized to unit length with its orientation kept,
// and beta = T y is recomputed.
void refine_modes(ModeSet&, const DesignMatrices&, const AdmissibleMap&);

// Evaluates phi^T beta on an inclusive equispaced grid (grid_y ignored in 1D),
// scaled so the largest-magnitude sample is exactly +1.
SampledMode sample_mode(const BasisSpec&, const Vec& beta, int grid_x, int grid_y);

// Forced-problem least-squares solve: normal equations
// (Psi^T Psi + B^T B + ridge I) beta = Psi^T f + B^T g. When the system is
// singular at ridge 0, falls back to the SVD pseudo-inverse and reports it.
struct ForcedSolution {
  Vec beta;
  bool fallback_used = false;
  double rcond = 0.0;
};

ForcedSolution forced_solve(const Mat& Psi, const Vec& f, const Mat& B, const Vec& g,
                            double ridge = 0.0);

// Quadratic collocation loss J = 1/2 beta^T (A - lambda P + lambda^2 G) beta,
// identically 1/2 ||Psi beta - lambda Phi beta||^2; near zero at converged pairs.
double quadratic_loss(const DesignMatrices&, const Vec& beta, double lambda);

}  // namespace modalfit
