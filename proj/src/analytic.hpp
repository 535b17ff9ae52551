#pragma once

#include <utility>
#include <vector>

#include "problem.hpp"

namespace modalfit {

// Residual of the normalized characteristic equation at a candidate root:
//   simply supported  sin(beta)
//   fixed-fixed       cos(beta) - sech(beta)   (equivalent to cos b cosh b = 1)
//   fixed-free        cos(beta) + sech(beta)   (equivalent to cos b cosh b = -1)
// The sech form keeps residuals at rounding level for large beta, where the
// cosh-product form amplifies the root's ulp by ~cosh(beta).
double beam_char_residual(BeamBC bc, double beta);

// First K dimensionless wavenumbers beta_n. Simply supported: n*pi exactly.
// Otherwise bisection on the characteristic residual within +-0.5 of the
// tabulated first five values (asymptotic seeds beyond the fifth).
std::vector<double> beam_wavenumbers(BeamBC bc, int K);

// omega_n = (beta_n / L)^2 sqrt(EI / (rho A)), ascending.
std::vector<double> beam_exact_frequencies(const BeamProblem&, int K);

// Closed-form mode shape value (unnormalized); n is the 1-based mode number.
double beam_exact_mode(BeamBC bc, int n, double x, double L);

struct CavityModeIndex {
  int m = 0, n = 0;
};

// Sorted (omega, (m,n)) with omega = c*sqrt((m pi/L)^2 + (n pi/H)^2),
// (0,0) excluded, ties broken by (m,n) lexicographic order.
std::vector<std::pair<double, CavityModeIndex>> cavity_exact_spectrum(double L, double H,
                                                                      double c, int K);

// Closed-form cavity mode cos(m pi x / L) cos(n pi y / H).
double cavity_exact_mode(int m, int n, double x, double y, double L, double H);

// Unified oracle for any problem.
std::vector<double> exact_frequencies(const Problem&, int K);

struct FrequencyErrors {
  std::vector<double> abs_err, rel_err;
};

// Per-mode |predicted - exact| and relative error.
FrequencyErrors frequency_errors(const std::vector<double>& predicted,
                                 const std::vector<double>& exact);

}  // namespace modalfit
