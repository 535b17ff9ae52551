#include "analytic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "errors.hpp"

namespace modalfit {

namespace {

constexpr double kPi = std::numbers::pi;

// First five tabulated roots per clamped variant (seed values; refined below).
const double kFixedFixedSeeds[5] = {4.73, 7.8532, 10.9956, 14.1372, 17.2787};
const double kFixedFreeSeeds[5] = {1.8751, 4.6941, 7.8548, 10.9955, 14.1372};

double bisect_root(BeamBC bc, double lo, double hi) {
  double flo = beam_char_residual(bc, lo);
  double fhi = beam_char_residual(bc, hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if (flo * fhi > 0.0) throw NumericError("characteristic root bracket has no sign change");
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;   // interval collapsed to adjacent doubles
    const double fm = beam_char_residual(bc, mid);
    if (fm == 0.0) return mid;
    if (flo * fm < 0.0) {
      hi = mid;
    } else {
      lo = mid;
      flo = fm;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

double beam_char_residual(BeamBC bc, double beta) {
  switch (bc) {
    case BeamBC::SimplySupported:
      return std::sin(beta);
    case BeamBC::FixedFixed:
      return std::cos(beta) - 1.0 / std::cosh(beta);
    case BeamBC::FixedFree:
      return std::cos(beta) + 1.0 / std::cosh(beta);
  }
  return 0.0;
}

std::vector<double> beam_wavenumbers(BeamBC bc, int K) {
  if (K < 1) throw ConfigError("mode count must be at least 1");
  std::vector<double> betas(K);
  if (bc == BeamBC::SimplySupported) {
    for (int n = 1; n <= K; ++n) betas[n - 1] = n * kPi;
    return betas;
  }
  for (int n = 1; n <= K; ++n) {
    double seed;
    if (n <= 5) {
      seed = (bc == BeamBC::FixedFixed) ? kFixedFixedSeeds[n - 1] : kFixedFreeSeeds[n - 1];
    } else {
      // cosh grows fast, so the roots approach the cosine zeros.
      seed = (bc == BeamBC::FixedFixed) ? (n + 0.5) * kPi : (n - 0.5) * kPi;
    }
    betas[n - 1] = bisect_root(bc, seed - 0.5, seed + 0.5);
  }
  return betas;
}

std::vector<double> beam_exact_frequencies(const BeamProblem& beam, int K) {
  const auto betas = beam_wavenumbers(beam.bc, K);
  const double scale = std::sqrt(beam.E * beam.I / (beam.rho * beam.area));
  std::vector<double> omega(K);
  for (int k = 0; k < K; ++k) {
    const double b = betas[k] / beam.L;
    omega[k] = b * b * scale;
  }
  return omega;
}

double beam_exact_mode(BeamBC bc, int n, double x, double L) {
  const double beta = beam_wavenumbers(bc, n).back();
  const double xi = x / L;
  if (bc == BeamBC::SimplySupported) return std::sin(beta * xi);
  const double cb = std::cos(beta), chb = std::cosh(beta);
  const double sb = std::sin(beta), shb = std::sinh(beta);
  const double sigma = (bc == BeamBC::FixedFixed) ? (cb - chb) / (sb - shb)
                                                  : (cb + chb) / (sb + shb);
  return (std::cos(beta * xi) - std::cosh(beta * xi)) -
         sigma * (std::sin(beta * xi) - std::sinh(beta * xi));
}

std::vector<std::pair<double, CavityModeIndex>> cavity_exact_spectrum(double L, double H,
                                                                      double c, int K) {
  if (K < 1) throw ConfigError("mode count must be at least 1");
  int M = 8;
  std::vector<std::pair<double, CavityModeIndex>> out;
  auto enumerate = [&](int limit) {
    std::vector<std::pair<double, CavityModeIndex>> all;
    for (int m = 0; m <= limit; ++m)
      for (int n = 0; n <= limit; ++n) {
        if (m == 0 && n == 0) continue;
        const double kx = m * kPi / L, ky = n * kPi / H;
        all.push_back({c * std::hypot(kx, ky), {m, n}});
      }
    std::sort(all.begin(), all.end(), [](const auto& a, const auto& b) {
      if (a.first != b.first) return a.first < b.first;
      if (a.second.m != b.second.m) return a.second.m < b.second.m;
      return a.second.n < b.second.n;
    });
    all.resize(std::min<std::size_t>(all.size(), K));
    return all;
  };
  out = enumerate(M);
  // Double the index range until the K-th smallest frequency is stable.
  while (true) {
    auto wider = enumerate(2 * M);
    if (wider.size() == out.size() && wider.back().first == out.back().first &&
        static_cast<int>(wider.size()) >= K)
      return wider;
    out = std::move(wider);
    M *= 2;
  }
}

double cavity_exact_mode(int m, int n, double x, double y, double L, double H) {
  return std::cos(m * kPi * x / L) * std::cos(n * kPi * y / H);
}

std::vector<double> exact_frequencies(const Problem& p, int K) {
  if (const auto* beam = std::get_if<BeamProblem>(&p))
    return beam_exact_frequencies(*beam, K);
  const auto& cav = std::get<CavityProblem>(p);
  const auto spectrum = cavity_exact_spectrum(cav.L, cav.H, cav.c, K);
  std::vector<double> omega(spectrum.size());
  for (std::size_t i = 0; i < spectrum.size(); ++i) omega[i] = spectrum[i].first;
  return omega;
}

FrequencyErrors frequency_errors(const std::vector<double>& predicted,
                                 const std::vector<double>& exact) {
  if (predicted.size() != exact.size())
    throw ConfigError("frequency lists differ in length");
  FrequencyErrors e;
  e.abs_err.resize(predicted.size());
  e.rel_err.resize(predicted.size());
  for (std::size_t i = 0; i < predicted.size(); ++i) {
    e.abs_err[i] = std::abs(predicted[i] - exact[i]);
    e.rel_err[i] = e.abs_err[i] / std::abs(exact[i]);
  }
  return e;
}

}  // namespace modalfit
