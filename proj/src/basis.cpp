#include "basis.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "errors.hpp"

namespace modalfit {

namespace {
constexpr int kMaxDerivativeOrder = 4;
}

BasisSpec BasisSpec::interval(int degree, double length) {
  if (degree < 0) throw ConfigError("basis degree must be non-negative");
  if (!(length > 0.0)) throw ConfigError("domain length must be strictly positive");
  BasisSpec s;
  s.dim = 1;
  s.deg_x = degree;
  s.len_x = length;
  return s;
}

BasisSpec BasisSpec::rectangle(int deg_x, int deg_y, double len_x, double len_y) {
  if (deg_x < 0 || deg_y < 0) throw ConfigError("basis degree must be non-negative");
  if (!(len_x > 0.0) || !(len_y > 0.0))
    throw ConfigError("domain lengths must be strictly positive");
  BasisSpec s;
  s.dim = 2;
  s.deg_x = deg_x;
  s.deg_y = deg_y;
  s.len_x = len_x;
  s.len_y = len_y;
  return s;
}

int BasisSpec::size() const {
  return dim == 1 ? deg_x + 1 : (deg_x + 1) * (deg_y + 1);
}

Vec bernstein_eval(int n, double t) {
  if (n < 0) throw std::domain_error("bernstein_eval: degree must be non-negative");
  if (t < 0.0 || t > 1.0)
    throw std::domain_error("bernstein_eval: reference coordinate outside [0,1]");
  Vec v = Vec::Zero(n + 1);
  v[0] = 1.0;
  const double s = 1.0 - t;
  for (int m = 1; m <= n; ++m)
    for (int k = m; k >= 0; --k)
      v[k] = (k > 0 ? t * v[k - 1] : 0.0) + (k < m ? s * v[k] : 0.0);
  return v;
}

Vec bernstein_derivative(int n, double t, int d) {
  if (d < 0) throw std::domain_error("bernstein_derivative: order must be non-negative");
  if (d == 0) return bernstein_eval(n, t);
  if (d > n) return Vec::Zero(n + 1);
  // Evaluate at the lowered degree, then lift d times: the degree-(m) row's
  // derivative expressed on degree m+1 is w_k = (m+1)(v_{k-1} - v_k).
  Vec v = bernstein_eval(n - d, t);
  for (int j = 0; j < d; ++j) {
    const int m = n - d + 1 + j;
    Vec w = Vec::Zero(m + 1);
    for (int k = 0; k <= m; ++k)
      w[k] = m * ((k > 0 ? v[k - 1] : 0.0) - (k < m ? v[k] : 0.0));
    v.swap(w);
  }
  return v;
}

Vec eval_features(const BasisSpec& spec, const double* point, const int* orders) {
  for (int a = 0; a < spec.dim; ++a) {
    if (orders[a] < 0 || orders[a] > kMaxDerivativeOrder)
      throw std::domain_error("eval_features: derivative order outside [0,4]");
  }
  if (spec.dim == 1) {
    const double L = spec.len_x;
    if (point[0] < 0.0 || point[0] > L)
      throw std::domain_error("eval_features: point outside domain");
    const double scale = std::pow(1.0 / L, orders[0]);
    return scale * bernstein_derivative(spec.deg_x, point[0] / L, orders[0]);
  }
  const double L = spec.len_x, H = spec.len_y;
  if (point[0] < 0.0 || point[0] > L || point[1] < 0.0 || point[1] > H)
    throw std::domain_error("eval_features: point outside domain");
  Vec fx = std::pow(1.0 / L, orders[0]) *
           bernstein_derivative(spec.deg_x, point[0] / L, orders[0]);
  Vec fy = std::pow(1.0 / H, orders[1]) *
           bernstein_derivative(spec.deg_y, point[1] / H, orders[1]);
  Vec out(spec.size());
  for (int i = 0; i <= spec.deg_x; ++i)
    for (int j = 0; j <= spec.deg_y; ++j) out[spec.flatten(i, j)] = fx[i] * fy[j];
  return out;
}

Vec eval_features_1d(const BasisSpec& spec, double x, int order) {
  return eval_features(spec, &x, &order);
}

Vec eval_features_2d(const BasisSpec& spec, double x, double y, int ox, int oy) {
  const double pt[2] = {x, y};
  const int ord[2] = {ox, oy};
  return eval_features(spec, pt, ord);
}

}  // namespace modalfit
