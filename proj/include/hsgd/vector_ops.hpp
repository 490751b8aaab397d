#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

namespace hsgd {

// Dense iterate x in R^p. Length is fixed by the objective's dimension.
using ParamVector = std::vector<double>;

inline double dot(const ParamVector& a, const ParamVector& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline double squared_norm(const ParamVector& a) { return dot(a, a); }

inline double norm(const ParamVector& a) { return std::sqrt(squared_norm(a)); }

// y += alpha * x
inline void axpy(double alpha, const ParamVector& x, ParamVector& y) {
  for (std::size_t i = 0; i < x.size(); ++i) y[i] += alpha * x[i];
}

inline void scale(double alpha, ParamVector& x) {
  for (double& v : x) v *= alpha;
}

inline void set_zero(ParamVector& x) { x.assign(x.size(), 0.0); }

inline double squared_distance(const ParamVector& a, const ParamVector& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return s;
}

inline bool all_finite(const ParamVector& x) {
  for (double v : x) {
    if (!std::isfinite(v)) return false;
  }
  return true;
}

}  // namespace hsgd
