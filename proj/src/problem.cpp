#include "hsgd/problem.hpp"

#include <cmath>
#include <string>

#include "hsgd/errors.hpp"

namespace hsgd {

void FiniteSumObjective::check_component_args(const ParamVector& x, std::size_t i) const {
  if (i >= component_count()) {
    throw IndexError("component index " + std::to_string(i) + " out of range [0, " +
                     std::to_string(component_count()) + ")");
  }
  if (x.size() != dimension()) {
    throw ParameterError("iterate has dimension " + std::to_string(x.size()) + ", expected " +
                         std::to_string(dimension()));
  }
  if (!all_finite(x)) throw DomainError("iterate contains non-finite entries");
}

void FiniteSumObjective::add_component_gradient(const ParamVector& x, std::size_t i, double coeff,
                                                ParamVector& acc) const {
  ParamVector g;
  component_gradient(x, i, g);
  axpy(coeff, g, acc);
}

void FiniteSumObjective::full_gradient(const ParamVector& x, ParamVector& grad) const {
  const std::size_t n = component_count();
  grad.assign(dimension(), 0.0);
  ParamVector g;
  for (std::size_t i = 0; i < n; ++i) {
    component_gradient(x, i, g);
    axpy(1.0, g, grad);
  }
  scale(1.0 / static_cast<double>(n), grad);
  if (!all_finite(grad)) throw DomainError("full gradient is non-finite");
}

double FiniteSumObjective::full_value(const ParamVector& x) const {
  const std::size_t n = component_count();
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += component_value(x, i);
  return s / static_cast<double>(n);
}

double estimate_sigma(const FiniteSumObjective& obj, const ParamVector& x,
                      std::size_t sample_count, RngStream& rng) {
  if (sample_count < 2) throw ParameterError("estimate_sigma: sample_count must be >= 2");
  const std::size_t n = obj.component_count();
  const std::size_t k = std::min(sample_count, n);
  if (k < 2) throw ParameterError("estimate_sigma: need at least 2 components");

  ParamVector mean;
  obj.full_gradient(x, mean);

  const auto batch = rng.sample_without_replacement(n, k);
  double ss = 0.0;
  ParamVector g;
  for (std::size_t idx : batch) {
    obj.component_gradient(x, idx, g);
    ss += squared_distance(g, mean);
  }
  return std::sqrt(ss / static_cast<double>(k - 1));
}

}  // namespace hsgd
