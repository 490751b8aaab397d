#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "hsgd/rng.hpp"
#include "hsgd/vector_ops.hpp"

namespace hsgd {

// A batch of distinct component indices, kept in ascending order so that
// batch sums are evaluated in a deterministic order.
using SampleBatch = std::vector<std::size_t>;

// Finite-sum objective f(x) = (1/n) * sum_i f_i(x) with per-component
// value/gradient access. Evaluation is pure and reentrant; gradient-call
// counting is the optimizer's job, not the objective's.
class FiniteSumObjective {
 public:
  virtual ~FiniteSumObjective() = default;

  virtual std::size_t component_count() const = 0;
  virtual std::size_t dimension() const = 0;

  // Per-component smoothness constant L (mean-square sense).
  virtual double smoothness() const = 0;

  // Optional a-priori bound on the gradient noise sigma.
  virtual std::optional<double> sigma_hint() const { return std::nullopt; }

  virtual double component_value(const ParamVector& x, std::size_t i) const = 0;

  // Writes grad_i f(x) into `grad` (resized to dimension()). Throws IndexError
  // for i >= n and DomainError for non-finite x.
  virtual void component_gradient(const ParamVector& x, std::size_t i,
                                  ParamVector& grad) const = 0;

  // acc += coeff * grad_i f(x). Default goes through component_gradient;
  // implementations may exploit sparsity.
  virtual void add_component_gradient(const ParamVector& x, std::size_t i, double coeff,
                                      ParamVector& acc) const;

  // (1/n) * sum_i grad_i f(x), accumulated in ascending component order.
  virtual void full_gradient(const ParamVector& x, ParamVector& grad) const;

  virtual double full_value(const ParamVector& x) const;

  ParamVector full_gradient(const ParamVector& x) const {
    ParamVector g;
    full_gradient(x, g);
    return g;
  }

  ParamVector component_gradient(const ParamVector& x, std::size_t i) const {
    ParamVector g;
    component_gradient(x, i, g);
    return g;
  }

 protected:
  // Shared precondition checks for component access.
  void check_component_args(const ParamVector& x, std::size_t i) const;
};

// sqrt of the Bessel-corrected mean squared deviation of sampled component
// gradients from the full gradient at x. Used to default the sigma hint when
// the user supplies none. Samples without replacement; deterministic per rng
// stream state.
double estimate_sigma(const FiniteSumObjective& obj, const ParamVector& x,
                      std::size_t sample_count, RngStream& rng);

}  // namespace hsgd
