#pragma once

#include <cmath>
#include <utility>

#include "hsgd/dataset.hpp"
#include "hsgd/problem.hpp"
#include "hsgd/vector_ops.hpp"

namespace hsgd {

enum class LossFamily {
  kNcvxLogistic,  // log(1+exp(-a'x)) + lambda * sum_j x_j^2/(1+x_j^2)
  kEll1,          // (1 - sigmoid(tau*s))^2 with Tikhonov regularizer
  kEll2,          // log(1+exp(tau*s)) - log(1+exp(-tau*s-1)) with Tikhonov regularizer
};

struct LossSpec {
  LossFamily family = LossFamily::kNcvxLogistic;
  double lambda = 0.0;
};

// Overflow-safe log(1 + exp(z)).
inline double softplus(double z) {
  return std::max(z, 0.0) + std::log1p(std::exp(-std::fabs(z)));
}

// Overflow-safe logistic sigmoid.
inline double sigmoid(double z) {
  if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

// Nonconvex-regularized logistic objective, one component.
double ncvx_logistic_value(const SparseRow& row, const ParamVector& x, double lambda);
void ncvx_logistic_grad(const SparseRow& row, const ParamVector& x, double lambda,
                        ParamVector& grad);

struct ScalarLoss {
  double value;
  double dtau;  // derivative with respect to the margin tau
};

// Scalar nonconvex losses for binary classification; s must be -1 or +1.
ScalarLoss ell_value_grad(LossFamily family, double tau, double s);

// ell(a'x, b) + (lambda/2)*||x||^2 and its gradient.
std::pair<double, ParamVector> classifier_value_grad(const LossSpec& spec, const SparseRow& row,
                                                     const ParamVector& x);

// Per-component smoothness constant for the given loss over the data:
//   NcvxLogistic: max_i ||a_i||^2 / 4 + 2*lambda
//   Ell1:         0.15405 * max_i ||a_i||^2 + lambda
//   Ell2:         0.25    * max_i ||a_i||^2 + lambda
double lipschitz_constant(const LossSpec& spec, const std::vector<SparseRow>& data);

// FiniteSumObjective over a dataset with one of the three loss families.
class LossObjective final : public FiniteSumObjective {
 public:
  LossObjective(Dataset data, LossSpec spec);

  std::size_t component_count() const override { return data_.rows.size(); }
  std::size_t dimension() const override { return data_.dimension; }
  double smoothness() const override { return lipschitz_; }

  double component_value(const ParamVector& x, std::size_t i) const override;
  void component_gradient(const ParamVector& x, std::size_t i, ParamVector& grad) const override;
  void add_component_gradient(const ParamVector& x, std::size_t i, double coeff,
                              ParamVector& acc) const override;
  void full_gradient(const ParamVector& x, ParamVector& grad) const override;

  const Dataset& data() const { return data_; }
  const LossSpec& spec() const { return spec_; }

 private:
  Dataset data_;
  LossSpec spec_;
  double lipschitz_;
};

}  // namespace hsgd
