#include "hsgd/losses.hpp"

#include <algorithm>

#include "hsgd/errors.hpp"

namespace hsgd {

namespace {

// d/dx [ x^2/(1+x^2) ] = 2x/(1+x^2)^2
inline double ncvx_reg_deriv(double x) {
  const double d = 1.0 + x * x;
  return 2.0 * x / (d * d);
}

inline double ncvx_reg_value(double x) {
  const double x2 = x * x;
  return x2 / (1.0 + x2);
}

}  // namespace

double ncvx_logistic_value(const SparseRow& row, const ParamVector& x, double lambda) {
  const double margin = row.dot_dense(x);
  double reg = 0.0;
  for (double xj : x) reg += ncvx_reg_value(xj);
  return softplus(-margin) + lambda * reg;
}

void ncvx_logistic_grad(const SparseRow& row, const ParamVector& x, double lambda,
                        ParamVector& grad) {
  grad.assign(x.size(), 0.0);
  const double margin = row.dot_dense(x);
  const double coeff = -sigmoid(-margin);
  for (std::size_t k = 0; k < row.indices.size(); ++k) {
    grad[row.indices[k]] += coeff * row.values[k];
  }
  if (lambda != 0.0) {
    for (std::size_t j = 0; j < x.size(); ++j) grad[j] += lambda * ncvx_reg_deriv(x[j]);
  }
}

ScalarLoss ell_value_grad(LossFamily family, double tau, double s) {
  const double u = tau * s;
  switch (family) {
    case LossFamily::kEll1: {
      const double sm = sigmoid(-u);  // 1 - sigmoid(u)
      const double sp = sigmoid(u);
      return {sm * sm, -2.0 * s * sp * sm * sm};
    }
    case LossFamily::kEll2: {
      const double value = softplus(u) - softplus(-u - 1.0);
      const double dtau = s * (sigmoid(u) + sigmoid(-u - 1.0));
      return {value, dtau};
    }
    default:
      throw ParameterError("ell_value_grad: family must be Ell1 or Ell2");
  }
}

std::pair<double, ParamVector> classifier_value_grad(const LossSpec& spec, const SparseRow& row,
                                                     const ParamVector& x) {
  const double tau = row.dot_dense(x);
  const ScalarLoss ell = ell_value_grad(spec.family, tau, row.label);
  ParamVector grad(x.size(), 0.0);
  for (std::size_t k = 0; k < row.indices.size(); ++k) {
    grad[row.indices[k]] += ell.dtau * row.values[k];
  }
  double value = ell.value;
  if (spec.lambda != 0.0) {
    value += 0.5 * spec.lambda * squared_norm(x);
    axpy(spec.lambda, x, grad);
  }
  return {value, std::move(grad)};
}

double lipschitz_constant(const LossSpec& spec, const std::vector<SparseRow>& data) {
  if (data.empty()) throw ParameterError("lipschitz_constant: empty dataset");
  double max_sq = 0.0;
  for (const SparseRow& row : data) max_sq = std::max(max_sq, row.squared_norm());
  switch (spec.family) {
    case LossFamily::kNcvxLogistic:
      return max_sq / 4.0 + 2.0 * spec.lambda;
    case LossFamily::kEll1:
      // 0.15405 ~ sup |ell1''|
      return 0.15405 * max_sq + spec.lambda;
    case LossFamily::kEll2:
      // |d^2/dtau^2 log(1+e^tau)| <= 1/4 bounds both softplus terms
      return 0.25 * max_sq + spec.lambda;
  }
  throw ParameterError("lipschitz_constant: unknown loss family");
}

LossObjective::LossObjective(Dataset data, LossSpec spec)
    : data_(std::move(data)), spec_(spec), lipschitz_(lipschitz_constant(spec, data_.rows)) {
  if (spec_.lambda < 0.0) throw ParameterError("LossObjective: lambda must be >= 0");
  if (data_.dimension == 0) throw ParameterError("LossObjective: dataset has dimension 0");
}

double LossObjective::component_value(const ParamVector& x, std::size_t i) const {
  check_component_args(x, i);
  const SparseRow& row = data_.rows[i];
  if (spec_.family == LossFamily::kNcvxLogistic) {
    return ncvx_logistic_value(row, x, spec_.lambda);
  }
  const double tau = row.dot_dense(x);
  double value = ell_value_grad(spec_.family, tau, row.label).value;
  if (spec_.lambda != 0.0) value += 0.5 * spec_.lambda * squared_norm(x);
  return value;
}

void LossObjective::component_gradient(const ParamVector& x, std::size_t i,
                                       ParamVector& grad) const {
  check_component_args(x, i);
  const SparseRow& row = data_.rows[i];
  if (spec_.family == LossFamily::kNcvxLogistic) {
    ncvx_logistic_grad(row, x, spec_.lambda, grad);
    return;
  }
  grad.assign(x.size(), 0.0);
  const double tau = row.dot_dense(x);
  const ScalarLoss ell = ell_value_grad(spec_.family, tau, row.label);
  for (std::size_t k = 0; k < row.indices.size(); ++k) {
    grad[row.indices[k]] += ell.dtau * row.values[k];
  }
  if (spec_.lambda != 0.0) axpy(spec_.lambda, x, grad);
}

void LossObjective::add_component_gradient(const ParamVector& x, std::size_t i, double coeff,
                                           ParamVector& acc) const {
  check_component_args(x, i);
  const SparseRow& row = data_.rows[i];
  const double tau = row.dot_dense(x);
  double dtau;
  if (spec_.family == LossFamily::kNcvxLogistic) {
    dtau = -sigmoid(-tau);
  } else {
    dtau = ell_value_grad(spec_.family, tau, row.label).dtau;
  }
  for (std::size_t k = 0; k < row.indices.size(); ++k) {
    acc[row.indices[k]] += coeff * dtau * row.values[k];
  }
  if (spec_.lambda == 0.0) return;
  if (spec_.family == LossFamily::kNcvxLogistic) {
    for (std::size_t j = 0; j < x.size(); ++j) {
      acc[j] += coeff * spec_.lambda * ncvx_reg_deriv(x[j]);
    }
  } else {
    axpy(coeff * spec_.lambda, x, acc);
  }
}

void LossObjective::full_gradient(const ParamVector& x, ParamVector& grad) const {
  check_component_args(x, 0);
  const std::size_t n = data_.rows.size();
  grad.assign(x.size(), 0.0);
  // Data terms are row-sparse; the shared regularizer gradient is added once.
  for (std::size_t i = 0; i < n; ++i) {
    const SparseRow& row = data_.rows[i];
    const double tau = row.dot_dense(x);
    double dtau;
    if (spec_.family == LossFamily::kNcvxLogistic) {
      dtau = -sigmoid(-tau);
    } else {
      dtau = ell_value_grad(spec_.family, tau, row.label).dtau;
    }
    for (std::size_t k = 0; k < row.indices.size(); ++k) {
      grad[row.indices[k]] += dtau * row.values[k];
    }
  }
  scale(1.0 / static_cast<double>(n), grad);
  if (spec_.lambda != 0.0) {
    if (spec_.family == LossFamily::kNcvxLogistic) {
      for (std::size_t j = 0; j < x.size(); ++j) grad[j] += spec_.lambda * ncvx_reg_deriv(x[j]);
    } else {
      axpy(spec_.lambda, x, grad);
    }
  }
  if (!all_finite(grad)) throw DomainError("full gradient is non-finite");
}

}  // namespace hsgd
