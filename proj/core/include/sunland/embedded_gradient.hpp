#pragma once

// Embedded gradient vector field and restricted Hessian for a cost G on a
// constraint submanifold {F_1 = c_1, ..., F_k = c_k} of an ambient space with
// inner product g.
//
//   dG(s)  = grad G(s) - sum_i sigma_i(s) grad F_i(s)
//   Hess G|_S(v, v) = Hess G(v, v) - sum_i sigma_i Hess F_i(v, v),  v tangent
//
// sigma solves Gram(F, F) sigma = (g(grad G, grad F_i))_i, which is the
// Gram-determinant ratio for sigma_i written as a linear system (Cramer).
//
// The engine is agnostic of the vector representation: `Vector` may be any
// Eigen dense type (real vectors, complex matrices, ...) that supports
// `a - s * b` with real s. The caller supplies the inner product.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <sstream>
#include <vector>

#include <Eigen/Dense>

#include "sunland/errors.hpp"

namespace sunland::embedded {

template <class Vector>
using InnerProduct = std::function<double(const Vector&, const Vector&)>;

template <class Vector>
struct Constraint {
  /// Ambient gradient of F_i at a point.
  std::function<Vector(const Vector& point)> gradient;
  /// Ambient Hessian quadratic form Hess F_i(point)(v, v). May be empty when
  /// only gradients are needed.
  std::function<double(const Vector& point, const Vector& v)> hessian_quadratic;
};

template <class Vector>
using ConstraintSystem = std::vector<Constraint<Vector>>;

using LagrangeMultipliers = Eigen::VectorXd;

/// Largest accepted condition number of the constraint Gram matrix.
inline constexpr double kMaxGramCondition = 1e12;

namespace detail {

template <class Vector>
std::vector<Vector> constraint_gradients(const Vector& point,
                                         const ConstraintSystem<Vector>& constraints) {
  std::vector<Vector> grads;
  grads.reserve(constraints.size());
  for (const auto& c : constraints) {
    grads.push_back(c.gradient(point));
  }
  return grads;
}

template <class Vector>
LagrangeMultipliers solve_multipliers(const Vector& grad_g, const std::vector<Vector>& grads,
                                      const InnerProduct<Vector>& metric) {
  const auto k = static_cast<Eigen::Index>(grads.size());
  Eigen::MatrixXd gram(k, k);
  Eigen::VectorXd rhs(k);
  for (Eigen::Index i = 0; i < k; ++i) {
    for (Eigen::Index j = i; j < k; ++j) {
      gram(i, j) = metric(grads[i], grads[j]);
      gram(j, i) = gram(i, j);
    }
    rhs(i) = metric(grad_g, grads[i]);
  }
  if (k == 0) {
    return rhs;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> spectrum(gram, Eigen::EigenvaluesOnly);
  const double smallest = spectrum.eigenvalues().minCoeff();
  const double largest = spectrum.eigenvalues().maxCoeff();
  if (!(smallest > 0.0) || largest / smallest > kMaxGramCondition) {
    std::ostringstream msg;
    msg << "not a regular point: constraint Gram matrix has eigenvalues in [" << smallest << ", "
        << largest << "]";
    throw IrregularPointError(msg.str());
  }
  return gram.ldlt().solve(rhs);
}

}  // namespace detail

template <class Vector>
LagrangeMultipliers lagrange_multipliers(const Vector& point, const Vector& grad_g,
                                         const ConstraintSystem<Vector>& constraints,
                                         const InnerProduct<Vector>& metric) {
  return detail::solve_multipliers(grad_g, detail::constraint_gradients(point, constraints),
                                   metric);
}

template <class Vector>
Vector embedded_gradient(const Vector& point, const Vector& grad_g,
                         const ConstraintSystem<Vector>& constraints,
                         const InnerProduct<Vector>& metric) {
  const auto grads = detail::constraint_gradients(point, constraints);
  const LagrangeMultipliers sigma = detail::solve_multipliers(grad_g, grads, metric);
  Vector result = grad_g;
  for (std::size_t i = 0; i < grads.size(); ++i) {
    result = (result - sigma(static_cast<Eigen::Index>(i)) * grads[i]).eval();
  }
  return result;
}

/// Hess G(v, v) - sum_i sigma_i Hess F_i(v, v) for a tangent vector v.
/// Throws PreconditionError when v is not tangent to every constraint
/// (|g(v, grad F_i)| > 1e-8 ||v|| ||grad F_i||) or when a needed constraint
/// Hessian is missing.
template <class Vector>
double restricted_hessian_quadratic(const Vector& point,
                                    const std::function<double(const Vector&)>& hess_g,
                                    const ConstraintSystem<Vector>& constraints,
                                    const LagrangeMultipliers& sigma, const Vector& tangent,
                                    const InnerProduct<Vector>& metric) {
  if (sigma.size() != static_cast<Eigen::Index>(constraints.size())) {
    throw DimensionError("restricted_hessian_quadratic: sigma has wrong length");
  }
  const double tangent_norm = std::sqrt(std::max(0.0, metric(tangent, tangent)));
  double value = hess_g(tangent);
  for (std::size_t i = 0; i < constraints.size(); ++i) {
    const Vector grad_f = constraints[i].gradient(point);
    const double grad_norm = std::sqrt(std::max(0.0, metric(grad_f, grad_f)));
    const double pairing = metric(tangent, grad_f);
    if (std::abs(pairing) > 1e-8 * tangent_norm * grad_norm) {
      std::ostringstream msg;
      msg << "restricted_hessian_quadratic: vector is not tangent to constraint " << i
          << " (pairing " << pairing << ")";
      throw PreconditionError(msg.str());
    }
    const double s = sigma(static_cast<Eigen::Index>(i));
    if (!constraints[i].hessian_quadratic) {
      if (s != 0.0) {
        throw PreconditionError("restricted_hessian_quadratic: constraint Hessian not supplied");
      }
      continue;
    }
    value -= s * constraints[i].hessian_quadratic(point, tangent);
  }
  return value;
}

}  // namespace sunland::embedded
