#pragma once

#include <optional>
#include <utility>

#include "mirrorprox/problems.hpp"
#include "mirrorprox/types.hpp"
#include "mirrorprox/vector_field.hpp"

namespace mirrorprox {

/// Unconstrained mirror-free proximal sub-problem: find z' with
///   F(z_b) + L (H(z') - H(z_a)) + m (H(z') - H(z_b)) = 0.
/// m = 0 gives the plain Prox_H, m > 0 the strongly monotone variant.
struct ProxSpec {
  VectorField field_f, field_h;
  double L = 1.0;
  double m = 0.0;
  Vec z_a, z_b;
  double tolerance = 1e-10;
  int max_iter = 100;
};

struct ProxResult {
  Vec z_prime;
  double residual_norm = 0.0;
  int iterations = 0;
  bool converged = false;
};

/// Damped Newton on the prox residual, Jacobian (L+m) grad H(z'), with step
/// halving on residual increase and a gradient-flow fallback when the Newton
/// system is near-singular.
ProxResult prox_generic(const ProxSpec& spec,
                        const std::optional<Vec>& initial = std::nullopt);

struct LambdaSolve {
  double lambda_star = 0.0;
  Vec z_prime;
  int newton_iters = 0;
  double bracket_lo = 0.0;
  double bracket_hi = 0.0;
  std::vector<double> residual_history;  // |g(lambda)| per iteration
};

/// Root of g(lambda) = lambda - c |(J + lambda I)^{-1} u|^2 on lambda >= 0:
/// bracket by doubling, then safeguarded Newton (bisection fallback when the
/// Newton step leaves the bracket).
LambdaSolve lambda_rootfind(const Mat& j_lin, const Vec& u, double c,
                            double tol, int max_doublings = 80);

/// Closed-form third-order Prox_H(z_k, z_k): shifted linear solve plus the
/// scalar lambda root-find. Post condition: the residual of the nonlinear
/// prox system at z' is at most tol.
std::pair<ProxResult, LambdaSolve> third_order_prox(const ThirdOrderModel& model,
                                                    double L, const Vec& z_k,
                                                    double tol);

/// Closed-form Prox_H^SM(z_k, z_half) for the third-order model.
std::pair<ProxResult, LambdaSolve> third_order_prox_sm(
    const ThirdOrderModel& model, double L, double m, const Vec& z_k,
    const Vec& z_half, double tol);

}  // namespace mirrorprox
