#include "mirrorprox/prox.hpp"

#include <Eigen/Dense>
#include <cmath>

namespace mirrorprox {

ProxResult prox_generic(const ProxSpec& spec, const std::optional<Vec>& initial) {
  require(spec.L > 0.0, "prox_generic: L must be positive");
  require(spec.m >= 0.0, "prox_generic: m must be nonnegative");
  require(spec.tolerance > 0.0, "prox_generic: tolerance must be positive");
  require(spec.z_a.size() == spec.field_f.dim &&
              spec.z_b.size() == spec.field_f.dim,
          "prox_generic: dimension mismatch");

  const Vec f_zb = eval_field(spec.field_f, spec.z_b);
  const Vec h_za = eval_field(spec.field_h, spec.z_a);
  const Vec h_zb = eval_field(spec.field_h, spec.z_b);
  const double lm = spec.L + spec.m;

  const auto residual = [&](const Vec& z) -> Vec {
    const Vec hz = spec.field_h.eval(z);
    return f_zb + spec.L * (hz - h_za) + spec.m * (hz - h_zb);
  };

  ProxResult res;
  res.z_prime = initial.value_or(spec.z_b);
  Vec r = residual(res.z_prime);
  double nr = r.norm();

  for (int it = 0; it < spec.max_iter; ++it) {
    if (nr <= spec.tolerance) {
      res.residual_norm = nr;
      res.iterations = it;
      res.converged = true;
      return res;
    }
    const Mat j = lm * jacobian(spec.field_h, res.z_prime);
    Vec dz = j.partialPivLu().solve(-r);
    if (!all_finite(dz)) dz = -r / lm;  // gradient-flow fallback

    double t = 1.0;
    Vec z_next;
    Vec r_next;
    double nr_next = std::numeric_limits<double>::infinity();
    for (int halvings = 0; halvings <= 30; ++halvings) {
      z_next = res.z_prime + t * dz;
      if (all_finite(z_next)) {
        r_next = residual(z_next);
        nr_next = r_next.norm();
        if (nr_next < nr) break;
      }
      t *= 0.5;
    }
    if (!(nr_next < nr)) {
      // no progress along Newton; try the plain gradient-flow step
      z_next = res.z_prime - r / lm;
      r_next = residual(z_next);
      nr_next = r_next.norm();
      if (!(nr_next < nr)) break;
    }
    res.z_prime = z_next;
    r = r_next;
    nr = nr_next;
    res.iterations = it + 1;
  }
  res.residual_norm = nr;
  res.converged = (nr <= spec.tolerance);
  return res;
}

LambdaSolve lambda_rootfind(const Mat& j_lin, const Vec& u, double c,
                            double tol, int max_doublings) {
  require(c > 0.0, "lambda_rootfind: c must be positive");
  require(tol > 0.0, "lambda_rootfind: tol must be positive");
  const int d = static_cast<int>(u.size());
  const Mat eye = Mat::Identity(d, d);

  LambdaSolve out;
  if (u.norm() == 0.0) {
    out.z_prime = Vec::Zero(d);
    return out;
  }

  const auto solve_at = [&](double lam) -> Vec {
    return (j_lin + lam * eye).partialPivLu().solve(u);
  };
  const auto g_at = [&](double lam) -> double {
    const Vec w = solve_at(lam);
    if (!all_finite(w)) return -std::numeric_limits<double>::infinity();
    return lam - c * w.squaredNorm();
  };

  // g(0) <= 0 and g is increasing for monotone j_lin; bracket by doubling.
  double lo = 0.0, hi = 1.0;
  int doublings = 0;
  while (g_at(hi) < 0.0) {
    lo = hi;
    hi *= 2.0;
    if (++doublings > max_doublings)
      throw std::runtime_error("lambda_rootfind: bracketing failed");
  }
  out.bracket_lo = lo;
  out.bracket_hi = hi;

  double lam = 0.5 * (lo + hi);
  for (int it = 0; it < 200; ++it) {
    const Mat shifted = j_lin + lam * eye;
    const auto lu = shifted.partialPivLu();
    const Vec w = lu.solve(u);
    const double g = lam - c * w.squaredNorm();
    out.newton_iters = it;
    out.lambda_star = lam;
    out.z_prime = -w;
    out.residual_history.push_back(std::abs(g));
    if (std::abs(g) <= tol * std::max(1.0, lam)) return out;
    if (g > 0.0)
      hi = lam;
    else
      lo = lam;
    // g'(lambda) = 1 + 2 c w^T (J + lambda I)^{-1} w
    const Vec dw = lu.solve(w);
    const double gp = 1.0 + 2.0 * c * w.dot(dw);
    double lam_next = (gp > 0.0) ? lam - g / gp : lam;
    if (!(lam_next > lo && lam_next < hi)) lam_next = 0.5 * (lo + hi);
    lam = lam_next;
  }
  throw std::runtime_error("lambda_rootfind: no convergence");
}

namespace {

std::pair<ProxResult, LambdaSolve> third_order_solve(const ThirdOrderModel& model,
                                                     const Vec& rhs_w,
                                                     double scale, double tol) {
  // scale * (k1 Lin z' + k2 |z'|^2 z') = -rhs_w
  const double k1 = model.mirror_k1, k2 = model.mirror_k2;
  const Vec u = rhs_w / (scale * k1);
  const double c = k2 / k1;
  LambdaSolve lam = lambda_rootfind(model.mirror_linear, u, c, 1e-14);

  ProxResult res;
  res.z_prime = lam.z_prime;
  res.iterations = lam.newton_iters;
  return {res, lam};
}

}  // namespace

std::pair<ProxResult, LambdaSolve> third_order_prox(const ThirdOrderModel& model,
                                                    double L, const Vec& z_k,
                                                    double tol) {
  require(L > 0.0, "third_order_prox: L must be positive");
  const VectorField f = model_field_f(model);
  const VectorField h = model_field_h(model);
  const Vec w = eval_field(f, z_k) - L * eval_field(h, z_k);
  auto [res, lam] = third_order_solve(model, w, L, tol);
  const Vec residual =
      f.eval(z_k) + L * (h.eval(res.z_prime) - h.eval(z_k));
  res.residual_norm = residual.norm();
  res.converged = res.residual_norm <= tol;
  if (!res.converged)
    throw std::runtime_error(
        "third_order_prox: residual above tol (model assembly inconsistency)");
  return {res, lam};
}

std::pair<ProxResult, LambdaSolve> third_order_prox_sm(
    const ThirdOrderModel& model, double L, double m, const Vec& z_k,
    const Vec& z_half, double tol) {
  require(L > 0.0 && m >= 0.0, "third_order_prox_sm: bad L or m");
  const VectorField f = model_field_f(model);
  const VectorField h = model_field_h(model);
  const Vec w = eval_field(f, z_half) - L * eval_field(h, z_k) -
                m * eval_field(h, z_half);
  auto [res, lam] = third_order_solve(model, w, L + m, tol);
  const Vec hz = h.eval(res.z_prime);
  const Vec residual =
      f.eval(z_half) + L * (hz - h.eval(z_k)) + m * (hz - h.eval(z_half));
  res.residual_norm = residual.norm();
  res.converged = res.residual_norm <= tol;
  if (!res.converged)
    throw std::runtime_error(
        "third_order_prox_sm: residual above tol (model assembly inconsistency)");
  return {res, lam};
}

}  // namespace mirrorprox
