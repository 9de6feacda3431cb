#include <doctest.h>

#include <cmath>

#include "mirrorprox/prox.hpp"

using namespace mirrorprox;

namespace {

// bisection oracle for scalar fixed points lambda = c / (j + lambda)^2
double scalar_lambda_oracle(double j, double c, double lo, double hi) {
  auto g = [&](double lam) { return lam - c / std::pow(j + lam, 2); };
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (g(mid) > 0.0 ? hi : lo) = mid;
  }
  return 0.5 * (lo + hi);
}

ThirdOrderModel random_eg2_model(int n, std::uint64_t seed,
                                 MirrorVariant variant,
                                 double kappa_min = 0.5) {
  Rng rng(seed);
  const VectorField phi = build_example_eg2(rng.normal_mat(n, n));
  Vec z_a;
  do {
    z_a = rng.normal_vec(2 * n);
  } while (kappa_minmax(z_a) < kappa_min);
  const double tau = 3.0, l3 = 72.0;
  return make_third_order_model(phi, z_a, 2.0 * tau * l3, tau, l3, variant);
}

}  // namespace

TEST_CASE("prox_generic closed forms") {
  SUBCASE("F = H = identity, L = 1: z' = z_a - z_b") {
    ProxSpec spec;
    spec.field_f = identity_field(3);
    spec.field_h = identity_field(3);
    spec.L = 1.0;
    Rng rng(1);
    spec.z_a = rng.normal_vec(3);
    spec.z_b = rng.normal_vec(3);
    const ProxResult res = prox_generic(spec);
    CHECK(res.converged);
    CHECK((res.z_prime - (spec.z_a - spec.z_b)).norm() <= 1e-12);
    CHECK(res.residual_norm <= 1e-12);
  }

  SUBCASE("F = z - c, H = identity, L = 2: z' = z_a - (z_b - c)/2") {
    Vec c(2);
    c << 0.3, -1.4;
    ProxSpec spec;
    spec.field_f = field_diff(identity_field(2), constant_field(c));
    spec.field_h = identity_field(2);
    spec.L = 2.0;
    spec.z_a = Vec::Zero(2);
    spec.z_a << 1.0, 2.0;
    spec.z_b = Vec::Zero(2);
    spec.z_b << -0.5, 0.25;
    const ProxResult res = prox_generic(spec);
    CHECK(res.converged);
    const Vec want = spec.z_a - (spec.z_b - c) / 2.0;
    CHECK((res.z_prime - want).norm() <= 1e-12);
  }
}

TEST_CASE("prox_generic on the quartic library pair") {
  SmoothExampleParams unit;
  unit.A = Mat::Zero(3, 3);
  unit.B = Mat::Zero(3, 3);
  unit.C = Mat::Identity(3, 3);
  unit.E = Mat::Identity(3, 3);
  unit.b = Vec::Zero(3);
  unit.d = Vec::Zero(3);
  const ProblemInstance inst = build_example_smooth(unit);

  Rng rng(7);
  for (int trial = 0; trial < 10; ++trial) {
    ProxSpec spec;
    spec.field_f = inst.field_f;
    spec.field_h = inst.field_h;
    spec.L = inst.L;
    spec.z_a = rng.uniform_vec(6, -1.0, 1.0);
    spec.z_b = spec.z_a;
    spec.tolerance = 1e-10;
    const ProxResult res = prox_generic(spec);
    CHECK(res.converged);
    CHECK(res.iterations <= 25);
    CHECK(res.residual_norm <= 1e-10);

    // strict monotonicity of H: the solution is unique across initial guesses
    for (int i = 0; i < 10; ++i) {
      const ProxResult other = prox_generic(spec, Vec(rng.uniform_vec(6, -2.0, 2.0)));
      CHECK(other.converged);
      CHECK((other.z_prime - res.z_prime).norm() <= 10.0 * spec.tolerance);
    }
  }
}

TEST_CASE("lambda_rootfind") {
  SUBCASE("zero right-hand side") {
    const LambdaSolve sol = lambda_rootfind(Mat::Identity(2, 2), Vec::Zero(2),
                                            1.0, 1e-14);
    CHECK(sol.lambda_star == 0.0);
    CHECK(sol.z_prime.norm() == 0.0);
  }

  SUBCASE("scalar fixed point lambda (1+lambda)^2 = 1") {
    Mat j(1, 1);
    j << 1.0;
    Vec u(1);
    u << -1.0;
    const LambdaSolve sol = lambda_rootfind(j, u, 1.0, 1e-14);
    const double oracle = scalar_lambda_oracle(1.0, 1.0, 0.0, 2.0);
    CHECK(oracle == doctest::Approx(0.465571231876768).epsilon(1e-10));
    CHECK(sol.lambda_star == doctest::Approx(oracle).epsilon(1e-12));
    CHECK(sol.z_prime[0] == doctest::Approx(1.0 / (1.0 + oracle)).epsilon(1e-12));
    // lambda* = c |z'|^2 at the fixed point
    CHECK(std::abs(sol.lambda_star - sol.z_prime.squaredNorm()) <= 1e-12);
    CHECK(sol.newton_iters <= 40);
  }

  SUBCASE("nearly singular linear part") {
    const double eps = 1e-6;
    Mat j(1, 1);
    j << eps;
    Vec u(1);
    u << 1.0;
    const LambdaSolve sol = lambda_rootfind(j, u, 1.0, 1e-14);
    const double oracle = scalar_lambda_oracle(eps, 1.0, 0.0, 2.0);
    CHECK(sol.lambda_star == doctest::Approx(oracle).epsilon(1e-12));
    // root of lambda (eps + lambda)^2 = 1 sits near 1 - 2 eps / 3
    CHECK(sol.lambda_star == doctest::Approx(1.0 - 2.0 * eps / 3.0).epsilon(1e-5));
  }

  SUBCASE("fixed-point residual decreases monotonically after bracketing") {
    const ThirdOrderModel model =
        random_eg2_model(2, 71, MirrorVariant::standard);
    const VectorField f = model_field_f(model);
    const VectorField h = model_field_h(model);
    Rng rng(72);
    const Vec z_k = rng.normal_vec(4);
    const Vec w = f.eval(z_k) - model.rel_smooth_L() * h.eval(z_k);
    const Vec u = w / (model.rel_smooth_L() * model.mirror_k1);
    const LambdaSolve sol = lambda_rootfind(
        model.mirror_linear, u, model.mirror_k2 / model.mirror_k1, 1e-14);
    for (std::size_t i = 1; i < sol.residual_history.size(); ++i)
      CHECK(sol.residual_history[i] < sol.residual_history[i - 1]);
    CHECK(sol.newton_iters <= 40);
  }
}

TEST_CASE("third_order_prox: zero right-hand side at the origin model") {
  Rng rng(15);
  const VectorField phi = build_example_eg2(rng.normal_mat(2, 2));
  const ThirdOrderModel model = make_third_order_model(
      phi, Vec(Vec::Zero(4)), 8.0, 3.0, 1.0, MirrorVariant::standard);
  // z_k = 0 gives F(0) = Phi(0) = 0 and H(0) = 0, so U = 0 and z' = 0
  auto [res, lam] = third_order_prox(model, model.rel_smooth_L(), Vec(Vec::Zero(4)),
                                     1e-10);
  CHECK(lam.lambda_star == 0.0);
  CHECK(res.z_prime.norm() == 0.0);
  CHECK(res.converged);
}

TEST_CASE("third_order_prox agrees with the generic Newton prox") {
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    const int n = 1 + static_cast<int>(seed % 3);  // d in {2, 4, 6}
    const ThirdOrderModel model =
        random_eg2_model(n, 100 + seed, MirrorVariant::standard);
    const VectorField f = model_field_f(model);
    const VectorField h = model_field_h(model);
    Rng rng(200 + seed);
    const Vec z_k = 0.5 * rng.normal_vec(2 * n);
    const double tol = 1e-11;

    auto [closed, lam] = third_order_prox(model, model.rel_smooth_L(), z_k, 1e-9);
    CHECK(closed.residual_norm <= 1e-9);
    CHECK(lam.newton_iters <= 30);
    // shifted matrix stays uniformly monotone: sym min eig >= lambda
    const Mat shifted = model.mirror_linear +
                        lam.lambda_star * Mat::Identity(2 * n, 2 * n);
    CHECK(symmetric_min_eig(shifted) >= lam.lambda_star - 1e-9);

    ProxSpec spec;
    spec.field_f = f;
    spec.field_h = h;
    spec.L = model.rel_smooth_L();
    spec.z_a = z_k;
    spec.z_b = z_k;
    spec.tolerance = tol;
    const ProxResult newton = prox_generic(spec);
    CHECK(newton.converged);
    CHECK((closed.z_prime - newton.z_prime).norm() <= 10.0 * tol);
  }
}

TEST_CASE("third_order_prox_sm") {
  const ThirdOrderModel model = random_eg2_model(2, 7, MirrorVariant::standard);
  const VectorField f = model_field_f(model);
  const VectorField h = model_field_h(model);
  const double L = model.rel_smooth_L(), m = model.rel_strong_m();
  Rng rng(7);
  const Vec z_k = 0.4 * rng.normal_vec(4);
  const Vec z_half = 0.4 * rng.normal_vec(4);

  SUBCASE("zero right-hand side") {
    const ThirdOrderModel origin = make_third_order_model(
        build_example_eg2(Mat::Zero(2, 2)), Vec(Vec::Zero(4)), 8.0, 3.0, 1.0,
        MirrorVariant::standard);
    auto [res, lam] = third_order_prox_sm(origin, 2.0, 1.0, Vec(Vec::Zero(4)),
                                          Vec(Vec::Zero(4)), 1e-10);
    CHECK(res.z_prime.norm() == 0.0);
  }

  SUBCASE("post-hoc nonlinear residual meets the contract") {
    auto [res, lam] = third_order_prox_sm(model, L, m, z_k, z_half, 1e-9);
    CHECK(res.converged);
    CHECK(res.residual_norm <= 1e-9);
    const Vec check = f.eval(z_half) + L * (h.eval(res.z_prime) - h.eval(z_k)) +
                      m * (h.eval(res.z_prime) - h.eval(z_half));
    CHECK(check.norm() == doctest::Approx(res.residual_norm));
  }

  SUBCASE("m = 0 reduces to the plain prox at z_b = z_half") {
    auto [sm, lam_sm] = third_order_prox_sm(model, L, 0.0, z_k, z_half, 1e-9);
    // both routes satisfy the same m = 0 residual contract
    const Vec r = f.eval(z_half) + L * (h.eval(sm.z_prime) - h.eval(z_k));
    CHECK(r.norm() <= 1e-9);
  }
}
