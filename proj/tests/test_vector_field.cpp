#include <doctest.h>

#include "mirrorprox/problems.hpp"
#include "mirrorprox/rng.hpp"
#include "mirrorprox/vector_field.hpp"

using namespace mirrorprox;

namespace {

Vec v2(double a, double b) {
  Vec v(2);
  v << a, b;
  return v;
}

double max_rel_entry_err(const Mat& got, const Mat& want) {
  double worst = 0.0;
  for (int i = 0; i < got.rows(); ++i)
    for (int j = 0; j < got.cols(); ++j) {
      const double scale = std::max(1.0, std::abs(want(i, j)));
      worst = std::max(worst, std::abs(got(i, j) - want(i, j)) / scale);
    }
  return worst;
}

}  // namespace

TEST_CASE("eval_field basics") {
  CHECK(eval_field(identity_field(2), v2(1, 2)) == v2(1, 2));
  CHECK(eval_field(rotation_field_2d(), v2(1, 0)) == v2(0, -1));
  CHECK(eval_field(d4_gradient_field(2), v2(1, 1)) == v2(2, 2));

  CHECK_THROWS_AS(eval_field(identity_field(3), v2(1, 2)), std::invalid_argument);
  CHECK_THROWS_AS(identity_field(0), std::invalid_argument);
}

TEST_CASE("jacobian: analytic and finite-difference paths") {
  Mat rot(2, 2);
  rot << 0, 1, -1, 0;
  CHECK(jacobian(rotation_field_2d(), v2(0.3, -0.7)) == rot);

  // d4 gradient at (1,0): 2hh^T + |h|^2 I = [[3,0],[0,1]]
  const Mat j = jacobian(d4_gradient_field(2), v2(1, 0));
  Mat want(2, 2);
  want << 3, 0, 0, 1;
  CHECK((j - want).norm() == doctest::Approx(0.0).epsilon(1e-12));

  // finite differences agree with the analytic form
  const Mat jfd = jacobian_fd(d4_gradient_field(2), v2(1, 0), 1e-5);
  CHECK(max_rel_entry_err(jfd, want) <= 1e-6);

  // linear field: central differences are exact for any step
  Mat m(3, 3);
  m << 1, 2, 0, -1, 0.5, 3, 0, 0, 2;
  Vec z(3);
  z << 0.2, -1.1, 0.4;
  CHECK((jacobian_fd(linear_field(m), z, 0.37) - m).norm() < 1e-12);
  CHECK(jacobian_fd(constant_field(z), z, 0.1).norm() < 1e-14);
}

TEST_CASE("jacobian of the quartic saddle operator matches finite differences") {
  Rng rng(7);
  const Mat a = rng.normal_mat(2, 2);
  const VectorField phi = build_example_eg2(a);
  for (int i = 0; i < 20; ++i) {
    const Vec z = rng.uniform_vec(4, -2.0, 2.0);
    const Mat ja = jacobian(phi, z);
    const Mat jf = jacobian_fd(phi, z, 1e-5);
    CHECK(max_rel_entry_err(jf, ja) <= 1e-6);
  }
}

TEST_CASE("second_directional") {
  Mat m(2, 2);
  m << 2, 1, 0, -1;
  CHECK(second_directional(linear_field(m), v2(1, 2), v2(3, -1)).norm() == 0.0);

  Mat a = Mat::Zero(2, 2);
  a(0, 1) = 1.0;
  const VectorField phi = build_example_eg2(a);

  // all cubic terms vanish at the origin
  Vec z0 = Vec::Zero(4);
  CHECK(second_directional(phi, z0, Vec::Ones(4)).norm() < 1e-12);

  // x = e1, h = (e1, 0): x-block value is 24 e1
  Vec z = Vec::Zero(4), h = Vec::Zero(4);
  z[0] = 1.0;
  h[0] = 1.0;
  Vec want = Vec::Zero(4);
  want[0] = 24.0;
  CHECK((second_directional(phi, z, h) - want).norm() < 1e-10);

  // finite-difference fallback agrees with the analytic form
  VectorField no_analytic(phi.dim, phi.eval, phi.jac);
  Rng rng(3);
  for (int i = 0; i < 10; ++i) {
    const Vec zz = rng.uniform_vec(4, -2.0, 2.0);
    const Vec hh = rng.uniform_vec(4, -1.0, 1.0);
    const Vec s1 = second_directional(phi, zz, hh);
    const Vec s2 = second_directional(no_analytic, zz, hh);
    CHECK((s1 - s2).norm() / std::max(1.0, s1.norm()) <= 1e-5);
  }
}

TEST_CASE("second_directional is homogeneous of degree 2 in h") {
  Rng rng(11);
  for (const auto& lf : library_fields()) {
    const int d = lf.field.dim;
    for (int i = 0; i < 10; ++i) {
      const Vec z = rng.uniform_vec(d, -2.0, 2.0);
      const Vec h = rng.uniform_vec(d, -1.0, 1.0);
      const Vec s1 = second_directional(lf.field, z, h);
      const Vec s2 = second_directional(lf.field, z, Vec(2.0 * h));
      CHECK((s2 - 4.0 * s1).norm() <= 1e-8 * std::max(1.0, s2.norm()));
    }
  }
}

TEST_CASE("symmetric_min_eig") {
  Mat rot(2, 2);
  rot << 0, 1, -1, 0;
  CHECK(symmetric_min_eig(rot) == doctest::Approx(0.0));
  CHECK(symmetric_min_eig(Mat::Identity(3, 3)) == doctest::Approx(1.0));
  Mat d(2, 2);
  d << 3, 0, 0, 1;
  CHECK(symmetric_min_eig(d) == doctest::Approx(1.0));
}

TEST_CASE("build_minmax_field") {
  MinMaxSplit split{1, 1};
  // f(x,y) = x y
  auto fxy = build_minmax_field(
      [](const Vec& x, const Vec& y) { return y; },
      [](const Vec& x, const Vec& y) { return x; }, split);
  CHECK(eval_field(fxy, v2(1, 0)) == v2(0, -1));

  // f(x,y) = x^2/2 - y^2/2
  auto fsep = build_minmax_field(
      [](const Vec& x, const Vec& y) { return x; },
      [](const Vec& x, const Vec& y) { return Vec(-y); }, split);
  CHECK(eval_field(fsep, v2(2, 3)) == v2(2, 3));
}

TEST_CASE("minmax field of the quartic saddle matches a finite-difference gradient") {
  // f_s(x,y) = f(x) - f(y) + x^T B y with random parameters
  Rng rng(19);
  const int n = 2;
  SmoothExampleParams p;
  p.A = rng.normal_mat(n, n);
  p.B = rng.normal_mat(n, n);
  p.C = rng.normal_mat(n, n);
  p.E = rng.normal_mat(n, n);
  p.b = rng.normal_vec(n);
  p.d = rng.normal_vec(n);
  const ProblemInstance inst = build_example_smooth(p);

  const auto f_scalar = [&](const Vec& x) {
    const Vec ex = p.E * x;
    const Vec ax = p.A * x - p.b;
    const Vec cx = p.C * x - p.d;
    return 0.25 * ex.squaredNorm() * ex.squaredNorm() +
           0.25 * ax.array().pow(4).sum() + 0.5 * cx.squaredNorm();
  };
  const auto fs = [&](const Vec& z) {
    const Vec x = z.head(n), y = z.tail(n);
    return f_scalar(x) - f_scalar(y) + x.dot(p.B * y);
  };

  Rng points(23);
  for (int trial = 0; trial < 10; ++trial) {
    const Vec z = points.uniform_vec(2 * n, -1.5, 1.5);
    Vec grad(2 * n);
    const double step = 1e-6;
    for (int j = 0; j < 2 * n; ++j) {
      Vec zp = z, zm = z;
      zp[j] += step;
      zm[j] -= step;
      grad[j] = (fs(zp) - fs(zm)) / (2.0 * step);
    }
    grad.tail(n) *= -1.0;  // minmax sign on the y block
    const Vec field = eval_field(inst.field_f, z);
    CHECK((field - grad).norm() <= 1e-5 * std::max(1.0, field.norm()));
  }
}

TEST_CASE("antisymmetric game: swapping blocks commutes with the field") {
  // f_s(x,y) = f(x) - f(y) + x^T B y with skew B is antisymmetric;
  // the minmax field then satisfies swap(F(swap(z))) = F(z).
  const int n = 2;
  SmoothExampleParams p;
  p.A = Mat::Zero(n, n);
  Mat skew(n, n);
  skew << 0, 1, -1, 0;
  p.B = skew;
  p.C = Mat::Identity(n, n);
  p.E = Mat::Identity(n, n);
  p.b = Vec::Zero(n);
  p.d = Vec::Zero(n);
  const ProblemInstance inst = build_example_smooth(p);

  Rng rng(29);
  for (int i = 0; i < 20; ++i) {
    const Vec z = rng.uniform_vec(2 * n, -2.0, 2.0);
    Vec zs(2 * n);
    zs.head(n) = z.tail(n);
    zs.tail(n) = z.head(n);
    const Vec fz = eval_field(inst.field_f, z);
    const Vec fzs = eval_field(inst.field_f, zs);
    Vec swapped(2 * n);
    swapped.head(n) = fzs.tail(n);
    swapped.tail(n) = fzs.head(n);
    CHECK((swapped - fz).norm() <= 1e-12 * std::max(1.0, fz.norm()));
  }
}

TEST_CASE("library fields: analytic Jacobians match finite differences") {
  Rng rng(31);
  for (const auto& lf : library_fields()) {
    REQUIRE(bool(lf.field.jac));
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
      const Vec z = rng.uniform_vec(lf.field.dim, -2.0, 2.0);
      worst = std::max(
          worst, max_rel_entry_err(jacobian_fd(lf.field, z, 1e-5), lf.field.jac(z)));
    }
    INFO(lf.name);
    CHECK(worst <= 1e-6);
  }
}

TEST_CASE("library fields: declared monotone fields have PSD symmetric Jacobian part") {
  Rng rng(37);
  for (const auto& lf : library_fields()) {
    if (!lf.monotone) continue;
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
      const Vec z = rng.uniform_vec(lf.field.dim, -2.0, 2.0);
      worst = std::min(worst, symmetric_min_eig(jacobian(lf.field, z)));
    }
    INFO(lf.name);
    CHECK(worst >= -1e-9);
  }
}

TEST_CASE("taylor_eval follows the factorial-free convention") {
  // exact for linear fields at order 1
  Mat m(2, 2);
  m << 1, 2, -3, 0.5;
  const VectorField lin = linear_field(m);
  const Vec za = v2(0.1, -0.2), zb = v2(1.3, 0.7);
  CHECK((taylor_eval(lin, za, zb, 1) - eval_field(lin, zb)).norm() < 1e-13);

  // for a cubic operator the order-2 sum overshoots the true value by
  // (1 - 1/2) S(delta) minus the cubic remainder; check against the
  // closed-form difference for the quartic saddle operator with A = 0.
  const VectorField phi = build_example_eg2(Mat::Zero(2, 2));
  Rng rng(41);
  for (int i = 0; i < 10; ++i) {
    const Vec a = rng.uniform_vec(4, -1.0, 1.0);
    const Vec b = rng.uniform_vec(4, -1.0, 1.0);
    const Vec delta = b - a;
    const Vec t2 = taylor_eval(phi, a, b, 2);
    Vec cubic(4);  // (1/6) grad^3 phi [delta]^3 = 4 |dx|^2 dx per block
    cubic.head(2) = 4.0 * delta.head(2).squaredNorm() * delta.head(2);
    cubic.tail(2) = 4.0 * delta.tail(2).squaredNorm() * delta.tail(2);
    const Vec want = eval_field(phi, b) +
                     0.5 * second_directional(phi, a, delta) - cubic;
    CHECK((t2 - want).norm() <= 1e-10 * std::max(1.0, want.norm()));
  }
}
