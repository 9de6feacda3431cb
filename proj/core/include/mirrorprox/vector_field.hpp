#pragma once

#include <functional>
#include <utility>

#include "mirrorprox/types.hpp"

namespace mirrorprox {

/// An operator Z -> R^d. `eval` is mandatory; `jac` and `second_dir`
/// (h |-> grad^2 F(z)[h,h]) are optional analytic derivatives. Immutable
/// after construction, safe to share between threads.
struct VectorField {
  int dim = 0;
  std::function<Vec(const Vec&)> eval;
  std::function<Mat(const Vec&)> jac;                   // optional
  std::function<Vec(const Vec&, const Vec&)> second_dir;  // optional

  VectorField() = default;
  VectorField(int d, std::function<Vec(const Vec&)> f)
      : dim(d), eval(std::move(f)) {
    require(d >= 1, "VectorField: dimension must be positive");
  }
  VectorField(int d, std::function<Vec(const Vec&)> f,
              std::function<Mat(const Vec&)> j)
      : dim(d), eval(std::move(f)), jac(std::move(j)) {
    require(d >= 1, "VectorField: dimension must be positive");
  }
  VectorField(int d, std::function<Vec(const Vec&)> f,
              std::function<Mat(const Vec&)> j,
              std::function<Vec(const Vec&, const Vec&)> s)
      : dim(d), eval(std::move(f)), jac(std::move(j)), second_dir(std::move(s)) {
    require(d >= 1, "VectorField: dimension must be positive");
  }
};

/// Coordinate split z = (x, y), x first.
struct MinMaxSplit {
  int dim_x = 0;
  int dim_y = 0;
  int dim() const { return dim_x + dim_y; }
};

Vec eval_field(const VectorField& field, const Vec& z);

/// Analytic Jacobian when present, else central finite differences with
/// step cbrt(eps) * max(1, |z|).
Mat jacobian(const VectorField& field, const Vec& z);

/// Central-difference Jacobian with an explicit step (test oracle).
Mat jacobian_fd(const VectorField& field, const Vec& z, double step);

/// grad^2 field(z)[h,h]; analytic when present, else a central difference
/// of the Jacobian-vector product.
Vec second_directional(const VectorField& field, const Vec& z, const Vec& h);

/// Smallest eigenvalue of (M + M^T)/2.
double symmetric_min_eig(const Mat& m);

/// F(x,y) = (grad_x f, -grad_y f) from the two block gradients.
VectorField build_minmax_field(std::function<Vec(const Vec&, const Vec&)> grad_x,
                               std::function<Vec(const Vec&, const Vec&)> grad_y,
                               const MinMaxSplit& split);

/// Factorial-free Taylor operator sum_{i<=p} grad^i F(z_a)[z_b-z_a]^i, p <= 2.
Vec taylor_eval(const VectorField& field, const Vec& z_a, const Vec& z_b, int p);

// Building-block fields.
VectorField identity_field(int d);
VectorField constant_field(Vec c);
VectorField linear_field(Mat m);
VectorField rotation_field_2d();          // (y, -x)
VectorField d4_gradient_field(int d);     // |h|^2 h, the gradient of |h|^4/4

VectorField field_sum(const VectorField& a, const VectorField& b);
VectorField field_scale(double s, const VectorField& a);
VectorField field_diff(const VectorField& a, const VectorField& b);

}  // namespace mirrorprox
