#include "mirrorprox/vector_field.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <limits>

#include "mirrorprox/rng.hpp"

namespace mirrorprox {

Vec eval_field(const VectorField& field, const Vec& z) {
  require(z.size() == field.dim, "eval_field: dimension mismatch");
  Vec out = field.eval(z);
  require(out.size() == field.dim, "eval_field: output dimension mismatch");
  if (!all_finite(out))
    throw std::runtime_error("eval_field: non-finite output (ill-posed instance)");
  return out;
}

Mat jacobian_fd(const VectorField& field, const Vec& z, double step) {
  require(step > 0.0, "jacobian_fd: step must be positive");
  const int d = field.dim;
  Mat jac(d, d);
  Vec zp = z, zm = z;
  for (int j = 0; j < d; ++j) {
    zp[j] += step;
    zm[j] -= step;
    jac.col(j) = (field.eval(zp) - field.eval(zm)) / (2.0 * step);
    zp[j] = z[j];
    zm[j] = z[j];
  }
  return jac;
}

Mat jacobian(const VectorField& field, const Vec& z) {
  require(all_finite(z), "jacobian: non-finite point");
  Mat jac;
  if (field.jac) {
    jac = field.jac(z);
  } else {
    const double eps = std::numeric_limits<double>::epsilon();
    const double step = std::cbrt(eps) * std::max(1.0, z.norm());
    jac = jacobian_fd(field, z, step);
  }
  if (!all_finite(jac)) throw std::runtime_error("jacobian: non-finite entries");
  return jac;
}

Vec second_directional(const VectorField& field, const Vec& z, const Vec& h) {
  require(z.size() == field.dim && h.size() == field.dim,
          "second_directional: dimension mismatch");
  if (field.second_dir) {
    Vec out = field.second_dir(z, h);
    if (!all_finite(out))
      throw std::runtime_error("second_directional: non-finite output");
    return out;
  }
  const double eps = std::numeric_limits<double>::epsilon();
  const double step =
      std::cbrt(eps) * std::max(1.0, z.norm()) / std::max(1.0, h.norm());
  const Mat jp = jacobian(field, z + step * h);
  const Mat jm = jacobian(field, z - step * h);
  Vec out = ((jp - jm) / (2.0 * step)) * h;
  if (!all_finite(out))
    throw std::runtime_error("second_directional: non-finite output");
  return out;
}

double symmetric_min_eig(const Mat& m) {
  require(all_finite(m), "symmetric_min_eig: non-finite matrix");
  Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (m + m.transpose()));
  if (es.info() != Eigen::Success)
    throw std::runtime_error("symmetric_min_eig: eigen-solver failure");
  return es.eigenvalues().minCoeff();
}

VectorField build_minmax_field(std::function<Vec(const Vec&, const Vec&)> grad_x,
                               std::function<Vec(const Vec&, const Vec&)> grad_y,
                               const MinMaxSplit& split) {
  require(split.dim_x >= 1 && split.dim_y >= 1,
          "build_minmax_field: block dimensions must be positive");
  const int nx = split.dim_x, ny = split.dim_y;
  auto eval = [grad_x, grad_y, nx, ny](const Vec& z) {
    const Vec x = z.head(nx), y = z.tail(ny);
    const Vec gx = grad_x(x, y);
    const Vec gy = grad_y(x, y);
    require(gx.size() == nx && gy.size() == ny,
            "build_minmax_field: gradient dimension mismatch");
    Vec out(nx + ny);
    out.head(nx) = gx;
    out.tail(ny) = -gy;
    return out;
  };
  return VectorField(nx + ny, eval);
}

Vec taylor_eval(const VectorField& field, const Vec& z_a, const Vec& z_b, int p) {
  require(p >= 0 && p <= 2, "taylor_eval: order must be 0, 1 or 2");
  const Vec delta = z_b - z_a;
  Vec out = eval_field(field, z_a);
  if (p >= 1) out += jacobian(field, z_a) * delta;
  if (p >= 2) out += second_directional(field, z_a, delta);
  return out;
}

VectorField identity_field(int d) {
  return VectorField(
      d, [](const Vec& z) { return z; },
      [d](const Vec&) { return Mat(Mat::Identity(d, d)); },
      [d](const Vec&, const Vec&) { return Vec(Vec::Zero(d)); });
}

VectorField constant_field(Vec c) {
  const int d = static_cast<int>(c.size());
  return VectorField(
      d, [c](const Vec&) { return c; },
      [d](const Vec&) { return Mat(Mat::Zero(d, d)); },
      [d](const Vec&, const Vec&) { return Vec(Vec::Zero(d)); });
}

VectorField linear_field(Mat m) {
  require(m.rows() == m.cols(), "linear_field: matrix must be square");
  const int d = static_cast<int>(m.rows());
  return VectorField(
      d, [m](const Vec& z) { return Vec(m * z); },
      [m](const Vec&) { return m; },
      [d](const Vec&, const Vec&) { return Vec(Vec::Zero(d)); });
}

VectorField rotation_field_2d() {
  Mat r(2, 2);
  r << 0.0, 1.0, -1.0, 0.0;
  return linear_field(r);
}

VectorField d4_gradient_field(int d) {
  return VectorField(
      d,
      [](const Vec& h) { return Vec(h.squaredNorm() * h); },
      [d](const Vec& h) {
        return Mat(2.0 * h * h.transpose() +
                   h.squaredNorm() * Mat::Identity(d, d));
      },
      [](const Vec& z, const Vec& h) {
        // second directional derivative of |z|^2 z along h
        return Vec(2.0 * h.squaredNorm() * z + 4.0 * z.dot(h) * h);
      });
}

namespace {
std::function<Mat(const Vec&)> combine_jac(const VectorField& a,
                                           const VectorField& b, double sa,
                                           double sb) {
  if (!a.jac && !b.jac) return nullptr;
  VectorField fa = a, fb = b;
  return [fa, fb, sa, sb](const Vec& z) {
    return Mat(sa * jacobian(fa, z) + sb * jacobian(fb, z));
  };
}
}  // namespace

VectorField field_sum(const VectorField& a, const VectorField& b) {
  require(a.dim == b.dim, "field_sum: dimension mismatch");
  VectorField fa = a, fb = b;
  VectorField out(a.dim,
                  [fa, fb](const Vec& z) { return Vec(fa.eval(z) + fb.eval(z)); });
  out.jac = combine_jac(a, b, 1.0, 1.0);
  if (a.second_dir && b.second_dir)
    out.second_dir = [fa, fb](const Vec& z, const Vec& h) {
      return Vec(fa.second_dir(z, h) + fb.second_dir(z, h));
    };
  return out;
}

VectorField field_scale(double s, const VectorField& a) {
  VectorField fa = a;
  VectorField out(a.dim, [fa, s](const Vec& z) { return Vec(s * fa.eval(z)); });
  if (a.jac)
    out.jac = [fa, s](const Vec& z) { return Mat(s * fa.jac(z)); };
  if (a.second_dir)
    out.second_dir = [fa, s](const Vec& z, const Vec& h) {
      return Vec(s * fa.second_dir(z, h));
    };
  return out;
}

VectorField field_diff(const VectorField& a, const VectorField& b) {
  return field_sum(a, field_scale(-1.0, b));
}

Vec halton_point(int index, int dim) {
  static const int primes[] = {2,  3,  5,  7,  11, 13, 17, 19, 23, 29,
                               31, 37, 41, 43, 47, 53, 59, 61, 67, 71};
  require(dim <= 20, "halton_point: dimension too large");
  Vec p(dim);
  for (int j = 0; j < dim; ++j) {
    const int base = primes[j];
    double f = 1.0, r = 0.0;
    int i = index + 1;
    while (i > 0) {
      f /= base;
      r += f * (i % base);
      i /= base;
    }
    p[j] = r;
  }
  return p;
}

}  // namespace mirrorprox
