#include "mirrorprox/geometry.hpp"

#include <cmath>

namespace mirrorprox {

GeometryContext::GeometryContext(int nodes) {
  require(nodes >= 1, "GeometryContext: need at least one quadrature node");
  // Legendre nodes on (-1,1) by Newton iteration, then mapped to [0,1].
  t_.resize(nodes);
  w_.resize(nodes);
  const int n = nodes;
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    t_[i] = 0.5 * (1.0 - x);  // descending cos -> ascending after mirror below
    w_[i] = 0.5 * w;
    t_[n - 1 - i] = 0.5 * (1.0 + x);
    w_[n - 1 - i] = 0.5 * w;
  }
}

TrianglePath::TrianglePath(Vec a_, Vec b_, Vec c_)
    : a(std::move(a_)), b(std::move(b_)), c(std::move(c_)) {
  require(a.size() == b.size() && b.size() == c.size(),
          "TrianglePath: points must share one dimension");
}

double line_integral(const GeometryContext& ctx, const VectorField& field,
                     const Vec& z_a, const Vec& z_b) {
  require(z_a.size() == z_b.size() && z_a.size() == field.dim,
          "line_integral: dimension mismatch");
  const Vec d = z_b - z_a;
  double acc = 0.0;
  for (int i = 0; i < ctx.nodes(); ++i) {
    const Vec v = field.eval(z_a + ctx.abscissae()[i] * d);
    if (!all_finite(v))
      throw std::runtime_error("line_integral: non-finite field value on segment");
    acc += ctx.weights()[i] * v.dot(d);
  }
  return acc;
}

double gbd(const GeometryContext& ctx, const VectorField& field, const Vec& to,
           const Vec& from) {
  return line_integral(ctx, field, from, to) -
         field.eval(from).dot(to - from);
}

double loop_integral(const GeometryContext& ctx, const VectorField& field,
                     const TrianglePath& path) {
  return line_integral(ctx, field, path.a, path.b) +
         line_integral(ctx, field, path.b, path.c) +
         line_integral(ctx, field, path.c, path.a);
}

double three_point_residual(const GeometryContext& ctx, const VectorField& field,
                            const Vec& z_a, const Vec& z_b, const Vec& z_c) {
  const double lhs = gbd(ctx, field, z_a, z_c) + gbd(ctx, field, z_c, z_b);
  const double rhs = loop_integral(ctx, field, TrianglePath(z_a, z_b, z_c)) +
                     gbd(ctx, field, z_a, z_b) +
                     (field.eval(z_b) - field.eval(z_c)).dot(z_a - z_c);
  return std::abs(lhs - rhs);
}

double conservativeness_estimate(const GeometryContext& ctx,
                                 const VectorField& field, const SampleBox& box,
                                 int n_loops) {
  require(n_loops >= 1, "conservativeness_estimate: need at least one loop");
  Rng rng(box.seed);
  double worst = 0.0;
  for (int i = 0; i < n_loops; ++i) {
    const TrianglePath tri(rng.uniform_vec(box.dim, box.lo, box.hi),
                           rng.uniform_vec(box.dim, box.lo, box.hi),
                           rng.uniform_vec(box.dim, box.lo, box.hi));
    worst = std::max(worst, std::abs(loop_integral(ctx, field, tri)));
  }
  return worst;
}

double co_conservativeness_estimate(const GeometryContext& ctx,
                                    const VectorField& field_e,
                                    const VectorField& field_f,
                                    const SampleBox& box, int n_loops) {
  require(field_e.dim == field_f.dim,
          "co_conservativeness_estimate: dimension mismatch");
  return conservativeness_estimate(ctx, field_diff(field_e, field_f), box,
                                   n_loops);
}

namespace {

CertificateReport jacobian_certificate(const VectorField& field_f,
                                       const VectorField& field_h, double cf,
                                       double ch, const SampleBox& box, int n,
                                       double tol) {
  // worst smallest eigenvalue of sym(cf * grad F + ch * grad H) over samples
  Rng rng(box.seed);
  CertificateReport rep;
  rep.samples = n;
  rep.worst_margin = std::numeric_limits<double>::infinity();
  for (int i = 0; i < n; ++i) {
    const Vec z = rng.uniform_vec(box.dim, box.lo, box.hi);
    const Mat m = cf * jacobian(field_f, z) + ch * jacobian(field_h, z);
    const double lam = symmetric_min_eig(m);
    if (lam < rep.worst_margin) {
      rep.worst_margin = lam;
      rep.worst_point = z;
    }
  }
  rep.holds = rep.worst_margin >= -tol;
  return rep;
}

}  // namespace

CertificateReport rel_smooth_certificate(const VectorField& field_f,
                                         const VectorField& field_h, double L,
                                         const SampleBox& box, int n,
                                         double tol) {
  require(L >= 0.0, "rel_smooth_certificate: L must be nonnegative");
  return jacobian_certificate(field_f, field_h, -1.0, L, box, n, tol);
}

CertificateReport rel_strong_mono_certificate(const VectorField& field_f,
                                              const VectorField& field_h,
                                              double m, const SampleBox& box,
                                              int n, double tol) {
  require(m >= 0.0, "rel_strong_mono_certificate: m must be nonnegative");
  return jacobian_certificate(field_f, field_h, 1.0, -m, box, n, tol);
}

double anti_lipschitz_ratio(const GeometryContext& ctx, const VectorField& field_f,
                            const VectorField& field_h, const TrianglePath& path) {
  const double den =
      gbd(ctx, field_h, path.a, path.b) + gbd(ctx, field_h, path.b, path.c);
  if (std::abs(den) < 1e-300)
    throw std::runtime_error("anti_lipschitz_ratio: degenerate triangle");
  const double num =
      loop_integral(ctx, field_f, path) - gbd(ctx, field_f, path.a, path.c);
  return num / den;
}

double d_theta(double B, double E, double theta) {
  require(theta > 0.0, "d_theta: theta must be positive");
  const double t2 = theta * theta;
  const double t4 = t2 * t2;
  const double e4 = E * E * E * E;
  return (B * t2 - e4 * t4) / (5.0 * t4 / 4.0);
}

}  // namespace mirrorprox
