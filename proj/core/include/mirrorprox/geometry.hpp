#pragma once

#include <functional>

#include "mirrorprox/rng.hpp"
#include "mirrorprox/types.hpp"
#include "mirrorprox/vector_field.hpp"

namespace mirrorprox {

/// Gauss-Legendre quadrature on [0,1] shared by all line and loop integrals.
/// 16 nodes by default: exact for polynomial integrands up to degree 31,
/// which covers every field in the problem library to roundoff.
class GeometryContext {
 public:
  explicit GeometryContext(int nodes = 16);

  int nodes() const { return static_cast<int>(t_.size()); }
  const Vec& abscissae() const { return t_; }
  const Vec& weights() const { return w_; }

 private:
  Vec t_, w_;
};

/// Closed path a -> b -> c -> a of straight segments.
struct TrianglePath {
  Vec a, b, c;
  TrianglePath(Vec a_, Vec b_, Vec c_);
};

struct CertificateReport {
  bool holds = false;
  double worst_margin = 0.0;
  Vec worst_point;
  int samples = 0;
};

/// Axis-aligned sampling box [lo, hi]^dim with a seed; all sampled
/// estimators and certificates are deterministic given the seed.
struct SampleBox {
  int dim = 0;
  double lo = -2.0;
  double hi = 2.0;
  std::uint64_t seed = 0;
};

/// integral_0^1 <field(z_a + t (z_b - z_a)), z_b - z_a> dt
double line_integral(const GeometryContext& ctx, const VectorField& field,
                     const Vec& z_a, const Vec& z_b);

/// Generalized Bregman divergence
/// omega_field(to, from) = line_integral(from -> to) - <field(from), to - from>.
double gbd(const GeometryContext& ctx, const VectorField& field, const Vec& to,
           const Vec& from);

double loop_integral(const GeometryContext& ctx, const VectorField& field,
                     const TrianglePath& path);

/// Absolute defect of the generalized three-point identity
///   omega(a,c) + omega(c,b) = loop(a,b,c) + omega(a,b) + <H(b)-H(c), a-c>;
/// zero for exact quadrature up to roundoff.
double three_point_residual(const GeometryContext& ctx, const VectorField& field,
                            const Vec& z_a, const Vec& z_b, const Vec& z_c);

/// max |loop integral| over n sampled triangles; a lower bound on the
/// operator's conservativeness defect delta.
double conservativeness_estimate(const GeometryContext& ctx,
                                 const VectorField& field, const SampleBox& box,
                                 int n_loops);

/// Same for the difference operator E - F.
double co_conservativeness_estimate(const GeometryContext& ctx,
                                    const VectorField& field_e,
                                    const VectorField& field_f,
                                    const SampleBox& box, int n_loops);

/// Sampled check of L h^T grad H h >= h^T grad F h via the smallest
/// eigenvalue of the symmetric part of L grad H - grad F.
CertificateReport rel_smooth_certificate(const VectorField& field_f,
                                         const VectorField& field_h, double L,
                                         const SampleBox& box, int n,
                                         double tol);

/// Sampled check of h^T grad F h >= m h^T grad H h.
CertificateReport rel_strong_mono_certificate(const VectorField& field_f,
                                              const VectorField& field_h,
                                              double m, const SampleBox& box,
                                              int n, double tol);

/// (loop of F over P_abc - omega_F(a,c)) / (omega_H(a,b) + omega_H(b,c)).
/// Any valid L - m must dominate this ratio.
double anti_lipschitz_ratio(const GeometryContext& ctx, const VectorField& field_f,
                            const VectorField& field_h, const TrianglePath& path);

/// Closed form (B theta^2 - E^4 theta^4) / (5 theta^4 / 4) for the
/// two-dimensional obstruction instance.
double d_theta(double B, double E, double theta);

}  // namespace mirrorprox
