#pragma once

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mirrorprox/geometry.hpp"
#include "mirrorprox/types.hpp"
#include "mirrorprox/vector_field.hpp"

namespace mirrorprox {

/// Parameters of the quartic saddle family
///   f(x) = 1/4 |Ex|^4 + 1/4 |Ax-b|_4^4 + 1/2 |Cx-d|^2,
///   f_s(x,y) = f(x) - f(y) + x^T B y.
struct SmoothExampleParams {
  Mat A, B, C, E;
  Vec b, d;
  int n() const { return static_cast<int>(b.size()); }
};

/// A certified (F, H, L, m) pair plus metadata.
struct ProblemInstance {
  VectorField field_f, field_h;
  double L = 0.0;
  double m = 0.0;
  bool h_is_conservative = false;
  std::optional<Vec> z_star;
  std::string label;
  double box_halfwidth = 2.0;  // certification box half-width
  std::function<double(const Vec&)> h_potential;  // set when H is a gradient
};

/// Convex-block saddle descriptor f(x,y) = alpha(x) - beta(y) + x^T A y.
struct ConvexBlockSpec {
  int nx = 0, ny = 0;
  std::function<double(const Vec&)> alpha_val, beta_val;
  std::function<Vec(const Vec&)> alpha_grad, beta_grad;
  std::function<Mat(const Vec&)> alpha_hess, beta_hess;
  Mat A;
};

/// Third-order model data at an expansion center z_a. The model operators are
///   F(h) = Phi(z_a) + J_a h + second_coeff * S_a(h) + 2 M |h|^2 h,
///   H(h) = mirror_const + k1 * mirror_linear h + k2 * |h|^2 h,
/// with S_a(h) = grad^2 Phi(z_a)[h,h], k1 = 1 - 1/tau and
/// k2 = (4M - tau L3)/2; the pair is 1-strongly monotone and
/// (tau+1)/(tau-1)-relatively smooth provided M >= tau^2 L3 / 4.
struct ThirdOrderModel {
  Vec z_a;
  double M = 0.0, tau = 0.0, L3 = 0.0;
  double second_coeff = 0.5;
  Vec phi_at_za;
  Mat jac_phi_at_za;
  std::function<Vec(const Vec&)> second_dir_at_za;   // h -> S_a(h)
  std::function<Mat(const Vec&)> second_dir_matrix;  // h -> W(h), W(h)u = grad^2 Phi(z_a)[h,u]
  bool conservative_mirror = false;
  Mat mirror_linear;  // J_a, or its symmetric block part for the conservative variant
  Vec mirror_const;   // Phi(z_a) for the conservative variant, else zero
  double mirror_k1 = 0.0, mirror_k2 = 0.0;

  int dim() const { return static_cast<int>(z_a.size()); }
  double rel_smooth_L() const { return (tau + 1.0) / (tau - 1.0); }
  double rel_strong_m() const { return 1.0; }
};

enum class MirrorVariant { standard, conservative };

std::pair<double, double> smooth_paper_constants(const SmoothExampleParams& p);

ProblemInstance build_example_smooth(const SmoothExampleParams& p);

/// Phi(z) = (4|x|^2 x + A y, 4|y|^2 y - A^T x) with analytic derivatives.
VectorField build_example_eg2(const Mat& A);

VectorField conv_block_operator(const ConvexBlockSpec& spec);

ConvexBlockSpec make_quartic_blocks(int n, const Mat& A);
ConvexBlockSpec make_smoothed_quartic_blocks(int n, const Mat& A, double eps);

ThirdOrderModel make_third_order_model(const VectorField& phi, const Vec& z_a,
                                       double M, double tau, double L3,
                                       MirrorVariant variant);

VectorField model_field_f(const ThirdOrderModel& model);
VectorField model_field_h(const ThirdOrderModel& model);

ProblemInstance build_third_order_pair(const ThirdOrderModel& model,
                                       MirrorVariant variant);

/// The CGO operator pair Phi_alpha / Phi_0 in the offset variable h.
std::pair<VectorField, VectorField> build_cgo_pair(const ConvexBlockSpec& f,
                                                   const Vec& z_a, double alpha,
                                                   double eta);

/// Seeded instance generation; deterministic given (kind, n, seed).
/// Kinds: smooth, smooth-separable, eg2-subproblem, eg2-subproblem-standard,
/// bilinear, cgo.
ProblemInstance random_instance(const std::string& kind, int n,
                                std::uint64_t seed);

/// min(|x|, |y|) for z = (x, y) split in halves.
double kappa_minmax(const Vec& z);

/// Damped Newton on F(z) = 0; returns the solution when the residual drops
/// below tol.
std::optional<Vec> solve_vi_newton(const VectorField& field, const Vec& z0,
                                   double tol = 1e-13, int max_iter = 300);

/// Sampled certified constants: (max, min) generalized Rayleigh quotient of
/// (sym grad F, sym grad H) over the box, with a 2% safety factor.
std::pair<double, double> tighten_constants(const VectorField& field_f,
                                            const VectorField& field_h,
                                            const SampleBox& box, int n_samples);

/// Sampled upper estimate of the third-order constant of phi via the
/// first-order Jacobian remainder 2 |J(z_b) - J(z_a) - dJ(z_a)[delta]| / |delta|^2.
double estimate_l3(const VectorField& phi, const SampleBox& box, int n_samples);

struct LibraryField {
  std::string name;
  VectorField field;
  bool monotone = false;
};

/// The canonical fields used by the identity/positivity suites.
std::vector<LibraryField> library_fields();

struct CertifiedPair {
  std::string name;
  VectorField field_f, field_h;
  double L = 0.0;
};

/// (F, H, L) pairs whose relative-smoothness certificates hold.
std::vector<CertifiedPair> certified_pairs();

}  // namespace mirrorprox
