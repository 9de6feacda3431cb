#include "mirrorprox/problems.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <cmath>

namespace mirrorprox {

namespace {

Vec grad_f_smooth(const SmoothExampleParams& p, const Vec& x) {
  const Vec ex = p.E * x;
  const Vec ax = p.A * x - p.b;
  return ex.squaredNorm() * (p.E.transpose() * ex) +
         p.A.transpose() * Vec(ax.array().cube()) +
         p.C.transpose() * (p.C * x - p.d);
}

Mat hess_f_smooth(const SmoothExampleParams& p, const Vec& x) {
  const Vec ex = p.E * x;
  const Vec u = p.E.transpose() * ex;
  const Vec ax = p.A * x - p.b;
  return 2.0 * u * u.transpose() + ex.squaredNorm() * (p.E.transpose() * p.E) +
         3.0 * p.A.transpose() * Vec(ax.array().square()).asDiagonal() * p.A +
         p.C.transpose() * p.C;
}

}  // namespace

std::pair<double, double> smooth_paper_constants(const SmoothExampleParams& p) {
  const auto spectral = [](const Mat& m) {
    Eigen::JacobiSVD<Mat> svd(m);
    return svd.singularValues()[0];
  };
  const auto min_gram_eig = [](const Mat& m) {
    Eigen::SelfAdjointEigenSolver<Mat> es(m.transpose() * m);
    return es.eigenvalues().minCoeff();
  };
  const double nA = spectral(p.A), nC = spectral(p.C), nE = spectral(p.E);
  const double b2 = p.b.squaredNorm();
  const double L = 3.0 * std::pow(nE, 4) + 3.0 * std::pow(nA, 4) +
                   6.0 * std::pow(nA, 3) * b2 + 3.0 * nA * nA * b2 + nC * nC;
  const double sE = min_gram_eig(p.E);
  const double sC = min_gram_eig(p.C);
  const double m = std::min(std::pow(sE, 4) / 3.0, sC * sC);
  return {L, m};
}

ProblemInstance build_example_smooth(const SmoothExampleParams& p) {
  const int n = p.n();
  require(n >= 1, "build_example_smooth: n must be positive");
  require(all_finite(p.A) && all_finite(p.B) && all_finite(p.C) &&
              all_finite(p.E) && all_finite(p.b) && all_finite(p.d),
          "build_example_smooth: non-finite parameters");

  SmoothExampleParams cp = p;
  VectorField field_f(
      2 * n,
      [cp, n](const Vec& z) {
        const Vec x = z.head(n), y = z.tail(n);
        Vec out(2 * n);
        out.head(n) = grad_f_smooth(cp, x) + cp.B * y;
        out.tail(n) = grad_f_smooth(cp, y) - cp.B.transpose() * x;
        return out;
      },
      [cp, n](const Vec& z) {
        const Vec x = z.head(n), y = z.tail(n);
        Mat jac = Mat::Zero(2 * n, 2 * n);
        jac.topLeftCorner(n, n) = hess_f_smooth(cp, x);
        jac.bottomRightCorner(n, n) = hess_f_smooth(cp, y);
        jac.topRightCorner(n, n) = cp.B;
        jac.bottomLeftCorner(n, n) = -cp.B.transpose();
        return jac;
      });

  VectorField field_h(
      2 * n,
      [n](const Vec& z) {
        const Vec x = z.head(n), y = z.tail(n);
        Vec out(2 * n);
        out.head(n) = (x.squaredNorm() + 1.0) * x;
        out.tail(n) = (y.squaredNorm() + 1.0) * y;
        return out;
      },
      [n](const Vec& z) {
        const Vec x = z.head(n), y = z.tail(n);
        Mat jac = Mat::Zero(2 * n, 2 * n);
        jac.topLeftCorner(n, n) =
            2.0 * x * x.transpose() + (x.squaredNorm() + 1.0) * Mat::Identity(n, n);
        jac.bottomRightCorner(n, n) =
            2.0 * y * y.transpose() + (y.squaredNorm() + 1.0) * Mat::Identity(n, n);
        return jac;
      },
      [n](const Vec& z, const Vec& h) {
        const Vec x = z.head(n), y = z.tail(n);
        const Vec hx = h.head(n), hy = h.tail(n);
        Vec out(2 * n);
        out.head(n) = 2.0 * hx.squaredNorm() * x + 4.0 * x.dot(hx) * hx;
        out.tail(n) = 2.0 * hy.squaredNorm() * y + 4.0 * y.dot(hy) * hy;
        return out;
      });

  ProblemInstance inst;
  inst.field_f = field_f;
  inst.field_h = field_h;
  const auto [L, m] = smooth_paper_constants(p);
  inst.L = L;
  inst.m = m;
  inst.h_is_conservative = true;  // H = grad(h(x) + h(y))
  inst.h_potential = [n](const Vec& z) {
    const Vec x = z.head(n), y = z.tail(n);
    const auto pot = [](const Vec& v) {
      const double s = v.squaredNorm();
      return 0.25 * s * s + 0.5 * s;
    };
    return pot(x) + pot(y);
  };
  inst.label = "smooth(n=" + std::to_string(n) + ")";
  return inst;
}

VectorField build_example_eg2(const Mat& A) {
  require(A.rows() == A.cols(), "build_example_eg2: A must be square");
  require(all_finite(A), "build_example_eg2: non-finite A");
  const int n = static_cast<int>(A.rows());
  return VectorField(
      2 * n,
      [A, n](const Vec& z) {
        const Vec x = z.head(n), y = z.tail(n);
        Vec out(2 * n);
        out.head(n) = 4.0 * x.squaredNorm() * x + A * y;
        out.tail(n) = 4.0 * y.squaredNorm() * y - A.transpose() * x;
        return out;
      },
      [A, n](const Vec& z) {
        const Vec x = z.head(n), y = z.tail(n);
        Mat jac = Mat::Zero(2 * n, 2 * n);
        jac.topLeftCorner(n, n) =
            8.0 * x * x.transpose() + 4.0 * x.squaredNorm() * Mat::Identity(n, n);
        jac.bottomRightCorner(n, n) =
            8.0 * y * y.transpose() + 4.0 * y.squaredNorm() * Mat::Identity(n, n);
        jac.topRightCorner(n, n) = A;
        jac.bottomLeftCorner(n, n) = -A.transpose();
        return jac;
      },
      [n](const Vec& z, const Vec& h) {
        const Vec x = z.head(n), y = z.tail(n);
        const Vec hx = h.head(n), hy = h.tail(n);
        Vec out(2 * n);
        out.head(n) = 16.0 * x.dot(hx) * hx + 8.0 * hx.squaredNorm() * x;
        out.tail(n) = 16.0 * y.dot(hy) * hy + 8.0 * hy.squaredNorm() * y;
        return out;
      });
}

VectorField conv_block_operator(const ConvexBlockSpec& spec) {
  require(spec.nx >= 1 && spec.ny >= 1, "conv_block_operator: bad dimensions");
  const int nx = spec.nx, ny = spec.ny;
  ConvexBlockSpec s = spec;
  return VectorField(
      nx + ny,
      [s, nx, ny](const Vec& z) {
        const Vec x = z.head(nx), y = z.tail(ny);
        Vec out(nx + ny);
        out.head(nx) = s.alpha_grad(x) + s.A * y;
        out.tail(ny) = s.beta_grad(y) - s.A.transpose() * x;
        return out;
      },
      [s, nx, ny](const Vec& z) {
        const Vec x = z.head(nx), y = z.tail(ny);
        Mat jac = Mat::Zero(nx + ny, nx + ny);
        jac.topLeftCorner(nx, nx) = s.alpha_hess(x);
        jac.bottomRightCorner(ny, ny) = s.beta_hess(y);
        jac.topRightCorner(nx, ny) = s.A;
        jac.bottomLeftCorner(ny, nx) = -s.A.transpose();
        return jac;
      });
}

ConvexBlockSpec make_quartic_blocks(int n, const Mat& A) {
  ConvexBlockSpec s;
  s.nx = s.ny = n;
  s.A = A;
  const auto val = [](const Vec& v) {
    const double q = v.squaredNorm();
    return q * q;
  };
  const auto grad = [](const Vec& v) { return Vec(4.0 * v.squaredNorm() * v); };
  const auto hess = [n](const Vec& v) {
    return Mat(8.0 * v * v.transpose() +
               4.0 * v.squaredNorm() * Mat::Identity(n, n));
  };
  s.alpha_val = val;
  s.beta_val = val;
  s.alpha_grad = grad;
  s.beta_grad = grad;
  s.alpha_hess = hess;
  s.beta_hess = hess;
  return s;
}

ConvexBlockSpec make_smoothed_quartic_blocks(int n, const Mat& A, double eps) {
  require(eps >= 0.0, "make_smoothed_quartic_blocks: eps must be nonnegative");
  ConvexBlockSpec s;
  s.nx = s.ny = n;
  s.A = A;
  const auto val = [eps](const Vec& v) {
    const double q = v.squaredNorm() + eps;
    return 0.25 * q * q;
  };
  const auto grad = [eps](const Vec& v) {
    return Vec((v.squaredNorm() + eps) * v);
  };
  const auto hess = [n, eps](const Vec& v) {
    return Mat(2.0 * v * v.transpose() +
               (v.squaredNorm() + eps) * Mat::Identity(n, n));
  };
  s.alpha_val = val;
  s.beta_val = val;
  s.alpha_grad = grad;
  s.beta_grad = grad;
  s.alpha_hess = hess;
  s.beta_hess = hess;
  return s;
}

ThirdOrderModel make_third_order_model(const VectorField& phi, const Vec& z_a,
                                       double M, double tau, double L3,
                                       MirrorVariant variant) {
  require(tau > 1.0, "ThirdOrderModel: tau must exceed 1");
  require(L3 >= 0.0, "ThirdOrderModel: L3 must be nonnegative");
  require(M > std::max(tau, 0.25 * tau * tau) * L3,
          "ThirdOrderModel: M too small for the claimed constants");
  require(z_a.size() == phi.dim, "ThirdOrderModel: dimension mismatch");

  ThirdOrderModel model;
  model.z_a = z_a;
  model.M = M;
  model.tau = tau;
  model.L3 = L3;
  model.phi_at_za = eval_field(phi, z_a);
  model.jac_phi_at_za = jacobian(phi, z_a);

  VectorField phic = phi;
  Vec za = z_a;
  if (phi.second_dir) {
    model.second_dir_at_za = [phic, za](const Vec& h) {
      return phic.second_dir(za, h);
    };
  } else {
    model.second_dir_at_za = [phic, za](const Vec& h) {
      return second_directional(phic, za, h);
    };
  }
  // W(h) with W(h)u = grad^2 Phi(z_a)[h,u], by polarization of the
  // quadratic form S_a.
  auto sdir = model.second_dir_at_za;
  const int d = phi.dim;
  model.second_dir_matrix = [sdir, d](const Vec& h) {
    Mat w(d, d);
    Vec e = Vec::Zero(d);
    for (int j = 0; j < d; ++j) {
      e[j] = 1.0;
      w.col(j) = 0.25 * (sdir(h + e) - sdir(h - e));
      e[j] = 0.0;
    }
    return w;
  };

  model.conservative_mirror = (variant == MirrorVariant::conservative);
  model.mirror_k1 = 1.0 - 1.0 / tau;
  model.mirror_k2 = 0.5 * (4.0 * M - tau * L3);
  if (model.conservative_mirror) {
    model.mirror_linear =
        0.5 * (model.jac_phi_at_za + model.jac_phi_at_za.transpose());
    model.mirror_const = model.phi_at_za;
  } else {
    model.mirror_linear = model.jac_phi_at_za;
    model.mirror_const = Vec::Zero(d);
  }
  return model;
}

VectorField model_field_f(const ThirdOrderModel& model) {
  const int d = model.dim();
  ThirdOrderModel m = model;
  return VectorField(
      d,
      [m](const Vec& h) {
        return Vec(m.phi_at_za + m.jac_phi_at_za * h +
                   m.second_coeff * m.second_dir_at_za(h) +
                   2.0 * m.M * h.squaredNorm() * h);
      },
      [m, d](const Vec& h) {
        return Mat(m.jac_phi_at_za +
                   2.0 * m.second_coeff * m.second_dir_matrix(h) +
                   2.0 * m.M *
                       (2.0 * h * h.transpose() +
                        h.squaredNorm() * Mat::Identity(d, d)));
      },
      [m](const Vec& h, const Vec& u) {
        return Vec(2.0 * m.second_coeff * m.second_dir_at_za(u) +
                   2.0 * m.M * (2.0 * u.squaredNorm() * h + 4.0 * h.dot(u) * u));
      });
}

VectorField model_field_h(const ThirdOrderModel& model) {
  const int d = model.dim();
  const Mat lin = model.mirror_linear;
  const Vec c = model.mirror_const;
  const double k1 = model.mirror_k1, k2 = model.mirror_k2;
  return VectorField(
      d,
      [c, lin, k1, k2](const Vec& h) {
        return Vec(c + k1 * (lin * h) + k2 * h.squaredNorm() * h);
      },
      [lin, k1, k2, d](const Vec& h) {
        return Mat(k1 * lin + k2 * (2.0 * h * h.transpose() +
                                    h.squaredNorm() * Mat::Identity(d, d)));
      },
      [k2](const Vec& h, const Vec& u) {
        return Vec(k2 * (2.0 * u.squaredNorm() * h + 4.0 * h.dot(u) * u));
      });
}

ProblemInstance build_third_order_pair(const ThirdOrderModel& model,
                                       MirrorVariant variant) {
  ThirdOrderModel m = model;
  if ((variant == MirrorVariant::conservative) != model.conservative_mirror) {
    // rebuild the mirror side for the requested variant
    m.conservative_mirror = (variant == MirrorVariant::conservative);
    if (m.conservative_mirror) {
      m.mirror_linear = 0.5 * (m.jac_phi_at_za + m.jac_phi_at_za.transpose());
      m.mirror_const = m.phi_at_za;
    } else {
      m.mirror_linear = m.jac_phi_at_za;
      m.mirror_const = Vec::Zero(m.dim());
    }
  }
  ProblemInstance inst;
  inst.field_f = model_field_f(m);
  inst.field_h = model_field_h(m);
  inst.L = m.rel_smooth_L();
  inst.m = m.rel_strong_m();
  inst.h_is_conservative = m.conservative_mirror;
  if (m.conservative_mirror) {
    const Vec phi_a = m.phi_at_za;
    const Mat da = m.mirror_linear;
    const double k1 = m.mirror_k1, k2 = m.mirror_k2;
    inst.h_potential = [phi_a, da, k1, k2](const Vec& h) {
      const double q = h.squaredNorm();
      return phi_a.dot(h) + 0.5 * k1 * h.dot(da * h) + 0.25 * k2 * q * q;
    };
  }
  inst.label = m.conservative_mirror ? "third-order(conservative)"
                                     : "third-order(standard)";
  return inst;
}

std::pair<VectorField, VectorField> build_cgo_pair(const ConvexBlockSpec& f,
                                                   const Vec& z_a, double alpha,
                                                   double eta) {
  require(eta > 0.0, "build_cgo_pair: eta must be positive");
  require(alpha >= 0.0 && alpha <= 1.0, "build_cgo_pair: alpha must be in [0,1]");
  const int nx = f.nx, ny = f.ny;
  require(z_a.size() == nx + ny, "build_cgo_pair: dimension mismatch");
  const VectorField base = conv_block_operator(f);
  const Vec f_at_za = eval_field(base, z_a);
  const Mat cross = f.A;  // grad_xy f(z_a) for the convex-block form
  const int d = nx + ny;

  VectorField phi0(
      d,
      [f_at_za, eta](const Vec& h) { return Vec(f_at_za + h / eta); },
      [eta, d](const Vec&) { return Mat(Mat::Identity(d, d) / eta); },
      [d](const Vec&, const Vec&) { return Vec(Vec::Zero(d)); });

  VectorField phia(
      d,
      [f_at_za, cross, alpha, eta, nx, ny](const Vec& h) {
        const Vec hx = h.head(nx), hy = h.tail(ny);
        Vec out = f_at_za + h / eta;
        out.head(nx) += (alpha / eta) * (cross * hy);
        out.tail(ny) -= (alpha / eta) * (cross.transpose() * hx);
        return out;
      },
      [cross, alpha, eta, nx, ny, d](const Vec&) {
        Mat jac = Mat::Identity(d, d) / eta;
        jac.topRightCorner(nx, ny) += (alpha / eta) * cross;
        jac.bottomLeftCorner(ny, nx) -= (alpha / eta) * cross.transpose();
        return jac;
      },
      [d](const Vec&, const Vec&) { return Vec(Vec::Zero(d)); });

  return {phia, phi0};
}

double kappa_minmax(const Vec& z) {
  const int n = static_cast<int>(z.size()) / 2;
  return std::min(z.head(n).norm(), z.tail(n).norm());
}

ProblemInstance random_instance(const std::string& kind, int n,
                                std::uint64_t seed) {
  require(n >= 1, "random_instance: n must be positive");
  Rng rng(derive_seed(kind, static_cast<std::uint64_t>(n), seed));

  if (kind == "smooth" || kind == "smooth-separable") {
    SmoothExampleParams p;
    p.A = rng.normal_mat(n, n);
    p.B = (kind == "smooth") ? rng.normal_mat(n, n) : Mat(Mat::Zero(n, n));
    p.C = rng.normal_mat(n, n);
    p.E = rng.normal_mat(n, n);
    p.b = rng.normal_vec(n);
    p.d = rng.normal_vec(n);
    ProblemInstance inst = build_example_smooth(p);
    inst.label = kind + "(n=" + std::to_string(n) +
                 ",seed=" + std::to_string(seed) + ")";
    return inst;
  }

  if (kind == "eg2-subproblem" || kind == "eg2-subproblem-standard") {
    const Mat a = rng.normal_mat(n, n);
    const VectorField phi = build_example_eg2(a);
    Vec z_a;
    do {
      z_a = rng.normal_vec(2 * n);
    } while (kappa_minmax(z_a) < 0.25);
    const double tau = 3.0, l3 = 72.0;
    const double big_m = 2.0 * tau * l3;
    const auto variant = (kind == "eg2-subproblem")
                             ? MirrorVariant::conservative
                             : MirrorVariant::standard;
    const ThirdOrderModel model =
        make_third_order_model(phi, z_a, big_m, tau, l3, variant);
    ProblemInstance inst = build_third_order_pair(model, variant);
    inst.label = kind + "(n=" + std::to_string(n) +
                 ",seed=" + std::to_string(seed) + ")";
    inst.box_halfwidth = 2.0;
    return inst;
  }

  if (kind == "bilinear") {
    ProblemInstance inst;
    inst.field_f = rotation_field_2d();
    inst.field_h = identity_field(2);
    inst.L = 1.0;
    inst.m = 0.0;
    inst.h_is_conservative = true;
    inst.h_potential = [](const Vec& z) { return 0.5 * z.squaredNorm(); };
    inst.z_star = Vec(Vec::Zero(2));
    inst.label = "bilinear";
    return inst;
  }

  if (kind == "cgo") {
    // random convex-quadratic blocks
    const Mat gx = rng.normal_mat(n, n), gy = rng.normal_mat(n, n);
    const Mat P = gx.transpose() * gx + 0.1 * Mat::Identity(n, n);
    const Mat Q = gy.transpose() * gy + 0.1 * Mat::Identity(n, n);
    const Mat A = rng.normal_mat(n, n);
    ConvexBlockSpec s;
    s.nx = s.ny = n;
    s.A = A;
    s.alpha_val = [P](const Vec& v) { return 0.5 * v.dot(P * v); };
    s.beta_val = [Q](const Vec& v) { return 0.5 * v.dot(Q * v); };
    s.alpha_grad = [P](const Vec& v) { return Vec(P * v); };
    s.beta_grad = [Q](const Vec& v) { return Vec(Q * v); };
    s.alpha_hess = [P](const Vec&) { return P; };
    s.beta_hess = [Q](const Vec&) { return Q; };
    const Vec z_a = rng.normal_vec(2 * n);
    auto [phia, phi0] = build_cgo_pair(s, z_a, 0.5, 1.0);
    ProblemInstance inst;
    inst.field_f = phia;
    inst.field_h = phi0;
    inst.L = 1.0;
    inst.m = 1.0;
    inst.h_is_conservative = true;
    const Vec f_at_za = eval_field(conv_block_operator(s), z_a);
    inst.h_potential = [f_at_za](const Vec& h) {
      return f_at_za.dot(h) + 0.5 * h.squaredNorm();
    };
    inst.label = "cgo(n=" + std::to_string(n) + ",seed=" + std::to_string(seed) + ")";
    return inst;
  }

  throw std::invalid_argument("random_instance: unknown kind '" + kind + "'");
}

std::optional<Vec> solve_vi_newton(const VectorField& field, const Vec& z0,
                                   double tol, int max_iter) {
  Vec z = z0;
  for (int it = 0; it < max_iter; ++it) {
    const Vec r = eval_field(field, z);
    const double nr = r.norm();
    if (nr <= tol) return z;
    const Mat j = jacobian(field, z);
    Vec dz = j.partialPivLu().solve(-r);
    if (!all_finite(dz)) dz = -r;
    double t = 1.0;
    while (t > 1e-12) {
      const Vec zn = z + t * dz;
      if (all_finite(zn) && field.eval(zn).norm() < nr) break;
      t *= 0.5;
    }
    if (t <= 1e-12) return std::nullopt;
    z += t * dz;
  }
  if (eval_field(field, z).norm() <= tol) return z;
  return std::nullopt;
}

std::pair<double, double> tighten_constants(const VectorField& field_f,
                                            const VectorField& field_h,
                                            const SampleBox& box, int n_samples) {
  Rng rng(box.seed);
  double gmax = -std::numeric_limits<double>::infinity();
  double gmin = std::numeric_limits<double>::infinity();
  for (int i = 0; i < n_samples; ++i) {
    const Vec z = rng.uniform_vec(box.dim, box.lo, box.hi);
    const Mat jf = jacobian(field_f, z);
    const Mat jh = jacobian(field_h, z);
    const Mat sf = 0.5 * (jf + jf.transpose());
    const Mat sh = 0.5 * (jh + jh.transpose());
    Eigen::GeneralizedSelfAdjointEigenSolver<Mat> es(sf, sh);
    if (es.info() != Eigen::Success)
      throw std::runtime_error("tighten_constants: generalized eigen failure");
    gmax = std::max(gmax, es.eigenvalues().maxCoeff());
    gmin = std::min(gmin, es.eigenvalues().minCoeff());
  }
  return {1.02 * gmax, std::max(0.0, 0.98 * gmin)};
}

double estimate_l3(const VectorField& phi, const SampleBox& box, int n_samples) {
  Rng rng(box.seed);
  double worst = 0.0;
  for (int i = 0; i < n_samples; ++i) {
    const Vec za = rng.uniform_vec(box.dim, box.lo, box.hi);
    const Vec zb = rng.uniform_vec(box.dim, box.lo, box.hi);
    const Vec delta = zb - za;
    const double nd = delta.norm();
    if (nd < 1e-8) continue;
    const Mat ja = jacobian(phi, za);
    const Mat jb = jacobian(phi, zb);
    // directional derivative of the Jacobian at za along delta
    const double step = 1e-4 / std::max(1.0, nd);
    const Mat dj = (jacobian(phi, za + step * delta) -
                    jacobian(phi, za - step * delta)) /
                   (2.0 * step);
    const double rem = (jb - ja - dj).norm();
    worst = std::max(worst, 2.0 * rem / (nd * nd));
  }
  return worst;
}

std::vector<LibraryField> library_fields() {
  std::vector<LibraryField> out;
  out.push_back({"identity-4d", identity_field(4), true});
  out.push_back({"rotation-2d", rotation_field_2d(), true});
  out.push_back({"d4-gradient-3d", d4_gradient_field(3), true});

  SmoothExampleParams unit;
  unit.A = Mat::Zero(2, 2);
  unit.B = Mat::Zero(2, 2);
  unit.C = Mat::Identity(2, 2);
  unit.E = Mat::Identity(2, 2);
  unit.b = Vec::Zero(2);
  unit.d = Vec::Zero(2);
  const ProblemInstance smooth_unit = build_example_smooth(unit);
  out.push_back({"smooth-F-unit", smooth_unit.field_f, true});
  out.push_back({"smooth-H", smooth_unit.field_h, true});

  Mat a(2, 2);
  a << 0.6, -0.3, 0.2, 0.5;
  out.push_back({"eg2-phi", build_example_eg2(a), true});
  return out;
}

std::vector<CertifiedPair> certified_pairs() {
  std::vector<CertifiedPair> out;

  SmoothExampleParams unit;
  unit.A = Mat::Zero(2, 2);
  unit.B = Mat::Zero(2, 2);
  unit.C = Mat::Identity(2, 2);
  unit.E = Mat::Identity(2, 2);
  unit.b = Vec::Zero(2);
  unit.d = Vec::Zero(2);
  const ProblemInstance smooth_unit = build_example_smooth(unit);
  out.push_back({"smooth-unit", smooth_unit.field_f, smooth_unit.field_h,
                 smooth_unit.L});

  const ProblemInstance eg2c = random_instance("eg2-subproblem", 2, 5);
  out.push_back({"eg2-third-order", eg2c.field_f, eg2c.field_h, eg2c.L});

  const ProblemInstance cgo = random_instance("cgo", 3, 1);
  out.push_back({"cgo", cgo.field_f, cgo.field_h, cgo.L});
  return out;
}

}  // namespace mirrorprox
