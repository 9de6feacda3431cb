#include "mirrorprox/mfmp.hpp"

#include <cmath>

namespace mirrorprox {

namespace {

RunTrace run_loop(const VectorField& field_f, const VectorField& field_h,
                  const RunConfig& cfg, bool strongly_monotone,
                  const GeometryContext* ctx) {
  require(cfg.K >= 1, "run: K must be at least 1");
  require(all_finite(cfg.z_1), "run: z_1 must be finite");
  require(cfg.z_1.size() == field_f.dim, "run: dimension mismatch");

  RunTrace trace;
  trace.records.reserve(cfg.K);
  Vec z = cfg.z_1;
  Vec half_sum = Vec::Zero(field_f.dim);

  ProxSpec base;
  base.field_f = field_f;
  base.field_h = field_h;
  base.L = cfg.L;
  base.tolerance = cfg.prox_tol;
  base.max_iter = cfg.prox_max_iter;

  for (int k = 1; k <= cfg.K; ++k) {
    ProxSpec first = base;
    first.m = 0.0;
    first.z_a = z;
    first.z_b = z;
    const ProxResult half = prox_generic(first);
    if (!half.converged) {
      trace.prox_failed = true;
      break;
    }

    ProxSpec second = base;
    second.m = strongly_monotone ? cfg.m : 0.0;
    second.z_a = z;
    second.z_b = half.z_prime;
    const ProxResult next = prox_generic(second);
    if (!next.converged) {
      trace.prox_failed = true;
      break;
    }

    IterRecord rec;
    rec.k = k;
    rec.z_k = z;
    rec.z_half = half.z_prime;
    rec.z_next = next.z_prime;
    rec.f_half_norm = field_f.eval(half.z_prime).norm();
    rec.f_next_norm = field_f.eval(next.z_prime).norm();
    rec.prox_res_half = half.residual_norm;
    rec.prox_res_next = next.residual_norm;
    if (ctx != nullptr && cfg.z_star.has_value())
      rec.omega_to_ref = gbd(*ctx, field_h, *cfg.z_star, z);
    trace.records.push_back(std::move(rec));

    half_sum += half.z_prime;
    z = next.z_prime;
    if (z.norm() > cfg.divergence_guard) {
      trace.diverged = true;
      break;
    }
  }

  if (trace.records.empty()) {
    trace.z_out = cfg.z_1;
    return trace;
  }
  trace.z_out = strongly_monotone
                    ? trace.records.back().z_next
                    : Vec(half_sum / static_cast<double>(trace.records.size()));
  return trace;
}

}  // namespace

RunTrace run_mfmp(const VectorField& field_f, const VectorField& field_h,
                  const RunConfig& cfg, const GeometryContext* ctx) {
  return run_loop(field_f, field_h, cfg, false, ctx);
}

RunTrace run_mfmp_sm(const VectorField& field_f, const VectorField& field_h,
                     const RunConfig& cfg, const GeometryContext* ctx) {
  RunTrace trace = run_loop(field_f, field_h, cfg, true, ctx);
  if (ctx != nullptr && cfg.z_star.has_value() && !trace.records.empty()) {
    const auto terms = error_terms(*ctx, trace, field_f, field_h, cfg.L, cfg.m,
                                   *cfg.z_star);
    for (std::size_t i = 0; i < terms.size(); ++i)
      trace.records[i].e_k = terms[i];
  }
  return trace;
}

double gap_estimate(const Vec& z_out, const VectorField& field_f,
                    const std::vector<Vec>& comparison) {
  require(!comparison.empty(), "gap_estimate: empty comparison set");
  double best = -std::numeric_limits<double>::infinity();
  for (const Vec& z : comparison)
    best = std::max(best, eval_field(field_f, z).dot(z_out - z));
  return best;
}

std::vector<Vec> comparison_points(const Vec& center, double radius, int count,
                                   const std::vector<Vec>& extra) {
  const int d = static_cast<int>(center.size());
  std::vector<Vec> pts;
  pts.reserve(count + extra.size());
  for (int i = 0; i < count; ++i) {
    // Halton point in [0,1]^d -> gaussian via inverse-free Box-Muller pairs
    // is overkill; map to [-1,1]^d and normalize onto the sphere.
    Vec u = halton_point(i, d);
    Vec dir = 2.0 * u.array() - 1.0;
    const double nn = dir.norm();
    if (nn < 1e-12) continue;
    pts.push_back(center + radius * dir / nn);
  }
  for (const Vec& e : extra) pts.push_back(e);
  return pts;
}

std::vector<double> error_terms(const GeometryContext& ctx, const RunTrace& trace,
                                const VectorField& field_f,
                                const VectorField& field_h, double L, double m,
                                const Vec& z_star) {
  std::vector<double> out;
  out.reserve(trace.records.size());
  for (const IterRecord& r : trace.records) {
    const double e =
        L * loop_integral(ctx, field_h, TrianglePath(r.z_next, r.z_k, r.z_half)) +
        L * loop_integral(ctx, field_h, TrianglePath(z_star, r.z_k, r.z_half)) +
        m * loop_integral(ctx, field_h, TrianglePath(z_star, r.z_half, r.z_next)) -
        L * loop_integral(ctx, field_f, TrianglePath(r.z_k, r.z_half, r.z_next));
    out.push_back(e);
  }
  return out;
}

ContractionReport contraction_check(const GeometryContext& ctx,
                                    const RunTrace& trace,
                                    const VectorField& field_f,
                                    const VectorField& field_h, double L,
                                    double m, const Vec& z_star) {
  require(!trace.records.empty(), "contraction_check: empty trace");
  const double ratio = L / (m + L);
  const auto omega = [&](const Vec& z) { return gbd(ctx, field_h, z_star, z); };
  const auto terms = error_terms(ctx, trace, field_f, field_h, L, m, z_star);

  ContractionReport rep;
  rep.worst_iteration_slack = std::numeric_limits<double>::infinity();
  rep.worst_cumulative_slack = std::numeric_limits<double>::infinity();

  const double omega_1 = omega(trace.records.front().z_k);
  double unrolled = omega_1;   // running r^k omega_1 + sum r^(k-1-j) E_j/(m+L)
  double as_written = 0.0;     // sum_j E_j / (m+L)^j, j from 0
  double pow_ml = 1.0;

  for (std::size_t k = 0; k < trace.records.size(); ++k) {
    const IterRecord& r = trace.records[k];
    const double om_k = omega(r.z_k);
    const double om_next = omega(r.z_next);
    rep.worst_iteration_slack =
        std::min(rep.worst_iteration_slack,
                 ratio * om_k + terms[k] / (m + L) - om_next);

    unrolled = ratio * unrolled + terms[k] / (m + L);
    rep.worst_cumulative_slack =
        std::min(rep.worst_cumulative_slack, unrolled - om_next);

    as_written += terms[k] / pow_ml;
    if (pow_ml < 1e290) pow_ml *= (m + L);
  }
  const double om_final = omega(trace.records.back().z_next);
  rep.as_written_slack =
      std::pow(ratio, static_cast<double>(trace.records.size())) * omega_1 +
      as_written - om_final;
  return rep;
}

double lemma_mfmp_slack(const IterRecord& record, const VectorField& field_f,
                        const VectorField& field_h, double L, const Vec& probe) {
  const Vec f_half = eval_field(field_f, record.z_half);
  const Vec f_k = eval_field(field_f, record.z_k);
  const Vec h_k = eval_field(field_h, record.z_k);
  const Vec h_half = eval_field(field_h, record.z_half);
  const Vec h_next = eval_field(field_h, record.z_next);

  const double lhs = f_half.dot(record.z_half - probe);
  const double rhs = L * (h_k - h_next).dot(record.z_next - probe) -
                     (f_k - f_half).dot(record.z_half - record.z_next) +
                     L * (h_k - h_half).dot(record.z_half - record.z_next);
  return rhs - lhs;
}

}  // namespace mirrorprox
