#pragma once

#include <optional>
#include <vector>

#include "mirrorprox/geometry.hpp"
#include "mirrorprox/prox.hpp"
#include "mirrorprox/types.hpp"

namespace mirrorprox {

struct RunConfig {
  double L = 1.0;
  double m = 0.0;       // used by the SM variant
  Vec z_1;
  int K = 100;
  double prox_tol = 1e-10;
  int prox_max_iter = 100;
  std::optional<Vec> z_star;  // reference point for omega / E_k records
  double divergence_guard = 1e6;
};

struct IterRecord {
  int k = 0;
  Vec z_k, z_half, z_next;
  double f_half_norm = 0.0;
  double f_next_norm = 0.0;
  double omega_to_ref = std::numeric_limits<double>::quiet_NaN();
  double e_k = std::numeric_limits<double>::quiet_NaN();
  double prox_res_half = 0.0;
  double prox_res_next = 0.0;
};

struct RunTrace {
  std::vector<IterRecord> records;
  Vec z_out;
  double gap_estimate = std::numeric_limits<double>::quiet_NaN();
  bool diverged = false;
  bool prox_failed = false;
};

/// Algorithm: z_half = Prox_H(z_k, z_k), z_next = Prox_H(z_k, z_half);
/// returns the average of the half iterates.
RunTrace run_mfmp(const VectorField& field_f, const VectorField& field_h,
                  const RunConfig& cfg, const GeometryContext* ctx = nullptr);

/// Strongly monotone variant: second step Prox_H^SM(z_k, z_half); returns the
/// last iterate. Records E_k when ctx and z_star are available.
RunTrace run_mfmp_sm(const VectorField& field_f, const VectorField& field_h,
                     const RunConfig& cfg, const GeometryContext* ctx = nullptr);

/// max over comparison points z of <F(z), z_out - z>.
double gap_estimate(const Vec& z_out, const VectorField& field_f,
                    const std::vector<Vec>& comparison);

/// 64 Halton points on the sphere of the given radius around center, plus
/// extra points (typically z_star).
std::vector<Vec> comparison_points(const Vec& center, double radius, int count,
                                   const std::vector<Vec>& extra);

/// Per-iteration error terms of the strongly monotone contraction:
///   E_k = L loop(H; z_next, z_k, z_half) + L loop(H; z*, z_k, z_half)
///       + m loop(H; z*, z_half, z_next) - L loop(F; z_k, z_half, z_next).
std::vector<double> error_terms(const GeometryContext& ctx, const RunTrace& trace,
                                const VectorField& field_f,
                                const VectorField& field_h, double L, double m,
                                const Vec& z_star);

struct ContractionReport {
  // min over k of L/(m+L) omega(z*,z_k) + E_k/(m+L) - omega(z*,z_{k+1})
  double worst_iteration_slack = 0.0;
  // min over K' <= K of the unrolled bound slack
  //   r^K' omega_1 + sum_k r^(K'-1-k) E_k/(m+L) - omega_{K'}
  double worst_cumulative_slack = 0.0;
  // slack of the literal geometric-sum variant sum_k E_k/(m+L)^k at K
  double as_written_slack = 0.0;
};

ContractionReport contraction_check(const GeometryContext& ctx,
                                    const RunTrace& trace,
                                    const VectorField& field_f,
                                    const VectorField& field_h, double L,
                                    double m, const Vec& z_star);

/// RHS - LHS of the per-iteration progress inequality at a probe point.
double lemma_mfmp_slack(const IterRecord& record, const VectorField& field_f,
                        const VectorField& field_h, double L, const Vec& probe);

}  // namespace mirrorprox
