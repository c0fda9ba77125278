#pragma once

#include <cstddef>
#include <optional>
#include <utility>

#include "dcovbound/core.hpp"

namespace dcovbound {

/// Plug-in (V-statistic) estimates for one paired sample.
struct DCovEstimate {
  double dcov2 = 0.0;   // raw S1 + S2 - 2*S3, before clamping
  double dcov = 0.0;    // sqrt(max(dcov2, 0))
  double dvar_x = 0.0;  // dCov(X, X)
  double dvar_y = 0.0;
  std::optional<double> dcor;  // empty when either distance variance is 0
  std::size_t n = 0;
  bool clamped = false;  // dcov2 < 0 before clamping
};

/// Empirical covariance decomposition of dCov^2 over the empirical measure:
/// cov(|X-X'|, |Y-Y'|) - 2 cov(|X-X'|, |Y-Y''|).
struct Prop1Decomposition {
  double cov_pair = 0.0;
  double cov_cross = 0.0;
  double recomposed_dcov2 = 0.0;
};

/// V-statistic dCov^2 in O(n^2) through row means:
///   S1 = mean_kl dx*dy, S2 = mean(dx)*mean(dy), S3 = mean_k rowmean_dx[k]*rowmean_dy[k].
/// Accumulates in long double, row-major. Throws SizeMismatch.
double dcov2_vstat(const DistanceMatrix& dx, const DistanceMatrix& dy);

/// Literal O(n^3) evaluation of the same three expectations. Reference
/// oracle for dcov2_vstat; intended for n up to a few hundred.
double dcov2_triple_sum(const DistanceMatrix& dx, const DistanceMatrix& dy);

Prop1Decomposition prop1_decompose(const DistanceMatrix& dx, const DistanceMatrix& dy);

DCovEstimate estimate(const DistanceMatrix& dx, const DistanceMatrix& dy);

/// Both results from one set of row moments.
std::pair<DCovEstimate, Prop1Decomposition> estimate_and_decompose(const DistanceMatrix& dx,
                                                                   const DistanceMatrix& dy);

/// Requires x.rows() == y.rows(); dimensions may differ.
DCovEstimate estimate(const SampleMatrix& x, const SampleMatrix& y);

/// Empirical variance of the n^2 ordered-pair distances (k == l included).
double distance_variance_of_pairs(const DistanceMatrix& d);

}  // namespace dcovbound
