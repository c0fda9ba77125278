#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dcovbound/core.hpp"
#include "dcovbound/estimators.hpp"

namespace dcovbound {

/// (1/2) * sqrt((b - a)(d - c) * sqrt(N * M)) for X in [a,b]^N, Y in [c,d]^M.
double theorem_bound(const BoundsBox& bx, const BoundsBox& by);

/// sqrt(N)/2: the bound for unit-length intervals of a common dimension N.
double corollary1_bound(std::size_t n_dim);

/// N (b - a)^2 / 4, the Popoviciu bound on var|X - X'| over [a,b]^N.
double popoviciu_bound(const BoundsBox& b);

/// Every quantity of the inequality chain
///   dCov <= sqrt(dVarX dVarY) <= sqrt(sqrt(var|X-X'|) sqrt(var|Y-Y'|))
///        <= sqrt(sqrt(N(b-a)^2/4) sqrt(M(d-c)^2/4)) = theorem bound
/// evaluated on the empirical measure of one paired sample.
struct BoundReport {
  double theorem_bound = 0.0;
  double popoviciu_x = 0.0;
  double popoviciu_y = 0.0;
  double var_dist_x = 0.0;  // empirical var|X - X'|
  double var_dist_y = 0.0;
  double lemma2_x = 0.0;  // sqrt(var_dist_x)
  double lemma2_y = 0.0;
  double dvar_x = 0.0;
  double dvar_y = 0.0;
  double lemma1_rhs = 0.0;  // sqrt(dvar_x * dvar_y)
  double observed_dcov = 0.0;
  std::optional<double> tightness;  // observed_dcov / theorem_bound; empty when the bound is 0
  BoundsBox box_x;
  BoundsBox box_y;
  std::size_t n = 0;
};

/// Throws SizeMismatch when the samples differ in length or a box dimension
/// differs from its sample, SampleOutsideBox for the first entry outside its box.
BoundReport build_report(const SampleMatrix& x, const SampleMatrix& y, const BoundsBox& bx,
                         const BoundsBox& by);

/// A report together with the estimates and decomposition it was built from.
struct ChainAnalysis {
  DCovEstimate estimate;
  Prop1Decomposition prop1;
  BoundReport report;
};

ChainAnalysis analyze_chain(const SampleMatrix& x, const SampleMatrix& y, const BoundsBox& bx,
                            const BoundsBox& by);

enum class LinkKind { LessEqual, Equal };

/// One checked link. violation is lhs - rhs for LessEqual and |lhs - rhs|
/// for Equal; the link holds when violation <= tolerance.
struct LinkCheck {
  std::string name;
  LinkKind kind = LinkKind::LessEqual;
  double lhs = 0.0;
  double rhs = 0.0;
  double violation = 0.0;
  bool holds = true;
};

/// Links in chain order:
///   dcov_le_dvar_geomean            dCov <= sqrt(dVarX dVarY)
///   dvar_x_le_sd_dist_x             dVarX <= sqrt(var|X-X'|)   (and _y)
///   dvar_geomean_le_sd_geomean
///   var_dist_x_le_popoviciu         var|X-X'| <= N(b-a)^2/4    (and _y)
///   sd_geomean_le_popoviciu_geomean
///   popoviciu_geomean_eq_bound      the last product equals the closed form
///   dcov_le_bound
///   cov_decomposition_identity      recomposed vs direct dCov^2, tolerance
///                                   scaled by max(1, |dcov2|)
std::vector<LinkCheck> check_links(const ChainAnalysis& a, double tolerance_abs);

}  // namespace dcovbound
