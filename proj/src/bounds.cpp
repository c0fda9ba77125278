#include "dcovbound/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <tuple>

namespace dcovbound {

double theorem_bound(const BoundsBox& bx, const BoundsBox& by) {
  const double nm = static_cast<double>(bx.dim) * static_cast<double>(by.dim);
  return 0.5 * std::sqrt(bx.width() * by.width() * std::sqrt(nm));
}

double corollary1_bound(std::size_t n_dim) {
  return std::sqrt(static_cast<double>(n_dim)) / 2.0;
}

double popoviciu_bound(const BoundsBox& b) {
  return static_cast<double>(b.dim) * b.width() * b.width() / 4.0;
}

namespace {

void require_inside(const SampleMatrix& s, const BoundsBox& b, const char* which) {
  if (s.dim() != b.dim) {
    std::ostringstream os;
    os << which << " has " << s.dim() << " components but its box has dimension " << b.dim;
    throw Error(ErrorKind::SizeMismatch, os.str());
  }
  if (const auto at = first_outside(s, b)) {
    std::ostringstream os;
    os.precision(17);
    os << which << " entry " << s(at->row, at->col) << " at row " << at->row << ", column "
       << at->col << " lies outside [" << b.lo << ", " << b.hi << "]";
    throw Error(ErrorKind::SampleOutsideBox, os.str(), at);
  }
}

}  // namespace

ChainAnalysis analyze_chain(const SampleMatrix& x, const SampleMatrix& y, const BoundsBox& bx,
                            const BoundsBox& by) {
  if (x.rows() != y.rows()) {
    std::ostringstream os;
    os << "paired samples differ in length: " << x.rows() << " vs " << y.rows();
    throw Error(ErrorKind::SizeMismatch, os.str());
  }
  require_inside(x, bx, "X");
  require_inside(y, by, "Y");

  const DistanceMatrix dx = pairwise_distances(x);
  const DistanceMatrix dy = pairwise_distances(y);

  ChainAnalysis a;
  std::tie(a.estimate, a.prop1) = estimate_and_decompose(dx, dy);

  BoundReport& r = a.report;
  r.n = x.rows();
  r.box_x = bx;
  r.box_y = by;
  r.theorem_bound = theorem_bound(bx, by);
  r.popoviciu_x = popoviciu_bound(bx);
  r.popoviciu_y = popoviciu_bound(by);
  r.var_dist_x = distance_variance_of_pairs(dx);
  r.var_dist_y = distance_variance_of_pairs(dy);
  r.lemma2_x = std::sqrt(r.var_dist_x);
  r.lemma2_y = std::sqrt(r.var_dist_y);
  r.dvar_x = a.estimate.dvar_x;
  r.dvar_y = a.estimate.dvar_y;
  r.lemma1_rhs = std::sqrt(r.dvar_x * r.dvar_y);
  r.observed_dcov = a.estimate.dcov;
  if (r.theorem_bound > 0.0) r.tightness = r.observed_dcov / r.theorem_bound;
  return a;
}

BoundReport build_report(const SampleMatrix& x, const SampleMatrix& y, const BoundsBox& bx,
                         const BoundsBox& by) {
  return analyze_chain(x, y, bx, by).report;
}

std::vector<LinkCheck> check_links(const ChainAnalysis& a, double tolerance_abs) {
  const BoundReport& r = a.report;
  std::vector<LinkCheck> links;
  auto add = [&](std::string name, LinkKind kind, double lhs, double rhs, double tol) {
    LinkCheck c{std::move(name), kind, lhs, rhs, 0.0, true};
    c.violation = kind == LinkKind::Equal ? std::abs(lhs - rhs) : lhs - rhs;
    c.holds = c.violation <= tol;
    links.push_back(std::move(c));
  };

  const double sd_geomean = std::sqrt(r.lemma2_x * r.lemma2_y);
  const double popoviciu_geomean = std::sqrt(std::sqrt(r.popoviciu_x) * std::sqrt(r.popoviciu_y));

  add("dcov_le_dvar_geomean", LinkKind::LessEqual, r.observed_dcov, r.lemma1_rhs, tolerance_abs);
  add("dvar_x_le_sd_dist_x", LinkKind::LessEqual, r.dvar_x, r.lemma2_x, tolerance_abs);
  add("dvar_y_le_sd_dist_y", LinkKind::LessEqual, r.dvar_y, r.lemma2_y, tolerance_abs);
  add("dvar_geomean_le_sd_geomean", LinkKind::LessEqual, r.lemma1_rhs, sd_geomean, tolerance_abs);
  add("var_dist_x_le_popoviciu", LinkKind::LessEqual, r.var_dist_x, r.popoviciu_x, tolerance_abs);
  add("var_dist_y_le_popoviciu", LinkKind::LessEqual, r.var_dist_y, r.popoviciu_y, tolerance_abs);
  add("sd_geomean_le_popoviciu_geomean", LinkKind::LessEqual, sd_geomean, popoviciu_geomean, tolerance_abs);
  add("popoviciu_geomean_eq_bound", LinkKind::Equal, popoviciu_geomean, r.theorem_bound, tolerance_abs);
  add("dcov_le_bound", LinkKind::LessEqual, r.observed_dcov, r.theorem_bound, tolerance_abs);
  add("cov_decomposition_identity", LinkKind::Equal, a.prop1.recomposed_dcov2, a.estimate.dcov2,
      tolerance_abs * std::max(1.0, std::abs(a.estimate.dcov2)));
  return links;
}

}  // namespace dcovbound
