#include "dcovbound/estimators.hpp"

#include <cmath>
#include <sstream>
#include <vector>

namespace dcovbound {

namespace {

using Accum = long double;

void require_same_size(const DistanceMatrix& dx, const DistanceMatrix& dy) {
  if (dx.size() != dy.size()) {
    std::ostringstream os;
    os << "distance matrices differ in size: " << dx.size() << " vs " << dy.size();
    throw Error(ErrorKind::SizeMismatch, os.str());
  }
}

struct RowMoments {
  std::vector<Accum> row_mean;
  Accum grand_mean = 0;
};

RowMoments row_moments(const DistanceMatrix& d) {
  const std::size_t n = d.size();
  RowMoments m;
  m.row_mean.resize(n);
  Accum total = 0;
  for (std::size_t k = 0; k < n; ++k) {
    Accum s = 0;
    for (double v : d.row(k)) s += v;
    m.row_mean[k] = s / static_cast<Accum>(n);
    total += m.row_mean[k];
  }
  m.grand_mean = total / static_cast<Accum>(n);
  return m;
}

Accum mean_product(const DistanceMatrix& dx, const DistanceMatrix& dy) {
  const auto a = dx.values();
  const auto b = dy.values();
  Accum s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += static_cast<Accum>(a[i]) * b[i];
  return s / static_cast<Accum>(a.size());
}

Accum mean_row_product(const RowMoments& mx, const RowMoments& my) {
  Accum s = 0;
  for (std::size_t k = 0; k < mx.row_mean.size(); ++k) s += mx.row_mean[k] * my.row_mean[k];
  return s / static_cast<Accum>(mx.row_mean.size());
}

struct Terms {
  Accum s1, s2, s3;
  Accum dcov2() const { return s1 + s2 - 2 * s3; }
};

Terms terms(const DistanceMatrix& dx, const RowMoments& mx, const DistanceMatrix& dy,
            const RowMoments& my) {
  return {mean_product(dx, dy), mx.grand_mean * my.grand_mean, mean_row_product(mx, my)};
}

}  // namespace

double dcov2_vstat(const DistanceMatrix& dx, const DistanceMatrix& dy) {
  require_same_size(dx, dy);
  if (dx.size() == 0) throw Error(ErrorKind::EmptySample, "empty distance matrix");
  const auto mx = row_moments(dx);
  const auto my = row_moments(dy);
  return static_cast<double>(terms(dx, mx, dy, my).dcov2());
}

double dcov2_triple_sum(const DistanceMatrix& dx, const DistanceMatrix& dy) {
  require_same_size(dx, dy);
  const std::size_t n = dx.size();
  if (n == 0) throw Error(ErrorKind::EmptySample, "empty distance matrix");
  const Accum nn = static_cast<Accum>(n);

  // E|X-X'||Y-Y'|
  Accum s1 = 0;
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t l = 0; l < n; ++l) s1 += static_cast<Accum>(dx(k, l)) * dy(k, l);
  s1 /= nn * nn;

  // E|X-X'| and E|Y-Y'|
  Accum ex = 0, ey = 0;
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t l = 0; l < n; ++l) {
      ex += dx(k, l);
      ey += dy(k, l);
    }
  ex /= nn * nn;
  ey /= nn * nn;

  // E|X-X'||Y-Y''|
  Accum s3 = 0;
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t l = 0; l < n; ++l)
      for (std::size_t m = 0; m < n; ++m) s3 += static_cast<Accum>(dx(k, l)) * dy(k, m);
  s3 /= nn * nn * nn;

  // E|X-X''||Y-Y'|
  Accum s4 = 0;
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t l = 0; l < n; ++l)
      for (std::size_t m = 0; m < n; ++m) s4 += static_cast<Accum>(dx(k, m)) * dy(k, l);
  s4 /= nn * nn * nn;

  return static_cast<double>(s1 + ex * ey - s3 - s4);
}

namespace {

Prop1Decomposition decompose(const Terms& t) {
  const Accum cov_pair = t.s1 - t.s2;
  const Accum cov_cross = t.s3 - t.s2;
  return {static_cast<double>(cov_pair), static_cast<double>(cov_cross),
          static_cast<double>(cov_pair - 2 * cov_cross)};
}

}  // namespace

Prop1Decomposition prop1_decompose(const DistanceMatrix& dx, const DistanceMatrix& dy) {
  require_same_size(dx, dy);
  if (dx.size() == 0) throw Error(ErrorKind::EmptySample, "empty distance matrix");
  return decompose(terms(dx, row_moments(dx), dy, row_moments(dy)));
}

std::pair<DCovEstimate, Prop1Decomposition> estimate_and_decompose(const DistanceMatrix& dx,
                                                                   const DistanceMatrix& dy) {
  require_same_size(dx, dy);
  if (dx.size() == 0) throw Error(ErrorKind::EmptySample, "empty distance matrix");
  const auto mx = row_moments(dx);
  const auto my = row_moments(dy);
  const Terms txy = terms(dx, mx, dy, my);

  DCovEstimate e;
  e.n = dx.size();
  e.dcov2 = static_cast<double>(txy.dcov2());
  e.clamped = e.dcov2 < 0.0;
  e.dcov = std::sqrt(std::max(e.dcov2, 0.0));
  e.dvar_x = std::sqrt(std::max(static_cast<double>(terms(dx, mx, dx, mx).dcov2()), 0.0));
  e.dvar_y = std::sqrt(std::max(static_cast<double>(terms(dy, my, dy, my).dcov2()), 0.0));
  if (e.dvar_x > 0.0 && e.dvar_y > 0.0) e.dcor = e.dcov / std::sqrt(e.dvar_x * e.dvar_y);
  return {e, decompose(txy)};
}

DCovEstimate estimate(const DistanceMatrix& dx, const DistanceMatrix& dy) {
  return estimate_and_decompose(dx, dy).first;
}

DCovEstimate estimate(const SampleMatrix& x, const SampleMatrix& y) {
  if (x.rows() != y.rows()) {
    std::ostringstream os;
    os << "paired samples differ in length: " << x.rows() << " vs " << y.rows();
    throw Error(ErrorKind::SizeMismatch, os.str());
  }
  return estimate(pairwise_distances(x), pairwise_distances(y));
}

double distance_variance_of_pairs(const DistanceMatrix& d) {
  const auto v = d.values();
  Accum mean = 0;
  for (double x : v) mean += x;
  mean /= static_cast<Accum>(v.size());
  Accum ss = 0;
  for (double x : v) {
    const Accum dev = x - mean;
    ss += dev * dev;
  }
  return static_cast<double>(ss / static_cast<Accum>(v.size()));
}

}  // namespace dcovbound
