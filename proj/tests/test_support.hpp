#pragma once

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "dcovbound/core.hpp"

namespace dcovbound::testing {

inline SampleMatrix random_sample(std::mt19937_64& rng, std::size_t n, std::size_t dim,
                                  double lo = 0.0, double hi = 1.0) {
  std::uniform_real_distribution<double> u(lo, hi);
  std::vector<double> v(n * dim);
  for (auto& x : v) x = u(rng);
  return validate_sample(n, dim, std::move(v));
}

inline SampleMatrix transform_rows(const SampleMatrix& s, auto&& fn) {
  std::vector<double> v(s.values().begin(), s.values().end());
  for (std::size_t k = 0; k < s.rows(); ++k) fn(std::span<double>(v.data() + k * s.dim(), s.dim()));
  return validate_sample(s.rows(), s.dim(), std::move(v));
}

inline SampleMatrix permute_rows(const SampleMatrix& s, const std::vector<std::size_t>& perm) {
  std::vector<double> v;
  v.reserve(s.values().size());
  for (std::size_t k : perm) v.insert(v.end(), s.row(k).begin(), s.row(k).end());
  return validate_sample(s.rows(), s.dim(), std::move(v));
}

inline bool rel_close(double a, double b, double tol) {
  return std::abs(a - b) <= tol * std::max(std::abs(a), std::abs(b)) || a == b;
}

// |a - b| <= tol * max(1, |b|)
inline bool close_floor1(double a, double b, double tol) {
  return std::abs(a - b) <= tol * std::max(1.0, std::abs(b));
}

// Plain double-centering: dcov2 = mean(A .* B) with A = d - rowmean - colmean + grand.
inline double dcov2_double_centered(const DistanceMatrix& dx, const DistanceMatrix& dy) {
  const std::size_t n = dx.size();
  auto center = [n](const DistanceMatrix& d) {
    std::vector<long double> row(n, 0), c(n * n);
    long double grand = 0;
    for (std::size_t k = 0; k < n; ++k) {
      for (std::size_t l = 0; l < n; ++l) row[k] += d(k, l);
      row[k] /= n;
      grand += row[k];
    }
    grand /= n;
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t l = 0; l < n; ++l) c[k * n + l] = d(k, l) - row[k] - row[l] + grand;
    return c;
  };
  const auto a = center(dx);
  const auto b = center(dy);
  long double s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return static_cast<double>(s / (static_cast<long double>(n) * n));
}

}  // namespace dcovbound::testing
