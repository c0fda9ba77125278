#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "dcovbound/error.hpp"

namespace dcovbound {

/// n observations of a dim-dimensional random vector, stored row-major.
///
/// Construct through validate_sample(); a SampleMatrix always has n >= 1,
/// dim >= 1 and only finite entries.
class SampleMatrix {
 public:
  std::size_t rows() const noexcept { return rows_; }
  std::size_t dim() const noexcept { return dim_; }

  std::span<const double> row(std::size_t k) const {
    return {data_.data() + k * dim_, dim_};
  }
  double operator()(std::size_t k, std::size_t j) const { return data_[k * dim_ + j]; }
  std::span<const double> values() const noexcept { return data_; }

  friend bool operator==(const SampleMatrix&, const SampleMatrix&) = default;

 private:
  friend SampleMatrix validate_sample(std::size_t, std::size_t, std::vector<double>);
  SampleMatrix(std::size_t rows, std::size_t dim, std::vector<double> data)
      : rows_(rows), dim_(dim), data_(std::move(data)) {}

  std::size_t rows_;
  std::size_t dim_;
  std::vector<double> data_;
};

/// The box [lo, hi]^dim: one interval shared by every component.
struct BoundsBox {
  double lo = 0.0;
  double hi = 0.0;
  std::size_t dim = 1;

  double width() const noexcept { return hi - lo; }
  bool degenerate() const noexcept { return lo == hi; }
  bool contains(double v) const noexcept { return v >= lo && v <= hi; }

  friend bool operator==(const BoundsBox&, const BoundsBox&) = default;
};

/// Throws InvalidBox unless lo <= hi (both finite) and dim >= 1.
BoundsBox make_box(double lo, double hi, std::size_t dim);

/// Dense symmetric n x n matrix of pairwise Euclidean distances.
class DistanceMatrix {
 public:
  std::size_t size() const noexcept { return n_; }
  double operator()(std::size_t k, std::size_t l) const { return d_[k * n_ + l]; }
  std::span<const double> row(std::size_t k) const { return {d_.data() + k * n_, n_}; }
  std::span<const double> values() const noexcept { return d_; }

  friend bool operator==(const DistanceMatrix&, const DistanceMatrix&) = default;

 private:
  friend DistanceMatrix pairwise_distances(const SampleMatrix&);
  DistanceMatrix(std::size_t n, std::vector<double> d) : n_(n), d_(std::move(d)) {}

  std::size_t n_;
  std::vector<double> d_;
};

/// Validates a row-major rows x dim buffer.
///
/// Errors: EmptySample when rows or dim is zero, NonRectangular when the
/// buffer size is not rows*dim, NonFiniteEntry (with the row/column of the
/// first offender in row-major order).
SampleMatrix validate_sample(std::size_t rows, std::size_t dim, std::vector<double> data);

/// Validates a list of rows; every row must have the same length.
SampleMatrix validate_sample(const std::vector<std::vector<double>>& rows);

/// d[k][l] = sqrt(sum_j (x[k][j] - x[l][j])^2), computed from the
/// differences directly. Rows are filled independently; (a - b)^2 and
/// (b - a)^2 round identically, so the result is exactly symmetric.
DistanceMatrix pairwise_distances(const SampleMatrix& s);

/// Smallest single interval covering every entry of s.
BoundsBox infer_box(const SampleMatrix& s);

/// First entry of s outside b, or nullopt when s lies in the closed box.
std::optional<CellRef> first_outside(const SampleMatrix& s, const BoundsBox& b);

}  // namespace dcovbound
