#include "dcovbound/core.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace dcovbound {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::EmptySample: return "EmptySample";
    case ErrorKind::NonFiniteEntry: return "NonFiniteEntry";
    case ErrorKind::NonRectangular: return "NonRectangular";
    case ErrorKind::SizeMismatch: return "SizeMismatch";
    case ErrorKind::InvalidBox: return "InvalidBox";
    case ErrorKind::SampleOutsideBox: return "SampleOutsideBox";
    case ErrorKind::BadSpec: return "BadSpec";
    case ErrorKind::InvalidConfig: return "InvalidConfig";
    case ErrorKind::InvalidRoles: return "InvalidRoles";
    case ErrorKind::MalformedRecord: return "MalformedRecord";
    case ErrorKind::ParseError: return "ParseError";
  }
  return "Unknown";
}

BoundsBox make_box(double lo, double hi, std::size_t dim) {
  if (!std::isfinite(lo) || !std::isfinite(hi)) {
    throw Error(ErrorKind::InvalidBox, "box bounds must be finite");
  }
  if (lo > hi) {
    std::ostringstream os;
    os << "box lower bound " << lo << " exceeds upper bound " << hi;
    throw Error(ErrorKind::InvalidBox, os.str());
  }
  if (dim == 0) throw Error(ErrorKind::InvalidBox, "box dimension must be at least 1");
  return BoundsBox{lo, hi, dim};
}

SampleMatrix validate_sample(std::size_t rows, std::size_t dim, std::vector<double> data) {
  if (rows == 0 || dim == 0) {
    std::ostringstream os;
    os << "sample has shape " << rows << "x" << dim << "; need at least one row and one column";
    throw Error(ErrorKind::EmptySample, os.str());
  }
  if (data.size() != rows * dim) {
    throw Error(ErrorKind::NonRectangular, "sample buffer size does not match rows*dim");
  }
  for (std::size_t i = 0; i < data.size(); ++i) {
    if (!std::isfinite(data[i])) {
      const CellRef at{i / dim, i % dim};
      std::ostringstream os;
      os << "non-finite entry at row " << at.row << ", column " << at.col;
      throw Error(ErrorKind::NonFiniteEntry, os.str(), at);
    }
  }
  return SampleMatrix(rows, dim, std::move(data));
}

SampleMatrix validate_sample(const std::vector<std::vector<double>>& rows) {
  const std::size_t dim = rows.empty() ? 0 : rows.front().size();
  std::vector<double> flat;
  flat.reserve(rows.size() * dim);
  for (const auto& r : rows) {
    if (r.size() != dim) throw Error(ErrorKind::NonRectangular, "rows have differing lengths");
    flat.insert(flat.end(), r.begin(), r.end());
  }
  return validate_sample(rows.size(), dim, std::move(flat));
}

DistanceMatrix pairwise_distances(const SampleMatrix& s) {
  const std::size_t n = s.rows();
  const std::size_t dim = s.dim();
  std::vector<double> d(n * n, 0.0);
  for (std::size_t k = 0; k < n; ++k) {
    const auto xk = s.row(k);
    double* out = d.data() + k * n;
    for (std::size_t l = 0; l < n; ++l) {
      if (l == k) continue;
      const auto xl = s.row(l);
      double ss = 0.0;
      for (std::size_t j = 0; j < dim; ++j) {
        const double diff = xk[j] - xl[j];
        ss += diff * diff;
      }
      out[l] = std::sqrt(ss);
    }
  }
  return DistanceMatrix(n, std::move(d));
}

BoundsBox infer_box(const SampleMatrix& s) {
  const auto [lo, hi] = std::ranges::minmax(s.values());
  return BoundsBox{lo, hi, s.dim()};
}

std::optional<CellRef> first_outside(const SampleMatrix& s, const BoundsBox& b) {
  const auto v = s.values();
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!b.contains(v[i])) return CellRef{i / s.dim(), i % s.dim()};
  }
  return std::nullopt;
}

}  // namespace dcovbound
