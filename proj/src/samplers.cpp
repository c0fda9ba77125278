#include "dcovbound/samplers.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <random>
#include <sstream>
#include <vector>

namespace dcovbound {

namespace {

constexpr std::array<std::pair<Family, std::string_view>, 5> kFamilyNames{{
    {Family::IndependentUniform, "independent_uniform"},
    {Family::ComonotoneUniform, "comonotone_uniform"},
    {Family::BernoulliCorners, "bernoulli_corners"},
    {Family::Mixture, "mixture"},
    {Family::Constant, "constant"},
}};

std::uint32_t lo32(std::uint64_t v) { return static_cast<std::uint32_t>(v & 0xffffffffu); }
std::uint32_t hi32(std::uint64_t v) { return static_cast<std::uint32_t>(v >> 32); }

class Stream {
 public:
  Stream(std::uint64_t seed, Family family) {
    std::seed_seq seq{lo32(seed), hi32(seed), static_cast<std::uint32_t>(family)};
    engine_.seed(seq);
  }

  // [0, 1)
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  bool coin() { return (engine_() >> 63) != 0; }

  double uniform_in(const BoundsBox& b) {
    return std::min(b.hi, b.lo + b.width() * uniform());
  }

 private:
  std::mt19937_64 engine_;
};

double midpoint(const BoundsBox& b) { return std::min(b.hi, b.lo + b.width() / 2.0); }

double map_affine(double v, const BoundsBox& from, const BoundsBox& to) {
  if (from.degenerate()) return midpoint(to);
  const double t = (v - from.lo) / from.width();
  return std::clamp(to.lo + to.width() * t, to.lo, to.hi);
}

}  // namespace

std::string_view to_string(Family f) {
  for (const auto& [family, name] : kFamilyNames)
    if (family == f) return name;
  return "unknown";
}

std::optional<Family> parse_family(std::string_view name) {
  for (const auto& [family, n] : kFamilyNames)
    if (n == name) return family;
  return std::nullopt;
}

void validate_spec(const SamplerSpec& spec) {
  auto bad = [](const std::string& msg) { throw Error(ErrorKind::BadSpec, msg); };
  if (spec.n == 0) bad("sample size n must be at least 1");
  if (!(spec.w >= 0.0 && spec.w <= 1.0)) bad("mixture weight w must lie in [0, 1]");
  for (const BoundsBox* b : {&spec.box_x, &spec.box_y}) {
    if (!std::isfinite(b->lo) || !std::isfinite(b->hi) || b->lo > b->hi || b->dim == 0)
      bad("sampler boxes need finite lo <= hi and dim >= 1");
  }
  if (spec.family == Family::BernoulliCorners && spec.box_x.dim != spec.box_y.dim) {
    std::ostringstream os;
    os << "bernoulli_corners couples components one-to-one and needs equal dims, got "
       << spec.box_x.dim << " and " << spec.box_y.dim;
    bad(os.str());
  }
}

std::pair<SampleMatrix, SampleMatrix> generate(const SamplerSpec& spec) {
  validate_spec(spec);
  const std::size_t n = spec.n;
  const BoundsBox& bx = spec.box_x;
  const BoundsBox& by = spec.box_y;
  std::vector<double> x(n * bx.dim);
  std::vector<double> y(n * by.dim);
  Stream rng(spec.seed, spec.family);

  for (std::size_t k = 0; k < n; ++k) {
    double* xr = x.data() + k * bx.dim;
    double* yr = y.data() + k * by.dim;
    switch (spec.family) {
      case Family::IndependentUniform:
        for (std::size_t j = 0; j < bx.dim; ++j) xr[j] = rng.uniform_in(bx);
        for (std::size_t j = 0; j < by.dim; ++j) yr[j] = rng.uniform_in(by);
        break;
      case Family::ComonotoneUniform:
        for (std::size_t j = 0; j < bx.dim; ++j) xr[j] = rng.uniform_in(bx);
        for (std::size_t j = 0; j < by.dim; ++j) yr[j] = map_affine(xr[j % bx.dim], bx, by);
        break;
      case Family::BernoulliCorners:
        for (std::size_t j = 0; j < bx.dim; ++j) {
          const bool high = rng.coin();
          xr[j] = high ? bx.hi : bx.lo;
          yr[j] = high ? by.hi : by.lo;
        }
        break;
      case Family::Mixture: {
        for (std::size_t j = 0; j < bx.dim; ++j) xr[j] = rng.uniform_in(bx);
        const bool coupled = rng.uniform() < spec.w;
        for (std::size_t j = 0; j < by.dim; ++j)
          yr[j] = coupled ? map_affine(xr[j % bx.dim], bx, by) : rng.uniform_in(by);
        break;
      }
      case Family::Constant:
        std::fill(xr, xr + bx.dim, midpoint(bx));
        std::fill(yr, yr + by.dim, midpoint(by));
        break;
    }
  }
  return {validate_sample(n, bx.dim, std::move(x)), validate_sample(n, by.dim, std::move(y))};
}

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t replicate) {
  std::seed_seq seq{lo32(base), hi32(base), lo32(replicate), hi32(replicate), 0x5eedu};
  std::array<std::uint32_t, 2> out{};
  seq.generate(out.begin(), out.end());
  return (static_cast<std::uint64_t>(out[1]) << 32) | out[0];
}

}  // namespace dcovbound
