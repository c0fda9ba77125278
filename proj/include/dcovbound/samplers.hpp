#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <utility>

#include "dcovbound/core.hpp"

namespace dcovbound {

enum class Family {
  IndependentUniform,
  ComonotoneUniform,
  BernoulliCorners,
  Mixture,
  Constant,
};

std::string_view to_string(Family f);
std::optional<Family> parse_family(std::string_view name);

/// Distribution family on box_x x box_y plus sample size and seed.
///
/// independent_uniform  X, Y iid uniform on their boxes, independent of each other.
/// comonotone_uniform   X uniform; Y[j] = c + (d - c) * (X[j mod N] - a) / (b - a).
///                      Components of X are cycled when M > N and truncated when M < N.
///                      A degenerate X box maps to the midpoint of the Y box.
/// bernoulli_corners    X[j] iid on {a, b} with p = 1/2; Y[j] = c when X[j] = a, else d.
///                      Requires N == M.
/// mixture              per row, with probability w Y is the comonotone image of X,
///                      otherwise Y is drawn independently.
/// constant             every row of X (Y) is the midpoint of box_x (box_y).
struct SamplerSpec {
  Family family = Family::IndependentUniform;
  BoundsBox box_x{0.0, 1.0, 1};
  BoundsBox box_y{0.0, 1.0, 1};
  std::size_t n = 1;
  std::uint64_t seed = 0;
  double w = 0.5;
};

/// Throws BadSpec when the spec cannot be generated.
void validate_spec(const SamplerSpec& spec);

/// Deterministic in the sampler spec: a std::mt19937_64 stream is keyed by
/// std::seed_seq{seed_lo, seed_hi, family_id}. Uniforms take the top 53 bits
/// of one draw; Bernoulli draws take the top bit. Draw order is row-major:
/// for each row, the X components, then (mixture only) the coupling draw,
/// then the Y components.
std::pair<SampleMatrix, SampleMatrix> generate(const SamplerSpec& spec);

/// Seed for replicate r of a campaign spec with the given base seed;
/// the first 64 bits of std::seed_seq{base_lo, base_hi, r_lo, r_hi, 0x5eed}.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t replicate);

}  // namespace dcovbound
