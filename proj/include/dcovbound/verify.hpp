#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "dcovbound/bounds.hpp"
#include "dcovbound/samplers.hpp"

namespace dcovbound {

struct CampaignSpec {
  std::string id;
  SamplerSpec sampler;
};

struct CampaignConfig {
  std::vector<CampaignSpec> specs;
  std::size_t replicates = 1;
  double tolerance_abs = 1e-9;
  bool record_failures = false;
  unsigned threads = 1;
};

/// Raw inputs of a replicate with at least one violated link. Samples are
/// stored verbatim so replay does not depend on the sampler.
struct FailureRecord {
  std::string spec_id;
  std::size_t replicate = 0;
  std::uint64_t seed = 0;
  std::vector<std::string> violated_links;
  std::vector<std::vector<double>> x;
  std::vector<std::vector<double>> y;
  BoundsBox box_x;
  BoundsBox box_y;
};

struct Quantiles {
  double min = 0.0;
  double median = 0.0;
  double max = 0.0;
};

struct SpecSummary {
  std::string spec_id;
  std::size_t replicates_run = 0;
  std::size_t chain_violations = 0;   // violated link evaluations
  double max_violation = 0.0;         // largest positive violation, 0 when none
  std::optional<Quantiles> tightness; // over replicates with a nonzero bound
  Quantiles dcov;
  Quantiles dvar_x;
  double mean_dcov = 0.0;
  double dcor_defined_fraction = 0.0;
};

struct CampaignResult {
  std::vector<SpecSummary> per_spec;
  std::vector<FailureRecord> failures;
  bool overall_pass = true;
};

/// Throws InvalidConfig for replicates == 0, tolerance_abs <= 0, duplicate
/// ids, or an invalid sampler spec (message prefixed with the spec id).
void validate_config(const CampaignConfig& cfg);

/// Replicate r of spec s uses seed derive_seed(s.sampler.seed, r). Results
/// are collected by (spec, replicate) index, so they do not depend on the
/// thread count.
CampaignResult run_campaign(const CampaignConfig& cfg);

/// min, median and max; the median of an even-sized set is the mean of the two middle values.
Quantiles quantiles(std::vector<double> values);

BoundReport replay_failure(const FailureRecord& record);

/// Throws MalformedRecord when the document is not a complete record.
FailureRecord parse_failure_record(const nlohmann::json& j);
BoundReport replay_failure(const nlohmann::json& record);

CampaignConfig parse_config(const nlohmann::json& j);
nlohmann::json to_json(const CampaignConfig& cfg);
nlohmann::json to_json(const CampaignResult& r);
nlohmann::json to_json(const FailureRecord& r);
nlohmann::json to_json(const BoundReport& r);
nlohmann::json to_json(const BoundsBox& b);

}  // namespace dcovbound
