#include "dcovbound/verify.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <set>
#include <thread>

namespace dcovbound {

using nlohmann::json;

namespace {

struct ReplicateOutcome {
  std::size_t violations = 0;
  double max_violation = 0.0;
  std::optional<double> tightness;
  double dcov = 0.0;
  double dvar_x = 0.0;
  bool dcor_defined = false;
  std::optional<FailureRecord> failure;
};

std::vector<std::vector<double>> to_rows(const SampleMatrix& s) {
  std::vector<std::vector<double>> rows(s.rows());
  for (std::size_t k = 0; k < s.rows(); ++k) rows[k].assign(s.row(k).begin(), s.row(k).end());
  return rows;
}

ReplicateOutcome run_replicate(const CampaignConfig& cfg, const CampaignSpec& spec,
                               std::size_t replicate) {
  SamplerSpec sampler = spec.sampler;
  sampler.seed = derive_seed(spec.sampler.seed, replicate);
  auto [x, y] = generate(sampler);
  const ChainAnalysis a = analyze_chain(x, y, sampler.box_x, sampler.box_y);

  ReplicateOutcome out;
  out.tightness = a.report.tightness;
  out.dcov = a.estimate.dcov;
  out.dvar_x = a.estimate.dvar_x;
  out.dcor_defined = a.estimate.dcor.has_value();
  std::vector<std::string> violated;
  for (const LinkCheck& link : check_links(a, cfg.tolerance_abs)) {
    if (link.holds) continue;
    ++out.violations;
    out.max_violation = std::max(out.max_violation, link.violation);
    violated.push_back(link.name);
  }
  if (out.violations > 0 && cfg.record_failures) {
    out.failure = FailureRecord{spec.id,     replicate,       sampler.seed,  std::move(violated),
                                to_rows(x),  to_rows(y),      sampler.box_x, sampler.box_y};
  }
  return out;
}

double mean(const std::vector<double>& v) {
  long double s = 0;
  for (double x : v) s += x;
  return v.empty() ? 0.0 : static_cast<double>(s / static_cast<long double>(v.size()));
}

[[noreturn]] void malformed(const std::string& msg) {
  throw Error(ErrorKind::MalformedRecord, msg);
}

BoundsBox box_from_json(const json& j, ErrorKind kind) {
  if (!j.is_object() || !j.contains("lo") || !j.contains("hi") || !j.contains("dim"))
    throw Error(kind, "box needs lo, hi and dim");
  const auto& lo = j.at("lo");
  const auto& hi = j.at("hi");
  const auto& dim = j.at("dim");
  if (!lo.is_number() || !hi.is_number() || !dim.is_number_unsigned())
    throw Error(kind, "box fields must be numbers, dim a positive integer");
  try {
    return make_box(lo.get<double>(), hi.get<double>(), dim.get<std::size_t>());
  } catch (const Error& e) {
    throw Error(kind, e.what());
  }
}

std::vector<std::vector<double>> rows_from_json(const json& j, const char* name) {
  if (!j.is_array() || j.empty()) malformed(std::string(name) + " must be a non-empty array of rows");
  std::vector<std::vector<double>> rows;
  rows.reserve(j.size());
  for (const auto& r : j) {
    if (!r.is_array()) malformed(std::string(name) + " rows must be arrays");
    std::vector<double> row;
    row.reserve(r.size());
    for (const auto& v : r) {
      if (!v.is_number()) malformed(std::string(name) + " entries must be numbers");
      row.push_back(v.get<double>());
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

json quantiles_json(const Quantiles& q) {
  return {{"min", q.min}, {"median", q.median}, {"max", q.max}};
}

}  // namespace

Quantiles quantiles(std::vector<double> values) {
  if (values.empty()) return {};
  std::sort(values.begin(), values.end());
  const std::size_t m = values.size() / 2;
  const double median =
      values.size() % 2 == 1 ? values[m] : values[m - 1] + (values[m] - values[m - 1]) / 2.0;
  return {values.front(), median, values.back()};
}

void validate_config(const CampaignConfig& cfg) {
  if (cfg.replicates == 0) throw Error(ErrorKind::InvalidConfig, "replicates must be at least 1");
  if (!(cfg.tolerance_abs > 0.0))
    throw Error(ErrorKind::InvalidConfig, "tolerance_abs must be positive");
  if (cfg.specs.empty()) throw Error(ErrorKind::InvalidConfig, "config lists no specs");
  std::set<std::string> ids;
  for (const auto& s : cfg.specs) {
    if (!ids.insert(s.id).second)
      throw Error(ErrorKind::InvalidConfig, "duplicate spec id '" + s.id + "'");
    try {
      validate_spec(s.sampler);
    } catch (const Error& e) {
      throw Error(ErrorKind::InvalidConfig, "spec '" + s.id + "': " + e.what());
    }
  }
}

CampaignResult run_campaign(const CampaignConfig& cfg) {
  validate_config(cfg);
  const std::size_t total = cfg.specs.size() * cfg.replicates;
  std::vector<ReplicateOutcome> outcomes(total);

  std::atomic<std::size_t> next{0};
  std::exception_ptr first_error;
  std::mutex error_mutex;
  auto worker = [&] {
    for (std::size_t task = next++; task < total; task = next++) {
      const CampaignSpec& spec = cfg.specs[task / cfg.replicates];
      try {
        outcomes[task] = run_replicate(cfg, spec, task % cfg.replicates);
      } catch (const Error& e) {
        std::lock_guard lock(error_mutex);
        if (!first_error)
          first_error = std::make_exception_ptr(
              Error(e.kind(), "spec '" + spec.id + "': " + e.what(), e.cell()));
        next = total;
      }
    }
  };

  const unsigned threads = std::max(1u, std::min<unsigned>(cfg.threads, total));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  if (first_error) std::rethrow_exception(first_error);

  CampaignResult result;
  for (std::size_t s = 0; s < cfg.specs.size(); ++s) {
    SpecSummary sum;
    sum.spec_id = cfg.specs[s].id;
    sum.replicates_run = cfg.replicates;
    std::vector<double> tight, dcov, dvar;
    std::size_t defined = 0;
    for (std::size_t r = 0; r < cfg.replicates; ++r) {
      ReplicateOutcome& o = outcomes[s * cfg.replicates + r];
      sum.chain_violations += o.violations;
      sum.max_violation = std::max(sum.max_violation, o.max_violation);
      if (o.tightness) tight.push_back(*o.tightness);
      dcov.push_back(o.dcov);
      dvar.push_back(o.dvar_x);
      defined += o.dcor_defined ? 1 : 0;
      if (o.failure) result.failures.push_back(std::move(*o.failure));
    }
    if (!tight.empty()) sum.tightness = quantiles(tight);
    sum.mean_dcov = mean(dcov);
    sum.dcov = quantiles(dcov);
    sum.dvar_x = quantiles(dvar);
    sum.dcor_defined_fraction =
        static_cast<double>(defined) / static_cast<double>(cfg.replicates);
    if (sum.chain_violations > 0) result.overall_pass = false;
    result.per_spec.push_back(std::move(sum));
  }
  return result;
}

BoundReport replay_failure(const FailureRecord& record) {
  const SampleMatrix x = validate_sample(record.x);
  const SampleMatrix y = validate_sample(record.y);
  return build_report(x, y, record.box_x, record.box_y);
}

FailureRecord parse_failure_record(const json& j) {
  if (!j.is_object() || j.empty()) malformed("failure record must be a non-empty object");
  for (const char* key : {"x", "y", "box_x", "box_y"})
    if (!j.contains(key)) malformed(std::string("failure record lacks '") + key + "'");
  FailureRecord r;
  r.spec_id = j.value("spec_id", std::string{});
  r.replicate = j.value("replicate", std::size_t{0});
  r.seed = j.value("seed", std::uint64_t{0});
  r.violated_links = j.value("violated_links", std::vector<std::string>{});
  r.x = rows_from_json(j.at("x"), "x");
  r.y = rows_from_json(j.at("y"), "y");
  r.box_x = box_from_json(j.at("box_x"), ErrorKind::MalformedRecord);
  r.box_y = box_from_json(j.at("box_y"), ErrorKind::MalformedRecord);
  return r;
}

BoundReport replay_failure(const json& record) {
  return replay_failure(parse_failure_record(record));
}

CampaignConfig parse_config(const json& j) {
  auto invalid = [](const std::string& msg) { throw Error(ErrorKind::InvalidConfig, msg); };
  if (!j.is_object()) invalid("config must be a JSON object");
  CampaignConfig cfg;
  try {
    if (j.contains("replicates")) {
      const auto& r = j.at("replicates");
      if (!r.is_number_integer() || r.get<long long>() < 1)
        invalid("replicates must be a positive integer");
      cfg.replicates = r.get<std::size_t>();
    }
    cfg.tolerance_abs = j.value("tolerance_abs", cfg.tolerance_abs);
    cfg.record_failures = j.value("record_failures", cfg.record_failures);
    cfg.threads = j.value("threads", cfg.threads);
    if (!j.contains("specs") || !j.at("specs").is_array()) invalid("config needs a 'specs' array");
    std::size_t index = 0;
    for (const auto& s : j.at("specs")) {
      if (!s.is_object()) invalid("each spec must be an object");
      CampaignSpec cs;
      cs.id = s.value("id", "spec-" + std::to_string(index));
      const std::string family = s.value("family", std::string{});
      const auto f = parse_family(family);
      if (!f) invalid("spec '" + cs.id + "': unknown family '" + family + "'");
      cs.sampler.family = *f;
      if (!s.contains("box_x") || !s.contains("box_y"))
        invalid("spec '" + cs.id + "' needs box_x and box_y");
      cs.sampler.box_x = box_from_json(s.at("box_x"), ErrorKind::InvalidConfig);
      cs.sampler.box_y = box_from_json(s.at("box_y"), ErrorKind::InvalidConfig);
      if (!s.contains("n") || !s.at("n").is_number_unsigned())
        invalid("spec '" + cs.id + "' needs a positive integer n");
      cs.sampler.n = s.at("n").get<std::size_t>();
      cs.sampler.seed = s.value("seed", std::uint64_t{0});
      cs.sampler.w = s.value("w", 0.5);
      cfg.specs.push_back(std::move(cs));
      ++index;
    }
  } catch (const json::exception& e) {
    invalid(std::string("config field has the wrong type: ") + e.what());
  }
  validate_config(cfg);
  return cfg;
}

json to_json(const BoundsBox& b) { return {{"lo", b.lo}, {"hi", b.hi}, {"dim", b.dim}}; }

json to_json(const CampaignConfig& cfg) {
  json specs = json::array();
  for (const auto& s : cfg.specs) {
    specs.push_back({{"id", s.id},
                     {"family", std::string(to_string(s.sampler.family))},
                     {"box_x", to_json(s.sampler.box_x)},
                     {"box_y", to_json(s.sampler.box_y)},
                     {"n", s.sampler.n},
                     {"seed", s.sampler.seed},
                     {"w", s.sampler.w}});
  }
  return {{"replicates", cfg.replicates},
          {"tolerance_abs", cfg.tolerance_abs},
          {"record_failures", cfg.record_failures},
          {"threads", cfg.threads},
          {"specs", std::move(specs)}};
}

json to_json(const FailureRecord& r) {
  return {{"spec_id", r.spec_id},          {"replicate", r.replicate}, {"seed", r.seed},
          {"violated_links", r.violated_links}, {"x", r.x},           {"y", r.y},
          {"box_x", to_json(r.box_x)},     {"box_y", to_json(r.box_y)}};
}

json to_json(const CampaignResult& r) {
  json per_spec = json::array();
  for (const auto& s : r.per_spec) {
    per_spec.push_back({{"spec_id", s.spec_id},
                        {"replicates_run", s.replicates_run},
                        {"chain_violations", s.chain_violations},
                        {"max_violation", s.max_violation},
                        {"tightness", s.tightness ? quantiles_json(*s.tightness) : json(nullptr)},
                        {"dcov", quantiles_json(s.dcov)},
                        {"dvar_x", quantiles_json(s.dvar_x)},
                        {"mean_dcov", s.mean_dcov},
                        {"dcor_defined_fraction", s.dcor_defined_fraction}});
  }
  json failures = json::array();
  for (const auto& f : r.failures) failures.push_back(to_json(f));
  return {{"per_spec", std::move(per_spec)},
          {"failures", std::move(failures)},
          {"overall_pass", r.overall_pass}};
}

json to_json(const BoundReport& r) {
  return {{"n", r.n},
          {"box_x", to_json(r.box_x)},
          {"box_y", to_json(r.box_y)},
          {"theorem_bound", r.theorem_bound},
          {"popoviciu_x", r.popoviciu_x},
          {"popoviciu_y", r.popoviciu_y},
          {"var_dist_x", r.var_dist_x},
          {"var_dist_y", r.var_dist_y},
          {"lemma2_x", r.lemma2_x},
          {"lemma2_y", r.lemma2_y},
          {"dvar_x", r.dvar_x},
          {"dvar_y", r.dvar_y},
          {"lemma1_rhs", r.lemma1_rhs},
          {"observed_dcov", r.observed_dcov},
          {"tightness", r.tightness ? json(*r.tightness) : json(nullptr)}};
}

}  // namespace dcovbound
