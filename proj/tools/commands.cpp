#include "commands.hpp"

#include <cstdio>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "dcovbound/bounds.hpp"
#include "dcovbound/estimators.hpp"
#include "dcovbound/verify.hpp"

namespace dcovbound::cli {

using nlohmann::json;

namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

json optional_json(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

int dataset_error_code(const Error& e) {
  switch (e.kind()) {
    case ErrorKind::ParseError:
    case ErrorKind::InvalidBox:
      return kParseError;
    case ErrorKind::SampleOutsideBox:
      return kOutsideBox;
    default:
      return kInvariant;
  }
}

void print_row(std::ostream& out, const std::string& name, const std::string& value) {
  out << std::left << std::setw(18) << name << value << '\n';
}

BoundsBox box_for(const SampleMatrix& s, const std::optional<IntervalArg>& arg) {
  if (!arg) return infer_box(s);
  return make_box(arg->lo, arg->hi, s.dim());
}

}  // namespace

int cmd_compute(const DatasetFile& dataset, Format fmt, std::ostream& out, std::ostream& err) {
  try {
    const auto [x, y] = load_pair(dataset);
    const DCovEstimate e = estimate(x, y);
    if (fmt == Format::Json) {
      out << json{{"n", e.n},           {"dcov2", e.dcov2},   {"dcov", e.dcov},
                  {"dvar_x", e.dvar_x}, {"dvar_y", e.dvar_y}, {"dcor", optional_json(e.dcor)},
                  {"clamped", e.clamped}}
                 .dump()
          << '\n';
    } else {
      print_row(out, "n", std::to_string(e.n));
      print_row(out, "dcov", num(e.dcov));
      print_row(out, "dcov2", num(e.dcov2));
      print_row(out, "dvar_x", num(e.dvar_x));
      print_row(out, "dvar_y", num(e.dvar_y));
      print_row(out, "dcor", e.dcor ? num(*e.dcor) : "undefined");
      if (e.clamped) print_row(out, "clamped", "true");
    }
    return kOk;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return dataset_error_code(e);
  }
}

int cmd_bound(const BoundArgs& args, Format fmt, std::ostream& out, std::ostream& err) {
  if (args.dim_x < 1 || args.dim_y < 1) {
    err << "error: dimensions must be positive integers\n";
    return kParseError;
  }
  BoundsBox bx, by;
  try {
    bx = make_box(args.box_x.lo, args.box_x.hi, static_cast<std::size_t>(args.dim_x));
    by = make_box(args.box_y.lo, args.box_y.hi, static_cast<std::size_t>(args.dim_y));
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kParseError;
  }
  const double bound = theorem_bound(bx, by);
  const bool unit_equal = bx.width() == 1.0 && by.width() == 1.0 && bx.dim == by.dim;
  const bool scalar = bx.dim == 1 && by.dim == 1;
  std::optional<double> cor1;
  if (unit_equal) cor1 = corollary1_bound(bx.dim);

  if (fmt == Format::Json) {
    out << json{{"box_x", to_json(bx)},
                {"box_y", to_json(by)},
                {"theorem_bound", bound},
                {"popoviciu_x", popoviciu_bound(bx)},
                {"popoviciu_y", popoviciu_bound(by)},
                {"corollary1_bound", optional_json(cor1)},
                {"scalar_case", scalar}}
               .dump()
        << '\n';
  } else {
    print_row(out, "theorem_bound", num(bound));
    print_row(out, "popoviciu_x", num(popoviciu_bound(bx)));
    print_row(out, "popoviciu_y", num(popoviciu_bound(by)));
    if (cor1) print_row(out, "corollary1_bound", num(*cor1) + "  (unit intervals, N = M)");
    if (scalar) out << "note: both vectors are scalar; the bound reads (1/2) sqrt((b-a)(d-c))\n";
  }
  return kOk;
}

int cmd_check(const DatasetFile& dataset, const CheckArgs& args, Format fmt, std::ostream& out,
              std::ostream& err) {
  try {
    const auto [x, y] = load_pair(dataset);
    const BoundsBox bx = box_for(x, args.box_x);
    const BoundsBox by = box_for(y, args.box_y);
    const ChainAnalysis a = analyze_chain(x, y, bx, by);
    const auto links = check_links(a, args.tolerance_abs);
    bool pass = true;
    for (const auto& l : links) pass = pass && l.holds;

    if (fmt == Format::Json) {
      json jl = json::array();
      for (const auto& l : links) {
        jl.push_back({{"name", l.name},
                      {"kind", l.kind == LinkKind::Equal ? "equal" : "less_equal"},
                      {"lhs", l.lhs},
                      {"rhs", l.rhs},
                      {"violation", l.violation},
                      {"holds", l.holds}});
      }
      out << json{{"report", to_json(a.report)},
                  {"dcor", optional_json(a.estimate.dcor)},
                  {"links", std::move(jl)},
                  {"pass", pass}}
                 .dump()
          << '\n';
    } else {
      out << "box_x [" << num(bx.lo) << ", " << num(bx.hi) << "]^" << bx.dim << "  box_y ["
          << num(by.lo) << ", " << num(by.hi) << "]^" << by.dim << "  n " << a.report.n << '\n';
      for (const auto& l : links) {
        out << std::left << std::setw(18) << l.name << std::setw(14) << num(l.lhs)
            << (l.kind == LinkKind::Equal ? "==  " : "<=  ") << std::setw(14) << num(l.rhs)
            << (l.holds ? "pass" : "FAIL") << '\n';
      }
      print_row(out, "observed_dcov", num(a.report.observed_dcov));
      print_row(out, "theorem_bound", num(a.report.theorem_bound));
      print_row(out, "tightness", a.report.tightness ? num(*a.report.tightness) : "undefined");
      print_row(out, "result", pass ? "PASS" : "FAIL");
    }
    return pass ? kOk : kViolation;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return dataset_error_code(e);
  }
}

int cmd_verify(const VerifyArgs& args, Format fmt, std::ostream& out, std::ostream& err) {
  CampaignConfig cfg;
  try {
    std::ifstream in(args.config_path);
    if (!in) {
      err << "error: cannot open config '" << args.config_path << "'\n";
      return kParseError;
    }
    cfg = parse_config(json::parse(in));
  } catch (const json::exception& e) {
    err << "error: malformed config: " << e.what() << '\n';
    return kParseError;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kParseError;
  }
  if (args.seed) {
    for (std::size_t i = 0; i < cfg.specs.size(); ++i)
      cfg.specs[i].sampler.seed = derive_seed(*args.seed, i);
  }
  if (args.threads) cfg.threads = *args.threads;

  CampaignResult result;
  try {
    result = run_campaign(cfg);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kInvariant;
  }

  const std::string doc = to_json(result).dump(2) + "\n";
  if (args.out_path) {
    std::ofstream f(*args.out_path);
    if (!f) {
      err << "error: cannot write '" << *args.out_path << "'\n";
      return kParseError;
    }
    f << doc;
  }
  if (fmt == Format::Json) {
    if (!args.out_path) out << doc;
  } else {
    out << std::left << std::setw(28) << "spec" << std::setw(8) << "reps" << std::setw(12)
        << "violations" << std::setw(14) << "median dcov" << "median tightness\n";
    for (const auto& s : result.per_spec) {
      out << std::left << std::setw(28) << s.spec_id << std::setw(8) << s.replicates_run
          << std::setw(12) << s.chain_violations << std::setw(14) << num(s.dcov.median)
          << (s.tightness ? num(s.tightness->median) : "undefined") << '\n';
    }
    out << "overall " << (result.overall_pass ? "PASS" : "FAIL") << '\n';
  }
  return result.overall_pass ? kOk : kViolation;
}

}  // namespace dcovbound::cli
