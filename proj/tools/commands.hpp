#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>

#include "dcovbound/core.hpp"
#include "dcovbound/csv.hpp"

namespace dcovbound::cli {

enum ExitCode : int {
  kOk = 0,
  kViolation = 1,
  kParseError = 2,
  kInvariant = 3,
  kOutsideBox = 4,
};

enum class Format { Human, Json };

struct IntervalArg {
  double lo = 0.0;
  double hi = 0.0;
};

struct BoundArgs {
  IntervalArg box_x;
  IntervalArg box_y;
  long long dim_x = 1;
  long long dim_y = 1;
};

struct CheckArgs {
  std::optional<IntervalArg> box_x;
  std::optional<IntervalArg> box_y;
  double tolerance_abs = 1e-9;
};

struct VerifyArgs {
  std::string config_path;
  std::optional<std::string> out_path;
  std::optional<std::uint64_t> seed;
  std::optional<unsigned> threads;
};

int cmd_compute(const DatasetFile& dataset, Format fmt, std::ostream& out, std::ostream& err);
int cmd_bound(const BoundArgs& args, Format fmt, std::ostream& out, std::ostream& err);
int cmd_check(const DatasetFile& dataset, const CheckArgs& args, Format fmt, std::ostream& out,
              std::ostream& err);
int cmd_verify(const VerifyArgs& args, Format fmt, std::ostream& out, std::ostream& err);

}  // namespace dcovbound::cli
