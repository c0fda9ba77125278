#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "commands.hpp"

using namespace dcovbound;
using namespace dcovbound::cli;

namespace {

struct DatasetOptions {
  std::string path;
  std::string x_cols;
  std::string y_cols;
  bool header = false;
  std::string delimiter = ",";
};

void add_dataset_options(CLI::App* cmd, DatasetOptions& o) {
  cmd->add_option("file", o.path, "CSV dataset")->required();
  cmd->add_option("--x-cols", o.x_cols, "comma-separated X columns (indices or header names)")
      ->required();
  cmd->add_option("--y-cols", o.y_cols, "comma-separated Y columns (indices or header names)")
      ->required();
  cmd->add_flag("--header", o.header, "first non-blank line is a header");
  cmd->add_option("--delimiter", o.delimiter, "field delimiter (single character)")
      ->check([](const std::string& s) {
        return s.size() == 1 ? std::string{} : std::string("delimiter must be one character");
      });
}

DatasetFile to_dataset(const DatasetOptions& o) {
  return DatasetFile{o.path, split_list(o.x_cols), split_list(o.y_cols), o.header,
                     o.delimiter.front()};
}

const std::map<std::string, Format> kFormats{{"human", Format::Human}, {"json", Format::Json}};

void add_format(CLI::App* cmd, Format& fmt) {
  cmd->add_option("--format", fmt, "output format: human or json")
      ->transform(CLI::CheckedTransformer(kFormats, CLI::ignore_case));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Distance covariance estimates and bounds for bounded random vectors"};
  app.require_subcommand(1);

  DatasetOptions compute_ds;
  Format compute_fmt = Format::Human;
  auto* compute = app.add_subcommand("compute", "estimate dCov, dVar and dCor from a CSV file");
  add_dataset_options(compute, compute_ds);
  add_format(compute, compute_fmt);

  BoundArgs bound_args;
  std::vector<double> bound_bx, bound_by;
  Format bound_fmt = Format::Human;
  auto* bound = app.add_subcommand("bound", "evaluate the closed-form dCov bound for two boxes");
  bound->add_option("--box-x", bound_bx, "interval [a, b] of every X component")
      ->expected(2)
      ->allow_extra_args(false)
      ->required();
  bound->add_option("--box-y", bound_by, "interval [c, d] of every Y component")
      ->expected(2)
      ->allow_extra_args(false)
      ->required();
  bound->add_option("-N,--dim-x", bound_args.dim_x, "number of X components")->required();
  bound->add_option("-M,--dim-y", bound_args.dim_y, "number of Y components")->required();
  add_format(bound, bound_fmt);

  DatasetOptions check_ds;
  std::vector<double> check_bx, check_by;
  CheckArgs check_args;
  Format check_fmt = Format::Human;
  auto* check = app.add_subcommand("check", "evaluate and check the full bound chain on a dataset");
  add_dataset_options(check, check_ds);
  check->add_option("--box-x", check_bx, "declared X interval LO HI (default: inferred)")
      ->expected(2)
      ->allow_extra_args(false);
  check->add_option("--box-y", check_by, "declared Y interval LO HI (default: inferred)")
      ->expected(2)
      ->allow_extra_args(false);
  check->add_option("--tolerance", check_args.tolerance_abs, "absolute slack per link")
      ->check(CLI::PositiveNumber);
  add_format(check, check_fmt);

  VerifyArgs verify_args;
  std::string verify_out;
  std::uint64_t verify_seed = 0;
  unsigned verify_threads = 1;
  Format verify_fmt = Format::Json;
  auto* verify = app.add_subcommand("verify", "run a Monte Carlo verification campaign");
  verify->add_option("config", verify_args.config_path, "campaign config (JSON)")->required();
  auto* out_opt = verify->add_option("--out", verify_out, "write the JSON result to PATH");
  auto* seed_opt = verify->add_option("--seed", verify_seed, "override every spec seed");
  auto* threads_opt =
      verify->add_option("--threads", verify_threads, "worker threads")->check(CLI::PositiveNumber);
  add_format(verify, verify_fmt);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kParseError;
  }

  if (compute->parsed()) return cmd_compute(to_dataset(compute_ds), compute_fmt, std::cout, std::cerr);

  if (bound->parsed()) {
    bound_args.box_x = {bound_bx[0], bound_bx[1]};
    bound_args.box_y = {bound_by[0], bound_by[1]};
    return cmd_bound(bound_args, bound_fmt, std::cout, std::cerr);
  }

  if (check->parsed()) {
    if (!check_bx.empty()) check_args.box_x = IntervalArg{check_bx[0], check_bx[1]};
    if (!check_by.empty()) check_args.box_y = IntervalArg{check_by[0], check_by[1]};
    return cmd_check(to_dataset(check_ds), check_args, check_fmt, std::cout, std::cerr);
  }

  if (*out_opt) verify_args.out_path = verify_out;
  if (*seed_opt) verify_args.seed = verify_seed;
  if (*threads_opt) verify_args.threads = verify_threads;
  return cmd_verify(verify_args, verify_fmt, std::cout, std::cerr);
}
