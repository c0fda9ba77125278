#include <doctest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include <json.hpp>

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct RunResult {
  int code = -1;
  std::string out;
  std::string err;
};

fs::path work_dir() {
  static const fs::path dir = [] {
    fs::path d = fs::path(DCOVBOUND_TEST_WORKDIR) / "cli_tmp";
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

RunResult run(const std::string& args) {
  const fs::path err_file = work_dir() / "stderr.txt";
  const std::string cmd =
      std::string("\"") + DCOVBOUND_BIN + "\" " + args + " 2>\"" + err_file.string() + "\"";
  RunResult r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 4096> buf{};
  std::size_t got = 0;
  while ((got = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), got);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.err = slurp(err_file);
  return r;
}

std::string write_file(const std::string& name, const std::string& content) {
  const fs::path p = work_dir() / name;
  std::ofstream(p) << content;
  return "\"" + p.string() + "\"";
}

}  // namespace

TEST_CASE("compute on the two-point dataset") {
  const auto file = write_file("two.csv", "x,y\n0,0\n1,1\n");
  const auto r = run("compute " + file + " --header --x-cols 0 --y-cols 1 --format json");
  REQUIRE(r.code == 0);
  const json j = json::parse(r.out);
  CHECK(j.at("dcov").get<double>() == 0.5);
  CHECK(j.at("dcov2").get<double>() == 0.25);
  CHECK(j.at("dcor").get<double>() == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(j.at("n").get<int>() == 2);

  const auto human = run("compute " + file + " --header --x-cols x --y-cols y");
  CHECK(human.code == 0);
  CHECK(human.out.find("dcov") != std::string::npos);
  CHECK(human.out.find("0.5") != std::string::npos);
}

TEST_CASE("compute error exit codes") {
  const auto bad = write_file("bad.csv", "x,y\n0,0\n1,abc\n");
  const auto r = run("compute " + bad + " --header --x-cols 0 --y-cols 1");
  CHECK(r.code == 2);
  CHECK(r.err.find("line 3") != std::string::npos);
  CHECK(r.err.find("abc") != std::string::npos);

  const auto nan = write_file("nan.csv", "0,0\n1,nan\n");
  CHECK(run("compute " + nan + " --x-cols 0 --y-cols 1").code == 3);
  CHECK(run("compute " + nan + " --x-cols 0 --y-cols 0").code == 3);
  CHECK(run("compute " + nan + " --x-cols , --y-cols 1").code == 3);
  const auto header_only = write_file("header_only.csv", "x,y\n");
  CHECK(run("compute " + header_only + " --header --x-cols 0 --y-cols 1").code == 3);
  CHECK(run("compute " + write_file("none.csv", "0,1\n") + " --x-cols 0").code == 2);
  CHECK(run("compute \"" + (work_dir() / "missing.csv").string() + "\" --x-cols 0 --y-cols 1")
            .code == 2);
}

TEST_CASE("compute on a single row") {
  const auto file = write_file("one.csv", "0.3,0.9,0.1\n");
  const auto r = run("compute " + file + " --x-cols 0,1 --y-cols 2 --format json");
  REQUIRE(r.code == 0);
  const json j = json::parse(r.out);
  CHECK(j.at("dcov").get<double>() == 0.0);
  CHECK(j.at("dcor").is_null());
}

TEST_CASE("repeated runs print identical output") {
  std::string text = "a,b,c\n";
  for (int k = 0; k < 40; ++k)
    text += std::to_string(k * 0.37 - 3.1) + "," + std::to_string((k * 7) % 11 * 0.5) + "," +
            std::to_string((k * k) % 13 * 0.25) + "\n";
  const auto file = write_file("repeat.csv", text);
  for (const char* fmt : {"human", "json"}) {
    const std::string args =
        std::string("compute ") + file + " --header --x-cols a,b --y-cols c --format " + fmt;
    const auto a = run(args);
    const auto b = run(args);
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    const std::string cargs = std::string("check ") + file + " --header --x-cols a --y-cols b,c --format " + fmt;
    CHECK(run(cargs).out == run(cargs).out);
  }
}

TEST_CASE("bound subcommand") {
  auto r = run("bound --box-x 0 1 --box-y 0 1 -N 1 -M 1 --format json");
  REQUIRE(r.code == 0);
  json j = json::parse(r.out);
  CHECK(j.at("theorem_bound").get<double>() == 0.5);
  CHECK(j.at("corollary1_bound").get<double>() == 0.5);
  CHECK(j.at("scalar_case").get<bool>());

  r = run("bound --box-x 0 2 --box-y 0 8 -N 4 -M 1 --format json");
  REQUIRE(r.code == 0);
  j = json::parse(r.out);
  CHECK(j.at("theorem_bound").get<double>() == doctest::Approx(2.828427).epsilon(1e-6));
  CHECK(j.at("corollary1_bound").is_null());

  r = run("bound --box-x 0 1 --box-y 0 1 -N 1 -M 1");
  CHECK(r.out.find("corollary1_bound") != std::string::npos);
  CHECK(r.out.find("scalar") != std::string::npos);

  CHECK(run("bound --box-x 1 0 --box-y 0 1 -N 1 -M 1").code == 2);
  CHECK(run("bound --box-x 0 1 --box-y 1 0 -N 1 -M 1").code == 2);
  CHECK(run("bound --box-x 0 1 --box-y 0 1 -N 0 -M 1").code == 2);
  CHECK(run("bound --box-x 0 1 --box-y 0 1 -N 1 -M -2").code == 2);
  CHECK(run("bound --box-x 0 --box-y 0 1 -N 1 -M 1").code == 2);
}

TEST_CASE("check subcommand") {
  const auto file = write_file("two_check.csv", "x,y\n0,0\n1,1\n");
  auto r = run("check " + file + " --header --x-cols 0 --y-cols 1 --box-x 0 1 --box-y 0 1 --format json");
  REQUIRE(r.code == 0);
  json j = json::parse(r.out);
  CHECK(j.at("pass").get<bool>());
  CHECK(j.at("report").at("tightness").get<double>() == 1.0);
  for (const auto& link : j.at("links")) CHECK(link.at("holds").get<bool>());

  r = run("check " + file + " --header --x-cols 0 --y-cols 1 --box-x 0 0.5");
  CHECK(r.code == 4);

  const auto constant = write_file("const.csv", "2,5\n2,5\n2,5\n");
  r = run("check " + constant + " --x-cols 0 --y-cols 1 --format json");
  REQUIRE(r.code == 0);
  j = json::parse(r.out);
  CHECK(j.at("report").at("observed_dcov").get<double>() == 0.0);
  CHECK(j.at("report").at("tightness").is_null());

  r = run("check " + file + " --header --x-cols 0 --y-cols 1");
  CHECK(r.code == 0);
  CHECK(r.out.find("PASS") != std::string::npos);
}

TEST_CASE("verify subcommand") {
  const std::string shipped = std::string("\"") + DCOVBOUND_CONFIG_DIR + "/default_campaign.json\"";
  const fs::path out = work_dir() / "result.json";
  auto r = run("verify " + shipped + " --out \"" + out.string() + "\"");
  CHECK(r.code == 0);
  const json j = json::parse(slurp(out));
  CHECK(j.at("overall_pass").get<bool>());
  CHECK(!j.at("per_spec").empty());

  const std::string small = R"({"replicates": 2, "specs": [{"id": "s", "family": "mixture",
      "box_x": {"lo": 0, "hi": 1, "dim": 2}, "box_y": {"lo": 0, "hi": 1, "dim": 1}, "n": 20, "seed": 1}]})";
  const auto small_cfg = write_file("small.json", small);
  const auto first = run("verify " + small_cfg);
  CHECK(first.code == 0);
  CHECK(first.out == run("verify " + small_cfg).out);
  CHECK(run("verify " + small_cfg + " --seed 5").out == run("verify " + small_cfg + " --seed 5").out);
  CHECK(run("verify " + small_cfg + " --seed 5").out != first.out);
  CHECK(run("verify " + small_cfg + " --format human").out.find("overall PASS") != std::string::npos);

  json zero = json::parse(small);
  zero["replicates"] = 0;
  CHECK(run("verify " + write_file("zero.json", zero.dump())).code == 2);
  CHECK(run("verify " + write_file("broken.json", "{\"replicates\": ")).code == 2);
  CHECK(run("verify \"" + (work_dir() / "nope.json").string() + "\"").code == 2);

  // Below float resolution: a violation from rounding noise is possible, not guaranteed.
  json tiny = json::parse(small);
  tiny["tolerance_abs"] = 1e-30;
  const int code = run("verify " + write_file("tiny.json", tiny.dump())).code;
  CHECK((code == 0 || code == 1));
}

TEST_CASE("usage errors exit 2") {
  CHECK(run("").code == 2);
  CHECK(run("frobnicate").code == 2);
  CHECK(run("compute").code == 2);
  CHECK(run("--help").code == 0);
}
