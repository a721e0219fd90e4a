#include <filesystem>
#include <sstream>

#include "doctest.h"
#include "fixtures.hpp"
#include "lsfrp/cli.hpp"
#include "lsfrp/instance_io.hpp"

using namespace lsfrp;

namespace {

struct Run {
  int code = 0;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  Run r;
  r.code = cli::run(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::string temp_file(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("lsfrp_cli_" + name)).string();
}

}  // namespace

TEST_CASE("solve prints the T1 solution") {
  const Instance in = read_instance(testing::fixture_path("t1.json"));
  for (const char* method : {"reduced", "reduced-tight", "revised", "colgen", "colgen-lazy", "oracle"}) {
    CAPTURE(method);
    const Run r = run({"solve", "--instance", testing::fixture_path("t1.json"), "--method", method});
    REQUIRE(r.code == cli::kOk);
    const Solution sol = parse_solution(r.out, in);
    CHECK(sol.objective == doctest::Approx(676));
    CHECK(sol.method == method);
  }
}

TEST_CASE("solve writes a file and a summary line") {
  const std::string path = temp_file("t1_solution.json");
  const Run r = run({"solve", "--instance", testing::fixture_path("t1.json"), "--out", path, "--no-timing"});
  REQUIRE(r.code == cli::kOk);
  CHECK(r.out == "method=colgen-lazy status=optimal objective=676\n");
  CHECK(read_text_file(path).find("wall_time_s") == std::string::npos);
  std::filesystem::remove(path);
}

TEST_CASE("empty revenue override is recorded") {
  const Run r = run({"solve", "--instance", testing::fixture_path("t1.json"), "--empty-revenue", "12345", "--seed", "9",
                     "--no-timing"});
  REQUIRE(r.code == cli::kOk);
  CHECK(r.out.find("\"empty_revenue_cents\": \"12345\"") != std::string::npos);
  CHECK(r.out.find("\"seed\": \"9\"") != std::string::npos);
}

TEST_CASE("usage errors exit 64") {
  CHECK(run({}).code == cli::kUsage);
  CHECK(run({"solve"}).code == cli::kUsage);
  CHECK(run({"solve", "--instance", testing::fixture_path("t1.json"), "--method", "simplex"}).code == cli::kUsage);
  CHECK(run({"solve", "--instance", testing::fixture_path("t1.json"), "--empty-revenue", "1", "--empty-revenue", "2"})
            .code == cli::kUsage);
  CHECK(run({"generate", "--ships", "0"}).code == cli::kUsage);
  CHECK(run({"generate", "--revenue", "abc"}).code == cli::kUsage);
}

TEST_CASE("malformed instance exits 65") {
  const std::string path = temp_file("broken.json");
  write_text_file(path, "{\"schema\": \"lsfrp-instance-v9\"}");
  const Run r = run({"solve", "--instance", path});
  CHECK(r.code == cli::kBadInput);
  CHECK_FALSE(r.err.empty());
  std::filesystem::remove(path);
}

TEST_CASE("oracle refusal exits 3") {
  const std::string path = temp_file("big.json");
  REQUIRE(run({"generate", "--ships", "3", "--visits", "36", "--demands", "28", "--seed", "7", "--out", path}).code ==
          cli::kOk);
  const Run r = run({"solve", "--instance", path, "--method", "oracle"});
  CHECK(r.code == cli::kNoSolution);
  CHECK(r.out.find("\"status\": \"refused\"") != std::string::npos);
  std::filesystem::remove(path);
}

TEST_CASE("compare agrees on T1 and reports the revenue pair") {
  const Run r = run({"compare", "--instance", testing::fixture_path("t1.json"), "--oracle", "--empty-revenue", "0",
                     "--empty-revenue", "15000"});
  REQUIRE(r.code == cli::kOk);
  CHECK(r.out.find("MISMATCH") == std::string::npos);
  CHECK(r.out.find("empty revenue 0 -> 15000 cents/TEU: objective 676 -> 676") != std::string::npos);
  CHECK(r.out.find("empty_revenue_cents,method,status,objective") != std::string::npos);
}

TEST_CASE("compare writes CSV with one row per method") {
  const std::string path = temp_file("report.csv");
  const Run r = run({"compare", "--instance", testing::fixture_path("t1.json"), "--methods", "revised,colgen",
                     "--csv", path});
  REQUIRE(r.code == cli::kOk);
  std::istringstream csv(read_text_file(path));
  std::vector<std::string> lines;
  for (std::string line; std::getline(csv, line);) lines.push_back(line);
  REQUIRE(lines.size() == 3);
  CHECK(lines[1].rfind("file,revised,optimal,676,", 0) == 0);
  CHECK(lines[2].rfind("file,colgen,optimal,676,", 0) == 0);
  std::filesystem::remove(path);
}

TEST_CASE("generate is deterministic and prints stats") {
  const Run a = run({"generate", "--seed", "42", "--revenue", "60000:90000"});
  const Run b = run({"generate", "--seed", "42", "--revenue", "60000:90000"});
  REQUIRE(a.code == cli::kOk);
  CHECK(a.out == b.out);
  CHECK(a.err.find("|S| 3  |V| 14") != std::string::npos);
  const Instance in = parse_instance(a.out);
  CHECK(in.name == "gen-42");
  for (const Demand& m : in.demands) {
    CHECK(m.revenue >= 600);
    CHECK(m.revenue <= 900);
  }
}
