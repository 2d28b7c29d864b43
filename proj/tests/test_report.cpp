#include <cstdio>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "kmlab/errors.hpp"
#include "kmlab/report.hpp"
#include "kmlab/suites.hpp"

using namespace kmlab;

namespace {

SuiteReport sample_report() {
  SuiteReport rep;
  rep.suite = "demo";
  rep.seed = 7;
  rep.threads = 1;
  rep.kernel_lane = "scalar";
  rep.version = kVersion;
  CheckRecord a;
  a.name = "alpha";
  a.param_json = "{\"n\":2}";
  a.estimate = {0.123456789012345678, -1.0 / 3.0};
  a.reference = {0.1234567890123, -0.33333};
  a.stderr_ = 1e-3;
  a.score = 0.5;
  a.verdict = Verdict::pass;
  rep.add(a);
  CheckRecord b = a;
  b.name = "beta, with commas";
  b.verdict = Verdict::fail;
  b.estimate = {1e-300, 987654321.123456789};
  rep.add(b);
  CheckRecord c = a;
  c.name = "gamma";
  c.verdict = Verdict::exploratory;
  rep.add(c);
  return rep;
}

}  // namespace

TEST_CASE("csv round trip at 17 significant digits") {
  const SuiteReport rep = sample_report();
  const std::string csv = to_csv(rep);
  std::istringstream in(csv);
  std::string header;
  std::getline(in, header);
  CHECK(header ==
        "suite,check,param_json,estimate_re,estimate_im,reference_re,"
        "reference_im,stderr,score,verdict");
  // parse back the numeric fields of each row and compare exactly
  std::string line;
  int row = 0;
  while (std::getline(in, line)) {
    // split respecting quotes
    std::vector<std::string> fields;
    std::string cur;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
      const char ch = line[i];
      if (quoted) {
        if (ch == '"' && i + 1 < line.size() && line[i + 1] == '"') {
          cur += '"';
          ++i;
        } else if (ch == '"') {
          quoted = false;
        } else {
          cur += ch;
        }
      } else if (ch == '"') {
        quoted = true;
      } else if (ch == ',') {
        fields.push_back(cur);
        cur.clear();
      } else {
        cur += ch;
      }
    }
    fields.push_back(cur);
    REQUIRE(fields.size() == 10);
    const CheckRecord& want = rep.checks[row];
    CHECK(std::stod(fields[3]) == want.estimate.real());
    CHECK(std::stod(fields[4]) == want.estimate.imag());
    CHECK(std::stod(fields[5]) == want.reference.real());
    CHECK(std::stod(fields[6]) == want.reference.imag());
    CHECK(std::stod(fields[7]) == want.stderr_);
    CHECK(std::stod(fields[8]) == want.score);
    ++row;
  }
  CHECK(row == 3);
}

TEST_CASE("json counts equal csv tallies") {
  const SuiteReport rep = sample_report();
  const auto j = nlohmann::json::parse(to_json(rep));
  CHECK(j["counts"]["pass"] == 1);
  CHECK(j["counts"]["fail"] == 1);
  CHECK(j["counts"]["exploratory"] == 1);
  const std::string csv = to_csv(rep);
  int pass = 0, fail = 0;
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  while (std::getline(in, line)) {
    if (line.find(",pass") != std::string::npos) ++pass;
    if (line.find(",fail") != std::string::npos) ++fail;
  }
  CHECK(pass == j["counts"]["pass"]);
  CHECK(fail == j["counts"]["fail"]);
}

TEST_CASE("empty report: header-only csv") {
  SuiteReport rep;
  rep.suite = "empty";
  const std::string csv = to_csv(rep);
  CHECK(csv ==
        "suite,check,param_json,estimate_re,estimate_im,reference_re,"
        "reference_im,stderr,score,verdict\n");
}

TEST_CASE("config parsing") {
  const char* path = "kmlab_test_config.tmp";
  {
    std::ofstream f(path);
    f << "# comment\nseed = 99\nthreads=3\n  draws = 1234  # inline\n"
      << "format = json\n";
  }
  SuiteConfig cfg = load_config_file(path, SuiteConfig{});
  CHECK(cfg.seed == 99);
  CHECK(cfg.threads == 3);
  CHECK(cfg.draws == 1234);
  REQUIRE(cfg.formats.size() == 1);
  CHECK(cfg.formats[0] == "json");
  {
    std::ofstream f(path);
    f << "bogus_key = 1\n";
  }
  CHECK_THROWS_AS(load_config_file(path, SuiteConfig{}), ConfigError);
  std::remove(path);
}

TEST_CASE("suite registry") {
  CHECK(suite_exists("selberg"));
  CHECK(!suite_exists("no-such"));
  CHECK(suite_names().size() == 16);
  CHECK_THROWS_AS(run_suite("no-such", SuiteConfig{}), UnknownSuite);
}
