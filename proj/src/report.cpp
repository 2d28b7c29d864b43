#include "kmlab/report.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "kmlab/errors.hpp"
#include "json.hpp"

namespace kmlab {

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::pass: return "pass";
    case Verdict::fail: return "fail";
    case Verdict::pole: return "pole";
    case Verdict::exploratory: return "exploratory";
  }
  return "?";
}

int SuiteReport::failures() const {
  int n = 0;
  for (const auto& c : checks)
    if (c.verdict == Verdict::fail) ++n;
  return n;
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string to_json(const SuiteReport& report) {
  nlohmann::ordered_json j;
  j["suite"] = report.suite;
  j["seed"] = report.seed;
  j["threads"] = report.threads;
  j["kernel_lane"] = report.kernel_lane;
  j["version"] = report.version;
  j["wall_seconds"] = report.wall_seconds;
  int pass = 0, fail = 0, pole = 0, expl = 0;
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& c : report.checks) {
    nlohmann::ordered_json e;
    e["check"] = c.name;
    e["params"] = nlohmann::ordered_json::parse(c.param_json);
    e["estimate_re"] = c.estimate.real();
    e["estimate_im"] = c.estimate.imag();
    e["reference_re"] = c.reference.real();
    e["reference_im"] = c.reference.imag();
    e["stderr"] = c.stderr_;
    e["score"] = c.score;
    e["verdict"] = verdict_name(c.verdict);
    if (!c.note.empty()) e["note"] = c.note;
    arr.push_back(std::move(e));
    switch (c.verdict) {
      case Verdict::pass: ++pass; break;
      case Verdict::fail: ++fail; break;
      case Verdict::pole: ++pole; break;
      case Verdict::exploratory: ++expl; break;
    }
  }
  j["counts"] = {{"pass", pass}, {"fail", fail}, {"pole", pole},
                 {"exploratory", expl}};
  j["checks"] = std::move(arr);
  return j.dump(2) + "\n";
}

namespace {

std::string csv_escape(const std::string& s) {
  bool need = false;
  for (char c : s)
    if (c == ',' || c == '"' || c == '\n') need = true;
  if (!need) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

}  // namespace

std::string to_csv(const SuiteReport& report) {
  std::string out =
      "suite,check,param_json,estimate_re,estimate_im,reference_re,"
      "reference_im,stderr,score,verdict\n";
  for (const auto& c : report.checks) {
    out += report.suite + ',' + csv_escape(c.name) + ',' +
           csv_escape(c.param_json) + ',' + format_double(c.estimate.real()) +
           ',' + format_double(c.estimate.imag()) + ',' +
           format_double(c.reference.real()) + ',' +
           format_double(c.reference.imag()) + ',' + format_double(c.stderr_) +
           ',' + format_double(c.score) + ',' + verdict_name(c.verdict) + '\n';
  }
  return out;
}

void emit(const SuiteReport& report, const std::string& out_dir,
          const std::vector<std::string>& formats) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  for (const auto& fmt : formats) {
    const std::string path = out_dir + "/" + report.suite + "." + fmt;
    std::ofstream f(path, std::ios::binary);
    if (!f) throw Error("emit: cannot open " + path);
    if (fmt == "json") f << to_json(report);
    else if (fmt == "csv") f << to_csv(report);
    else throw ConfigError("unknown format: " + fmt);
    if (!f) throw Error("emit: write failed for " + path);
  }
}

}  // namespace kmlab
