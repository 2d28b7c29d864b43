// Machine-readable suite reports: JSON summary + CSV detail tables with the
// fixed column order
//   suite,check,param_json,estimate_re,estimate_im,reference_re,reference_im,
//   stderr,score,verdict

#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

namespace kmlab {

enum class Verdict { pass, fail, pole, exploratory };

const char* verdict_name(Verdict v);

struct CheckRecord {
  std::string name;
  std::string param_json = "{}";
  std::complex<double> estimate{0.0, 0.0};
  std::complex<double> reference{0.0, 0.0};
  double stderr_ = 0.0;
  double score = 0.0;  // z or gap, whichever the check uses
  Verdict verdict = Verdict::exploratory;
  std::string note;
};

struct SuiteReport {
  std::string suite;
  std::vector<CheckRecord> checks;
  double wall_seconds = 0.0;
  std::uint64_t seed = 0;
  int threads = 1;
  std::string kernel_lane;
  std::string version;

  int failures() const;
  void add(CheckRecord r) { checks.push_back(std::move(r)); }
};

// 17 significant digits: doubles round-trip exactly
std::string format_double(double v);

std::string to_json(const SuiteReport& report);
std::string to_csv(const SuiteReport& report);

// Writes <out_dir>/<suite>.json / .csv per requested formats.
void emit(const SuiteReport& report, const std::string& out_dir,
          const std::vector<std::string>& formats);

}  // namespace kmlab
