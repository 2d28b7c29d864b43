// Verification suite registry.  Every suite is deterministic given
// (config, seed); exploratory checks never affect exit codes.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "kmlab/report.hpp"

namespace kmlab {

struct SuiteConfig {
  std::uint64_t seed = 20260810;
  int threads = 2;
  std::uint64_t draws = 0;  // 0: per-suite default
  std::string out_dir = "out";
  std::vector<std::string> formats = {"json", "csv"};
};

// Registered suite names, in the canonical order.
const std::vector<std::string>& suite_names();

bool suite_exists(const std::string& name);

// Runs one suite; throws UnknownSuite / ConfigError.
SuiteReport run_suite(const std::string& name, const SuiteConfig& config);

// Parses `key = value` lines (# comments); unknown keys rejected.
SuiteConfig load_config_file(const std::string& path, SuiteConfig base);

extern const char* kVersion;

}  // namespace kmlab
