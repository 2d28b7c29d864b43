// kmlab batch entry point.
//
//   kmlab run <suite> [--config PATH] [--seed N] [--threads N] [--out DIR]
//                     [--format json,csv]
//   kmlab list
//   kmlab all [same options]
//
// Exit code 0 iff no check fails; 1 on any failure; 2 on usage/config error.
// Exploratory checks never affect the exit code.  KMLAB_SEED overrides both
// the config file and the command line.

#include <cstdlib>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "kmlab/errors.hpp"
#include "kmlab/report.hpp"
#include "kmlab/suites.hpp"

namespace {

struct CliOptions {
  std::string config_path;
  std::string suite;
  kmlab::SuiteConfig cfg;
  bool seed_set = false;
  std::uint64_t seed_value = 0;
  std::string format_csv = "json,csv";
};

int run_one(const std::string& name, const kmlab::SuiteConfig& cfg) {
  const kmlab::SuiteReport rep = kmlab::run_suite(name, cfg);
  kmlab::emit(rep, cfg.out_dir, cfg.formats);
  int pass = 0, fail = 0, pole = 0, expl = 0;
  for (const auto& c : rep.checks) {
    switch (c.verdict) {
      case kmlab::Verdict::pass: ++pass; break;
      case kmlab::Verdict::fail: ++fail; break;
      case kmlab::Verdict::pole: ++pole; break;
      case kmlab::Verdict::exploratory: ++expl; break;
    }
  }
  std::cout << rep.suite << ": " << pass << " pass, " << fail << " fail, "
            << pole << " pole, " << expl << " exploratory ("
            << rep.wall_seconds << "s)\n";
  for (const auto& c : rep.checks) {
    if (c.verdict == kmlab::Verdict::fail) {
      std::cout << "  FAIL " << c.name << " score=" << c.score << "\n";
    }
  }
  return fail > 0 ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"kmlab: seeded verification suites for the diagonal-law, "
               "Grassmannian, Toda and loop-Toeplitz identities"};
  app.require_subcommand(1);

  CliOptions opt;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", opt.config_path, "flat key = value config file");
    sub->add_option("--seed", opt.seed_value, "base RNG seed")
        ->each([&](const std::string&) { opt.seed_set = true; });
    sub->add_option("--threads", opt.cfg.threads, "worker threads");
    sub->add_option("--draws", opt.cfg.draws,
                    "override the per-suite default draw count");
    sub->add_option("--out", opt.cfg.out_dir, "report output directory");
    sub->add_option("--format", opt.format_csv, "comma list: json,csv");
  };

  CLI::App* run = app.add_subcommand("run", "run one suite");
  run->add_option("suite", opt.suite, "suite name")->required();
  add_common(run);
  CLI::App* all = app.add_subcommand("all", "run every registered suite");
  add_common(all);
  CLI::App* list = app.add_subcommand("list", "list registered suites");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (list->parsed()) {
      for (const auto& n : kmlab::suite_names()) std::cout << n << "\n";
      return 0;
    }
    kmlab::SuiteConfig cfg = opt.cfg;
    if (!opt.config_path.empty()) {
      kmlab::SuiteConfig base;  // file sits below command-line flags
      base = kmlab::load_config_file(opt.config_path, base);
      // command line overrides file values where explicitly given
      if (opt.cfg.threads != kmlab::SuiteConfig{}.threads) base.threads = opt.cfg.threads;
      if (opt.cfg.draws != 0) base.draws = opt.cfg.draws;
      if (opt.cfg.out_dir != kmlab::SuiteConfig{}.out_dir) base.out_dir = opt.cfg.out_dir;
      cfg = base;
    }
    if (opt.seed_set) cfg.seed = opt.seed_value;
    if (const char* env = std::getenv("KMLAB_SEED")) {
      cfg.seed = std::strtoull(env, nullptr, 10);
    }
    {
      cfg.formats.clear();
      std::stringstream ss(opt.format_csv);
      std::string item;
      while (std::getline(ss, item, ',')) {
        if (!item.empty()) cfg.formats.push_back(item);
      }
      for (const auto& f : cfg.formats) {
        if (f != "json" && f != "csv")
          throw kmlab::ConfigError("unknown format: " + f);
      }
    }

    if (run->parsed()) {
      if (!kmlab::suite_exists(opt.suite)) {
        std::cerr << "unknown suite: " << opt.suite << "\n";
        return 2;
      }
      return run_one(opt.suite, cfg);
    }
    // all
    int rc = 0;
    for (const auto& n : kmlab::suite_names()) rc |= run_one(n, cfg);
    return rc;
  } catch (const kmlab::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const kmlab::UnknownSuite& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
