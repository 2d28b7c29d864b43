// Acceptance suite: one pass/fail line per criterion, full draw counts.
// Exploratory outputs are produced but never gate the exit code.

#include <cstdio>
#include <map>
#include <string>
#include <vector>

#include "kmlab/report.hpp"
#include "kmlab/suites.hpp"

namespace {

struct Criterion {
  int id;
  std::string description;
  bool pass = true;
  std::vector<std::string> failures;
};

// checks with this name prefix gate the criterion
struct Gate {
  const char* suite;
  const char* prefix;  // empty: every non-exploratory check in the suite
  int criterion;
};

const Gate kGates[] = {
    {"diag-A", "", 1},
    {"diag-BCD", "", 2},
    {"diag-weighted", "", 3},
    {"selberg", "", 4},
    {"weyl-dim", "", 5},
    {"scaled-limit", "", 6},
    {"grassmann", "", 7},
    {"mu0-projection", "", 8},
    {"toda", "", 9},
    {"szego", "", 10},
    {"partition", "", 11},
    {"kernels", "hankel", 12},
    {"kernels", "I", 13},
    {"kernels", "In", 13},
    {"gaussian-shift", "", 14},
    {"spherical", "", 15},
    {"kernels", "heat", 16},
    {"product-measure", "", 0},  // supporting checks; gate under 0 = "samplers"
    {"birkhoff-probe", "", 17},
};

}  // namespace

int main() {
  std::map<int, Criterion> criteria;
  auto desc = [&](int id, const std::string& d) {
    criteria[id].id = id;
    criteria[id].description = d;
  };
  desc(0, "sampler moment/invariance battery (supporting)");
  desc(1, "type A diagonal law: SU(2..4), 1e6 draws, 10 lambda pts, 4 SE; <= 5 min");
  desc(2, "types B/C/D: SO(4), SO(5), Sp(2), quadratic-form basis, 4 SE");
  desc(3, "weighted law: SU(2) closed form and SO(4) vs c_weighted, 4 SE");
  desc(4, "Selberg identity with the unit-variance convention note, 4 SE");
  desc(5, "Weyl dimension: E|g11|^2 = 1/n on SU(2..5), 4 SE");
  desc(6, "regularized limit: cutoff stability < 1e-6; scaled-SU(128) MC, 4 SE");
  desc(7, "Grassmannian KS + projection coherence + cocycle, 4 SE / 1% KS");
  desc(8, "Schur projection pushforward and Gaussian Schur limit, 4 SE");
  desc(9, "Toda: sl2 closed form 1e-9, oracle gap <= 1e-6, drift <= 1e-8, monodromy < 1e-7");
  desc(10, "Szego: gap < 1e-4 at M = 256, monotone dyadic ladder");
  desc(11, "partition constant: product vs Gamma form < 1e-8 at 1e6; MC at K = 64");
  desc(12, "Hankel trace identity exact (< 1e-10) on trig polynomials");
  desc(13, "I_n kernel lemma: I_1 closed form 1e-10, small-delta drift, differences 1e-9");
  desc(14, "Gaussian shift: small-s ratio = E|t|^p within 1e-4; sup recorded");
  desc(15, "spherical inversion: Fourier closure, residue forms 1e-10, shape 1e-6");
  desc(16, "SU(2) heat kernel: normalization and semigroup within 1e-6");
  desc(17, "exploratory probes emitted (never gate)");

  kmlab::SuiteConfig cfg;  // per-suite acceptance defaults
  bool all_pass = true;
  double diag_a_seconds = 0.0;

  std::vector<std::string> suites = kmlab::suite_names();
  std::map<std::string, kmlab::SuiteReport> reports;
  for (const auto& name : suites) {
    kmlab::SuiteReport rep = kmlab::run_suite(name, cfg);
    kmlab::emit(rep, "acceptance_out", {"json", "csv"});
    if (name == "diag-A") diag_a_seconds = rep.wall_seconds;
    std::printf("[suite %-15s] %5.1fs, %d failures\n", name.c_str(),
                rep.wall_seconds, rep.failures());
    reports[name] = std::move(rep);
  }

  for (const auto& gate : kGates) {
    const auto& rep = reports.at(gate.suite);
    Criterion& c = criteria[gate.criterion];
    for (const auto& chk : rep.checks) {
      if (gate.prefix[0] != '\0' &&
          chk.name.rfind(gate.prefix, 0) != 0)
        continue;
      if (chk.verdict == kmlab::Verdict::fail) {
        c.pass = false;
        c.failures.push_back(std::string(gate.suite) + "/" + chk.name);
      }
    }
  }
  // criterion 1 runtime bound
  if (diag_a_seconds > 300.0) {
    criteria[1].pass = false;
    criteria[1].failures.push_back("diag-A runtime exceeded 5 minutes");
  }
  // criterion 4: the convention note must appear in the report
  {
    bool note_found = false;
    for (const auto& chk : reports.at("selberg").checks)
      if (chk.note.find("convention") != std::string::npos) note_found = true;
    if (!note_found) {
      criteria[4].pass = false;
      criteria[4].failures.push_back("selberg convention note missing");
    }
  }
  // criterion 17: exploratory rows exist and never fail by construction
  {
    int exploratory = 0;
    for (const auto& [name, rep] : reports)
      for (const auto& chk : rep.checks)
        if (chk.verdict == kmlab::Verdict::exploratory) ++exploratory;
    if (exploratory == 0) {
      criteria[17].pass = false;
      criteria[17].failures.push_back("no exploratory output produced");
    }
  }

  std::printf("\n");
  for (const auto& [id, c] : criteria) {
    if (id == 0) {
      std::printf("[support    ] %s: %s\n", c.pass ? "PASS" : "FAIL",
                  c.description.c_str());
    } else {
      std::printf("[criterion %2d] %s: %s\n", id, c.pass ? "PASS" : "FAIL",
                  c.description.c_str());
    }
    if (!c.pass) {
      all_pass = false;
      for (const auto& f : c.failures)
        std::printf("              failed: %s\n", f.c_str());
    }
  }
  std::printf("\nacceptance: %s\n", all_pass ? "ALL CRITERIA PASS" : "FAILURES");
  return all_pass ? 0 : 1;
}
