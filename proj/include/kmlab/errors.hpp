#pragma once

#include <stdexcept>
#include <string>

namespace kmlab {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Leading principal minor below the Bruhat-stratum tolerance.
struct SingularMinor : Error {
  explicit SingularMinor(int j)
      : Error("singular leading minor at index " + std::to_string(j)),
        index(j) {}
  int index;
};

struct SingularBlock : Error {
  SingularBlock() : Error("block failed inversion tolerance") {}
};

struct RankDeficient : Error {
  RankDeficient() : Error("Householder pivot underflow") {}
};

// Sample off the top Bruhat stratum (propagated SingularMinor).
struct OffStratum : Error {
  explicit OffStratum(int j)
      : Error("off-stratum sample, minor " + std::to_string(j)), index(j) {}
  int index;
};

// A c-function factor denominator vanished.
struct PoleHit : Error {
  PoleHit() : Error("c-function pole") {}
};

struct Unreliable : Error {
  explicit Unreliable(const std::string& what) : Error(what) {}
};

struct BlowUp : Error {
  explicit BlowUp(double t)
      : Error("trajectory blow-up near t = " + std::to_string(t)), time(t) {}
  double time;
};

struct StratumExit : Error {
  explicit StratumExit(double t)
      : Error("e^{tx0} exits the top stratum near t = " + std::to_string(t)),
        time(t) {}
  double time;
};

struct ClampViolation : Error {
  explicit ClampViolation(double ev)
      : Error("Hankel singular value exceeds 1: " + std::to_string(ev)) {}
};

struct TransversalityError : Error {
  TransversalityError() : Error("graph not transverse after Moebius action") {}
};

struct DivergenceAlarm : Error {
  DivergenceAlarm() : Error("residue series failed the alternating-tail bound") {}
};

struct TailDivergence : Error {
  TailDivergence() : Error("inversion integrand tail not integrable") {}
};

struct ConfigError : Error {
  using Error::Error;
};

struct UnknownSuite : Error {
  explicit UnknownSuite(const std::string& name)
      : Error("unknown suite: " + name) {}
};

}  // namespace kmlab
