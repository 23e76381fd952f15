// Executes named check suites against catalog entries or parsed descriptions
// and assembles deterministic machine- and human-readable reports.
#pragma once

#include <cstdint>

#include "gcv/parse.hpp"

namespace gcv {

struct Tolerances {
  double axiom = 1e-9;     // structure axioms (J^2, pairing invariance)
  double accept = 1e-7;    // exact-path acceptance
  double accept_fd = 1e-4; // finite-difference path acceptance (reserved)
  double reject = 1e-3;    // rejection floor; between bands -> inconclusive
};

struct CheckRecord {
  std::string name;
  std::map<std::string, double> residuals;
  Verdict verdict = Verdict::Inconclusive;
  std::string reason;       // set for hypothesis-gate failures
  SamplePoint worst;
  double wall_ms = 0.0;
};

struct Report {
  std::uint32_t seed = kDefaultSeed;
  Tolerances tol;
  std::string subject;
  std::string input_echo;
  RealForm twist;                   // serialized coefficient-wise as (k, c, s) triples
  std::vector<CheckRecord> checks;  // ordered by check name

  bool all_pass() const {
    for (const auto& c : checks)
      if (c.verdict != Verdict::Pass) return false;
    return true;
  }
};

struct RunConfig {
  std::string catalog;             // catalog entry name, or
  std::string input_text;          // description text (read from file by the CLI)
  std::vector<std::string> checks; // validated against known_checks()
  Tolerances tol;
  std::uint32_t seed = kDefaultSeed;
};

const std::vector<std::string>& known_checks();

Report run(const RunConfig& config);

// JSON body is byte-deterministic for a fixed seed and input, except for the
// wall_ms fields.
std::string report_json(const Report& report);
std::string report_text(const Report& report);

}  // namespace gcv
