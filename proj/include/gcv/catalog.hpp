// Reproducible constructions of every worked structure the checks and the
// acceptance suite run against, each carrying its expected verdicts.
#pragma once

#include <map>
#include <string>

#include "gcv/foliation.hpp"

namespace gcv {

enum class Verdict { Pass, Fail, Inconclusive };

struct ExpectedVerdict {
  Verdict verdict = Verdict::Pass;
  std::optional<int> type_value;  // for the "type" check
};

// Construction inputs retained for serialization to the description format.
struct CatalogInputs {
  enum class Kind { Bihermitian, Foliation, Distribution };
  Kind kind = Kind::Bihermitian;
  std::optional<FoliationData> foliation;
  std::optional<DistributionFrame> distribution;
  std::optional<MetricField> metric;           // bihermitian kind
  std::optional<RealEndomorphism> jplus, jminus;
  std::optional<EigenframeSet> frames;
  RealForm b;
  RealForm twist;  // the 3-form H the entry is checked against
};

struct CatalogEntry {
  std::string name;
  std::string description;
  BihermitianData data;
  RealForm twist;  // H
  CatalogInputs inputs;
  std::map<std::string, ExpectedVerdict> expected;
};

const std::vector<std::string>& catalog_names();

// Pure constructor; safe to call concurrently.  Unknown names throw.
CatalogEntry catalog_entry(const std::string& name, const std::vector<SamplePoint>& pts);

// Shared building blocks (also used by the test suites).
RealEndomorphism standard_complex_structure();
// orthogonal rotation by theta1 in the (d2, d3) plane
RealEndomorphism rotation_23();
FoliationData linear_foliation_data(double a, double b, double c, double d);
FoliationData conformal_foliation_data(double eps);
FoliationData broken_foliation_data();

}  // namespace gcv
