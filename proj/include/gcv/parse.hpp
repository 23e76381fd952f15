// Declarative structure descriptions: trig-polynomial expressions as sums of
// products of `c`, `cos(k1*t1 + ...)`, `sin(...)` with integer frequencies,
// and a line-based file format for foliation, distribution, and bihermitian
// inputs.  Parse errors carry line/column positions.
#pragma once

#include <string>
#include <string_view>

#include "gcv/catalog.hpp"

namespace gcv {

// Parses an expression like "0.5*cos(2*t1 - t3) + sin(t2)*cos(t1)".
ScalarField parse_trig_expression(std::string_view text, int dim);

// Exact inverse of parse_trig_expression up to float formatting.
std::string format_trig_expression(const ScalarField& f);

struct ParsedStructure {
  CatalogInputs inputs;   // same shape the catalog keeps for its entries
  int dim = 4;
};

// Parses the description format (see the repository README for the grammar).
ParsedStructure parse_structure(std::string_view text);

// Serializes construction inputs back to the description format; the result
// re-parses to an equivalent structure.
std::string format_structure(const CatalogInputs& inputs);

// Builds validated bihermitian data (and hands back the foliation checks when
// the input is foliation-kind).  Permissive: integrability failures surface
// through the checks, not here.
BihermitianData realize(const CatalogInputs& inputs, const std::vector<SamplePoint>& pts,
                        FoliationChecks* checks_out = nullptr);

}  // namespace gcv
