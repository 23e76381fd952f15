// 2-distributions and transversely holomorphic 2-foliations on the 4-torus
// chart: arithmetic admissibility, the two bihermitian constructions, the A/B
// splitting, trigraded 3-form decomposition, the Gauduchon check, and the
// closed 3-form that twists the foliation-built structure into integrability.
#pragma once

#include "gcv/bihermitian.hpp"

namespace gcv {

// Arithmetic admissibility of an orientable 2-plane field on a compact
// oriented 4-manifold, from the signature and Euler characteristic.
bool matsushita_admissible(int sigma, int chi, bool definite);

// ---------------------------------------------------------------------------

// Orthogonal 2 + 2 frame for T = E + N with a metric making the planes
// orthogonal and each plane pair conformal (equal norms, zero inner product).
// The conformality is what keeps the quarter-turn rotations trig-polynomial.
struct DistributionFrame {
  std::array<RealVectorField, 2> e_frame;
  std::array<RealVectorField, 2> n_frame;
  MetricField metric;
};

// j+ = rho_E + rho_N, j- = rho_E - rho_N, with rho the +pi/2 rotation taking
// the first frame vector of a plane to the second.
BihermitianData build_from_distribution(const DistributionFrame& frame,
                                        const std::vector<SamplePoint>& pts);

// ---------------------------------------------------------------------------

// Foliation chart data: leaf frame, transverse frame, and the transverse
// almost complex operator given by its 2x2 action [[a,b],[c,d]] on the
// N-frame.  An explicit metric may override the default one (declared-
// orthonormal frames, compatibility-averaged on N).
struct FoliationData {
  std::array<RealVectorField, 2> f_frame;
  std::array<RealVectorField, 2> n_frame;
  std::array<ScalarField, 4> j_action;  // row-major [[a,b],[c,d]] on (N1, N2)
  std::optional<MetricField> metric;
};

struct FoliationChecks {
  ResidualAt leaf_involutivity;        // [F, F] inside span(F)
  ResidualAt transverse_integrability; // closure of span(F1, F2, W), W in N^{0,1}
};

FoliationChecks validate_foliation(const FoliationData& fol,
                                   const std::vector<SamplePoint>& pts);

// j+ = -j on N and the +pi/2 rotation on F; j- flips the F part.
// strict: reject when the foliation invariants fail (the negative-control
// catalog entries build permissively and let the checkers flag them).
BihermitianData build_from_foliation(const FoliationData& fol,
                                     const std::vector<SamplePoint>& pts,
                                     FoliationChecks* checks_out = nullptr, bool strict = true);

// ---------------------------------------------------------------------------

// A = T+^{1,0} n T-^{0,1} and B = T+^{1,0} n T-^{1,0} as line fields.
struct ABSplitting {
  ComplexVectorField A;
  ComplexVectorField B;
  ResidualAt eigen_residual;     // simultaneous eigenfield equations
  ResidualAt span_residual;      // T+/-^{1,0} reassembly from (A, Abar, B)
  ResidualAt kernel_residual;    // A + Abar against ker(j+ + j-) tensor C
};

// Requires commuting j+/j- with opposite orientations.
ABSplitting ab_splitting(const BihermitianData& data, const std::vector<SamplePoint>& pts);

// Trigrading of complex forms with respect to T = (A + Abar) + B + Bbar;
// bucket keys count (F, B, Bbar) legs.
struct TriGrading {
  std::vector<ComplexEndomorphism> projectors;  // F part, B part, Bbar part
};

TriGrading make_trigrading(const ABSplitting& split);

std::map<GradeKey, ComplexForm> trigrade(const ComplexForm& phi, const TriGrading& grading);

// ---------------------------------------------------------------------------

// Max pointwise magnitude of del delbar omega (a top form on the 4-torus).
ResidualAt gauduchon_residual(const RealForm& omega, const RealEndomorphism& j,
                              const std::vector<SamplePoint>& pts);

struct LemmaH {
  RealForm H;
  ResidualAt gauduchon;    // gate value
  ResidualAt eq16;         // (d omega+)^{2,0,1} = (delbar+ omega+)^{2,0,1}
  ResidualAt dH;           // closedness of the built form
  ResidualAt restriction;  // d omega+ = -iH on the T+^{1,0} + T-^{1,0} triples
};

// H = 2 Im (delbar+ omega+)^{1,1,1} + 2 Im (d omega+)^{2,0,1}; gated on the
// Gauduchon condition of omega+.
LemmaH build_H_lemma39(const BihermitianData& data, const std::vector<SamplePoint>& pts);

// max over components and samples of |coefficient|
ResidualAt form_max_at(const ComplexForm& w, const std::vector<SamplePoint>& pts);
ResidualAt form_max_at(const RealForm& w, const std::vector<SamplePoint>& pts);

}  // namespace gcv
