// Almost bihermitian data (g, j+, j-, b): validation, fundamental forms,
// eigenframes of j+/j-, and the integrability residual checks that decide
// whether the induced generalized structure is twisted-integrable.
#pragma once

#include <optional>

#include "gcv/sampling.hpp"
#include "gcv/tensor.hpp"

namespace gcv {

// Z+^1, Z+^2 span the +i eigenbundle of j+; Z-^1, Z-^2 that of j-.
// Conjugates are taken explicitly where needed.
struct EigenframeSet {
  std::array<ComplexVectorField, 2> plus;
  std::array<ComplexVectorField, 2> minus;
};

class BihermitianData {
 public:
  BihermitianData() = default;  // empty placeholder; build through validate()

  // Runs every structural invariant (j^2 = -id, metric compatibility,
  // antisymmetry of the fundamental forms, orientation constancy, eigenframe
  // residuals) and throws with the failing sample point on violation.
  //
  // Eigenframes must be supplied when j+/j- have nonconstant entries; the
  // builders in the foliation module always do.  For constant structures they
  // are computed here from a one-point eigendecomposition.
  static BihermitianData validate(MetricField g, RealEndomorphism jplus,
                                  RealEndomorphism jminus, RealForm b,
                                  const std::vector<SamplePoint>& pts,
                                  std::optional<EigenframeSet> frames = std::nullopt);

  int dimension() const { return g_.dimension(); }
  const MetricField& metric() const { return g_; }
  const RealEndomorphism& jplus() const { return jplus_; }
  const RealEndomorphism& jminus() const { return jminus_; }
  const RealForm& b_field() const { return b_; }
  const RealForm& omega_plus() const { return omega_plus_; }
  const RealForm& omega_minus() const { return omega_minus_; }
  int orientation_plus() const { return orient_plus_; }
  int orientation_minus() const { return orient_minus_; }
  const EigenframeSet& frames() const { return frames_; }

  // max pointwise |j+ j- - j- j+| over the samples
  double commutator_residual(const std::vector<SamplePoint>& pts) const;

  // same data with j- replaced by -j- (frames conjugate accordingly)
  BihermitianData flipped_minus(const std::vector<SamplePoint>& pts) const;

 private:
  MetricField g_;
  RealEndomorphism jplus_, jminus_;
  RealForm b_;
  RealForm omega_plus_, omega_minus_;
  int orient_plus_ = 0, orient_minus_ = 0;
  EigenframeSet frames_;
};

struct ResidualAt {
  double value = 0.0;
  SamplePoint worst;
  void update(double v, const SamplePoint& p) {
    if (v > value) {
      value = v;
      worst = p;
    }
  }
};

struct Thm23Result {
  ResidualAt r1;  // equation coupling d(omega+) to -(i)(H+db) on Z+ slots
  ResidualAt r2;  // the mirror equation on Z- slots
  double max() const { return std::max(r1.value, r2.value); }
};

// Frame-spanning residuals of the two integrability equations; the structure
// is H-integrable iff both vanish.  X+/X-/Y+/Y- range over {0} union the
// eigenframes (multilinearity makes this spanning set sufficient).
Thm23Result residual_thm23(const BihermitianData& data, const RealForm& H,
                           const std::vector<SamplePoint>& pts);

// Involutivity of T+^{1,0} + T-^{1,0}: bracket components orthogonal to the
// span in the Hermitian extension of g, maximized over frame pairs and points.
ResidualAt remark1_check(const BihermitianData& data, const std::vector<SamplePoint>& pts);

// Commuting-pair identities for the fundamental forms:
//   omega-(X+, Y+) = omega+(X-, Y-) = 0 and (omega+ + omega-)|span = 0.
// Throws when j+ and j- fail to commute (hypothesis gate).
ResidualAt lemma25_check(const BihermitianData& data, const std::vector<SamplePoint>& pts);

struct Cor26Result {
  ResidualAt total;  // max over both pairwise differences on frame triples
  ResidualAt eq14;   // d(omega+) = -d(omega-) with a Z+ third slot
  ResidualAt eq15;   // same with a Z- third slot
};

// Commuting-pair reduction of the integrability conditions; gates on the
// commutator and on remark1_check like the statement it verifies.
Cor26Result residual_cor26(const BihermitianData& data, const RealForm& H,
                           const std::vector<SamplePoint>& pts);

struct GKResult {
  ResidualAt involutive_plus;
  ResidualAt involutive_minus;
  ResidualAt dc_plus;   // d^c_+ omega+ + (H+db), on frame triples
  ResidualAt dc_minus;  // d^c_- omega- - (H+db), on frame triples
  Thm23Result thm23_j1;
  Thm23Result thm23_j2;  // with j- flipped
};

GKResult gk_check(const BihermitianData& data, const RealForm& H,
                  const std::vector<SamplePoint>& pts);

// Hermitian projection residual: norm (in the g(p)-Hermitian inner product)
// of w's component orthogonal to the span of the columns at each point.
double span_orthogonal_residual(const Eigen::MatrixXcd& span_cols, const Eigen::VectorXcd& w,
                                const Eigen::MatrixXd& gram_metric);

}  // namespace gcv
