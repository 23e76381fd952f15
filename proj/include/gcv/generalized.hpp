// The generalized tangent bundle T + T*: natural pairing, H-twisted Courant
// bracket, b-transforms, the block construction of an almost generalized
// complex structure from bihermitian data, pointwise type, and the direct
// Courant-closure integrability oracle on the +i eigenframe.
#pragma once

#include <variant>

#include "gcv/bihermitian.hpp"

namespace gcv {

template <class K>
struct GeneralizedSection {
  VectorField<K> vec;
  DifferentialForm<K> form;  // degree 1

  GeneralizedSection() = default;
  GeneralizedSection(VectorField<K> v, DifferentialForm<K> f)
      : vec(std::move(v)), form(std::move(f)) {
    if (form.degree() != 1 || vec.dimension() != form.dimension()) {
      throw Error("GeneralizedSection: needs a vector and a 1-form on the same torus");
    }
  }
  static GeneralizedSection zero(int dim) {
    return GeneralizedSection(VectorField<K>::zero(dim), DifferentialForm<K>(dim, 1));
  }
  int dimension() const { return vec.dimension(); }

  friend GeneralizedSection operator+(const GeneralizedSection& a, const GeneralizedSection& b) {
    return GeneralizedSection(a.vec + b.vec, a.form + b.form);
  }
  friend GeneralizedSection operator-(const GeneralizedSection& a, const GeneralizedSection& b) {
    return GeneralizedSection(a.vec - b.vec, a.form - b.form);
  }
  template <class Scalar>
  friend GeneralizedSection operator*(const Scalar& lambda, const GeneralizedSection& a) {
    return GeneralizedSection(lambda * a.vec, lambda * a.form);
  }
};

using RealGSection = GeneralizedSection<ScalarField>;
using ComplexGSection = GeneralizedSection<ComplexScalarField>;

// <X + xi, Y + eta> = (eta(X) + xi(Y)) / 2
template <class K>
K pairing(const GeneralizedSection<K>& a, const GeneralizedSection<K>& b) {
  auto val = apply_form(b.form, {a.vec}) + apply_form(a.form, {b.vec});
  return 0.5 * val;
}

// [X + xi, Y + eta]_H = [X,Y] + L_X eta - i_Y d xi + i_Y i_X H.
// A non-closed H is accepted (a one-time warning is emitted); the twisted
// bracket formula itself does not need dH = 0.
template <class K>
GeneralizedSection<K> courant_bracket(const GeneralizedSection<K>& a,
                                      const GeneralizedSection<K>& b,
                                      const DifferentialForm<K>& H);

// X + xi -> X + xi + i_X b
template <class K>
GeneralizedSection<K> b_transform(const GeneralizedSection<K>& a,
                                  const DifferentialForm<K>& b) {
  if (b.degree() != 2) throw Error("b_transform: b must be a 2-form");
  return GeneralizedSection<K>(a.vec, a.form + interior_product(a.vec, b));
}

// ---------------------------------------------------------------------------

// Almost generalized complex structure, carried either with bihermitian
// provenance (g, j+, j-, b) or as raw symbolic blocks.  Raw blocks support
// only pointwise checks (square, pairing, type); eigenframes need provenance.
class GeneralizedStructure {
 public:
  struct Blocks {
    RealEndomorphism tt;          // T -> T
    RealEndomorphism tstar_t;     // T* -> T
    RealEndomorphism t_tstar;     // T -> T*
    RealEndomorphism tstar_tstar; // T* -> T*
  };

  static GeneralizedStructure from_bihermitian(BihermitianData data);
  static GeneralizedStructure from_blocks(Blocks blocks);

  int dimension() const;
  bool has_provenance() const { return std::holds_alternative<BihermitianData>(source_); }
  const BihermitianData& provenance() const;

  // conjugation by the shear of an additional 2-form
  GeneralizedStructure b_transformed(const RealForm& extra_b,
                                     const std::vector<SamplePoint>& pts) const;

  // full 2n x 2n matrix at a point, acting on (vector, covector) stacks
  Eigen::MatrixXd eval(const SamplePoint& p) const;
  // T* -> T block (unchanged by b-shears)
  Eigen::MatrixXd top_right(const SamplePoint& p) const;

 private:
  using Source = std::variant<Blocks, BihermitianData>;
  explicit GeneralizedStructure(Source src) : source_(std::move(src)) {}
  Source source_;
};

// J^2 + id residual over the samples
ResidualAt structure_square_residual(const GeneralizedStructure& J,
                                     const std::vector<SamplePoint>& pts);

// <Ja, Jb> = <a, b> as a matrix identity at each sample
ResidualAt pairing_invariance_residual(const GeneralizedStructure& J,
                                       const std::vector<SamplePoint>& pts);

struct TypeResult {
  int type = -1;
  bool ambiguous = false;  // singular values too close to the rank threshold
};

// type at a point: n/2 - rank(top-right block)/2
TypeResult type_at_point(const GeneralizedStructure& J, const SamplePoint& p);

// ---------------------------------------------------------------------------

// Frame of the +i eigenbundle L = e^b L', built from bihermitian provenance:
//   Z+ + (g + b)(Z+)  and  Z- + (-g + b)(Z-).
using EigenframeL = std::array<ComplexGSection, 4>;

EigenframeL eigenframe(const BihermitianData& data);

// +i eigenframe of a symplectic-type structure for a (possibly non-closed)
// 2-form: l_k = e_k - i * (i_{e_k} omega); used by the negative controls.
EigenframeL symplectic_eigenframe(const RealForm& omega);

// max |J l - i l| over frame elements and samples (needs provenance)
ResidualAt eigenframe_residual(const GeneralizedStructure& J, const EigenframeL& L,
                               const std::vector<SamplePoint>& pts);

// max pairwise |<l_i, l_j>| over the samples (L must be isotropic)
ResidualAt isotropy_residual(const EigenframeL& L, const std::vector<SamplePoint>& pts);

// max over frame triples of |<[l_i, l_j]_H, l_k>|; zero iff L is involutive,
// by maximal isotropy.
ResidualAt integrability_residual_direct(const EigenframeL& L, const RealForm& H,
                                         const std::vector<SamplePoint>& pts);

}  // namespace gcv
