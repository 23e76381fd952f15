#include "gcv/generalized.hpp"

#include <atomic>
#include <iostream>

namespace gcv {

namespace {

std::atomic<bool> warned_nonclosed_h{false};

template <class K>
void warn_if_not_closed(const DifferentialForm<K>& H) {
  if (H.degree() >= H.dimension()) return;  // top-degree forms are closed
  if (exterior_derivative(H).max_abs_coeff() > 1e-9) {
    if (!warned_nonclosed_h.exchange(true)) {
      std::cerr << "[gcverify] warning: Courant bracket twisted by a non-closed 3-form\n";
    }
  }
}

}  // namespace

template <class K>
GeneralizedSection<K> courant_bracket(const GeneralizedSection<K>& a,
                                      const GeneralizedSection<K>& b,
                                      const DifferentialForm<K>& H) {
  if (H.degree() != 3) throw Error("courant_bracket: H must be a 3-form");
  if (a.dimension() != b.dimension() || a.dimension() != H.dimension()) {
    throw Error("courant_bracket: dimension mismatch");
  }
  warn_if_not_closed(H);
  auto vec = lie_bracket(a.vec, b.vec);
  auto form = lie_derivative(a.vec, b.form) -
              interior_product(b.vec, exterior_derivative(a.form)) +
              interior_product(b.vec, interior_product(a.vec, H));
  return GeneralizedSection<K>(std::move(vec), std::move(form));
}

template GeneralizedSection<ScalarField> courant_bracket(const GeneralizedSection<ScalarField>&,
                                                         const GeneralizedSection<ScalarField>&,
                                                         const DifferentialForm<ScalarField>&);
template GeneralizedSection<ComplexScalarField> courant_bracket(
    const GeneralizedSection<ComplexScalarField>&, const GeneralizedSection<ComplexScalarField>&,
    const DifferentialForm<ComplexScalarField>&);

// ---------------------------------------------------------------------------

GeneralizedStructure GeneralizedStructure::from_bihermitian(BihermitianData data) {
  return GeneralizedStructure(Source(std::move(data)));
}

GeneralizedStructure GeneralizedStructure::from_blocks(Blocks blocks) {
  const int n = blocks.tt.dimension();
  if (blocks.tstar_t.dimension() != n || blocks.t_tstar.dimension() != n ||
      blocks.tstar_tstar.dimension() != n) {
    throw Error("GeneralizedStructure: block dimension mismatch");
  }
  return GeneralizedStructure(Source(std::move(blocks)));
}

int GeneralizedStructure::dimension() const {
  if (has_provenance()) return std::get<BihermitianData>(source_).dimension();
  return std::get<Blocks>(source_).tt.dimension();
}

const BihermitianData& GeneralizedStructure::provenance() const {
  if (!has_provenance()) {
    throw Error("GeneralizedStructure: no bihermitian provenance (raw blocks support only "
                "pointwise checks)");
  }
  return std::get<BihermitianData>(source_);
}

namespace {

// matrix of the map X -> i_X w for a 2-form: (W X)_j = w(X, d_j)
Eigen::MatrixXd two_form_map(const RealForm& w, const SamplePoint& p) {
  const int n = w.dimension();
  Eigen::MatrixXd W = Eigen::MatrixXd::Zero(n, n);
  for (const auto& [I, f] : w.components()) {
    const double v = f.evaluate(p);
    W(I.idx[1], I.idx[0]) = v;   // column = argument slot
    W(I.idx[0], I.idx[1]) = -v;
  }
  return W;
}

}  // namespace

Eigen::MatrixXd GeneralizedStructure::eval(const SamplePoint& p) const {
  const int n = dimension();
  Eigen::MatrixXd M(2 * n, 2 * n);
  if (has_provenance()) {
    const auto& d = std::get<BihermitianData>(source_);
    const Eigen::MatrixXd G = d.metric().eval(p);
    const Eigen::MatrixXd Jp = eval_at(d.jplus(), p);
    const Eigen::MatrixXd Jm = eval_at(d.jminus(), p);
    const Eigen::MatrixXd Wp = G * Jp;  // map X -> i_X omega_+
    const Eigen::MatrixXd Wm = G * Jm;
    const Eigen::MatrixXd TL = 0.5 * (Jp + Jm);
    const Eigen::MatrixXd TR = 0.5 * (Wm.inverse() - Wp.inverse());
    const Eigen::MatrixXd BL = 0.5 * (Wp - Wm);
    const Eigen::MatrixXd BR = -0.5 * (Jp.transpose() + Jm.transpose());
    Eigen::MatrixXd Jprime(2 * n, 2 * n);
    Jprime << TL, TR, BL, BR;
    const Eigen::MatrixXd B = two_form_map(d.b_field(), p);
    Eigen::MatrixXd S = Eigen::MatrixXd::Identity(2 * n, 2 * n);
    S.block(n, 0, n, n) = B;
    Eigen::MatrixXd Sinv = Eigen::MatrixXd::Identity(2 * n, 2 * n);
    Sinv.block(n, 0, n, n) = -B;
    M = S * Jprime * Sinv;
  } else {
    const auto& bl = std::get<Blocks>(source_);
    M << eval_at(bl.tt, p), eval_at(bl.tstar_t, p), eval_at(bl.t_tstar, p),
        eval_at(bl.tstar_tstar, p);
  }
  return M;
}

Eigen::MatrixXd GeneralizedStructure::top_right(const SamplePoint& p) const {
  const int n = dimension();
  return eval(p).block(0, n, n, n);
}

GeneralizedStructure GeneralizedStructure::b_transformed(
    const RealForm& extra_b, const std::vector<SamplePoint>& pts) const {
  if (extra_b.degree() != 2) throw Error("b_transformed: b must be a 2-form");
  if (has_provenance()) {
    const auto& d = std::get<BihermitianData>(source_);
    EigenframeSet frames = d.frames();
    return from_bihermitian(BihermitianData::validate(d.metric(), d.jplus(), d.jminus(),
                                                      d.b_field() + extra_b, pts, frames));
  }
  // conjugate the raw blocks by the shear symbolically
  const auto& bl = std::get<Blocks>(source_);
  const int n = bl.tt.dimension();
  RealEndomorphism B(n);  // matrix of X -> i_X b
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      MultiIndex I;
      I.len = 2;
      if (i < j) {
        I.idx = {static_cast<std::uint8_t>(i), static_cast<std::uint8_t>(j), 0, 0};
        B.at(j, i) += extra_b.component(I);
        B.at(i, j) -= extra_b.component(I);
      }
    }
  }
  Blocks nb;
  nb.tt = bl.tt - bl.tstar_t.compose(B);
  nb.tstar_t = bl.tstar_t;
  nb.t_tstar = B.compose(nb.tt) + bl.t_tstar - bl.tstar_tstar.compose(B);
  nb.tstar_tstar = B.compose(bl.tstar_t) + bl.tstar_tstar;
  return from_blocks(std::move(nb));
}

ResidualAt structure_square_residual(const GeneralizedStructure& J,
                                     const std::vector<SamplePoint>& pts) {
  ResidualAt out;
  const int n2 = 2 * J.dimension();
  const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(n2, n2);
  for (const auto& p : pts) {
    const auto M = J.eval(p);
    out.update((M * M + id).cwiseAbs().maxCoeff(), p);
  }
  return out;
}

ResidualAt pairing_invariance_residual(const GeneralizedStructure& J,
                                       const std::vector<SamplePoint>& pts) {
  ResidualAt out;
  const int n = J.dimension();
  Eigen::MatrixXd P = Eigen::MatrixXd::Zero(2 * n, 2 * n);
  P.block(0, n, n, n) = 0.5 * Eigen::MatrixXd::Identity(n, n);
  P.block(n, 0, n, n) = 0.5 * Eigen::MatrixXd::Identity(n, n);
  for (const auto& p : pts) {
    const auto M = J.eval(p);
    out.update((M.transpose() * P * M - P).cwiseAbs().maxCoeff(), p);
  }
  return out;
}

TypeResult type_at_point(const GeneralizedStructure& J, const SamplePoint& p) {
  const int n = J.dimension();
  if (n % 2 != 0) throw Error("type_at_point: needs an even-dimensional torus");
  const Eigen::MatrixXd TR = J.top_right(p);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(TR);
  const auto& sv = svd.singularValues();
  const double smax = sv.size() ? sv(0) : 0.0;
  TypeResult out;
  int rank = 0;
  if (smax > 1e-12) {
    for (int i = 0; i < sv.size(); ++i) {
      const double rel = sv(i) / smax;
      if (rel > 1e-8) ++rank;
      if (rel > 1e-10 && rel < 1e-6) out.ambiguous = true;
    }
  }
  out.type = n / 2 - rank / 2;
  return out;
}

// ---------------------------------------------------------------------------

EigenframeL eigenframe(const BihermitianData& data) {
  const auto bc = complexify(data.b_field());
  EigenframeL L;
  for (int k = 0; k < 2; ++k) {
    const auto& Zp = data.frames().plus[k];
    L[k] = ComplexGSection(Zp, data.metric().flat_map(Zp) + interior_product(Zp, bc));
    const auto& Zm = data.frames().minus[k];
    L[2 + k] = ComplexGSection(Zm, -data.metric().flat_map(Zm) + interior_product(Zm, bc));
  }
  return L;
}

EigenframeL symplectic_eigenframe(const RealForm& omega) {
  if (omega.degree() != 2) throw Error("symplectic_eigenframe: omega must be a 2-form");
  const int n = omega.dimension();
  if (n != 4) throw Error("symplectic_eigenframe: expects the 4-torus");
  const auto wc = complexify(omega);
  const std::complex<double> iu(0, 1);
  EigenframeL L;
  for (int k = 0; k < 4; ++k) {
    const auto e = complexify(RealVectorField::coordinate(n, k));
    L[k] = ComplexGSection(e, -iu * interior_product(e, wc));
  }
  return L;
}

ResidualAt eigenframe_residual(const GeneralizedStructure& J, const EigenframeL& L,
                               const std::vector<SamplePoint>& pts) {
  ResidualAt out;
  const int n = J.dimension();
  const std::complex<double> iu(0, 1);
  for (const auto& p : pts) {
    const Eigen::MatrixXcd M = J.eval(p).cast<std::complex<double>>();
    for (const auto& l : L) {
      Eigen::VectorXcd s(2 * n);
      s.head(n) = eval_at(l.vec, p);
      for (int i = 0; i < n; ++i) s(n + i) = l.form.component(MultiIndex::of({i})).evaluate(p);
      out.update((M * s - iu * s).cwiseAbs().maxCoeff(), p);
    }
  }
  return out;
}

ResidualAt isotropy_residual(const EigenframeL& L, const std::vector<SamplePoint>& pts) {
  ResidualAt out;
  for (size_t i = 0; i < L.size(); ++i) {
    for (size_t j = i; j < L.size(); ++j) {
      const auto val = pairing(L[i], L[j]);
      for (const auto& p : pts) out.update(std::abs(val.evaluate(p)), p);
    }
  }
  return out;
}

ResidualAt integrability_residual_direct(const EigenframeL& L, const RealForm& H,
                                         const std::vector<SamplePoint>& pts) {
  ResidualAt out;
  const auto Hc = complexify(H);
  for (size_t i = 0; i < L.size(); ++i) {
    for (size_t j = 0; j < L.size(); ++j) {
      if (i == j) continue;
      const auto br = courant_bracket(L[i], L[j], Hc);
      for (size_t k = 0; k < L.size(); ++k) {
        const auto val = pairing(br, L[k]);
        for (const auto& p : pts) out.update(std::abs(val.evaluate(p)), p);
      }
    }
  }
  return out;
}

}  // namespace gcv
