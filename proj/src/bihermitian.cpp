#include "gcv/bihermitian.hpp"

#include <cmath>
#include <complex>

namespace gcv {

namespace {

std::string point_string(const SamplePoint& p) {
  std::string s = "(";
  for (size_t i = 0; i < p.size(); ++i) s += (i ? ", " : " ") + std::to_string(p[i]);
  return s + " )";
}

void require_almost_complex_everywhere(const RealEndomorphism& j, const char* name,
                                       const std::vector<SamplePoint>& pts) {
  const int n = j.dimension();
  const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(n, n);
  for (const auto& p : pts) {
    const auto J = eval_at(j, p);
    const double r = (J * J + id).cwiseAbs().maxCoeff();
    if (r > 1e-9) {
      throw Error(std::string(name) + "^2 != -id, residual " + std::to_string(r) + " at " +
                  point_string(p));
    }
  }
}

void require_compatible(const MetricField& g, const RealEndomorphism& j, const char* name,
                        const std::vector<SamplePoint>& pts) {
  for (const auto& p : pts) {
    const auto G = g.eval(p);
    const auto J = eval_at(j, p);
    const double r = (J.transpose() * G * J - G).cwiseAbs().maxCoeff();
    if (r > 1e-9) {
      throw Error(std::string("metric not compatible with ") + name + ", residual " +
                  std::to_string(r) + " at " + point_string(p));
    }
  }
}

// omega(X, Y) = g(jX, Y) as a 2-form with exactly antisymmetric representation
RealForm fundamental_form(const MetricField& g, const RealEndomorphism& j) {
  const int n = g.dimension();
  RealForm w(n, 2);
  for (int i = 0; i < n; ++i) {
    for (int k = i + 1; k < n; ++k) {
      ScalarField wik = ScalarField::zero(n);
      ScalarField wki = ScalarField::zero(n);
      for (int a = 0; a < n; ++a) {
        wik += j.at(a, i) * g.at(a, k);
        wki += j.at(a, k) * g.at(a, i);
      }
      if ((wik + wki).max_abs_coeff() > 1e-10) {
        throw Error("fundamental form not antisymmetric; data is not almost Hermitian");
      }
      w.add_component(MultiIndex::of({i, k}), 0.5 * (wik - wki));
    }
  }
  return w;
}

// orientation induced by j at p: sign of det(v, Jv, w, Jw) for any adapted basis
int orientation_at(const Eigen::MatrixXd& J, const SamplePoint& p) {
  const int n = static_cast<int>(J.rows());
  if (n != 4) {
    // dimension 2: sign of det(v, Jv)
    Eigen::MatrixXd M(n, n);
    M.col(0) = Eigen::VectorXd::Unit(n, 0);
    M.col(1) = J * M.col(0);
    const double d = M.determinant();
    if (std::abs(d) < 1e-9) throw Error("degenerate orientation frame at " + point_string(p));
    return d > 0 ? 1 : -1;
  }
  const Eigen::VectorXd v = Eigen::VectorXd::Unit(4, 0);
  const Eigen::VectorXd Jv = J * v;
  double best = 0.0;
  int bestsign = 0;
  for (int k = 1; k < 4; ++k) {
    Eigen::MatrixXd M(4, 4);
    M.col(0) = v;
    M.col(1) = Jv;
    M.col(2) = Eigen::VectorXd::Unit(4, k);
    M.col(3) = J * M.col(2);
    const double d = M.determinant();
    if (std::abs(d) > best) {
      best = std::abs(d);
      bestsign = d > 0 ? 1 : -1;
    }
  }
  if (bestsign == 0) throw Error("degenerate orientation frame at " + point_string(p));
  return bestsign;
}

int constant_orientation(const RealEndomorphism& j, const std::vector<SamplePoint>& pts,
                         const char* name) {
  int sign = 0;
  for (const auto& p : pts) {
    const int s = orientation_at(eval_at(j, p), p);
    if (sign == 0) sign = s;
    if (s != sign) {
      throw Error(std::string("orientation of ") + name + " is not constant across samples");
    }
  }
  return sign;
}

bool endo_is_constant(const RealEndomorphism& j) {
  for (int i = 0; i < j.dimension(); ++i)
    for (int k = 0; k < j.dimension(); ++k)
      if (!j.at(i, k).is_constant(1e-12)) return false;
  return true;
}

std::array<ComplexVectorField, 2> constant_eigenframe(const RealEndomorphism& j,
                                                      const char* name) {
  const int n = j.dimension();
  std::vector<double> origin(n, 0.0);
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(eval_at(j, origin).cast<std::complex<double>>());
  std::vector<Eigen::VectorXcd> plus_vecs;
  for (int i = 0; i < n; ++i) {
    if (std::abs(es.eigenvalues()(i) - std::complex<double>(0, 1)) < 1e-8) {
      plus_vecs.push_back(es.eigenvectors().col(i));
    }
  }
  if (static_cast<int>(plus_vecs.size()) != n / 2) {
    throw Error(std::string("+i eigenspace of ") + name + " has dimension " +
                std::to_string(plus_vecs.size()) + ", expected " + std::to_string(n / 2));
  }
  std::array<ComplexVectorField, 2> out{ComplexVectorField::zero(n), ComplexVectorField::zero(n)};
  for (size_t v = 0; v < plus_vecs.size() && v < 2; ++v) {
    std::vector<ComplexScalarField> comps;
    for (int i = 0; i < n; ++i) {
      comps.push_back(ComplexScalarField::constant(n, plus_vecs[v](i)));
    }
    out[v] = ComplexVectorField(std::move(comps));
  }
  return out;
}

void validate_eigenframe(const RealEndomorphism& j, const std::array<ComplexVectorField, 2>& Z,
                         const char* name, const std::vector<SamplePoint>& pts) {
  const auto jc = complexify(j);
  const std::complex<double> iu(0, 1);
  for (int v = 0; v < 2; ++v) {
    const auto resid = jc.apply(Z[v]) - iu * Z[v];
    for (const auto& p : pts) {
      const auto r = eval_at(resid, p).cwiseAbs().maxCoeff();
      if (r > 1e-9) {
        throw Error(std::string("eigenframe of ") + name + " fails j Z = i Z, residual " +
                    std::to_string(r) + " at " + point_string(p));
      }
    }
  }
  for (const auto& p : pts) {
    Eigen::MatrixXcd M(j.dimension(), 2);
    M.col(0) = eval_at(Z[0], p);
    M.col(1) = eval_at(Z[1], p);
    const Eigen::MatrixXcd gram = M.adjoint() * M;
    if (std::abs(gram.determinant()) < 1e-6) {
      throw Error(std::string("eigenframe of ") + name + " degenerates at " + point_string(p));
    }
  }
}

}  // namespace

BihermitianData BihermitianData::validate(MetricField g, RealEndomorphism jplus,
                                          RealEndomorphism jminus, RealForm b,
                                          const std::vector<SamplePoint>& pts,
                                          std::optional<EigenframeSet> frames) {
  BihermitianData d;
  const int n = g.dimension();
  if (jplus.dimension() != n || jminus.dimension() != n) {
    throw Error("BihermitianData: dimension mismatch between g and j+/j-");
  }
  if (b.dimension() != n || b.degree() != 2) {
    throw Error("BihermitianData: b must be a real 2-form on the same torus");
  }
  g.validate_positive(pts);
  require_almost_complex_everywhere(jplus, "j+", pts);
  require_almost_complex_everywhere(jminus, "j-", pts);
  require_compatible(g, jplus, "j+", pts);
  require_compatible(g, jminus, "j-", pts);

  d.g_ = std::move(g);
  d.jplus_ = std::move(jplus);
  d.jminus_ = std::move(jminus);
  d.b_ = std::move(b);
  d.omega_plus_ = fundamental_form(d.g_, d.jplus_);
  d.omega_minus_ = fundamental_form(d.g_, d.jminus_);
  d.orient_plus_ = constant_orientation(d.jplus_, pts, "j+");
  d.orient_minus_ = constant_orientation(d.jminus_, pts, "j-");

  if (frames) {
    d.frames_ = std::move(*frames);
  } else {
    if (!endo_is_constant(d.jplus_) || !endo_is_constant(d.jminus_)) {
      throw Error(
          "BihermitianData: nonconstant j+/j- require adapted eigenframes from the "
          "construction; raw nonconstant input is unsupported");
    }
    d.frames_.plus = constant_eigenframe(d.jplus_, "j+");
    d.frames_.minus = constant_eigenframe(d.jminus_, "j-");
  }
  validate_eigenframe(d.jplus_, d.frames_.plus, "j+", pts);
  validate_eigenframe(d.jminus_, d.frames_.minus, "j-", pts);
  return d;
}

double BihermitianData::commutator_residual(const std::vector<SamplePoint>& pts) const {
  double worst = 0.0;
  for (const auto& p : pts) {
    const auto Jp = eval_at(jplus_, p);
    const auto Jm = eval_at(jminus_, p);
    worst = std::max(worst, (Jp * Jm - Jm * Jp).cwiseAbs().maxCoeff());
  }
  return worst;
}

BihermitianData BihermitianData::flipped_minus(const std::vector<SamplePoint>& pts) const {
  EigenframeSet flipped;
  flipped.plus = frames_.plus;
  flipped.minus = {conj(frames_.minus[0]), conj(frames_.minus[1])};
  return validate(g_, jplus_, -jminus_, b_, pts, flipped);
}

// ---------------------------------------------------------------------------

double span_orthogonal_residual(const Eigen::MatrixXcd& span_cols, const Eigen::VectorXcd& w,
                                const Eigen::MatrixXd& gram_metric) {
  // Cholesky of g turns the g-Hermitian projection into a Euclidean one.
  const Eigen::LLT<Eigen::MatrixXd> llt(gram_metric);
  const Eigen::MatrixXd Lt = llt.matrixL().transpose();
  const Eigen::MatrixXcd M = Lt.cast<std::complex<double>>() * span_cols;
  const Eigen::VectorXcd v = Lt.cast<std::complex<double>>() * w;
  const Eigen::VectorXcd x = M.colPivHouseholderQr().solve(v);
  return (v - M * x).norm();
}

namespace {

std::array<ComplexVectorField, 4> span_frame(const BihermitianData& d) {
  return {d.frames().plus[0], d.frames().plus[1], d.frames().minus[0], d.frames().minus[1]};
}

ResidualAt bracket_closure_residual(const std::vector<ComplexVectorField>& span,
                                    const MetricField& g,
                                    const std::vector<SamplePoint>& pts) {
  ResidualAt out;
  const int n = g.dimension();
  std::vector<std::pair<size_t, size_t>> pairs;
  for (size_t i = 0; i < span.size(); ++i)
    for (size_t j = i + 1; j < span.size(); ++j) pairs.emplace_back(i, j);
  for (const auto& [i, j] : pairs) {
    const auto W = lie_bracket(span[i], span[j]);
    for (const auto& p : pts) {
      Eigen::MatrixXcd M(n, static_cast<int>(span.size()));
      for (size_t c = 0; c < span.size(); ++c) M.col(static_cast<int>(c)) = eval_at(span[c], p);
      out.update(span_orthogonal_residual(M, eval_at(W, p), g.eval(p)), p);
    }
  }
  return out;
}

}  // namespace

Thm23Result residual_thm23(const BihermitianData& d, const RealForm& H,
                           const std::vector<SamplePoint>& pts) {
  const int n = d.dimension();
  const auto Htot = complexify(H + exterior_derivative(d.b_field()));
  const auto wp = complexify(d.omega_plus());
  const auto wm = complexify(d.omega_minus());
  const auto ws = wp + wm;
  const auto dwp = exterior_derivative(wp);
  const auto dwm = exterior_derivative(wm);
  const std::complex<double> iu(0, 1);

  const auto zero = ComplexVectorField::zero(n);
  const std::array<ComplexVectorField, 3> plus = {zero, d.frames().plus[0], d.frames().plus[1]};
  const std::array<ComplexVectorField, 3> minus = {zero, d.frames().minus[0],
                                                   d.frames().minus[1]};

  Thm23Result out;
  for (int xp = 0; xp < 3; ++xp) {
    for (int xm = 0; xm < 3; ++xm) {
      const auto X = plus[xp] + minus[xm];
      for (int yp = 0; yp < 3; ++yp) {
        for (int ym = 0; ym < 3; ++ym) {
          const auto Y = plus[yp] + minus[ym];
          // equation (1): third slot from the + frame
          for (int z = 1; z < 3; ++z) {
            const auto& Zp = plus[z];
            const auto lhs = apply_form(dwp, {X, Y, Zp}) -
                             apply_form(ws, {minus[xm], lie_bracket(Y, Zp)}) +
                             apply_form(ws, {minus[ym], lie_bracket(X, Zp)}) -
                             derive(Zp, apply_form(wp, {minus[xm], minus[ym]}));
            const auto rhs = -iu * apply_form(Htot, {X, Y, Zp});
            const auto resid = lhs - rhs;
            for (const auto& p : pts) out.r1.update(std::abs(resid.evaluate(p)), p);
          }
          // equation (2): third slot from the - frame, roles of +/- swapped
          for (int z = 1; z < 3; ++z) {
            const auto& Zm = minus[z];
            const auto lhs = apply_form(dwm, {X, Y, Zm}) -
                             apply_form(ws, {plus[xp], lie_bracket(Y, Zm)}) +
                             apply_form(ws, {plus[yp], lie_bracket(X, Zm)}) -
                             derive(Zm, apply_form(wm, {plus[xp], plus[yp]}));
            const auto rhs = iu * apply_form(Htot, {X, Y, Zm});
            const auto resid = lhs - rhs;
            for (const auto& p : pts) out.r2.update(std::abs(resid.evaluate(p)), p);
          }
        }
      }
    }
  }
  return out;
}

ResidualAt remark1_check(const BihermitianData& d, const std::vector<SamplePoint>& pts) {
  const auto frame = span_frame(d);
  return bracket_closure_residual({frame.begin(), frame.end()}, d.metric(), pts);
}

ResidualAt lemma25_check(const BihermitianData& d, const std::vector<SamplePoint>& pts) {
  const double comm = d.commutator_residual(pts);
  if (comm > 1e-9) {
    throw Error("lemma25_check: j+ and j- do not commute (residual " + std::to_string(comm) +
                ")");
  }
  const auto wp = complexify(d.omega_plus());
  const auto wm = complexify(d.omega_minus());
  const auto ws = wp + wm;
  const auto frame = span_frame(d);

  ResidualAt out;
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      const auto r1 = apply_form(wm, {d.frames().plus[a], d.frames().plus[b]});
      const auto r2 = apply_form(wp, {d.frames().minus[a], d.frames().minus[b]});
      for (const auto& p : pts) {
        out.update(std::abs(r1.evaluate(p)), p);
        out.update(std::abs(r2.evaluate(p)), p);
      }
    }
  }
  for (size_t a = 0; a < frame.size(); ++a) {
    for (size_t b = 0; b < frame.size(); ++b) {
      const auto r = apply_form(ws, {frame[a], frame[b]});
      for (const auto& p : pts) out.update(std::abs(r.evaluate(p)), p);
    }
  }
  return out;
}

Cor26Result residual_cor26(const BihermitianData& d, const RealForm& H,
                           const std::vector<SamplePoint>& pts) {
  const double comm = d.commutator_residual(pts);
  if (comm > 1e-9) {
    throw Error("residual_cor26: j+ and j- do not commute (residual " + std::to_string(comm) +
                ")");
  }
  const auto Htot = complexify(H + exterior_derivative(d.b_field()));
  const auto dwp = exterior_derivative(complexify(d.omega_plus()));
  const auto dwm = exterior_derivative(complexify(d.omega_minus()));
  const std::complex<double> iu(0, 1);
  const auto frame = span_frame(d);

  Cor26Result out;
  // involutivity of the span is part of the corollary's statement
  const auto invol = remark1_check(d, pts);
  out.total.update(invol.value, invol.worst);

  for (size_t a = 0; a < 4; ++a) {
    for (size_t b = 0; b < 4; ++b) {
      for (size_t c = 0; c < 4; ++c) {
        const auto diff_sign = apply_form(dwp, {frame[a], frame[b], frame[c]}) +
                               apply_form(dwm, {frame[a], frame[b], frame[c]});
        const auto diff_h = apply_form(dwp, {frame[a], frame[b], frame[c]}) +
                            iu * apply_form(Htot, {frame[a], frame[b], frame[c]});
        for (const auto& p : pts) {
          out.total.update(std::abs(diff_sign.evaluate(p)), p);
          out.total.update(std::abs(diff_h.evaluate(p)), p);
        }
        // standalone (14)/(15): third slot restricted to one eigenframe
        if (c < 2) {
          for (const auto& p : pts) out.eq14.update(std::abs(diff_sign.evaluate(p)), p);
        } else {
          for (const auto& p : pts) out.eq15.update(std::abs(diff_sign.evaluate(p)), p);
        }
      }
    }
  }
  return out;
}

GKResult gk_check(const BihermitianData& d, const RealForm& H,
                  const std::vector<SamplePoint>& pts) {
  GKResult out;
  const auto& fr = d.frames();
  out.involutive_plus =
      bracket_closure_residual({fr.plus[0], fr.plus[1]}, d.metric(), pts);
  out.involutive_minus =
      bracket_closure_residual({fr.minus[0], fr.minus[1]}, d.metric(), pts);

  const auto Htot = complexify(H + exterior_derivative(d.b_field()));
  const auto dcp = dc_operator(complexify(d.omega_plus()), d.jplus(), pts);
  const auto dcm = dc_operator(complexify(d.omega_minus()), d.jminus(), pts);
  const auto resid_plus = dcp + Htot;   // d^c_+ omega_+ = -(H+db)
  const auto resid_minus = dcm - Htot;  // d^c_- omega_- = +(H+db)

  const std::array<ComplexVectorField, 4> basis_plus = {fr.plus[0], fr.plus[1],
                                                        conj(fr.plus[0]), conj(fr.plus[1])};
  const std::array<ComplexVectorField, 4> basis_minus = {fr.minus[0], fr.minus[1],
                                                         conj(fr.minus[0]), conj(fr.minus[1])};
  for (size_t a = 0; a < 4; ++a)
    for (size_t b = a + 1; b < 4; ++b)
      for (size_t c = b + 1; c < 4; ++c) {
        const auto vp = apply_form(resid_plus, {basis_plus[a], basis_plus[b], basis_plus[c]});
        const auto vm =
            apply_form(resid_minus, {basis_minus[a], basis_minus[b], basis_minus[c]});
        for (const auto& p : pts) {
          out.dc_plus.update(std::abs(vp.evaluate(p)), p);
          out.dc_minus.update(std::abs(vm.evaluate(p)), p);
        }
      }

  out.thm23_j1 = residual_thm23(d, H, pts);
  out.thm23_j2 = residual_thm23(d.flipped_minus(pts), H, pts);
  return out;
}

}  // namespace gcv
