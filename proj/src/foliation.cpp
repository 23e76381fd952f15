#include "gcv/foliation.hpp"

#include <cmath>

namespace gcv {

bool matsushita_admissible(int sigma, int chi, bool definite) {
  const auto mod4 = [](int x) { return ((x % 4) + 4) % 4; };
  if (mod4(sigma + chi) != 0) return false;
  if (mod4(sigma - chi) != 0) return false;
  if (definite && std::abs(sigma) + chi < 0) return false;
  return true;
}

namespace {

RealEndomorphism frame_matrix(const std::array<RealVectorField, 4>& cols) {
  const int n = 4;
  RealEndomorphism P(n);
  for (int c = 0; c < n; ++c) {
    if (cols[c].dimension() != n) throw Error("frame: expects vector fields on the 4-torus");
    for (int i = 0; i < n; ++i) P.at(i, c) = cols[c].comp(i);
  }
  return P;
}

void require_plane_conformal(const MetricField& g, const RealVectorField& v1,
                             const RealVectorField& v2, const char* what) {
  if (g.inner(v1, v2).max_abs_coeff() > 1e-9) {
    throw Error(std::string(what) + ": plane frame vectors are not g-orthogonal");
  }
  if ((g.inner(v1, v1) - g.inner(v2, v2)).max_abs_coeff() > 1e-9) {
    throw Error(std::string(what) +
                ": plane frame vectors have unequal norms; the quarter-turn rotation "
                "would leave the trig-polynomial ring");
  }
}

void require_planes_orthogonal(const MetricField& g,
                               const std::array<RealVectorField, 2>& a,
                               const std::array<RealVectorField, 2>& b, const char* what) {
  for (const auto& x : a)
    for (const auto& y : b) {
      if (g.inner(x, y).max_abs_coeff() > 1e-9) {
        throw Error(std::string(what) + ": the two planes are not g-orthogonal");
      }
    }
}

// frame-coordinate endomorphism conjugated into coordinates: P fhat P^{-1}
RealEndomorphism conjugate_to_coords(const RealEndomorphism& P, const RealEndomorphism& fhat) {
  const auto Pinv = inverse_constant_det(P);
  return P.compose(fhat).compose(Pinv);
}

RealEndomorphism block_rotation(int n, int offset, double sign) {
  // [[0, -sign], [sign, 0]] on rows/cols {offset, offset+1}
  RealEndomorphism r(n);
  r.at(offset + 1, offset) = ScalarField::constant(n, sign);
  r.at(offset, offset + 1) = ScalarField::constant(n, -sign);
  return r;
}

ComplexVectorField combine(const ComplexScalarField& c1, const RealVectorField& v1,
                           const ComplexScalarField& c2, const RealVectorField& v2) {
  auto a = complexify(v1);
  auto b = complexify(v2);
  auto r = ComplexVectorField::zero(v1.dimension());
  for (int i = 0; i < v1.dimension(); ++i) r.comp(i) = c1 * a.comp(i) + c2 * b.comp(i);
  return r;
}

// residual of the containment of w in the span of the given fields, in the
// g-Hermitian inner product, maximized over the samples
ResidualAt containment_residual(const ComplexVectorField& w,
                                const std::vector<ComplexVectorField>& span,
                                const MetricField& g, const std::vector<SamplePoint>& pts) {
  ResidualAt out;
  const int n = g.dimension();
  for (const auto& p : pts) {
    Eigen::MatrixXcd M(n, static_cast<int>(span.size()));
    for (size_t c = 0; c < span.size(); ++c) M.col(static_cast<int>(c)) = eval_at(span[c], p);
    out.update(span_orthogonal_residual(M, eval_at(w, p), g.eval(p)), p);
  }
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------

BihermitianData build_from_distribution(const DistributionFrame& frame,
                                        const std::vector<SamplePoint>& pts) {
  const auto& g = frame.metric;
  require_plane_conformal(g, frame.e_frame[0], frame.e_frame[1], "E");
  require_plane_conformal(g, frame.n_frame[0], frame.n_frame[1], "N");
  require_planes_orthogonal(g, frame.e_frame, frame.n_frame, "E/N");

  const auto P = frame_matrix(
      {frame.e_frame[0], frame.e_frame[1], frame.n_frame[0], frame.n_frame[1]});
  const auto detP = determinant(P);
  if (!detP.is_constant(1e-9) || std::abs(detP.constant_part()) < 1e-6) {
    throw Error("distribution frame degenerates or has nonconstant volume");
  }

  const auto rho_e = block_rotation(4, 0, 1.0);
  const auto rho_n = block_rotation(4, 2, 1.0);
  const auto jplus = conjugate_to_coords(P, rho_e + rho_n);
  const auto jminus = conjugate_to_coords(P, rho_e - rho_n);

  const std::complex<double> iu(0, 1);
  const auto one = ComplexScalarField::constant(4, 1.0);
  const auto mi = ComplexScalarField::constant(4, std::complex<double>(0, -1));
  const auto pi_ = ComplexScalarField::constant(4, std::complex<double>(0, 1));
  EigenframeSet frames;
  frames.plus = {combine(one, frame.e_frame[0], mi, frame.e_frame[1]),
                 combine(one, frame.n_frame[0], mi, frame.n_frame[1])};
  frames.minus = {combine(one, frame.e_frame[0], mi, frame.e_frame[1]),
                  combine(one, frame.n_frame[0], pi_, frame.n_frame[1])};

  return BihermitianData::validate(g, jplus, jminus, RealForm(4, 2), pts, frames);
}

// ---------------------------------------------------------------------------

namespace {

struct TransverseOperator {
  ScalarField a, b, c, d;
  // -i eigenvector of [[a,b],[c,d]] in N-frame coefficients: (b, -i - a).
  // b cannot vanish: the real entries satisfy bc = -1 - a^2 <= -1.
  ComplexVectorField antiholomorphic(const std::array<RealVectorField, 2>& n_frame) const {
    const auto bc = ComplexScalarField(b);
    const auto coef2 =
        ComplexScalarField(-a) - ComplexScalarField::constant(a.dimension(), {0, 1});
    return combine(bc, n_frame[0], coef2, n_frame[1]);
  }
};

TransverseOperator transverse_operator(const FoliationData& fol) {
  TransverseOperator t{fol.j_action[0], fol.j_action[1], fol.j_action[2], fol.j_action[3]};
  if ((t.a + t.d).max_abs_coeff() > 1e-9) {
    throw Error("transverse operator must be trace-free (j^2 = -id)");
  }
  if ((t.a * t.a + t.b * t.c + ScalarField::constant(4, 1.0)).max_abs_coeff() > 1e-9) {
    throw Error("transverse operator fails j^2 = -id");
  }
  return t;
}

MetricField foliation_metric(const FoliationData& fol, const RealEndomorphism& P,
                             const TransverseOperator& t) {
  if (fol.metric) {
    const auto& g = *fol.metric;
    require_plane_conformal(g, fol.f_frame[0], fol.f_frame[1], "F");
    require_planes_orthogonal(g, fol.f_frame, fol.n_frame, "F/N");
    // transverse block must already be j-compatible
    RealEndomorphism gn(2), jn(2);
    gn.at(0, 0) = g.inner(fol.n_frame[0], fol.n_frame[0]);
    gn.at(0, 1) = g.inner(fol.n_frame[0], fol.n_frame[1]);
    gn.at(1, 0) = gn.at(0, 1);
    gn.at(1, 1) = g.inner(fol.n_frame[1], fol.n_frame[1]);
    jn.at(0, 0) = t.a;
    jn.at(0, 1) = t.b;
    jn.at(1, 0) = t.c;
    jn.at(1, 1) = t.d;
    const auto resid = jn.transpose().compose(gn).compose(jn) - gn;
    if (resid.max_abs_coeff() > 1e-9) {
      throw Error("supplied metric is not compatible with the transverse operator on N");
    }
    return g;
  }
  // default: declare the frames orthonormal, then average the N block over
  // {1, j} so the transverse operator becomes an isometry
  RealEndomorphism ghat(4);
  const auto one = ScalarField::constant(4, 1.0);
  ghat.at(0, 0) = one;
  ghat.at(1, 1) = one;
  ghat.at(2, 2) = 0.5 * (one + t.a * t.a + t.c * t.c);
  ghat.at(2, 3) = 0.5 * (t.a * t.b + t.c * t.d);
  ghat.at(3, 2) = ghat.at(2, 3);
  ghat.at(3, 3) = 0.5 * (one + t.b * t.b + t.d * t.d);
  const auto Pinv = inverse_constant_det(P);
  const auto gcoord = Pinv.transpose().compose(ghat).compose(Pinv);
  return MetricField(gcoord);
}

}  // namespace

FoliationChecks validate_foliation(const FoliationData& fol,
                                   const std::vector<SamplePoint>& pts) {
  const auto P =
      frame_matrix({fol.f_frame[0], fol.f_frame[1], fol.n_frame[0], fol.n_frame[1]});
  const auto detP = determinant(P);
  if (!detP.is_constant(1e-9) || std::abs(detP.constant_part()) < 1e-6) {
    throw Error("foliation frame degenerates or has nonconstant volume");
  }
  const auto t = transverse_operator(fol);
  const auto g = foliation_metric(fol, P, t);

  FoliationChecks out;
  const auto f1 = complexify(fol.f_frame[0]);
  const auto f2 = complexify(fol.f_frame[1]);
  out.leaf_involutivity =
      containment_residual(lie_bracket(f1, f2), {f1, f2}, g, pts);

  const auto W = t.antiholomorphic(fol.n_frame);
  const std::vector<ComplexVectorField> preimage = {f1, f2, W};
  for (const auto& u : preimage) {
    for (const auto& v : preimage) {
      const auto r = containment_residual(lie_bracket(u, v), preimage, g, pts);
      out.transverse_integrability.update(r.value, r.worst);
    }
  }
  return out;
}

BihermitianData build_from_foliation(const FoliationData& fol,
                                     const std::vector<SamplePoint>& pts,
                                     FoliationChecks* checks_out, bool strict) {
  const auto checks = validate_foliation(fol, pts);
  if (checks_out) *checks_out = checks;
  if (strict) {
    if (checks.leaf_involutivity.value > 1e-8) {
      throw Error("F-frame is not involutive (residual " +
                  std::to_string(checks.leaf_involutivity.value) + ")");
    }
    if (checks.transverse_integrability.value > 1e-8) {
      throw Error("transverse structure is not integrable (residual " +
                  std::to_string(checks.transverse_integrability.value) + ")");
    }
  }

  const auto P =
      frame_matrix({fol.f_frame[0], fol.f_frame[1], fol.n_frame[0], fol.n_frame[1]});
  const auto t = transverse_operator(fol);
  const auto g = foliation_metric(fol, P, t);

  // j+ rotates F by +pi/2 and acts by -j on N; j- flips the F part
  RealEndomorphism jn(4);
  jn.at(2, 2) = -t.a;
  jn.at(2, 3) = -t.b;
  jn.at(3, 2) = -t.c;
  jn.at(3, 3) = -t.d;
  const auto rot_f = block_rotation(4, 0, 1.0);
  const auto jplus = conjugate_to_coords(P, rot_f + jn);
  const auto jminus = conjugate_to_coords(P, -rot_f + jn);

  const auto one = ComplexScalarField::constant(4, 1.0);
  const auto mi = ComplexScalarField::constant(4, std::complex<double>(0, -1));
  const auto pi_ = ComplexScalarField::constant(4, std::complex<double>(0, 1));
  const auto W = t.antiholomorphic(fol.n_frame);  // +i eigenvector of -j
  EigenframeSet frames;
  frames.plus = {combine(one, fol.f_frame[0], mi, fol.f_frame[1]), W};
  frames.minus = {combine(one, fol.f_frame[0], pi_, fol.f_frame[1]), W};

  return BihermitianData::validate(g, jplus, jminus, RealForm(4, 2), pts, frames);
}

// ---------------------------------------------------------------------------

ABSplitting ab_splitting(const BihermitianData& data, const std::vector<SamplePoint>& pts) {
  const double comm = data.commutator_residual(pts);
  if (comm > 1e-9) {
    throw Error("ab_splitting: j+ and j- do not commute (residual " + std::to_string(comm) +
                ")");
  }
  if (data.orientation_plus() == data.orientation_minus()) {
    throw Error("ab_splitting: j+ and j- induce the same orientation");
  }
  const int n = data.dimension();
  const auto jm = complexify(data.jminus());
  const auto jp = complexify(data.jplus());
  const std::complex<double> iu(0, 1);

  // commuting projectors of j- split T+^{1,0} into the A and B lines
  ComplexEndomorphism p01(n), p10(n);
  const auto id = ComplexEndomorphism::identity(n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) {
      p01.at(r, c) = 0.5 * id.at(r, c) + (0.5 * iu) * jm.at(r, c);
      p10.at(r, c) = 0.5 * id.at(r, c) - (0.5 * iu) * jm.at(r, c);
    }

  auto pick_line = [&](const ComplexEndomorphism& proj, const char* what) {
    const std::array<ComplexVectorField, 2> cand = {proj.apply(data.frames().plus[0]),
                                                    proj.apply(data.frames().plus[1])};
    for (const auto& p : pts) {
      Eigen::MatrixXcd M(n, 2);
      M.col(0) = eval_at(cand[0], p);
      M.col(1) = eval_at(cand[1], p);
      Eigen::JacobiSVD<Eigen::MatrixXcd> svd(M);
      const auto& sv = svd.singularValues();
      if (sv(0) < 1e-6 || sv(1) > 1e-6 * std::max(1.0, sv(0))) {
        throw Error(std::string("ab_splitting: ") + what +
                    " eigenspace dimension != 1 at a sample point");
      }
    }
    return cand[0].max_abs_coeff() >= cand[1].max_abs_coeff() ? cand[0] : cand[1];
  };

  ABSplitting out;
  out.A = pick_line(p01, "A");
  out.B = pick_line(p10, "B");

  // simultaneous eigenfield equations
  for (const auto* pair :
       {&out.A, &out.B}) {
    const bool is_a = (pair == &out.A);
    const auto rp = jp.apply(*pair) - iu * (*pair);
    const auto rm = is_a ? (jm.apply(*pair) + iu * (*pair)) : (jm.apply(*pair) - iu * (*pair));
    for (const auto& p : pts) {
      out.eigen_residual.update(eval_at(rp, p).cwiseAbs().maxCoeff(), p);
      out.eigen_residual.update(eval_at(rm, p).cwiseAbs().maxCoeff(), p);
    }
  }

  // reassembly of the eigenbundles from (A, Abar, B)
  const auto Abar = conj(out.A);
  for (int k = 0; k < 2; ++k) {
    const auto rp =
        containment_residual(data.frames().plus[k], {out.A, out.B}, data.metric(), pts);
    out.span_residual.update(rp.value, rp.worst);
    const auto rm =
        containment_residual(data.frames().minus[k], {Abar, out.B}, data.metric(), pts);
    out.span_residual.update(rm.value, rm.worst);
  }

  // A + Abar against ker(j+ + j-)
  const auto ksum = jp + jm;
  const auto ka = ksum.apply(out.A);
  for (const auto& p : pts) {
    out.kernel_residual.update(eval_at(ka, p).cwiseAbs().maxCoeff(), p);
  }
  return out;
}

TriGrading make_trigrading(const ABSplitting& split) {
  const int n = split.A.dimension();
  ComplexEndomorphism P(n);
  const std::array<ComplexVectorField, 4> cols = {split.A, conj(split.A), split.B,
                                                  conj(split.B)};
  for (int c = 0; c < 4; ++c)
    for (int i = 0; i < n; ++i) P.at(i, c) = cols[c].comp(i);
  const auto Pinv = inverse_constant_det(P);

  auto projector = [&](std::initializer_list<int> keep) {
    ComplexEndomorphism diag(n);
    for (int k : keep) diag.at(k, k) = ComplexScalarField::constant(n, 1.0);
    return P.compose(diag).compose(Pinv);
  };

  TriGrading out;
  out.projectors = {projector({0, 1}), projector({2}), projector({3})};
  return out;
}

std::map<GradeKey, ComplexForm> trigrade(const ComplexForm& phi, const TriGrading& grading) {
  return decompose_by_projectors(phi, grading.projectors);
}

// ---------------------------------------------------------------------------

ResidualAt form_max_at(const ComplexForm& w, const std::vector<SamplePoint>& pts) {
  ResidualAt out;
  for (const auto& [I, f] : w.components()) {
    for (const auto& p : pts) out.update(std::abs(f.evaluate(p)), p);
  }
  return out;
}

ResidualAt form_max_at(const RealForm& w, const std::vector<SamplePoint>& pts) {
  ResidualAt out;
  for (const auto& [I, f] : w.components()) {
    for (const auto& p : pts) out.update(std::abs(f.evaluate(p)), p);
  }
  return out;
}

ResidualAt gauduchon_residual(const RealForm& omega, const RealEndomorphism& j,
                              const std::vector<SamplePoint>& pts) {
  const auto delbar = del_and_delbar(complexify(omega), j, pts).delbar;
  if (delbar.max_abs_coeff() < 1e-15) {
    ResidualAt zero;
    zero.worst = pts.front();
    return zero;
  }
  const auto deldelbar = del_and_delbar(delbar, j, pts).del;
  return form_max_at(deldelbar, pts);
}

LemmaH build_H_lemma39(const BihermitianData& data, const std::vector<SamplePoint>& pts) {
  LemmaH out;
  out.gauduchon = gauduchon_residual(data.omega_plus(), data.jplus(), pts);
  if (out.gauduchon.value >= 1e-7) {
    throw Error("Gauduchon gate failed: del delbar omega+ residual " +
                std::to_string(out.gauduchon.value));
  }

  const auto split = ab_splitting(data, pts);
  const auto grading = make_trigrading(split);

  const int n = data.dimension();
  const auto omega_c = complexify(data.omega_plus());
  const auto d_omega = exterior_derivative(omega_c);
  const auto delbar = del_and_delbar(omega_c, data.jplus(), pts).delbar;

  auto tri_d = trigrade(d_omega, grading);
  auto tri_db = trigrade(delbar, grading);
  auto bucket = [&](std::map<GradeKey, ComplexForm>& m, GradeKey k) {
    auto it = m.find(k);
    return it == m.end() ? ComplexForm(n, 3) : it->second;
  };

  const auto d_201 = bucket(tri_d, {2, 0, 1});
  const auto db_201 = bucket(tri_db, {2, 0, 1});
  const auto db_111 = bucket(tri_db, {1, 1, 1});

  out.eq16 = form_max_at(d_201 - db_201, pts);

  out.H = 2.0 * imag_part(db_111) + 2.0 * imag_part(d_201);
  out.dH = form_max_at(exterior_derivative(out.H), pts);

  // restriction identity d omega+ = -iH on T+^{1,0} + T-^{1,0}
  const std::complex<double> iu(0, 1);
  const auto Hc = complexify(out.H);
  const std::array<ComplexVectorField, 4> span = {data.frames().plus[0], data.frames().plus[1],
                                                  data.frames().minus[0],
                                                  data.frames().minus[1]};
  for (size_t a = 0; a < 4; ++a)
    for (size_t b = 0; b < 4; ++b)
      for (size_t c = 0; c < 4; ++c) {
        const auto resid = apply_form(d_omega, {span[a], span[b], span[c]}) +
                           iu * apply_form(Hc, {span[a], span[b], span[c]});
        for (const auto& p : pts) out.restriction.update(std::abs(resid.evaluate(p)), p);
      }
  return out;
}

}  // namespace gcv
