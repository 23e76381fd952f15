#include "gcv/catalog.hpp"

#include <cmath>
#include <numbers>

namespace gcv {

namespace {

RealVectorField const_vec(std::initializer_list<double> entries) {
  std::vector<ScalarField> comps;
  for (double v : entries) comps.push_back(ScalarField::constant(4, v));
  return RealVectorField(std::move(comps));
}

std::array<ScalarField, 4> rotation_action() {
  const auto z = ScalarField::zero(4);
  const auto one = ScalarField::constant(4, 1.0);
  return {z, -one, one, z};  // j N1 = N2
}

ComplexVectorField frame_vec(std::initializer_list<std::complex<double>> entries) {
  std::vector<ComplexScalarField> comps;
  for (auto z : entries) comps.push_back(ComplexScalarField::constant(4, z));
  return ComplexVectorField(std::move(comps));
}

RealForm default_b_twist() {
  RealForm b(4, 2);
  b.add_component(MultiIndex::of({0, 2}), ScalarField::constant(4, 0.3));
  return b;
}

const std::complex<double> kI(0, 1);

}  // namespace

RealEndomorphism standard_complex_structure() {
  RealEndomorphism j(4);
  const auto one = ScalarField::constant(4, 1.0);
  j.at(1, 0) = one;
  j.at(0, 1) = -one;
  j.at(3, 2) = one;
  j.at(2, 3) = -one;
  return j;
}

RealEndomorphism rotation_23() {
  RealEndomorphism R(4);
  Freq k{};
  k[0] = 1;
  const auto c = ScalarField::harmonic(4, k, 1.0, 0.0);
  const auto s = ScalarField::harmonic(4, k, 0.0, 1.0);
  R.at(0, 0) = ScalarField::constant(4, 1.0);
  R.at(3, 3) = ScalarField::constant(4, 1.0);
  R.at(1, 1) = c;
  R.at(1, 2) = -s;
  R.at(2, 1) = s;
  R.at(2, 2) = c;
  return R;
}

FoliationData linear_foliation_data(double a, double b, double c, double d) {
  const double nf1 = std::hypot(a, b), nf2 = std::hypot(c, d);
  if (nf1 < 1e-12 || nf2 < 1e-12) throw Error("linear foliation: zero direction vector");
  FoliationData fol;
  fol.f_frame = {const_vec({a / nf1, b / nf1, 0, 0}), const_vec({0, 0, c / nf2, d / nf2})};
  fol.n_frame = {const_vec({b / nf1, -a / nf1, 0, 0}), const_vec({0, 0, d / nf2, -c / nf2})};
  fol.j_action = rotation_action();
  return fol;
}

FoliationData conformal_foliation_data(double eps) {
  FoliationData fol;
  fol.f_frame = {const_vec({1, 0, 0, 0}), const_vec({0, 1, 0, 0})};
  fol.n_frame = {const_vec({0, 0, 1, 0}), const_vec({0, 0, 0, 1})};
  fol.j_action = rotation_action();

  // cos(t1)cos(t3) written in product-to-sum form; scaling the transverse
  // block by 1 + eps*cc and the leaf block by 1 - eps*cc makes the leafwise
  // and transverse Laplacian contributions to del delbar omega+ cancel
  // exactly, so the Gauduchon gate passes while d omega+ stays nonzero.
  Freq kp{}, km{};
  kp[0] = 1;
  kp[2] = 1;
  km[0] = 1;
  km[2] = -1;
  const auto cc =
      ScalarField::harmonic(4, kp, 0.5, 0.0) + ScalarField::harmonic(4, km, 0.5, 0.0);
  const auto u = ScalarField::constant(4, 1.0) + eps * cc;
  const auto v = ScalarField::constant(4, 1.0) - eps * cc;
  RealEndomorphism e(4);
  e.at(0, 0) = v;
  e.at(1, 1) = v;
  e.at(2, 2) = u;
  e.at(3, 3) = u;
  fol.metric = MetricField(e);
  return fol;
}

FoliationData broken_foliation_data() {
  Freq k{};
  k[2] = 1;
  const auto c = ScalarField::harmonic(4, k, 1.0, 0.0);
  const auto s = ScalarField::harmonic(4, k, 0.0, 1.0);
  const auto z = ScalarField::zero(4);
  FoliationData fol;
  fol.f_frame = {RealVectorField({c, s, z, z}), const_vec({0, 0, 1, 0})};
  fol.n_frame = {RealVectorField({s, -c, z, z}), const_vec({0, 0, 0, 1})};
  fol.j_action = rotation_action();
  return fol;
}

namespace {

using VK = Verdict;

std::map<std::string, ExpectedVerdict> expect(
    std::initializer_list<std::pair<const char*, VK>> items,
    std::optional<int> type_value = std::nullopt) {
  std::map<std::string, ExpectedVerdict> m;
  for (const auto& [name, v] : items) m[name] = ExpectedVerdict{v, std::nullopt};
  if (type_value) m["type"] = ExpectedVerdict{VK::Pass, type_value};
  return m;
}

CatalogEntry make_bihermitian_entry(std::string name, std::string desc, MetricField g,
                                    RealEndomorphism jp, RealEndomorphism jm, RealForm b,
                                    RealForm twist, std::optional<EigenframeSet> frames,
                                    const std::vector<SamplePoint>& pts) {
  CatalogEntry e;
  e.name = std::move(name);
  e.description = std::move(desc);
  e.data = BihermitianData::validate(g, jp, jm, b, pts, frames);
  e.twist = twist;
  e.inputs.kind = CatalogInputs::Kind::Bihermitian;
  e.inputs.metric = std::move(g);
  e.inputs.jplus = std::move(jp);
  e.inputs.jminus = std::move(jm);
  e.inputs.frames = std::move(frames);
  e.inputs.b = std::move(b);
  e.inputs.twist = e.twist;
  return e;
}

CatalogEntry make_foliation_entry(std::string name, std::string desc, FoliationData fol,
                                  RealForm b, bool lemma39_twist,
                                  const std::vector<SamplePoint>& pts) {
  CatalogEntry e;
  e.name = std::move(name);
  e.description = std::move(desc);
  const auto base = build_from_foliation(fol, pts, nullptr, false);
  if (b.max_abs_coeff() > 0) {
    EigenframeSet frames = base.frames();
    e.data = BihermitianData::validate(base.metric(), base.jplus(), base.jminus(), b, pts,
                                       frames);
  } else {
    e.data = base;
  }
  e.twist = RealForm(4, 3);
  if (lemma39_twist) {
    // H is built from omega+ alone, so the b-twisted variants share it
    e.twist = build_H_lemma39(base, pts).H;
  }
  e.inputs.kind = CatalogInputs::Kind::Foliation;
  e.inputs.foliation = std::move(fol);
  e.inputs.b = std::move(b);
  e.inputs.twist = e.twist;
  return e;
}

}  // namespace

const std::vector<std::string>& catalog_names() {
  static const std::vector<std::string> names = {
      "flat_complex_t4",       "flat_symplectic_t4",   "linear_foliation_t4",
      "leafwise_conformal_t4", "flat_kahler_gk_t4",    "b_twisted_complex_t4",
      "b_twisted_symplectic_t4", "b_twisted_foliation_t4", "b_twisted_conformal_t4",
      "broken_foliation_t4",   "perturbed_complex_t4", "perturbed_symplectic_t4",
      "perturbed_jplus_t4"};
  return names;
}

CatalogEntry catalog_entry(const std::string& name, const std::vector<SamplePoint>& pts) {
  const auto j = standard_complex_structure();
  const auto flat = MetricField::flat(4);
  const RealForm b0(4, 2);
  const RealForm h0(4, 3);
  const double s2 = std::numbers::sqrt2;
  const double s3 = std::sqrt(3.0);

  const auto rotated = [&] {
    const auto R = rotation_23();
    return R.compose(j).compose(R.transpose());
  };
  const auto rotated_frames = [&](bool minus_flipped) {
    const auto Rc = complexify(rotation_23());
    EigenframeSet f;
    f.plus = {Rc.apply(frame_vec({1, -kI, 0, 0})), Rc.apply(frame_vec({0, 0, 1, -kI}))};
    if (minus_flipped) {
      f.minus = {conj(f.plus[0]), conj(f.plus[1])};
    } else {
      f.minus = f.plus;
    }
    return f;
  };

  if (name == "flat_complex_t4") {
    auto e = make_bihermitian_entry(name, "constant complex structure on the flat 4-torus",
                                    flat, j, j, b0, h0, std::nullopt, pts);
    e.expected = expect({{"axioms", VK::Pass},
                         {"thm23", VK::Pass},
                         {"direct", VK::Pass},
                         {"remark1", VK::Pass},
                         {"lemma25", VK::Pass},
                         {"cor26", VK::Pass},
                         {"gauduchon", VK::Pass},
                         {"gk", VK::Pass}},
                        2);
    return e;
  }
  if (name == "flat_symplectic_t4") {
    auto e = make_bihermitian_entry(name, "constant symplectic structure on the flat 4-torus",
                                    flat, j, -j, b0, h0, std::nullopt, pts);
    e.expected = expect({{"axioms", VK::Pass},
                         {"thm23", VK::Pass},
                         {"direct", VK::Pass},
                         {"remark1", VK::Pass},
                         {"lemma25", VK::Pass},
                         {"cor26", VK::Pass},
                         {"gauduchon", VK::Pass}},
                        0);
    return e;
  }
  if (name == "linear_foliation_t4") {
    auto e = make_foliation_entry(name,
                                  "constant linear 2-foliation with transverse rotation",
                                  linear_foliation_data(1.0, s2, 1.0, s3), b0, false, pts);
    e.expected = expect({{"axioms", VK::Pass},
                         {"foliation", VK::Pass},
                         {"thm23", VK::Pass},
                         {"direct", VK::Pass},
                         {"remark1", VK::Pass},
                         {"lemma25", VK::Pass},
                         {"cor26", VK::Pass},
                         {"gauduchon", VK::Pass},
                         {"ab", VK::Pass},
                         {"lemma39", VK::Pass}},
                        1);
    return e;
  }
  if (name == "leafwise_conformal_t4") {
    auto e = make_foliation_entry(
        name, "block-conformal metric with compensating factors and nonzero twist",
        conformal_foliation_data(0.1), b0, true, pts);
    e.expected = expect({{"axioms", VK::Pass},
                         {"foliation", VK::Pass},
                         {"thm23", VK::Pass},
                         {"direct", VK::Pass},
                         {"remark1", VK::Pass},
                         {"lemma25", VK::Pass},
                         {"cor26", VK::Pass},
                         {"gauduchon", VK::Pass},
                         {"ab", VK::Pass},
                         {"lemma39", VK::Pass}},
                        1);
    return e;
  }
  if (name == "flat_kahler_gk_t4") {
    auto e = make_bihermitian_entry(name, "flat Kaehler pair for the generalized Kaehler check",
                                    flat, j, j, b0, h0, std::nullopt, pts);
    e.expected = expect({{"axioms", VK::Pass},
                         {"gk", VK::Pass},
                         {"thm23", VK::Pass},
                         {"direct", VK::Pass},
                         {"lemma25", VK::Pass},
                         {"cor26", VK::Pass}},
                        2);
    return e;
  }
  if (name == "b_twisted_complex_t4") {
    auto e = make_bihermitian_entry(name, "complex structure sheared by a constant 2-form",
                                    flat, j, j, default_b_twist(), h0, std::nullopt, pts);
    e.expected = expect({{"axioms", VK::Pass},
                         {"thm23", VK::Pass},
                         {"direct", VK::Pass},
                         {"lemma25", VK::Pass},
                         {"cor26", VK::Pass}},
                        2);
    return e;
  }
  if (name == "b_twisted_symplectic_t4") {
    auto e = make_bihermitian_entry(name, "symplectic structure sheared by a constant 2-form",
                                    flat, j, -j, default_b_twist(), h0, std::nullopt, pts);
    e.expected = expect({{"axioms", VK::Pass},
                         {"thm23", VK::Pass},
                         {"direct", VK::Pass},
                         {"lemma25", VK::Pass},
                         {"cor26", VK::Pass}},
                        0);
    return e;
  }
  if (name == "b_twisted_foliation_t4") {
    auto e = make_foliation_entry(name, "linear foliation sheared by a constant 2-form",
                                  linear_foliation_data(1.0, s2, 1.0, s3), default_b_twist(),
                                  false, pts);
    e.expected = expect({{"axioms", VK::Pass},
                         {"foliation", VK::Pass},
                         {"thm23", VK::Pass},
                         {"direct", VK::Pass},
                         {"lemma25", VK::Pass},
                         {"cor26", VK::Pass},
                         {"ab", VK::Pass}},
                        1);
    return e;
  }
  if (name == "b_twisted_conformal_t4") {
    auto e = make_foliation_entry(name, "conformal foliation structure with a constant shear",
                                  conformal_foliation_data(0.1), default_b_twist(), true, pts);
    e.expected = expect({{"axioms", VK::Pass},
                         {"foliation", VK::Pass},
                         {"thm23", VK::Pass},
                         {"direct", VK::Pass},
                         {"lemma25", VK::Pass},
                         {"cor26", VK::Pass},
                         {"ab", VK::Pass}},
                        1);
    return e;
  }
  if (name == "broken_foliation_t4") {
    auto e = make_foliation_entry(name, "non-involutive leaf frame; negative control",
                                  broken_foliation_data(), b0, false, pts);
    e.expected = expect({{"axioms", VK::Pass},
                         {"foliation", VK::Fail},
                         {"remark1", VK::Fail},
                         {"thm23", VK::Fail},
                         {"direct", VK::Fail},
                         {"cor26", VK::Fail},
                         {"lemma25", VK::Pass}},
                        1);
    return e;
  }
  if (name == "perturbed_complex_t4") {
    auto frames = rotated_frames(false);
    auto e = make_bihermitian_entry(name,
                                    "rotated non-integrable complex pair; negative control",
                                    flat, rotated(), rotated(), b0, h0, frames, pts);
    e.expected = expect({{"axioms", VK::Pass},
                         {"thm23", VK::Fail},
                         {"direct", VK::Fail},
                         {"remark1", VK::Fail},
                         {"lemma25", VK::Pass},
                         {"cor26", VK::Fail},
                         {"gk", VK::Fail}},
                        2);
    return e;
  }
  if (name == "perturbed_symplectic_t4") {
    auto frames = rotated_frames(true);
    auto e = make_bihermitian_entry(name,
                                    "rotated pair with non-closed fundamental form; negative "
                                    "control",
                                    flat, rotated(), -rotated(), b0, h0, frames, pts);
    e.expected = expect({{"axioms", VK::Pass},
                         {"thm23", VK::Fail},
                         {"direct", VK::Fail},
                         {"remark1", VK::Pass},
                         {"lemma25", VK::Pass},
                         {"cor26", VK::Fail}},
                        0);
    return e;
  }
  if (name == "perturbed_jplus_t4") {
    EigenframeSet frames;
    const auto Rc = complexify(rotation_23());
    frames.plus = {Rc.apply(frame_vec({1, -kI, 0, 0})), Rc.apply(frame_vec({0, 0, 1, -kI}))};
    frames.minus = {frame_vec({1, -kI, 0, 0}), frame_vec({0, 0, 1, -kI})};
    auto e = make_bihermitian_entry(name,
                                    "non-commuting pair with rotated j+; negative control",
                                    flat, rotated(), j, b0, h0, frames, pts);
    e.expected = expect({{"axioms", VK::Pass},
                         {"thm23", VK::Fail},
                         {"direct", VK::Fail},
                         {"lemma25", VK::Fail}});
    return e;
  }
  throw Error("unknown catalog entry: " + name);
}

}  // namespace gcv
