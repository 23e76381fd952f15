#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "gcv/generalized.hpp"
#include "gcv/sampling.hpp"

using namespace gcv;

namespace {

RealEndomorphism standard_j() {
  RealEndomorphism j(4);
  const auto one = ScalarField::constant(4, 1.0);
  j.at(1, 0) = one;
  j.at(0, 1) = -one;
  j.at(3, 2) = one;
  j.at(2, 3) = -one;
  return j;
}

// j+ = rho_E + rho_N, j- = rho_E - rho_N on the split flat torus,
// E = span(d1, d2), N = span(d3, d4)
std::pair<RealEndomorphism, RealEndomorphism> split_pair() {
  RealEndomorphism jp(4), jm(4);
  const auto one = ScalarField::constant(4, 1.0);
  jp.at(1, 0) = one;
  jp.at(0, 1) = -one;
  jp.at(3, 2) = one;
  jp.at(2, 3) = -one;
  jm.at(1, 0) = one;
  jm.at(0, 1) = -one;
  jm.at(3, 2) = -one;
  jm.at(2, 3) = one;
  return {jp, jm};
}

// rotation by theta1 in the (d2, d3) plane; orthogonal with trig-poly entries
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

ComplexVectorField frame_vec(std::initializer_list<std::complex<double>> entries) {
  std::vector<ComplexScalarField> comps;
  for (auto z : entries) comps.push_back(ComplexScalarField::constant(4, z));
  return ComplexVectorField(std::move(comps));
}

const auto kPts = sample_points(4);
const std::complex<double> kI(0, 1);

}  // namespace

TEST_CASE("validation accepts flat structures and computes orientations") {
  const auto j = standard_j();
  const auto d =
      BihermitianData::validate(MetricField::flat(4), j, j, RealForm(4, 2), kPts);
  CHECK(d.orientation_plus() == d.orientation_minus());
  CHECK(d.commutator_residual(kPts) < 1e-15);

  const auto [jp, jm] = split_pair();
  const auto ds =
      BihermitianData::validate(MetricField::flat(4), jp, jm, RealForm(4, 2), kPts);
  CHECK(ds.orientation_plus() != ds.orientation_minus());
  CHECK(ds.commutator_residual(kPts) < 1e-15);

  // omega_+ = g j_+ is exactly antisymmetric and (1,1): it kills (1,0)-pairs
  const auto wp = complexify(ds.omega_plus());
  const auto onezero = apply_form(wp, {ds.frames().plus[0], ds.frames().plus[1]});
  for (const auto& p : kPts) CHECK(std::abs(onezero.evaluate(p)) < 1e-10);
}

TEST_CASE("validation rejects broken inputs") {
  const auto j = standard_j();

  // non-symmetric metric
  RealEndomorphism bad(4);
  for (int i = 0; i < 4; ++i) bad.at(i, i) = ScalarField::constant(4, 1.0);
  bad.at(0, 1) = ScalarField::constant(4, 0.25);
  CHECK_THROWS_AS(MetricField{bad}, Error);

  // j^2 != -id
  RealEndomorphism notacs(4);
  notacs.at(0, 0) = ScalarField::constant(4, 1.0);
  CHECK_THROWS_WITH_AS(
      (void)BihermitianData::validate(MetricField::flat(4), notacs, j, RealForm(4, 2), kPts),
      doctest::Contains("j+^2"), Error);

  // incompatible metric: diag(1,2,1,1) is not preserved by the standard j
  RealEndomorphism stretched(4);
  stretched.at(0, 0) = ScalarField::constant(4, 1.0);
  stretched.at(1, 1) = ScalarField::constant(4, 2.0);
  stretched.at(2, 2) = ScalarField::constant(4, 1.0);
  stretched.at(3, 3) = ScalarField::constant(4, 1.0);
  CHECK_THROWS_WITH_AS((void)BihermitianData::validate(MetricField(stretched), j, j,
                                                       RealForm(4, 2), kPts),
                       doctest::Contains("compatible"), Error);

  // nonconstant j without adapted frames
  const auto R = rotation_23();
  const auto jrot = R.compose(j).compose(R.transpose());
  CHECK_THROWS_WITH_AS(
      (void)BihermitianData::validate(MetricField::flat(4), jrot, j, RealForm(4, 2), kPts),
      doctest::Contains("eigenframes"), Error);
}

TEST_CASE("eigenframes follow the split-pair pattern") {
  const auto [jp, jm] = split_pair();
  // hand-solved 2x2 eigenproblems: Z+ = (d1 - i d2, d3 - i d4),
  // Z- = (d1 - i d2, d3 + i d4)
  EigenframeSet frames;
  frames.plus = {frame_vec({1, -kI, 0, 0}), frame_vec({0, 0, 1, -kI})};
  frames.minus = {frame_vec({1, -kI, 0, 0}), frame_vec({0, 0, 1, kI})};
  const auto d = BihermitianData::validate(MetricField::flat(4), jp, jm, RealForm(4, 2), kPts,
                                           frames);
  CHECK(d.commutator_residual(kPts) < 1e-15);

  // wrong frame is rejected by the eigen-residual gate
  EigenframeSet wrong = frames;
  wrong.plus[1] = frame_vec({0, 0, 1, kI});
  CHECK_THROWS_WITH_AS((void)BihermitianData::validate(MetricField::flat(4), jp, jm,
                                                       RealForm(4, 2), kPts, wrong),
                       doctest::Contains("eigenframe"), Error);
}

TEST_CASE("integrability residuals vanish on constant structures") {
  const auto j = standard_j();
  const auto H0 = RealForm(4, 3);

  const auto complex_type =
      BihermitianData::validate(MetricField::flat(4), j, j, RealForm(4, 2), kPts);
  auto r = residual_thm23(complex_type, H0, kPts);
  CHECK(r.r1.value < 1e-12);
  CHECK(r.r2.value < 1e-12);

  const auto [jp, jm] = split_pair();
  const auto split =
      BihermitianData::validate(MetricField::flat(4), jp, jm, RealForm(4, 2), kPts);
  r = residual_thm23(split, H0, kPts);
  CHECK(r.r1.value < 1e-12);
  CHECK(r.r2.value < 1e-12);
}

TEST_CASE("frame residuals and the direct oracle agree on a perturbed structure") {
  const auto j = standard_j();
  const auto R = rotation_23();
  const auto jrot = R.compose(j).compose(R.transpose());

  // adapted frames: R applied to the constant eigenvectors of j
  const auto Rc = complexify(R);
  EigenframeSet frames;
  frames.plus = {Rc.apply(frame_vec({1, -kI, 0, 0})), Rc.apply(frame_vec({0, 0, 1, -kI}))};
  frames.minus = {frame_vec({1, -kI, 0, 0}), frame_vec({0, 0, 1, -kI})};

  const auto d = BihermitianData::validate(MetricField::flat(4), jrot, j, RealForm(4, 2), kPts,
                                           frames);
  const auto H0 = RealForm(4, 3);
  const auto r = residual_thm23(d, H0, kPts);
  CHECK(r.max() > 1e-3);

  const auto L = eigenframe(d);
  const auto J = GeneralizedStructure::from_bihermitian(d);
  CHECK(structure_square_residual(J, kPts).value < 1e-9);
  CHECK(eigenframe_residual(J, L, kPts).value < 1e-8);
  const auto direct = integrability_residual_direct(L, H0, kPts);
  CHECK(direct.value > 1e-3);
}

TEST_CASE("remark 1 involutivity residual") {
  const auto [jp, jm] = split_pair();
  const auto split =
      BihermitianData::validate(MetricField::flat(4), jp, jm, RealForm(4, 2), kPts);
  CHECK(remark1_check(split, kPts).value < 1e-12);
}

TEST_CASE("lemma 2.5 identities") {
  const auto [jp, jm] = split_pair();
  const auto split =
      BihermitianData::validate(MetricField::flat(4), jp, jm, RealForm(4, 2), kPts);
  CHECK(lemma25_check(split, kPts).value < 1e-12);

  // non-commuting pair is rejected at the hypothesis gate
  const auto j = standard_j();
  const auto R = rotation_23();
  const auto jrot = R.compose(j).compose(R.transpose());
  const auto Rc = complexify(R);
  EigenframeSet frames;
  frames.plus = {Rc.apply(frame_vec({1, -kI, 0, 0})), Rc.apply(frame_vec({0, 0, 1, -kI}))};
  frames.minus = {frame_vec({1, -kI, 0, 0}), frame_vec({0, 0, 1, -kI})};
  const auto noncomm = BihermitianData::validate(MetricField::flat(4), jrot, j, RealForm(4, 2),
                                                 kPts, frames);
  CHECK(noncomm.commutator_residual(kPts) > 1e-3);
  CHECK_THROWS_WITH_AS((void)lemma25_check(noncomm, kPts), doctest::Contains("commute"), Error);
}

TEST_CASE("corollary 2.6 on commuting data") {
  const auto [jp, jm] = split_pair();
  const auto split =
      BihermitianData::validate(MetricField::flat(4), jp, jm, RealForm(4, 2), kPts);
  const auto r = residual_cor26(split, RealForm(4, 3), kPts);
  CHECK(r.total.value < 1e-12);
  CHECK(r.eq14.value < 1e-12);
  CHECK(r.eq15.value < 1e-12);

  // cross-validation against the full frame residuals on the same data
  const auto t = residual_thm23(split, RealForm(4, 3), kPts);
  CHECK(((r.total.value < 1e-7 && t.max() < 1e-7) || (r.total.value > 1e-3 && t.max() > 1e-3)));
}

TEST_CASE("generalized Kaehler check") {
  const auto j = standard_j();
  const auto kahler =
      BihermitianData::validate(MetricField::flat(4), j, j, RealForm(4, 2), kPts);

  const auto clean = gk_check(kahler, RealForm(4, 3), kPts);
  CHECK(clean.involutive_plus.value < 1e-12);
  CHECK(clean.involutive_minus.value < 1e-12);
  CHECK(clean.dc_plus.value < 1e-12);
  CHECK(clean.dc_minus.value < 1e-12);
  CHECK(clean.thm23_j1.max() < 1e-12);
  CHECK(clean.thm23_j2.max() < 1e-12);

  // injected nonzero H must trip the d^c condition; for constant omega the
  // residual is exactly the H evaluation on the eigenframe triples
  auto H = wedge(wedge(coordinate_form(4, 0), coordinate_form(4, 1)), coordinate_form(4, 2));
  const auto tripped = gk_check(kahler, H, kPts);
  CHECK(tripped.dc_plus.value >= 0.5);
  CHECK(tripped.dc_minus.value >= 0.5);

  // J2 = flip of j- still squares to -id
  const auto J2 =
      GeneralizedStructure::from_bihermitian(kahler.flipped_minus(kPts));
  CHECK(structure_square_residual(J2, kPts).value < 1e-12);
}
