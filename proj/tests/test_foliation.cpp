#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "gcv/foliation.hpp"
#include "gcv/generalized.hpp"
#include "gcv/sampling.hpp"

using namespace gcv;

namespace {

const auto kPts = sample_points(4);
const std::complex<double> kI(0, 1);

RealVectorField const_vec(std::initializer_list<double> entries) {
  std::vector<ScalarField> comps;
  for (double v : entries) comps.push_back(ScalarField::constant(4, v));
  return RealVectorField(std::move(comps));
}

std::array<ScalarField, 4> rotation_action() {
  const auto z = ScalarField::zero(4);
  const auto one = ScalarField::constant(4, 1.0);
  return {z, -one, one, z};  // [[0,-1],[1,0]]: j N1 = N2
}

DistributionFrame flat_split_distribution() {
  DistributionFrame d;
  d.e_frame = {const_vec({1, 0, 0, 0}), const_vec({0, 1, 0, 0})};
  d.n_frame = {const_vec({0, 0, 1, 0}), const_vec({0, 0, 0, 1})};
  d.metric = MetricField::flat(4);
  return d;
}

// Linear foliation frames: F spanned by (a,b,0,0) and (0,0,c,d), N the
// orthogonal plane, all normalized so the plane pairs stay conformal.
FoliationData linear_foliation(double a, double b, double c, double d) {
  const double nf1 = std::hypot(a, b), nf2 = std::hypot(c, d);
  FoliationData fol;
  fol.f_frame = {const_vec({a / nf1, b / nf1, 0, 0}), const_vec({0, 0, c / nf2, d / nf2})};
  fol.n_frame = {const_vec({b / nf1, -a / nf1, 0, 0}), const_vec({0, 0, d / nf2, -c / nf2})};
  fol.j_action = rotation_action();
  return fol;
}

// Leafwise-conformal structure whose transverse and leaf block factors
// compensate so that del delbar omega+ vanishes identically while
// d omega+ does not.
FoliationData conformal_foliation(double eps) {
  FoliationData fol;
  fol.f_frame = {const_vec({1, 0, 0, 0}), const_vec({0, 1, 0, 0})};
  fol.n_frame = {const_vec({0, 0, 1, 0}), const_vec({0, 0, 0, 1})};
  fol.j_action = rotation_action();

  Freq k13{};
  k13[0] = 1;
  k13[2] = 1;
  Freq k13m{};
  k13m[0] = 1;
  k13m[2] = -1;
  // cos(t1)cos(t3) = (cos(t1-t3) + cos(t1+t3))/2
  const auto cc = ScalarField::harmonic(4, k13, 0.5, 0.0) + ScalarField::harmonic(4, k13m, 0.5, 0.0);
  const auto u = ScalarField::constant(4, 1.0) + eps * cc;  // transverse block
  const auto v = ScalarField::constant(4, 1.0) - eps * cc;  // leaf block
  RealEndomorphism e(4);
  e.at(0, 0) = v;
  e.at(1, 1) = v;
  e.at(2, 2) = u;
  e.at(3, 3) = u;
  fol.metric = MetricField(e);
  return fol;
}

// Non-involutive leaf frame rotating with theta3; stays exactly orthonormal.
FoliationData broken_foliation() {
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

}  // namespace

TEST_CASE("matsushita admissibility") {
  // worked inputs: T^4, S^4, CP^2 from their standard characteristic numbers
  CHECK(matsushita_admissible(0, 0, false));   // T^4
  CHECK_FALSE(matsushita_admissible(0, 2, true));  // S^4: sigma+chi = 2 mod 4
  CHECK_FALSE(matsushita_admissible(1, 3, true));  // CP^2: sigma-chi = -2 mod 4

  // brute-force re-implementation over [-20, 20]^2
  for (int sigma = -20; sigma <= 20; ++sigma) {
    for (int chi = -20; chi <= 20; ++chi) {
      const bool both_mod4 = ((sigma + chi) % 4 == 0) && ((sigma - chi) % 4 == 0) &&
                             (((sigma + chi) % 4) + 4) % 4 == 0 &&
                             (((sigma - chi) % 4) + 4) % 4 == 0;
      const bool indef = both_mod4;
      const bool def = both_mod4 && (std::abs(sigma) + chi >= 0);
      CHECK(matsushita_admissible(sigma, chi, false) == indef);
      CHECK(matsushita_admissible(sigma, chi, true) == def);
    }
  }
}

TEST_CASE("distribution construction on the flat split torus") {
  const auto data = build_from_distribution(flat_split_distribution(), kPts);

  // frozen rotation matrices: j+ sends d1->d2, d3->d4; j- sends d3->-d4
  const std::vector<double> p{0.4, 1.1, 2.2, 0.9};
  Eigen::MatrixXd Jp = eval_at(data.jplus(), p);
  Eigen::MatrixXd Jm = eval_at(data.jminus(), p);
  Eigen::MatrixXd Jp_expect(4, 4), Jm_expect(4, 4);
  Jp_expect << 0, -1, 0, 0, 1, 0, 0, 0, 0, 0, 0, -1, 0, 0, 1, 0;
  Jm_expect << 0, -1, 0, 0, 1, 0, 0, 0, 0, 0, 0, 1, 0, 0, -1, 0;
  CHECK((Jp - Jp_expect).cwiseAbs().maxCoeff() < 1e-12);
  CHECK((Jm - Jm_expect).cwiseAbs().maxCoeff() < 1e-12);

  CHECK(data.commutator_residual(kPts) < 1e-9);
  CHECK(data.orientation_plus() != data.orientation_minus());

  // kernel bookkeeping settled by block arithmetic: j+ + j- = 2 rho_E kills N,
  // j+ - j- = 2 rho_N kills E
  const auto sum = data.jplus() + data.jminus();
  const auto dif = data.jplus() - data.jminus();
  const auto d = flat_split_distribution();
  for (const auto& q : kPts) {
    for (int k = 0; k < 2; ++k) {
      CHECK(eval_at(sum.apply(d.n_frame[k]), q).cwiseAbs().maxCoeff() < 1e-9);
      CHECK(eval_at(dif.apply(d.e_frame[k]), q).cwiseAbs().maxCoeff() < 1e-9);
      CHECK(eval_at(sum.apply(d.e_frame[k]), q).cwiseAbs().maxCoeff() > 0.5);
      CHECK(eval_at(dif.apply(d.n_frame[k]), q).cwiseAbs().maxCoeff() > 0.5);
    }
  }

  CHECK(lemma25_check(data, kPts).value < 1e-12);
}

TEST_CASE("rejects non-conformal or non-orthogonal frames") {
  auto d = flat_split_distribution();
  d.e_frame[1] = const_vec({0, 2, 0, 0});  // unequal norms
  CHECK_THROWS_WITH_AS((void)build_from_distribution(d, kPts), doctest::Contains("norm"),
                       Error);

  auto d2 = flat_split_distribution();
  d2.n_frame[0] = const_vec({1, 0, 0, 0});  // unit, but inside E
  CHECK_THROWS_WITH_AS((void)build_from_distribution(d2, kPts),
                       doctest::Contains("orthogonal"), Error);
}

TEST_CASE("linear foliation on the 4-torus") {
  const auto fol = linear_foliation(1.0, std::numbers::sqrt2, 1.0, std::sqrt(3.0));
  FoliationChecks checks;
  const auto data = build_from_foliation(fol, kPts, &checks);
  CHECK(checks.leaf_involutivity.value < 1e-12);
  CHECK(checks.transverse_integrability.value < 1e-12);

  const auto r = residual_thm23(data, RealForm(4, 3), kPts);
  CHECK(r.r1.value < 1e-12);
  CHECK(r.r2.value < 1e-12);
  CHECK(remark1_check(data, kPts).value < 1e-8);
  CHECK(data.orientation_plus() != data.orientation_minus());

  const auto J = GeneralizedStructure::from_bihermitian(data);
  CHECK(structure_square_residual(J, kPts).value < 1e-12);
  for (size_t i = 0; i < kPts.size(); i += 7) {
    CHECK(type_at_point(J, kPts[i]).type == 1);
  }
}

TEST_CASE("broken foliation is rejected and flagged") {
  const auto fol = broken_foliation();
  const auto checks = validate_foliation(fol, kPts);
  CHECK(checks.leaf_involutivity.value > 1e-3);

  CHECK_THROWS_WITH_AS((void)build_from_foliation(fol, kPts), doctest::Contains("involutive"),
                       Error);

  // permissive build still yields valid bihermitian data whose integrability
  // checks then fail
  const auto data = build_from_foliation(fol, kPts, nullptr, false);
  CHECK(remark1_check(data, kPts).value > 1e-3);
  CHECK(residual_thm23(data, RealForm(4, 3), kPts).max() > 1e-3);
}

TEST_CASE("ab splitting of the flat split structure") {
  const auto data = build_from_distribution(flat_split_distribution(), kPts);
  const auto split = ab_splitting(data, kPts);
  CHECK(split.eigen_residual.value < 1e-9);
  CHECK(split.span_residual.value < 1e-10);
  CHECK(split.kernel_residual.value < 1e-9);

  // hand-diagonalized lines: A is the (+i, -i) eigenfield, carried by the
  // N-plane where j+ and j- disagree; B by the E-plane where they agree.
  const std::vector<double> p{0.3, 0.8, 1.9, 2.5};
  const auto Av = eval_at(split.A, p);
  const auto Bv = eval_at(split.B, p);
  Eigen::Vector4cd a_expect(0, 0, 1, -kI);
  Eigen::Vector4cd b_expect(1, -kI, 0, 0);
  // proportionality up to complex scale
  CHECK(std::abs(Av(0)) + std::abs(Av(1)) < 1e-10);
  CHECK(std::abs(Av(2) * a_expect(3) - Av(3) * a_expect(2)) < 1e-10);
  CHECK(std::abs(Bv(2)) + std::abs(Bv(3)) < 1e-10);
  CHECK(std::abs(Bv(0) * b_expect(1) - Bv(1) * b_expect(0)) < 1e-10);

  // same-orientation pairs are rejected
  const auto j = data.jplus();
  const auto same = BihermitianData::validate(MetricField::flat(4), j, j, RealForm(4, 2), kPts);
  CHECK_THROWS_WITH_AS((void)ab_splitting(same, kPts), doctest::Contains("orientation"), Error);
}

TEST_CASE("foliation round trip reproduces the transverse operator") {
  const auto fol = linear_foliation(1.0, std::numbers::sqrt2, 1.0, std::sqrt(3.0));
  const auto data = build_from_foliation(fol, kPts);
  const auto split = ab_splitting(data, kPts);

  // pi(B) must span N^{0,1}: express B in the frame, drop the F part, and
  // check the j action reproduces the -i eigenvalue
  const std::vector<double> p{1.2, 0.5, 2.8, 0.1};
  Eigen::MatrixXcd P(4, 4);
  P.col(0) = eval_at(complexify(fol.f_frame[0]), p);
  P.col(1) = eval_at(complexify(fol.f_frame[1]), p);
  P.col(2) = eval_at(complexify(fol.n_frame[0]), p);
  P.col(3) = eval_at(complexify(fol.n_frame[1]), p);
  const Eigen::Vector4cd coeffs = P.inverse() * eval_at(split.B, p);
  CHECK(std::abs(coeffs(0)) + std::abs(coeffs(1)) < 1e-9);  // no leaf part
  Eigen::Matrix2cd jn;
  jn << 0, -1, 1, 0;
  const Eigen::Vector2cd nb(coeffs(2), coeffs(3));
  CHECK((jn * nb + kI * nb).cwiseAbs().maxCoeff() < 1e-9);
}

TEST_CASE("trigrading") {
  const auto data = build_from_foliation(conformal_foliation(0.1), kPts);
  const auto split = ab_splitting(data, kPts);
  const auto grading = make_trigrading(split);

  // basis monomial dt1^dt2^beta is purely (2,1,0); here B = d3 + i d4 so its
  // dual is beta = (dt3 - i dt4)/2
  const auto beta = 0.5 * (complexify(coordinate_form(4, 2)) -
                           kI * complexify(coordinate_form(4, 3)));
  const auto phi =
      wedge(wedge(complexify(coordinate_form(4, 0)), complexify(coordinate_form(4, 1))), beta);
  auto parts = trigrade(phi, grading);
  for (const auto& [key, part] : parts) {
    if (key == GradeKey{2, 1, 0}) {
      CHECK((part - phi).max_abs_coeff() < 1e-10);
    } else {
      CHECK(part.max_abs_coeff() < 1e-10);
    }
  }

  // real forms have conjugate-symmetric components
  std::mt19937 rng(77);
  RealForm w(4, 3);
  w.add_component(MultiIndex::of({0, 1, 2}), random_field(4, rng, 2));
  w.add_component(MultiIndex::of({0, 2, 3}), random_field(4, rng, 2));
  w.add_component(MultiIndex::of({1, 2, 3}), random_field(4, rng, 2));
  auto wparts = trigrade(complexify(w), grading);
  ComplexForm reassembled(4, 3);
  for (const auto& [key, part] : wparts) reassembled = reassembled + part;
  CHECK((reassembled - complexify(w)).max_abs_coeff() < 1e-10);
  for (const auto& [key, part] : wparts) {
    const GradeKey swapped{key[0], key[2], key[1]};
    auto it = wparts.find(swapped);
    REQUIRE(it != wparts.end());
    CHECK((conj(part) - it->second).max_abs_coeff() < 1e-10);
  }
}

TEST_CASE("gauduchon residual") {
  // constant fundamental form
  RealForm w0(4, 2);
  w0.add_component(MultiIndex::of({0, 1}), ScalarField::constant(4, 1.0));
  w0.add_component(MultiIndex::of({2, 3}), ScalarField::constant(4, -1.0));
  RealEndomorphism jp(4);
  const auto one = ScalarField::constant(4, 1.0);
  jp.at(1, 0) = one;
  jp.at(0, 1) = -one;
  jp.at(3, 2) = -one;  // j+ = -j on N
  jp.at(2, 3) = one;
  CHECK(gauduchon_residual(w0, jp, kPts).value < 1e-12);

  // one-block conformal factor fails the condition: del delbar omega picks up
  // the leafwise Laplacian of the factor
  Freq k1{};
  k1[0] = 1;
  const auto u0 = ScalarField::constant(4, 1.0) + ScalarField::harmonic(4, k1, 0.1, 0.0);
  RealForm w1(4, 2);
  w1.add_component(MultiIndex::of({0, 1}), ScalarField::constant(4, 1.0));
  w1.add_component(MultiIndex::of({2, 3}), -u0);
  CHECK(gauduchon_residual(w1, jp, kPts).value > 1e-3);

  // compensated two-block factors satisfy it exactly
  const auto data = build_from_foliation(conformal_foliation(0.1), kPts);
  CHECK(gauduchon_residual(data.omega_plus(), data.jplus(), kPts).value < 1e-12);
}

TEST_CASE("lemma 3.9 pipeline on the conformal structure") {
  const auto data = build_from_foliation(conformal_foliation(0.1), kPts);

  // d(omega+) is nonzero here, so H must be nonzero too
  CHECK(exterior_derivative(data.omega_plus()).max_abs_coeff() > 0.01);

  const auto lem = build_H_lemma39(data, kPts);
  CHECK(lem.gauduchon.value < 1e-12);
  CHECK(lem.H.max_abs_coeff() > 0.01);
  CHECK(lem.eq16.value < 1e-9);
  CHECK(lem.dH.value < 1e-8);
  CHECK(lem.restriction.value < 1e-8);

  // (delbar+ omega+)^{2,1,0} vanishes
  const auto split = ab_splitting(data, kPts);
  const auto grading = make_trigrading(split);
  const auto delbar = del_and_delbar(complexify(data.omega_plus()), data.jplus(), kPts).delbar;
  auto parts = trigrade(delbar, grading);
  if (auto it = parts.find(GradeKey{2, 1, 0}); it != parts.end()) {
    CHECK(form_max_at(it->second, kPts).value < 1e-9);
  }

  // H is real by construction
  CHECK((lem.H - real_part(complexify(lem.H))).max_abs_coeff() == 0.0);

  // end-to-end sufficiency: the built H integrates the structure
  const auto r = residual_thm23(data, lem.H, kPts);
  CHECK(r.max() < 1e-7);

  // and the direct Courant oracle agrees
  const auto L = eigenframe(data);
  CHECK(integrability_residual_direct(L, lem.H, kPts).value < 1e-7);

  // constant structure: H = 0 with all residuals at zero
  const auto flat = build_from_foliation(linear_foliation(1.0, std::numbers::sqrt2, 1.0, std::sqrt(3.0)), kPts);
  const auto lem0 = build_H_lemma39(flat, kPts);
  CHECK(lem0.H.max_abs_coeff() < 1e-15);
  CHECK(lem0.dH.value < 1e-15);
  CHECK(lem0.restriction.value < 1e-15);

  // the Gauduchon gate rejects a failing metric
  FoliationData bad = conformal_foliation(0.1);
  RealEndomorphism e(4);
  Freq k1{};
  k1[0] = 1;
  const auto u0 = ScalarField::constant(4, 1.0) + ScalarField::harmonic(4, k1, 0.1, 0.0);
  e.at(0, 0) = ScalarField::constant(4, 1.0);
  e.at(1, 1) = ScalarField::constant(4, 1.0);
  e.at(2, 2) = u0;
  e.at(3, 3) = u0;
  bad.metric = MetricField(e);
  const auto bad_data = build_from_foliation(bad, kPts);
  CHECK_THROWS_WITH_AS((void)build_H_lemma39(bad_data, kPts), doctest::Contains("Gauduchon"),
                       Error);
}
