// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure.  Tolerances are pinned here, not configurable.
#include <cmath>
#include <cstdlib>
#include <iostream>
#include <random>
#include <regex>

#include "gcv/generalized.hpp"
#include "gcv/runner.hpp"

using namespace gcv;

namespace {

int failures = 0;

void report(int criterion, const std::string& label, bool ok, const std::string& detail = "") {
  std::cout << (ok ? "[PASS] " : "[FAIL] ") << "criterion " << criterion << ": " << label;
  if (!detail.empty()) std::cout << "  (" << detail << ")";
  std::cout << "\n";
  if (!ok) ++failures;
}

const auto kPts = sample_points(4);  // 3^4 grid + 20 seeded points = 101

std::map<std::string, CatalogEntry> load_catalog() {
  std::map<std::string, CatalogEntry> entries;
  for (const auto& name : catalog_names()) entries.emplace(name, catalog_entry(name, kPts));
  return entries;
}

RealVectorField random_vector(std::mt19937& rng) {
  std::vector<ScalarField> comps;
  for (int i = 0; i < 4; ++i) comps.push_back(random_field(4, rng, 2));
  return RealVectorField(std::move(comps));
}

RealForm random_one_form(std::mt19937& rng) {
  RealForm w(4, 1);
  for (int i = 0; i < 4; ++i) w.add_component(MultiIndex::of({i}), random_field(4, rng, 2));
  return w;
}

RealForm random_two_form(std::mt19937& rng) {
  RealForm b(4, 2);
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      b.add_component(MultiIndex::of({i, j}), random_field(4, rng, 2));
  return b;
}

}  // namespace

int main() {
  std::cout << "acceptance suite: " << kPts.size() << " sample points, seed 0x" << std::hex
            << kDefaultSeed << std::dec << "\n";
  const auto entries = load_catalog();

  // 1. Structure axioms on every catalog entry
  {
    double worst = 0.0;
    std::string worst_name;
    for (const auto& [name, entry] : entries) {
      const auto J = GeneralizedStructure::from_bihermitian(entry.data);
      const double r = std::max(structure_square_residual(J, kPts).value,
                                pairing_invariance_residual(J, kPts).value);
      if (r > worst) {
        worst = r;
        worst_name = name;
      }
    }
    report(1, "J^2 + id and pairing invariance < 1e-9 at 101 points", worst < 1e-9,
           "worst " + std::to_string(worst) + " on " + worst_name);
  }

  // 2. Type reproduction, exact integers at every sample point
  {
    bool ok = true;
    std::string detail;
    const std::map<std::string, int> want = {
        {"flat_complex_t4", 2}, {"flat_symplectic_t4", 0}, {"linear_foliation_t4", 1}};
    for (const auto& [name, expected] : want) {
      const auto J = GeneralizedStructure::from_bihermitian(entries.at(name).data);
      for (const auto& p : kPts) {
        const auto t = type_at_point(J, p);
        if (t.type != expected || t.ambiguous) {
          ok = false;
          detail = name + " gave type " + std::to_string(t.type);
          break;
        }
      }
    }
    report(2, "types 2/0/1 for complex/symplectic/foliation entries", ok, detail);
  }

  // 3. Dual-oracle integrability with no split verdicts
  {
    bool ok = true;
    int count = 0;
    std::string detail;
    for (const auto& [name, entry] : entries) {
      if (!entry.expected.contains("thm23") || !entry.expected.contains("direct")) continue;
      const bool expect_pass = entry.expected.at("thm23").verdict == Verdict::Pass;
      const double t = residual_thm23(entry.data, entry.twist, kPts).max();
      const double d =
          integrability_residual_direct(eigenframe(entry.data), entry.twist, kPts).value;
      const bool agree = expect_pass ? (t < 1e-7 && d < 1e-7) : (t > 1e-3 && d > 1e-3);
      if (!agree) {
        ok = false;
        detail = name + ": thm23 " + std::to_string(t) + ", direct " + std::to_string(d);
      }
      ++count;
    }
    ok = ok && count >= 7;
    report(3, "residual_thm23 and the Courant oracle agree on " + std::to_string(count) +
                  " entries",
           ok, detail);
  }

  // 4. Commuting-pair equivalence with the corollary residuals
  {
    bool ok = true;
    std::string detail;
    for (const auto& [name, entry] : entries) {
      if (entry.data.commutator_residual(kPts) > 1e-9) continue;
      const double t = residual_thm23(entry.data, entry.twist, kPts).max();
      const auto c = residual_cor26(entry.data, entry.twist, kPts);
      const bool t_pass = t < 1e-7, c_pass = c.total.value < 1e-7;
      if (t_pass != c_pass) {
        ok = false;
        detail = name + " split: thm23 " + std::to_string(t) + " vs cor26 " +
                 std::to_string(c.total.value);
      }
      if (t_pass && (c.eq14.value > 1e-9 || c.eq15.value > 1e-9)) {
        ok = false;
        detail = name + " standalone pairwise-difference residuals too large";
      }
    }
    report(4, "reduced and full residual verdicts agree on all commuting entries", ok, detail);
  }

  // 5. Closed-twist construction pipeline on the conformal entry
  {
    const auto& entry = entries.at("leafwise_conformal_t4");
    bool ok = true;
    std::string detail;
    try {
      const auto lem = build_H_lemma39(entry.data, kPts);
      const double end_to_end = residual_thm23(entry.data, lem.H, kPts).max();
      ok = lem.dH.value < 1e-8 && lem.restriction.value < 1e-8 && lem.eq16.value < 1e-9 &&
           end_to_end < 1e-7 && lem.H.max_abs_coeff() > 0.01;
      detail = "dH " + std::to_string(lem.dH.value) + ", restriction " +
               std::to_string(lem.restriction.value) + ", end-to-end " +
               std::to_string(end_to_end);
    } catch (const Error& e) {
      ok = false;
      detail = e.what();
    }
    report(5, "constructed 3-form is closed and integrates the conformal structure", ok,
           detail);
  }

  // 6. b-transform naturality and verdict stability of the sheared entries
  {
    bool ok = true;
    std::string detail;
    std::mt19937 rng(2024);
    for (int trial = 0; trial < 10 && ok; ++trial) {
      RealGSection a(random_vector(rng), random_one_form(rng));
      RealGSection c(random_vector(rng), random_one_form(rng));
      const auto b = random_two_form(rng);
      auto H = exterior_derivative(random_two_form(rng));
      H.add_component(MultiIndex::of({0, 1, 2}), ScalarField::constant(4, 0.4));
      const auto lhs = b_transform(courant_bracket(a, c, H + exterior_derivative(b)), b);
      const auto rhs = courant_bracket(b_transform(a, b), b_transform(c, b), H);
      for (size_t i = 81; i < kPts.size(); ++i) {
        if (eval_at(lhs.vec - rhs.vec, kPts[i]).cwiseAbs().maxCoeff() > 1e-9) ok = false;
        for (const auto& [I, f] : (lhs.form - rhs.form).components()) {
          if (std::abs(f.evaluate(kPts[i])) > 1e-9) ok = false;
        }
      }
      if (!ok) detail = "naturality residual above 1e-9";
    }
    const std::map<std::string, std::string> pairs = {
        {"b_twisted_complex_t4", "flat_complex_t4"},
        {"b_twisted_symplectic_t4", "flat_symplectic_t4"},
        {"b_twisted_foliation_t4", "linear_foliation_t4"},
        {"b_twisted_conformal_t4", "leafwise_conformal_t4"}};
    for (const auto& [twisted, base] : pairs) {
      const auto& te = entries.at(twisted);
      const auto& be = entries.at(base);
      const bool t_pass = residual_thm23(te.data, te.twist, kPts).max() < 1e-7;
      const bool b_pass = residual_thm23(be.data, be.twist, kPts).max() < 1e-7;
      if (t_pass != b_pass) {
        ok = false;
        detail = twisted + " verdict differs from its base entry";
      }
    }
    report(6, "e^b naturality of the bracket and verdict stability under shears", ok, detail);
  }

  // 7. Generalized Kaehler detection
  {
    const auto& entry = entries.at("flat_kahler_gk_t4");
    const auto clean = gk_check(entry.data, RealForm(4, 3), kPts);
    RealForm H(4, 3);
    H.add_component(MultiIndex::of({0, 1, 2}), ScalarField::constant(4, 1.0));
    const auto tripped = gk_check(entry.data, H, kPts);
    const bool ok =
        clean.involutive_plus.value < 1e-12 && clean.involutive_minus.value < 1e-12 &&
        clean.dc_plus.value < 1e-12 && clean.dc_minus.value < 1e-12 &&
        tripped.dc_plus.value >= 0.5;
    report(7, "flat Kaehler data passes and an injected twist is detected", ok,
           "clean dc " + std::to_string(clean.dc_plus.value) + ", injected dc " +
               std::to_string(tripped.dc_plus.value));
  }

  // 8. Plane-field admissibility arithmetic
  {
    bool ok = matsushita_admissible(0, 0, false) && !matsushita_admissible(0, 2, true) &&
              !matsushita_admissible(1, 3, true);
    for (int sigma = -20; sigma <= 20 && ok; ++sigma) {
      for (int chi = -20; chi <= 20 && ok; ++chi) {
        const auto mod4 = [](int x) { return ((x % 4) + 4) % 4; };
        const bool base = mod4(sigma + chi) == 0 && mod4(sigma - chi) == 0;
        if (matsushita_admissible(sigma, chi, false) != base) ok = false;
        if (matsushita_admissible(sigma, chi, true) !=
            (base && std::abs(sigma) + chi >= 0)) {
          ok = false;
        }
      }
    }
    report(8, "admissibility arithmetic matches the brute-force re-implementation", ok);
  }

  // 9. Calculus kernel identities on 50 randomized inputs each
  {
    bool ok = true;
    std::string detail;
    std::mt19937 rng(515);
    for (int trial = 0; trial < 50 && ok; ++trial) {
      const auto f = random_field(4, rng);
      const auto g = random_field(4, rng);
      RealForm w(4, 1);
      for (int i = 0; i < 4; ++i) w.add_component(MultiIndex::of({i}), random_field(4, rng, 2));
      if (exterior_derivative(exterior_derivative(w)).max_abs_coeff() > 1e-12) {
        ok = false;
        detail = "d^2 != 0";
      }
      for (int a = 0; a < 4; ++a) {
        const auto leib =
            (f * g).partial(a) - (f.partial(a) * g + f * g.partial(a));
        if (leib.max_abs_coeff() > 1e-12) {
          ok = false;
          detail = "Leibniz residual";
        }
      }
      const auto X = random_vector(rng);
      const auto Y = random_vector(rng);
      const auto Z = random_vector(rng);
      const auto phi = wedge(random_one_form(rng), random_one_form(rng));
      const auto comm = lie_derivative(X, interior_product(Y, phi)) -
                        interior_product(Y, lie_derivative(X, phi)) -
                        interior_product(lie_bracket(X, Y), phi);
      for (size_t i = 0; i < kPts.size(); i += 11) {
        for (const auto& [I, c] : comm.components()) {
          if (std::abs(c.evaluate(kPts[i])) > 1e-9) {
            ok = false;
            detail = "[L_X, i_Y] residual";
          }
        }
      }
      const auto jac = lie_bracket(X, lie_bracket(Y, Z)) +
                       lie_bracket(Y, lie_bracket(Z, X)) + lie_bracket(Z, lie_bracket(X, Y));
      if (jac.max_abs_coeff() > 1e-10) {
        ok = false;
        detail = "Jacobi residual";
      }
    }
    report(9, "calculus kernel identities on 50 randomized inputs", ok, detail);
  }

  // 10. Report determinism
  {
    RunConfig config;
    config.catalog = "linear_foliation_t4";
    config.checks = {"axioms", "type", "thm23", "direct"};
    const auto strip = [](std::string s) {
      return std::regex_replace(s, std::regex("\"wall_ms\": [0-9.e+-]+"), "\"wall_ms\": 0");
    };
    const auto a = strip(report_json(run(config)));
    const auto b = strip(report_json(run(config)));
    report(10, "identical seed gives byte-identical report bodies", a == b);
  }

  if (failures) {
    std::cout << failures << " criterion(s) failed\n";
    return 1;
  }
  std::cout << "all acceptance criteria pass\n";
  return 0;
}
