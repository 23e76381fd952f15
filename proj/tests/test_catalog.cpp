#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <thread>

#include "gcv/generalized.hpp"
#include "gcv/runner.hpp"

using namespace gcv;

namespace {
const auto kPts = sample_points(4);
}

TEST_CASE("every expected verdict is reproduced by running the named check") {
  for (const auto& name : catalog_names()) {
    CAPTURE(name);
    const auto entry = catalog_entry(name, kPts);
    REQUIRE_FALSE(entry.expected.empty());

    RunConfig config;
    config.catalog = name;
    const auto report = run(config);
    REQUIRE(report.checks.size() == entry.expected.size());

    for (const auto& record : report.checks) {
      CAPTURE(record.name);
      const auto it = entry.expected.find(record.name);
      REQUIRE(it != entry.expected.end());
      CHECK(record.verdict == it->second.verdict);
      if (record.name == "type" && it->second.type_value) {
        CHECK(static_cast<int>(record.residuals.at("type")) == *it->second.type_value);
      }
    }
  }
}

TEST_CASE("type parity is consistent across samples for every entry") {
  for (const auto& name : catalog_names()) {
    CAPTURE(name);
    const auto entry = catalog_entry(name, kPts);
    const auto J = GeneralizedStructure::from_bihermitian(entry.data);
    int parity = -1;
    for (size_t i = 0; i < kPts.size(); i += 2) {
      const auto t = type_at_point(J, kPts[i]);
      const int p = ((t.type % 2) + 2) % 2;
      if (parity < 0) parity = p;
      CHECK(parity == p);
    }
  }
}

TEST_CASE("oracle equivalence holds entry by entry") {
  int verdicts = 0;
  for (const auto& name : catalog_names()) {
    const auto entry = catalog_entry(name, kPts);
    if (!entry.expected.contains("thm23") || !entry.expected.contains("direct")) continue;
    CAPTURE(name);
    const auto t = residual_thm23(entry.data, entry.twist, kPts);
    const auto d = integrability_residual_direct(eigenframe(entry.data), entry.twist, kPts);
    const bool expect_pass = entry.expected.at("thm23").verdict == Verdict::Pass;
    if (expect_pass) {
      CHECK(t.max() < 1e-7);
      CHECK(d.value < 1e-7);
    } else {
      CHECK(t.max() > 1e-3);
      CHECK(d.value > 1e-3);
    }
    ++verdicts;
  }
  CHECK(verdicts >= 7);
}

TEST_CASE("unknown entry names are rejected") {
  CHECK_THROWS_AS((void)catalog_entry("no_such_structure", kPts), Error);
}

TEST_CASE("concurrent residual sweeps and entry construction are safe") {
  // immutable data shared across threads; max-reductions are order-free
  const auto entry = catalog_entry("linear_foliation_t4", kPts);
  std::vector<std::thread> workers;
  std::array<double, 4> results{};
  for (int w = 0; w < 4; ++w) {
    workers.emplace_back([&, w] {
      const auto r = residual_thm23(entry.data, entry.twist, kPts);
      results[w] = r.max();
    });
  }
  for (auto& t : workers) t.join();
  for (double v : results) CHECK(v < 1e-12);
}

TEST_CASE("fundamental forms are (1,1) for their own structure") {
  for (const auto& name : catalog_names()) {
    CAPTURE(name);
    const auto entry = catalog_entry(name, kPts);
    const auto wp = complexify(entry.data.omega_plus());
    const auto wm = complexify(entry.data.omega_minus());
    for (int a = 0; a < 2; ++a) {
      for (int b = 0; b < 2; ++b) {
        const auto vp = apply_form(wp, {entry.data.frames().plus[a], entry.data.frames().plus[b]});
        const auto vm =
            apply_form(wm, {entry.data.frames().minus[a], entry.data.frames().minus[b]});
        for (size_t i = 0; i < kPts.size(); i += 9) {
          CHECK(std::abs(vp.evaluate(kPts[i])) < 1e-10);
          CHECK(std::abs(vm.evaluate(kPts[i])) < 1e-10);
        }
      }
    }
  }
}

TEST_CASE("type-one entries have opposite orientations and commuting pairs") {
  for (const auto& name : catalog_names()) {
    const auto entry = catalog_entry(name, kPts);
    const auto it = entry.expected.find("type");
    if (it == entry.expected.end() || it->second.type_value != 1) continue;
    CAPTURE(name);
    CHECK(entry.data.orientation_plus() != entry.data.orientation_minus());
    CHECK(entry.data.commutator_residual(kPts) < 1e-9);
  }
}

TEST_CASE("the kernel plane A + Abar is involutive on integrable type-one entries") {
  for (const auto& name : catalog_names()) {
    const auto entry = catalog_entry(name, kPts);
    const auto t = entry.expected.find("type");
    const auto th = entry.expected.find("thm23");
    if (t == entry.expected.end() || t->second.type_value != 1) continue;
    if (th == entry.expected.end() || th->second.verdict != Verdict::Pass) continue;
    CAPTURE(name);
    const auto split = ab_splitting(entry.data, kPts);
    const auto Abar = conj(split.A);
    const auto br = lie_bracket(split.A, Abar);
    for (size_t i = 0; i < kPts.size(); i += 5) {
      Eigen::MatrixXcd M(4, 2);
      M.col(0) = eval_at(split.A, kPts[i]);
      M.col(1) = eval_at(Abar, kPts[i]);
      CHECK(span_orthogonal_residual(M, eval_at(br, kPts[i]),
                                     entry.data.metric().eval(kPts[i])) < 1e-8);
    }
  }
}
