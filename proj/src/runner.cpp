#include "gcv/runner.hpp"

#include <algorithm>
#include <chrono>
#include <json.hpp>
#include <sstream>

#include "gcv/generalized.hpp"

namespace gcv {

namespace {

using Clock = std::chrono::steady_clock;

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Pass:
      return "pass";
    case Verdict::Fail:
      return "fail";
    default:
      return "inconclusive";
  }
}

Verdict banded(double residual, double accept, double reject) {
  if (residual < accept) return Verdict::Pass;
  if (residual > reject) return Verdict::Fail;
  return Verdict::Inconclusive;
}

struct Subject {
  std::string name;
  BihermitianData data;
  RealForm twist;
  CatalogInputs inputs;
  std::optional<FoliationChecks> foliation_checks;
  std::optional<int> expected_type;
};

// every check body gets the subject, the samples, and the tolerance table
using CheckFn = CheckRecord (*)(const Subject&, const std::vector<SamplePoint>&,
                                const Tolerances&);

CheckRecord check_axioms(const Subject& s, const std::vector<SamplePoint>& pts,
                         const Tolerances& tol) {
  CheckRecord r;
  const auto J = GeneralizedStructure::from_bihermitian(s.data);
  const auto square = structure_square_residual(J, pts);
  const auto pair = pairing_invariance_residual(J, pts);
  r.residuals["square"] = square.value;
  r.residuals["pairing"] = pair.value;
  r.worst = square.value > pair.value ? square.worst : pair.worst;
  r.verdict = banded(std::max(square.value, pair.value), tol.axiom, tol.reject);
  return r;
}

CheckRecord check_type(const Subject& s, const std::vector<SamplePoint>& pts,
                       const Tolerances&) {
  CheckRecord r;
  const auto J = GeneralizedStructure::from_bihermitian(s.data);
  int first = -1;
  bool constant = true, ambiguous = false;
  for (const auto& p : pts) {
    const auto t = type_at_point(J, p);
    if (first < 0) first = t.type;
    if (t.type != first) {
      constant = false;
      r.worst = p;
    }
    ambiguous = ambiguous || t.ambiguous;
  }
  r.residuals["type"] = first;
  r.residuals["constant"] = constant ? 1.0 : 0.0;
  r.residuals["ambiguous"] = ambiguous ? 1.0 : 0.0;
  r.verdict = (constant && !ambiguous) ? Verdict::Pass : Verdict::Fail;
  if (!constant) r.reason = "type varies across sample points";
  if (s.expected_type && (!constant || first != *s.expected_type)) {
    r.verdict = Verdict::Fail;
    r.reason = "expected type " + std::to_string(*s.expected_type);
  }
  return r;
}

CheckRecord check_thm23(const Subject& s, const std::vector<SamplePoint>& pts,
                        const Tolerances& tol) {
  CheckRecord r;
  const auto res = residual_thm23(s.data, s.twist, pts);
  r.residuals["r1"] = res.r1.value;
  r.residuals["r2"] = res.r2.value;
  r.worst = res.r1.value > res.r2.value ? res.r1.worst : res.r2.worst;
  r.verdict = banded(res.max(), tol.accept, tol.reject);
  return r;
}

CheckRecord check_direct(const Subject& s, const std::vector<SamplePoint>& pts,
                         const Tolerances& tol) {
  CheckRecord r;
  const auto L = eigenframe(s.data);
  const auto res = integrability_residual_direct(L, s.twist, pts);
  r.residuals["courant_closure"] = res.value;
  r.residuals["isotropy"] = isotropy_residual(L, pts).value;
  r.worst = res.worst;
  r.verdict = banded(res.value, tol.accept, tol.reject);
  return r;
}

CheckRecord check_remark1(const Subject& s, const std::vector<SamplePoint>& pts,
                          const Tolerances& tol) {
  CheckRecord r;
  const auto res = remark1_check(s.data, pts);
  r.residuals["involutivity"] = res.value;
  r.worst = res.worst;
  r.verdict = banded(res.value, tol.accept, tol.reject);
  return r;
}

CheckRecord check_lemma25(const Subject& s, const std::vector<SamplePoint>& pts,
                          const Tolerances& tol) {
  CheckRecord r;
  const auto res = lemma25_check(s.data, pts);
  r.residuals["identities"] = res.value;
  r.worst = res.worst;
  r.verdict = banded(res.value, tol.accept, tol.reject);
  return r;
}

CheckRecord check_cor26(const Subject& s, const std::vector<SamplePoint>& pts,
                        const Tolerances& tol) {
  CheckRecord r;
  const auto res = residual_cor26(s.data, s.twist, pts);
  r.residuals["restriction"] = res.total.value;
  r.residuals["eq14"] = res.eq14.value;
  r.residuals["eq15"] = res.eq15.value;
  r.worst = res.total.worst;
  r.verdict = banded(res.total.value, tol.accept, tol.reject);
  return r;
}

CheckRecord check_gk(const Subject& s, const std::vector<SamplePoint>& pts,
                     const Tolerances& tol) {
  CheckRecord r;
  const auto res = gk_check(s.data, s.twist, pts);
  r.residuals["involutive_plus"] = res.involutive_plus.value;
  r.residuals["involutive_minus"] = res.involutive_minus.value;
  r.residuals["dc_plus"] = res.dc_plus.value;
  r.residuals["dc_minus"] = res.dc_minus.value;
  r.residuals["thm23_j1"] = res.thm23_j1.max();
  r.residuals["thm23_j2"] = res.thm23_j2.max();
  double worst_val = 0.0;
  for (const auto& [k, v] : r.residuals) {
    if (v > worst_val) worst_val = v;
  }
  r.worst = res.dc_plus.worst;
  r.verdict = banded(worst_val, tol.accept, tol.reject);
  return r;
}

CheckRecord check_gauduchon(const Subject& s, const std::vector<SamplePoint>& pts,
                            const Tolerances& tol) {
  CheckRecord r;
  const auto res = gauduchon_residual(s.data.omega_plus(), s.data.jplus(), pts);
  r.residuals["del_delbar"] = res.value;
  r.worst = res.worst;
  r.verdict = banded(res.value, tol.accept, tol.reject);
  return r;
}

CheckRecord check_ab(const Subject& s, const std::vector<SamplePoint>& pts,
                     const Tolerances& tol) {
  CheckRecord r;
  const auto split = ab_splitting(s.data, pts);
  r.residuals["eigen"] = split.eigen_residual.value;
  r.residuals["span"] = split.span_residual.value;
  r.residuals["kernel"] = split.kernel_residual.value;
  const double worst =
      std::max({split.eigen_residual.value, split.span_residual.value,
                split.kernel_residual.value});
  r.worst = split.eigen_residual.worst;
  r.verdict = banded(worst, tol.accept, tol.reject);
  return r;
}

CheckRecord check_lemma39(const Subject& s, const std::vector<SamplePoint>& pts,
                          const Tolerances& tol) {
  CheckRecord r;
  const auto lem = build_H_lemma39(s.data, pts);
  r.residuals["gauduchon"] = lem.gauduchon.value;
  r.residuals["eq16"] = lem.eq16.value;
  r.residuals["dH"] = lem.dH.value;
  r.residuals["restriction"] = lem.restriction.value;
  const auto end_to_end = residual_thm23(s.data, lem.H, pts);
  r.residuals["thm23_with_H"] = end_to_end.max();
  r.worst = lem.restriction.worst;
  const bool pass = lem.eq16.value < 1e-9 && lem.dH.value < 1e-8 &&
                    lem.restriction.value < 1e-8 && end_to_end.max() < tol.accept;
  const double worst_val = std::max({lem.eq16.value, lem.dH.value, lem.restriction.value,
                                     end_to_end.max()});
  r.verdict = pass ? Verdict::Pass
                   : (worst_val > tol.reject ? Verdict::Fail : Verdict::Inconclusive);
  return r;
}

CheckRecord check_foliation(const Subject& s, const std::vector<SamplePoint>&,
                            const Tolerances& tol) {
  CheckRecord r;
  if (!s.foliation_checks) {
    r.verdict = Verdict::Fail;
    r.reason = "check requires a foliation-kind input";
    return r;
  }
  r.residuals["leaf_involutivity"] = s.foliation_checks->leaf_involutivity.value;
  r.residuals["transverse_integrability"] =
      s.foliation_checks->transverse_integrability.value;
  const double worst = std::max(s.foliation_checks->leaf_involutivity.value,
                                s.foliation_checks->transverse_integrability.value);
  r.worst = s.foliation_checks->leaf_involutivity.worst;
  r.verdict = banded(worst, 1e-8, tol.reject);
  return r;
}

const std::map<std::string, CheckFn>& check_registry() {
  static const std::map<std::string, CheckFn> registry = {
      {"axioms", check_axioms},     {"type", check_type},
      {"thm23", check_thm23},       {"direct", check_direct},
      {"remark1", check_remark1},   {"lemma25", check_lemma25},
      {"cor26", check_cor26},       {"gk", check_gk},
      {"gauduchon", check_gauduchon}, {"ab", check_ab},
      {"lemma39", check_lemma39},   {"foliation", check_foliation}};
  return registry;
}

}  // namespace

const std::vector<std::string>& known_checks() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> n;
    for (const auto& [name, fn] : check_registry()) n.push_back(name);
    return n;
  }();
  return names;
}

Report run(const RunConfig& config) {
  Report report;
  report.seed = config.seed;
  report.tol = config.tol;

  if (config.tol.axiom <= 0 || config.tol.accept <= 0 || config.tol.accept_fd <= 0 ||
      config.tol.reject <= 0) {
    throw Error("tolerance overrides must be positive");
  }

  std::vector<std::string> selected = config.checks;
  for (const auto& name : selected) {
    if (!check_registry().contains(name)) {
      throw Error("unknown check identifier '" + name + "'");
    }
  }

  const auto pts = sample_points(4, config.seed);

  Subject subject;
  if (!config.catalog.empty()) {
    auto entry = catalog_entry(config.catalog, pts);
    subject.name = entry.name;
    subject.data = std::move(entry.data);
    subject.twist = std::move(entry.twist);
    subject.inputs = std::move(entry.inputs);
    if (auto it = entry.expected.find("type"); it != entry.expected.end()) {
      subject.expected_type = it->second.type_value;
    }
    if (selected.empty()) {
      for (const auto& [name, v] : entry.expected) selected.push_back(name);
    }
  } else {
    auto parsed = parse_structure(config.input_text);
    subject.name = "description input";
    subject.inputs = std::move(parsed.inputs);
    subject.twist = subject.inputs.twist;
    if (selected.empty()) selected = {"axioms", "type", "thm23", "direct"};
  }

  // foliation inputs re-run their construction checks for the report
  if (subject.inputs.kind == CatalogInputs::Kind::Foliation) {
    FoliationChecks checks;
    subject.data = realize(subject.inputs, pts, &checks);
    subject.foliation_checks = checks;
  } else if (!config.catalog.empty()) {
    // catalog subjects arrive with validated data
  } else {
    subject.data = realize(subject.inputs, pts);
  }
  if (config.catalog.empty()) {
    subject.twist = subject.inputs.twist;
  }

  report.subject = config.catalog.empty() ? "description" : config.catalog;
  report.input_echo = format_structure(subject.inputs);
  report.twist = subject.twist;

  std::sort(selected.begin(), selected.end());
  selected.erase(std::unique(selected.begin(), selected.end()), selected.end());

  for (const auto& name : selected) {
    CheckRecord record;
    const auto start = Clock::now();
    try {
      record = check_registry().at(name)(subject, pts, config.tol);
    } catch (const Error& e) {
      record.verdict = Verdict::Fail;
      record.reason = e.what();
    }
    record.name = name;
    record.wall_ms =
        std::chrono::duration<double, std::milli>(Clock::now() - start).count();
    report.checks.push_back(std::move(record));
  }
  return report;
}

std::string report_json(const Report& report) {
  nlohmann::ordered_json j;
  j["schema_version"] = "1";
  j["seed"] = report.seed;
  j["tolerances"] = {{"axiom", report.tol.axiom},
                     {"accept", report.tol.accept},
                     {"accept_fd", report.tol.accept_fd},
                     {"reject", report.tol.reject}};
  j["conventions"] = {
      {"omega_inverse", "inverse of the map X -> omega(X, .)"},
      {"rotation", "plane rotations send the first frame vector to the second"},
      {"samples", "regular3_grid_plus_20_seeded"},
  };
  j["subject"] = report.subject;
  j["input"] = report.input_echo;
  // the twisting 3-form, coefficient fields as (frequency, cos, sin) triples
  j["twist"] = nlohmann::ordered_json::array();
  for (const auto& [I, f] : report.twist.components()) {
    nlohmann::ordered_json jc;
    jc["index"] = nlohmann::ordered_json::array();
    for (int i = 0; i < I.len; ++i) jc["index"].push_back(static_cast<int>(I.idx[i]));
    jc["terms"] = nlohmann::ordered_json::array();
    for (const auto& [k, h] : f.terms()) {
      jc["terms"].push_back({{"k", k}, {"cos", h.c}, {"sin", h.s}});
    }
    j["twist"].push_back(std::move(jc));
  }
  j["checks"] = nlohmann::ordered_json::array();
  for (const auto& c : report.checks) {
    nlohmann::ordered_json jc;
    jc["name"] = c.name;
    jc["residuals"] = nlohmann::ordered_json::object();
    for (const auto& [k, v] : c.residuals) jc["residuals"][k] = v;
    jc["verdict"] = verdict_name(c.verdict);
    if (!c.reason.empty()) jc["reason"] = c.reason;
    jc["worst_point"] = c.worst;
    jc["wall_ms"] = c.wall_ms;
    j["checks"].push_back(std::move(jc));
  }
  j["all_pass"] = report.all_pass();
  return j.dump(2) + "\n";
}

std::string report_text(const Report& report) {
  std::ostringstream out;
  out << "subject: " << report.subject << "  (seed " << report.seed << ")\n";
  for (const auto& c : report.checks) {
    out << "  [" << verdict_name(c.verdict) << "] " << c.name;
    for (const auto& [k, v] : c.residuals) out << "  " << k << "=" << v;
    if (!c.reason.empty()) out << "  (" << c.reason << ")";
    out << "\n";
  }
  out << (report.all_pass() ? "ALL PASS\n" : "FAILURES PRESENT\n");
  return out.str();
}

}  // namespace gcv
