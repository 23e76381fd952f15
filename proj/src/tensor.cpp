#include "gcv/tensor.hpp"

#include <cmath>

namespace gcv {

MetricField::MetricField(RealEndomorphism entries) : entries_(std::move(entries)) {
  const int n = entries_.dimension();
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const auto diff = entries_.at(i, j) - entries_.at(j, i);
      if (diff.max_abs_coeff() > 1e-10) {
        throw Error("MetricField: entries are not symmetric (g_" + std::to_string(i) +
                    std::to_string(j) + " != g_" + std::to_string(j) + std::to_string(i) + ")");
      }
      // make symmetry exact in the representation
      const auto sym = 0.5 * (entries_.at(i, j) + entries_.at(j, i));
      entries_.at(i, j) = sym;
      entries_.at(j, i) = sym;
    }
  }
}

MetricField MetricField::flat(int dim) {
  return MetricField(RealEndomorphism::identity(dim));
}

void MetricField::validate_positive(const std::vector<std::vector<double>>& points) const {
  for (const auto& p : points) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(eval(p));
    if (es.eigenvalues().minCoeff() <= 0.0) {
      std::string where;
      for (double x : p) where += std::to_string(x) + " ";
      throw Error("MetricField: not positive definite at sample point ( " + where + ")");
    }
  }
}

RealForm MetricField::flat_map(const RealVectorField& X) const {
  const int n = dimension();
  RealForm xi(n, 1);
  for (int i = 0; i < n; ++i) {
    ScalarField acc = ScalarField::zero(n);
    for (int j = 0; j < n; ++j) acc += at(i, j) * X.comp(j);
    xi.add_component(MultiIndex::of({i}), acc);
  }
  return xi;
}

ComplexForm MetricField::flat_map(const ComplexVectorField& X) const {
  const int n = dimension();
  ComplexForm xi(n, 1);
  for (int i = 0; i < n; ++i) {
    ComplexScalarField acc = ComplexScalarField::zero(n);
    for (int j = 0; j < n; ++j) acc += complexify(at(i, j)) * X.comp(j);
    xi.add_component(MultiIndex::of({i}), acc);
  }
  return xi;
}

ScalarField MetricField::inner(const RealVectorField& X, const RealVectorField& Y) const {
  const int n = dimension();
  ScalarField acc = ScalarField::zero(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) acc += at(i, j) * (X.comp(i) * Y.comp(j));
  return acc;
}

ComplexScalarField MetricField::inner(const ComplexVectorField& X,
                                      const ComplexVectorField& Y) const {
  const int n = dimension();
  ComplexScalarField acc = ComplexScalarField::zero(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) acc += complexify(at(i, j)) * (X.comp(i) * Y.comp(j));
  return acc;
}

Eigen::MatrixXd MetricField::eval_inverse(std::span<const double> p) const {
  return eval(p).inverse();
}

// ---------------------------------------------------------------------------

std::vector<ComplexEndomorphism> pq_projectors(const RealEndomorphism& j) {
  const int n = j.dimension();
  const std::complex<double> ihalf(0.0, 0.5);
  ComplexEndomorphism p10(n), p01(n);
  const auto jc = complexify(j);
  const auto id = ComplexEndomorphism::identity(n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) {
      p10.at(r, c) = 0.5 * id.at(r, c) - ihalf * jc.at(r, c);
      p01.at(r, c) = 0.5 * id.at(r, c) + ihalf * jc.at(r, c);
    }
  return {p10, p01};
}

std::map<GradeKey, ComplexForm> decompose_by_projectors(
    const ComplexForm& w, const std::vector<ComplexEndomorphism>& projectors) {
  const int n = w.dimension();
  const int nlabels = static_cast<int>(projectors.size());
  if (nlabels < 2 || nlabels > 3) throw Error("decompose_by_projectors: 2 or 3 labels");

  // projected coordinate coframe: (dtheta_i)_c = sum_b (P_c)_{i b} dtheta_b
  std::vector<std::vector<ComplexForm>> coframe(nlabels);
  for (int c = 0; c < nlabels; ++c) {
    coframe[c].reserve(n);
    for (int i = 0; i < n; ++i) {
      ComplexForm f(n, 1);
      for (int b = 0; b < n; ++b) f.add_component(MultiIndex::of({b}), projectors[c].at(i, b));
      coframe[c].push_back(std::move(f));
    }
  }

  ComplexForm unit(n, 0);
  unit.add_component(MultiIndex{}, ComplexScalarField::constant(n, 1.0));

  std::map<GradeKey, ComplexForm> buckets;
  const int d = w.degree();
  if (d == 0) {
    GradeKey key{};
    buckets.emplace(key, w);
    return buckets;
  }

  int combos = 1;
  for (int t = 0; t < d; ++t) combos *= nlabels;

  for (const auto& [I, f] : w.components()) {
    for (int assign = 0; assign < combos; ++assign) {
      GradeKey key{};
      ComplexForm term = unit;
      int rest = assign;
      for (int t = 0; t < d; ++t) {
        const int label = rest % nlabels;
        rest /= nlabels;
        key[label] += 1;
        term = wedge(term, coframe[label][I.idx[t]]);
        if (term.is_zero()) break;
      }
      if (term.is_zero()) continue;
      auto it = buckets.find(key);
      if (it == buckets.end()) {
        buckets.emplace(key, f * term);
      } else {
        it->second = it->second + f * term;
      }
    }
  }
  // prune numerically empty buckets
  for (auto it = buckets.begin(); it != buckets.end();) {
    if (it->second.max_abs_coeff() < 1e-15) {
      it = buckets.erase(it);
    } else {
      ++it;
    }
  }
  return buckets;
}

namespace {

void require_almost_complex(const RealEndomorphism& j,
                            const std::vector<std::vector<double>>& points, double tol) {
  const int n = j.dimension();
  const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(n, n);
  for (const auto& p : points) {
    const auto J = eval_at(j, p);
    const double resid = (J * J + id).cwiseAbs().maxCoeff();
    if (resid > tol) {
      throw Error("pq_decompose: j^2 != -id (residual " + std::to_string(resid) +
                  " at a sample point)");
    }
  }
}

}  // namespace

std::map<GradeKey, ComplexForm> pq_decompose(const ComplexForm& w, const RealEndomorphism& j,
                                             const std::vector<std::vector<double>>& points,
                                             double tol) {
  require_almost_complex(j, points, tol);
  return decompose_by_projectors(w, pq_projectors(j));
}

namespace {

// the single significant (p,q) bucket of w, or throw on mixed type
GradeKey pure_type_of(const std::map<GradeKey, ComplexForm>& buckets, double scale) {
  GradeKey found{-1, -1, 0};
  int significant = 0;
  for (const auto& [key, part] : buckets) {
    if (part.max_abs_coeff() > 1e-9 * std::max(1.0, scale)) {
      found = key;
      ++significant;
    }
  }
  if (significant > 1) {
    throw Error("del_and_delbar: mixed-type input; decompose first");
  }
  return found;
}

}  // namespace

DelPair del_and_delbar(const ComplexForm& w, const RealEndomorphism& j,
                       const std::vector<std::vector<double>>& points) {
  require_almost_complex(j, points, 1e-9);
  const auto projectors = pq_projectors(j);
  const auto wparts = decompose_by_projectors(w, projectors);
  const auto type = pure_type_of(wparts, w.max_abs_coeff());

  const int n = w.dimension();
  DelPair out{ComplexForm(n, w.degree() + 1), ComplexForm(n, w.degree() + 1)};
  if (type[0] < 0) return out;  // zero form

  const auto dw = exterior_derivative(w);
  auto dparts = decompose_by_projectors(dw, projectors);
  const GradeKey del_key{type[0] + 1, type[1], 0};
  const GradeKey delbar_key{type[0], type[1] + 1, 0};
  if (auto it = dparts.find(del_key); it != dparts.end()) out.del = it->second;
  if (auto it = dparts.find(delbar_key); it != dparts.end()) out.delbar = it->second;
  return out;
}

ComplexForm dc_operator(const ComplexForm& w, const RealEndomorphism& j,
                        const std::vector<std::vector<double>>& points) {
  const auto dd = del_and_delbar(w, j, points);
  const std::complex<double> iu(0.0, 1.0);
  return iu * (dd.delbar - dd.del);
}

}  // namespace gcv
