// Vector fields, differential forms, endomorphism and metric fields over the
// trig-polynomial ring, with the exterior/Lie calculus and the (p,q) and
// multi-projector decompositions.  Everything is stored in the global
// coordinate frame; adapted frames are explicit lists of vector fields.
#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <initializer_list>
#include <map>
#include <optional>
#include <vector>

#include "gcv/fields.hpp"

namespace gcv {

// ---------------------------------------------------------------------------
// Multi-indices

// Strictly increasing list of coordinate axes labelling dtheta_{i1}^...^dtheta_{id}.
struct MultiIndex {
  std::uint8_t len = 0;
  std::array<std::uint8_t, 4> idx{};

  auto operator<=>(const MultiIndex&) const = default;

  static MultiIndex of(std::initializer_list<int> axes) {
    MultiIndex m;
    for (int a : axes) m.idx[m.len++] = static_cast<std::uint8_t>(a);
    for (int i = 1; i < m.len; ++i) {
      if (m.idx[i - 1] >= m.idx[i]) throw Error("MultiIndex: axes must strictly increase");
    }
    return m;
  }

  bool contains(int a) const {
    for (int i = 0; i < len; ++i)
      if (idx[i] == a) return true;
    return false;
  }

  MultiIndex erased(int pos) const {
    MultiIndex m;
    for (int i = 0; i < len; ++i)
      if (i != pos) m.idx[m.len++] = idx[i];
    return m;
  }
};

// dtheta_a ^ dtheta_I -> sign * dtheta_{I with a inserted}; nullopt when a in I.
inline std::optional<std::pair<MultiIndex, int>> insert_axis(int a, const MultiIndex& I) {
  if (I.contains(a)) return std::nullopt;
  MultiIndex m;
  int sign = 1;
  bool placed = false;
  for (int i = 0; i < I.len; ++i) {
    if (!placed && a < I.idx[i]) {
      m.idx[m.len++] = static_cast<std::uint8_t>(a);
      placed = true;
    }
    if (!placed) sign = -sign;
    m.idx[m.len++] = I.idx[i];
  }
  if (!placed) m.idx[m.len++] = static_cast<std::uint8_t>(a);
  return std::make_pair(m, sign);
}

// dtheta_I ^ dtheta_J with the inversion-count sign; nullopt on repeated axis.
inline std::optional<std::pair<MultiIndex, int>> merge_indices(const MultiIndex& I,
                                                               const MultiIndex& J) {
  MultiIndex m = J;
  int sign = 1;
  for (int i = I.len - 1; i >= 0; --i) {
    auto ins = insert_axis(I.idx[i], m);
    if (!ins) return std::nullopt;
    m = ins->first;
    sign *= ins->second;
  }
  return std::make_pair(m, sign);
}

// ---------------------------------------------------------------------------
// Vector fields

template <class K>
class VectorField {
 public:
  VectorField() = default;
  explicit VectorField(std::vector<K> comps) : comps_(std::move(comps)) {
    for (const auto& c : comps_) {
      if (c.dimension() != dimension()) throw Error("VectorField: component dimension mismatch");
    }
  }
  static VectorField zero(int dim) {
    std::vector<K> c(dim, K::zero(dim));
    return VectorField(std::move(c));
  }
  // coordinate field d/dtheta_axis
  static VectorField coordinate(int dim, int axis) {
    auto v = zero(dim);
    v.comps_[axis] = K::constant(dim, 1.0);
    return v;
  }

  int dimension() const { return static_cast<int>(comps_.size()); }
  const K& comp(int i) const { return comps_[i]; }
  K& comp(int i) { return comps_[i]; }

  bool is_zero() const {
    for (const auto& c : comps_)
      if (!c.is_zero()) return false;
    return true;
  }
  double max_abs_coeff() const {
    double m = 0;
    for (const auto& c : comps_) m = std::max(m, c.max_abs_coeff());
    return m;
  }

  friend VectorField operator+(const VectorField& a, const VectorField& b) {
    check_same_dim(a, b);
    auto r = a;
    for (int i = 0; i < r.dimension(); ++i) r.comps_[i] += b.comps_[i];
    return r;
  }
  friend VectorField operator-(const VectorField& a, const VectorField& b) {
    check_same_dim(a, b);
    auto r = a;
    for (int i = 0; i < r.dimension(); ++i) r.comps_[i] -= b.comps_[i];
    return r;
  }
  VectorField operator-() const {
    auto r = *this;
    for (auto& c : r.comps_) c = -c;
    return r;
  }
  template <class Scalar>
  friend VectorField operator*(const Scalar& lambda, const VectorField& v) {
    auto r = v;
    for (auto& c : r.comps_) c = lambda * c;
    return r;
  }
  friend VectorField operator*(const K& f, const VectorField& v) {
    auto r = v;
    for (auto& c : r.comps_) c = f * c;
    return r;
  }

 private:
  static void check_same_dim(const VectorField& a, const VectorField& b) {
    if (a.dimension() != b.dimension()) throw Error("VectorField: dimension mismatch");
  }
  std::vector<K> comps_;
};

using RealVectorField = VectorField<ScalarField>;
using ComplexVectorField = VectorField<ComplexScalarField>;

// ---------------------------------------------------------------------------
// Differential forms

template <class K>
class DifferentialForm {
 public:
  DifferentialForm() = default;
  DifferentialForm(int dim, int degree) : dim_(dim), degree_(degree) {
    if (degree < 0 || degree > dim + 1) throw Error("DifferentialForm: bad degree");
  }

  static DifferentialForm zero(int dim, int degree) { return DifferentialForm(dim, degree); }

  int dimension() const { return dim_; }
  int degree() const { return degree_; }
  const std::map<MultiIndex, K>& components() const { return comps_; }

  void add_component(const MultiIndex& I, const K& f) {
    if (I.len != degree_) throw Error("DifferentialForm: index length != degree");
    for (int i = 0; i < I.len; ++i) {
      if (I.idx[i] >= dim_) throw Error("DifferentialForm: axis out of range");
    }
    auto it = comps_.find(I);
    if (it == comps_.end()) {
      if (!f.is_zero()) comps_.emplace(I, f);
    } else {
      it->second += f;
      if (it->second.is_zero()) comps_.erase(it);
    }
  }

  K component(const MultiIndex& I) const {
    auto it = comps_.find(I);
    return it == comps_.end() ? K::zero(dim_) : it->second;
  }

  bool is_zero() const { return max_abs_coeff() == 0.0; }
  double max_abs_coeff() const {
    double m = 0;
    for (const auto& [I, f] : comps_) m = std::max(m, f.max_abs_coeff());
    return m;
  }
  // drop components whose every coefficient is below tol
  DifferentialForm pruned(double tol) const {
    DifferentialForm r(dim_, degree_);
    for (const auto& [I, f] : comps_)
      if (f.max_abs_coeff() > tol) r.comps_.emplace(I, f);
    return r;
  }

  friend DifferentialForm operator+(const DifferentialForm& a, const DifferentialForm& b) {
    check_compatible(a, b);
    auto r = a;
    for (const auto& [I, f] : b.comps_) r.add_component(I, f);
    return r;
  }
  friend DifferentialForm operator-(const DifferentialForm& a, const DifferentialForm& b) {
    return a + (-b);
  }
  DifferentialForm operator-() const {
    auto r = *this;
    for (auto& [I, f] : r.comps_) f = -f;
    return r;
  }
  template <class Scalar>
  friend DifferentialForm operator*(const Scalar& lambda, const DifferentialForm& w) {
    auto r = w;
    for (auto& [I, f] : r.comps_) f = lambda * f;
    return r;
  }
  friend DifferentialForm operator*(const K& g, const DifferentialForm& w) {
    auto r = w;
    for (auto& [I, f] : r.comps_) f = g * f;
    return r;
  }

 private:
  static void check_compatible(const DifferentialForm& a, const DifferentialForm& b) {
    if (a.dim_ != b.dim_ || a.degree_ != b.degree_)
      throw Error("DifferentialForm: dimension/degree mismatch");
  }
  int dim_ = 0;
  int degree_ = 0;
  std::map<MultiIndex, K> comps_;
};

using RealForm = DifferentialForm<ScalarField>;
using ComplexForm = DifferentialForm<ComplexScalarField>;

// dtheta_axis as a real 1-form
inline RealForm coordinate_form(int dim, int axis) {
  RealForm w(dim, 1);
  w.add_component(MultiIndex::of({axis}), ScalarField::constant(dim, 1.0));
  return w;
}

// ---------------------------------------------------------------------------
// Endomorphism fields (n x n matrices of scalars acting on vector fields)

template <class K>
class EndomorphismField {
 public:
  EndomorphismField() = default;
  explicit EndomorphismField(int dim) : dim_(dim), m_(dim * dim, K::zero(dim)) {}

  static EndomorphismField identity(int dim) {
    EndomorphismField e(dim);
    for (int i = 0; i < dim; ++i) e.at(i, i) = K::constant(dim, 1.0);
    return e;
  }

  int dimension() const { return dim_; }
  K& at(int row, int col) { return m_[row * dim_ + col]; }
  const K& at(int row, int col) const { return m_[row * dim_ + col]; }

  VectorField<K> apply(const VectorField<K>& v) const {
    if (v.dimension() != dim_) throw Error("EndomorphismField: dimension mismatch");
    auto r = VectorField<K>::zero(dim_);
    for (int i = 0; i < dim_; ++i) {
      for (int j = 0; j < dim_; ++j) r.comp(i) += at(i, j) * v.comp(j);
    }
    return r;
  }

  // dual action on 1-forms: (J* xi)(X) = xi(J X)
  DifferentialForm<K> apply_dual(const DifferentialForm<K>& xi) const {
    if (xi.degree() != 1) throw Error("apply_dual: expects a 1-form");
    DifferentialForm<K> r(dim_, 1);
    for (int i = 0; i < dim_; ++i) {
      K acc = K::zero(dim_);
      for (int j = 0; j < dim_; ++j) {
        acc += xi.component(MultiIndex::of({j})) * at(j, i);
      }
      r.add_component(MultiIndex::of({i}), acc);
    }
    return r;
  }

  EndomorphismField compose(const EndomorphismField& other) const {
    if (other.dim_ != dim_) throw Error("EndomorphismField: dimension mismatch");
    EndomorphismField r(dim_);
    // matrix size and torus dimension differ for plane blocks
    const int fdim = m_.empty() || m_[0].dimension() == 0 ? dim_ : m_[0].dimension();
    for (int i = 0; i < dim_; ++i)
      for (int j = 0; j < dim_; ++j) {
        K acc = K::zero(fdim);
        for (int k = 0; k < dim_; ++k) acc += at(i, k) * other.at(k, j);
        r.at(i, j) = acc;
      }
    return r;
  }

  EndomorphismField transpose() const {
    EndomorphismField r(dim_);
    for (int i = 0; i < dim_; ++i)
      for (int j = 0; j < dim_; ++j) r.at(i, j) = at(j, i);
    return r;
  }

  friend EndomorphismField operator+(const EndomorphismField& a, const EndomorphismField& b) {
    EndomorphismField r(a.dim_);
    for (size_t i = 0; i < r.m_.size(); ++i) r.m_[i] = a.m_[i] + b.m_[i];
    return r;
  }
  friend EndomorphismField operator-(const EndomorphismField& a, const EndomorphismField& b) {
    EndomorphismField r(a.dim_);
    for (size_t i = 0; i < r.m_.size(); ++i) r.m_[i] = a.m_[i] - b.m_[i];
    return r;
  }
  EndomorphismField operator-() const {
    auto r = *this;
    for (auto& f : r.m_) f = -f;
    return r;
  }
  template <class Scalar>
  friend EndomorphismField operator*(const Scalar& lambda, const EndomorphismField& e) {
    auto r = e;
    for (auto& f : r.m_) f = lambda * f;
    return r;
  }

  double max_abs_coeff() const {
    double m = 0;
    for (const auto& f : m_) m = std::max(m, f.max_abs_coeff());
    return m;
  }

 private:
  int dim_ = 0;
  std::vector<K> m_;
};

using RealEndomorphism = EndomorphismField<ScalarField>;
using ComplexEndomorphism = EndomorphismField<ComplexScalarField>;

// ---------------------------------------------------------------------------
// Complexification / real and imaginary parts

inline ComplexVectorField complexify(const RealVectorField& v) {
  std::vector<ComplexScalarField> c;
  for (int i = 0; i < v.dimension(); ++i) c.push_back(complexify(v.comp(i)));
  return ComplexVectorField(std::move(c));
}

inline ComplexForm complexify(const RealForm& w) {
  ComplexForm r(w.dimension(), w.degree());
  for (const auto& [I, f] : w.components()) r.add_component(I, complexify(f));
  return r;
}

inline ComplexEndomorphism complexify(const RealEndomorphism& e) {
  ComplexEndomorphism r(e.dimension());
  for (int i = 0; i < e.dimension(); ++i)
    for (int j = 0; j < e.dimension(); ++j) r.at(i, j) = complexify(e.at(i, j));
  return r;
}

inline ComplexVectorField conj(const ComplexVectorField& v) {
  std::vector<ComplexScalarField> c;
  for (int i = 0; i < v.dimension(); ++i) c.push_back(v.comp(i).conjugate());
  return ComplexVectorField(std::move(c));
}

inline ComplexForm conj(const ComplexForm& w) {
  ComplexForm r(w.dimension(), w.degree());
  for (const auto& [I, f] : w.components()) r.add_component(I, f.conjugate());
  return r;
}

inline RealForm real_part(const ComplexForm& w) {
  RealForm r(w.dimension(), w.degree());
  for (const auto& [I, f] : w.components()) r.add_component(I, f.real_part());
  return r;
}

inline RealForm imag_part(const ComplexForm& w) {
  RealForm r(w.dimension(), w.degree());
  for (const auto& [I, f] : w.components()) r.add_component(I, f.imag_part());
  return r;
}

// ---------------------------------------------------------------------------
// Calculus

template <class K>
DifferentialForm<K> exterior_derivative(const DifferentialForm<K>& w) {
  const int n = w.dimension();
  if (w.degree() >= n) throw Error("exterior_derivative: degree must be < dimension");
  DifferentialForm<K> r(n, w.degree() + 1);
  for (const auto& [I, f] : w.components()) {
    for (int a = 0; a < n; ++a) {
      auto ins = insert_axis(a, I);
      if (!ins) continue;
      const auto df = f.partial(a);
      if (df.is_zero()) continue;
      r.add_component(ins->first, static_cast<double>(ins->second) * df);
    }
  }
  return r;
}

template <class K>
DifferentialForm<K> wedge(const DifferentialForm<K>& a, const DifferentialForm<K>& b) {
  if (a.dimension() != b.dimension()) throw Error("wedge: dimension mismatch");
  const int n = a.dimension();
  const int deg = a.degree() + b.degree();
  DifferentialForm<K> r(n, std::min(deg, n + 1));
  if (deg > n) return r;  // no surviving multi-index above top degree
  for (const auto& [I, f] : a.components()) {
    for (const auto& [J, g] : b.components()) {
      auto merged = merge_indices(I, J);
      if (!merged) continue;
      r.add_component(merged->first, static_cast<double>(merged->second) * (f * g));
    }
  }
  return r;
}

template <class K>
DifferentialForm<K> interior_product(const VectorField<K>& X, const DifferentialForm<K>& w) {
  if (w.degree() < 1) throw Error("interior_product: degree-0 form");
  if (X.dimension() != w.dimension()) throw Error("interior_product: dimension mismatch");
  DifferentialForm<K> r(w.dimension(), w.degree() - 1);
  for (const auto& [I, f] : w.components()) {
    for (int t = 0; t < I.len; ++t) {
      const auto& xc = X.comp(I.idx[t]);
      if (xc.is_zero()) continue;
      const double sign = (t % 2 == 0) ? 1.0 : -1.0;
      r.add_component(I.erased(t), sign * (xc * f));
    }
  }
  return r;
}

// directional derivative X(f)
template <class K>
K derive(const VectorField<K>& X, const K& f) {
  K acc = K::zero(f.dimension());
  for (int j = 0; j < X.dimension(); ++j) acc += X.comp(j) * f.partial(j);
  return acc;
}

template <class K>
VectorField<K> lie_bracket(const VectorField<K>& X, const VectorField<K>& Y) {
  if (X.dimension() != Y.dimension()) throw Error("lie_bracket: dimension mismatch");
  auto r = VectorField<K>::zero(X.dimension());
  for (int i = 0; i < X.dimension(); ++i) {
    r.comp(i) = derive(X, Y.comp(i)) - derive(Y, X.comp(i));
  }
  return r;
}

// Cartan formula; on functions this reduces to i_X df.
template <class K>
DifferentialForm<K> lie_derivative(const VectorField<K>& X, const DifferentialForm<K>& w) {
  auto r = interior_product(X, exterior_derivative(w));
  if (w.degree() > 0) r = r + exterior_derivative(interior_product(X, w));
  return r;
}

// w(V_1, ..., V_d) as a scalar field (symbolic multilinear evaluation)
template <class K>
K apply_form(const DifferentialForm<K>& w, const std::vector<VectorField<K>>& args) {
  const int n = w.dimension();
  if (static_cast<int>(args.size()) != w.degree())
    throw Error("apply_form: argument count != degree");
  K total = K::zero(n);
  const int d = w.degree();
  if (d == 0) {
    return w.component(MultiIndex{});
  }
  for (const auto& [I, f] : w.components()) {
    // det of the d x d matrix M_{ab} = args[a].comp(I[b]) by permutation expansion
    std::array<int, 4> perm{};
    for (int i = 0; i < d; ++i) perm[i] = i;
    K det = K::zero(n);
    int guard = 0;
    do {
      int sign = 1;
      for (int i = 0; i < d; ++i)
        for (int j = i + 1; j < d; ++j)
          if (perm[i] > perm[j]) sign = -sign;
      K prod = K::constant(n, static_cast<double>(sign));
      for (int a = 0; a < d; ++a) prod = prod * args[a].comp(I.idx[perm[a]]);
      det += prod;
      if (++guard > 30) throw Error("apply_form: permutation overflow");
    } while (std::next_permutation(perm.begin(), perm.begin() + d));
    total += f * det;
  }
  return total;
}

// ---------------------------------------------------------------------------
// Pointwise evaluation bridges (Eigen)

inline Eigen::VectorXd eval_at(const RealVectorField& v, std::span<const double> p) {
  Eigen::VectorXd r(v.dimension());
  for (int i = 0; i < v.dimension(); ++i) r(i) = v.comp(i).evaluate(p);
  return r;
}

inline Eigen::VectorXcd eval_at(const ComplexVectorField& v, std::span<const double> p) {
  Eigen::VectorXcd r(v.dimension());
  for (int i = 0; i < v.dimension(); ++i) r(i) = v.comp(i).evaluate(p);
  return r;
}

inline Eigen::MatrixXd eval_at(const RealEndomorphism& e, std::span<const double> p) {
  Eigen::MatrixXd r(e.dimension(), e.dimension());
  for (int i = 0; i < e.dimension(); ++i)
    for (int j = 0; j < e.dimension(); ++j) r(i, j) = e.at(i, j).evaluate(p);
  return r;
}

inline Eigen::MatrixXcd eval_at(const ComplexEndomorphism& e, std::span<const double> p) {
  Eigen::MatrixXcd r(e.dimension(), e.dimension());
  for (int i = 0; i < e.dimension(); ++i)
    for (int j = 0; j < e.dimension(); ++j) r(i, j) = e.at(i, j).evaluate(p);
  return r;
}

// ---------------------------------------------------------------------------
// Symbolic inverse (adjugate / constant determinant)

template <class K>
K determinant(const EndomorphismField<K>& M) {
  const int n = M.dimension();
  // Entries may live on a torus of higher dimension than the matrix size
  // (minors keep the ambient field dimension), so take it from an entry.
  const int fdim = M.at(0, 0).dimension();
  std::vector<int> rows(n), cols(n);
  for (int i = 0; i < n; ++i) rows[i] = cols[i] = i;
  struct Rec {
    const EndomorphismField<K>& m;
    int fdim;
    K run(std::vector<int> rs, std::vector<int> cs) {
      const int k = static_cast<int>(rs.size());
      if (k == 1) return m.at(rs[0], cs[0]);
      K acc = K::zero(fdim);
      for (int j = 0; j < k; ++j) {
        auto sub_r = std::vector<int>(rs.begin() + 1, rs.end());
        auto sub_c = cs;
        sub_c.erase(sub_c.begin() + j);
        const double sign = (j % 2 == 0) ? 1.0 : -1.0;
        acc += sign * (m.at(rs[0], cs[j]) * run(sub_r, sub_c));
      }
      return acc;
    }
  } rec{M, fdim};
  return rec.run(rows, cols);
}

// Inverse of a matrix field whose determinant is constant on the torus.
// Nonconstant determinants would leave the trig-polynomial ring, so they are
// rejected rather than approximated.
template <class K>
EndomorphismField<K> inverse_constant_det(const EndomorphismField<K>& M, double tol = 1e-9);

template <>
inline RealEndomorphism inverse_constant_det(const RealEndomorphism& M, double tol) {
  const int n = M.dimension();
  const auto det = determinant(M);
  if (!det.is_constant(tol)) {
    throw Error("inverse_constant_det: determinant is not constant; frame is not adapted");
  }
  const double d0 = det.constant_part();
  if (std::abs(d0) < 1e-12) throw Error("inverse_constant_det: singular matrix field");
  RealEndomorphism inv(n);
  if (n == 1) {
    inv.at(0, 0) = ScalarField::constant(M.at(0, 0).dimension(), 1.0 / d0);
    return inv;
  }
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      // cofactor C_{ji} / det
      std::vector<int> rs, cs;
      for (int r = 0; r < n; ++r)
        if (r != j) rs.push_back(r);
      for (int c = 0; c < n; ++c)
        if (c != i) cs.push_back(c);
      EndomorphismField<ScalarField> small(static_cast<int>(rs.size()));
      for (size_t a = 0; a < rs.size(); ++a)
        for (size_t b = 0; b < cs.size(); ++b)
          small.at(static_cast<int>(a), static_cast<int>(b)) = M.at(rs[a], cs[b]);
      auto cof = determinant(small);
      const double sign = ((i + j) % 2 == 0) ? 1.0 : -1.0;
      inv.at(i, j) = (sign / d0) * cof;
    }
  }
  return inv;
}

template <>
inline ComplexEndomorphism inverse_constant_det(const ComplexEndomorphism& M, double tol) {
  const int n = M.dimension();
  const auto det = determinant(M);
  if (!det.real_part().is_constant(tol) || !det.imag_part().is_constant(tol)) {
    throw Error("inverse_constant_det: determinant is not constant; frame is not adapted");
  }
  const std::complex<double> d0(det.real_part().constant_part(),
                                det.imag_part().constant_part());
  if (std::abs(d0) < 1e-12) throw Error("inverse_constant_det: singular matrix field");
  ComplexEndomorphism inv(n);
  if (n == 1) {
    inv.at(0, 0) = ComplexScalarField::constant(M.at(0, 0).dimension(), 1.0 / d0);
    return inv;
  }
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      std::vector<int> rs, cs;
      for (int r = 0; r < n; ++r)
        if (r != j) rs.push_back(r);
      for (int c = 0; c < n; ++c)
        if (c != i) cs.push_back(c);
      EndomorphismField<ComplexScalarField> small(static_cast<int>(rs.size()));
      for (size_t a = 0; a < rs.size(); ++a)
        for (size_t b = 0; b < cs.size(); ++b)
          small.at(static_cast<int>(a), static_cast<int>(b)) = M.at(rs[a], cs[b]);
      auto cof = determinant(small);
      const double sign = ((i + j) % 2 == 0) ? 1.0 : -1.0;
      inv.at(i, j) = (std::complex<double>(sign, 0) / d0) * cof;
    }
  }
  return inv;
}

// ---------------------------------------------------------------------------
// Metric fields

// Symmetric positive-definite matrix of scalar fields.  Symmetry is exact in
// the representation; definiteness is checked at supplied sample points.
class MetricField {
 public:
  MetricField() = default;
  explicit MetricField(RealEndomorphism entries);

  int dimension() const { return entries_.dimension(); }
  const RealEndomorphism& entries() const { return entries_; }
  const ScalarField& at(int i, int j) const { return entries_.at(i, j); }

  static MetricField flat(int dim);

  // checks positive definiteness on the given points, throws with the worst one
  void validate_positive(const std::vector<std::vector<double>>& points) const;

  // index-lowering: X -> g(X, .) as a 1-form
  RealForm flat_map(const RealVectorField& X) const;
  ComplexForm flat_map(const ComplexVectorField& X) const;

  ScalarField inner(const RealVectorField& X, const RealVectorField& Y) const;
  // C-bilinear extension
  ComplexScalarField inner(const ComplexVectorField& X, const ComplexVectorField& Y) const;

  Eigen::MatrixXd eval(std::span<const double> p) const { return eval_at(entries_, p); }
  Eigen::MatrixXd eval_inverse(std::span<const double> p) const;

 private:
  RealEndomorphism entries_;
};

// ---------------------------------------------------------------------------
// Type decompositions

// Complex form bucketed by how many argument legs each projector absorbs.
// Projectors must sum to the identity; buckets are keyed by the per-label
// leg counts, so two labels give the usual (p,q) decomposition.
using GradeKey = std::array<int, 3>;
std::map<GradeKey, ComplexForm> decompose_by_projectors(
    const ComplexForm& w, const std::vector<ComplexEndomorphism>& projectors);

// P^{1,0} = (1 - i j)/2 and P^{0,1} = (1 + i j)/2 for an almost complex j.
std::vector<ComplexEndomorphism> pq_projectors(const RealEndomorphism& j);

// Checks j^2 = -id at the points (throws otherwise), then decomposes.
// Returned keys have third entry 0; (p,q) sit in the first two slots.
std::map<GradeKey, ComplexForm> pq_decompose(const ComplexForm& w, const RealEndomorphism& j,
                                             const std::vector<std::vector<double>>& points,
                                             double tol = 1e-9);

struct DelPair {
  ComplexForm del;      // (p+1, q) projection of dw
  ComplexForm delbar;   // (p, q+1) projection of dw
};

// Requires w of pure (p,q) type; callers decompose first otherwise.
DelPair del_and_delbar(const ComplexForm& w, const RealEndomorphism& j,
                       const std::vector<std::vector<double>>& points);

// d^c = i(delbar - del) on a pure-type form.
ComplexForm dc_operator(const ComplexForm& w, const RealEndomorphism& j,
                        const std::vector<std::vector<double>>& points);

}  // namespace gcv
