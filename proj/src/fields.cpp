#include "gcv/fields.hpp"

#include <cmath>
#include <cstdio>

namespace gcv {

namespace {

void check_dim(int dim) {
  if (dim < 1 || dim > kMaxDim) {
    throw Error("ScalarField dimension must be in [1, " + std::to_string(kMaxDim) +
                "], got " + std::to_string(dim));
  }
}

bool freq_is_zero(const Freq& k) {
  for (int v : k)
    if (v != 0) return false;
  return true;
}

// Canonical representative: first nonzero entry positive.
bool needs_flip(const Freq& k) {
  for (int v : k) {
    if (v > 0) return false;
    if (v < 0) return true;
  }
  return false;
}

Freq negate(const Freq& k) {
  Freq r{};
  for (int i = 0; i < kMaxDim; ++i) r[i] = -k[i];
  return r;
}

}  // namespace

// Accumulates raw harmonics, then folds them into canonical form.
struct ScalarField::Builder {
  int dim;
  std::map<Freq, Harmonic> acc;

  explicit Builder(int d) : dim(d) { check_dim(d); }

  void add(Freq k, double c, double s) {
    for (int i = dim; i < kMaxDim; ++i) {
      if (k[i] != 0) throw Error("frequency component beyond field dimension");
    }
    for (int i = 0; i < dim; ++i) {
      if (std::abs(k[i]) > kMaxFrequency) {
        throw Error("frequency bound |k_i| <= " + std::to_string(kMaxFrequency) +
                    " exceeded (runaway symbolic expression)");
      }
    }
    if (needs_flip(k)) {
      k = negate(k);
      s = -s;  // cos even, sin odd
    }
    if (freq_is_zero(k)) s = 0.0;  // sin(0) contributes nothing
    auto& h = acc[k];
    h.c += c;
    h.s += s;
  }

  ScalarField finish() {
    ScalarField f(dim);
    for (auto& [k, h] : acc) {
      if (std::abs(h.c) < kCoeffDropTol && std::abs(h.s) < kCoeffDropTol) continue;
      f.terms_.emplace(k, h);
    }
    return f;
  }
};

ScalarField ScalarField::zero(int dim) {
  check_dim(dim);
  return ScalarField(dim);
}

ScalarField ScalarField::constant(int dim, double value) {
  Builder b(dim);
  b.add(Freq{}, value, 0.0);
  return b.finish();
}

ScalarField ScalarField::harmonic(int dim, const Freq& k, double cos_coef, double sin_coef) {
  Builder b(dim);
  b.add(k, cos_coef, sin_coef);
  return b.finish();
}

double ScalarField::evaluate(std::span<const double> point) const {
  if (static_cast<int>(point.size()) != dim_) {
    throw Error("evaluate: point has length " + std::to_string(point.size()) +
                ", field dimension is " + std::to_string(dim_));
  }
  double total = 0.0;
  for (const auto& [k, h] : terms_) {
    double phase = 0.0;
    for (int i = 0; i < dim_; ++i) phase += k[i] * point[i];
    total += h.c * std::cos(phase) + h.s * std::sin(phase);
  }
  return total;
}

ScalarField ScalarField::partial(int axis) const {
  if (axis < 0 || axis >= dim_) {
    throw Error("partial: axis " + std::to_string(axis) + " out of range for dimension " +
                std::to_string(dim_));
  }
  Builder b(dim_);
  for (const auto& [k, h] : terms_) {
    const double ka = static_cast<double>(k[axis]);
    if (ka == 0.0 && h.c == 0.0) continue;
    // d/dtheta_a: c cos -> -c k_a sin, s sin -> s k_a cos
    b.add(k, h.s * ka, -h.c * ka);
  }
  return b.finish();
}

double ScalarField::max_abs_coeff() const {
  double m = 0.0;
  for (const auto& [k, h] : terms_) m = std::max({m, std::abs(h.c), std::abs(h.s)});
  return m;
}

bool ScalarField::is_constant(double tol) const {
  for (const auto& [k, h] : terms_) {
    if (freq_is_zero(k)) continue;
    if (std::abs(h.c) > tol || std::abs(h.s) > tol) return false;
  }
  return true;
}

double ScalarField::constant_part() const {
  auto it = terms_.find(Freq{});
  return it == terms_.end() ? 0.0 : it->second.c;
}

ScalarField ScalarField::operator-() const {
  ScalarField r(dim_);
  for (const auto& [k, h] : terms_) r.terms_.emplace(k, Harmonic{-h.c, -h.s});
  return r;
}

ScalarField operator+(const ScalarField& a, const ScalarField& b) {
  if (a.dim_ != b.dim_) throw Error("combine: dimension mismatch");
  ScalarField::Builder out(a.dim_);
  for (const auto& [k, h] : a.terms_) out.add(k, h.c, h.s);
  for (const auto& [k, h] : b.terms_) out.add(k, h.c, h.s);
  return out.finish();
}

ScalarField operator-(const ScalarField& a, const ScalarField& b) {
  return a + (-b);
}

ScalarField operator*(const ScalarField& a, const ScalarField& b) {
  if (a.dim_ != b.dim_) throw Error("combine: dimension mismatch");
  ScalarField::Builder out(a.dim_);
  for (const auto& [k, hk] : a.terms_) {
    for (const auto& [l, hl] : b.terms_) {
      Freq sum{}, diff{};
      for (int i = 0; i < kMaxDim; ++i) {
        sum[i] = k[i] + l[i];
        diff[i] = k[i] - l[i];
      }
      // product-to-sum identities
      out.add(sum, 0.5 * (hk.c * hl.c - hk.s * hl.s), 0.5 * (hk.c * hl.s + hk.s * hl.c));
      out.add(diff, 0.5 * (hk.c * hl.c + hk.s * hl.s), 0.5 * (hk.s * hl.c - hk.c * hl.s));
    }
  }
  return out.finish();
}

ScalarField operator*(double lambda, const ScalarField& f) {
  ScalarField::Builder out(f.dim_);
  for (const auto& [k, h] : f.terms_) out.add(k, lambda * h.c, lambda * h.s);
  return out.finish();
}

ComplexScalarField::ComplexScalarField(ScalarField re, ScalarField im)
    : re_(std::move(re)), im_(std::move(im)) {
  if (re_.dimension() != im_.dimension()) {
    throw Error("ComplexScalarField: re/im dimension mismatch");
  }
}

ComplexScalarField ComplexScalarField::constant(int dim, std::complex<double> value) {
  return ComplexScalarField(ScalarField::constant(dim, value.real()),
                            ScalarField::constant(dim, value.imag()));
}

}  // namespace gcv
