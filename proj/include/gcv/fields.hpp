// Exact calculus for real and complex trigonometric polynomials on the
// n-torus (n <= 4).  Every field downstream (forms, metrics, residuals)
// stores these as its coefficients, so addition, multiplication and
// partial differentiation here must be closed and canonical.
#pragma once

#include <array>
#include <complex>
#include <map>
#include <span>
#include <stdexcept>
#include <string>

namespace gcv {

constexpr int kMaxDim = 4;
// Frequency bound after products; exceeding it signals a runaway symbolic
// expression and is a hard error, never a silent truncation.
constexpr int kMaxFrequency = 64;
// Terms whose cos and sin coefficients are both below this are dropped
// during canonicalization.
constexpr double kCoeffDropTol = 1e-13;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Integer frequency vector; axes beyond the field dimension stay zero.
using Freq = std::array<int, kMaxDim>;

// One stored harmonic: c*cos(k.theta) + s*sin(k.theta).
struct Harmonic {
  double c = 0.0;
  double s = 0.0;
};

// Finite real trigonometric polynomial sum_k [c_k cos(k.theta) + s_k sin(k.theta)].
//
// Canonical form: for each stored key k at least one coefficient survives the
// drop tolerance, the key set holds at most one of {k, -k} (the representative
// has its first nonzero entry positive), and k = 0 carries no sin part.
// Values are immutable after construction and safe to share across threads.
class ScalarField {
 public:
  ScalarField() = default;  // dimension-0 placeholder; combine ops reject it

  static ScalarField zero(int dim);
  static ScalarField constant(int dim, double value);
  // c*cos(k.theta) + s*sin(k.theta), canonicalized.
  static ScalarField harmonic(int dim, const Freq& k, double cos_coef, double sin_coef);

  int dimension() const { return dim_; }
  bool is_zero() const { return terms_.empty(); }
  const std::map<Freq, Harmonic>& terms() const { return terms_; }

  double evaluate(std::span<const double> point) const;
  ScalarField partial(int axis) const;

  double max_abs_coeff() const;
  // true when the only surviving term is the constant one (or none)
  bool is_constant(double tol = 1e-12) const;
  double constant_part() const;

  ScalarField operator-() const;
  friend ScalarField operator+(const ScalarField& a, const ScalarField& b);
  friend ScalarField operator-(const ScalarField& a, const ScalarField& b);
  friend ScalarField operator*(const ScalarField& a, const ScalarField& b);
  friend ScalarField operator*(double lambda, const ScalarField& f);
  friend ScalarField operator*(const ScalarField& f, double lambda) { return lambda * f; }

  ScalarField& operator+=(const ScalarField& b) { return *this = *this + b; }
  ScalarField& operator-=(const ScalarField& b) { return *this = *this - b; }

 private:
  struct Builder;
  explicit ScalarField(int dim) : dim_(dim) {}

  int dim_ = 0;
  std::map<Freq, Harmonic> terms_;
};

// Complex trig polynomial, stored as (re, im) pair of ScalarFields.
class ComplexScalarField {
 public:
  ComplexScalarField() = default;
  ComplexScalarField(const ScalarField& re) : re_(re), im_(ScalarField::zero(re.dimension())) {}
  ComplexScalarField(ScalarField re, ScalarField im);

  static ComplexScalarField zero(int dim) { return ComplexScalarField(ScalarField::zero(dim)); }
  static ComplexScalarField constant(int dim, double value) {
    return ComplexScalarField(ScalarField::constant(dim, value));
  }
  static ComplexScalarField constant(int dim, std::complex<double> value);

  int dimension() const { return re_.dimension(); }
  bool is_zero() const { return re_.is_zero() && im_.is_zero(); }
  const ScalarField& real_part() const { return re_; }
  const ScalarField& imag_part() const { return im_; }

  std::complex<double> evaluate(std::span<const double> point) const {
    return {re_.evaluate(point), im_.evaluate(point)};
  }
  ComplexScalarField partial(int axis) const {
    return ComplexScalarField(re_.partial(axis), im_.partial(axis));
  }
  ComplexScalarField conjugate() const { return ComplexScalarField(re_, -im_); }

  double max_abs_coeff() const { return std::max(re_.max_abs_coeff(), im_.max_abs_coeff()); }

  ComplexScalarField operator-() const { return ComplexScalarField(-re_, -im_); }
  friend ComplexScalarField operator+(const ComplexScalarField& a, const ComplexScalarField& b) {
    return ComplexScalarField(a.re_ + b.re_, a.im_ + b.im_);
  }
  friend ComplexScalarField operator-(const ComplexScalarField& a, const ComplexScalarField& b) {
    return ComplexScalarField(a.re_ - b.re_, a.im_ - b.im_);
  }
  friend ComplexScalarField operator*(const ComplexScalarField& a, const ComplexScalarField& b) {
    return ComplexScalarField(a.re_ * b.re_ - a.im_ * b.im_, a.re_ * b.im_ + a.im_ * b.re_);
  }
  friend ComplexScalarField operator*(std::complex<double> lambda, const ComplexScalarField& f) {
    return ComplexScalarField(lambda.real() * f.re_ - lambda.imag() * f.im_,
                              lambda.real() * f.im_ + lambda.imag() * f.re_);
  }
  friend ComplexScalarField operator*(double lambda, const ComplexScalarField& f) {
    return ComplexScalarField(lambda * f.re_, lambda * f.im_);
  }

  ComplexScalarField& operator+=(const ComplexScalarField& b) { return *this = *this + b; }
  ComplexScalarField& operator-=(const ComplexScalarField& b) { return *this = *this - b; }

 private:
  ScalarField re_, im_;
};

// Scalar-kind helpers so tensor code can be written once for both flavors.
inline ScalarField conj(const ScalarField& f) { return f; }
inline ComplexScalarField conj(const ComplexScalarField& f) { return f.conjugate(); }

inline ComplexScalarField complexify(const ScalarField& f) { return ComplexScalarField(f); }

template <class K>
struct scalar_traits;

template <>
struct scalar_traits<ScalarField> {
  using value_type = double;
  static constexpr bool is_complex = false;
};

template <>
struct scalar_traits<ComplexScalarField> {
  using value_type = std::complex<double>;
  static constexpr bool is_complex = true;
};

}  // namespace gcv
