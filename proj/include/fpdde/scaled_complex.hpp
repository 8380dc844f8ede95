#pragma once

#include <cmath>
#include <complex>

namespace fpdde {

// Complex number stored as mantissa * exp(log_scale) with |mantissa| == 1
// (or mantissa == 0). Used to evaluate entire functions far from the origin
// where |f| overflows a double.
class ScaledComplex {
 public:
  ScaledComplex() = default;
  ScaledComplex(std::complex<double> value) { assign(value, 0.0); }  // NOLINT
  ScaledComplex(std::complex<double> mantissa, double log_scale) {
    assign(mantissa, log_scale);
  }

  static ScaledComplex from_exponent(std::complex<double> z) {
    // exp(z) = exp(i Im z) * exp(Re z)
    return ScaledComplex(std::polar(1.0, z.imag()), z.real());
  }

  const std::complex<double>& mantissa() const { return mantissa_; }
  double log_scale() const { return log_scale_; }
  bool is_zero() const { return mantissa_ == std::complex<double>(0.0); }
  bool is_finite() const {
    return std::isfinite(mantissa_.real()) && std::isfinite(mantissa_.imag()) &&
           std::isfinite(log_scale_);
  }

  // log|value|; -inf for zero.
  double log_abs() const {
    if (is_zero()) return -HUGE_VAL;
    return log_scale_;
  }

  // May overflow to inf or underflow to 0.
  std::complex<double> value() const {
    if (is_zero()) return {};
    return mantissa_ * std::exp(log_scale_);
  }

  friend ScaledComplex operator-(const ScaledComplex& a) {
    ScaledComplex r = a;
    r.mantissa_ = -r.mantissa_;
    return r;
  }

  friend ScaledComplex operator+(const ScaledComplex& a, const ScaledComplex& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    const double top = std::max(a.log_scale_, b.log_scale_);
    return ScaledComplex(a.mantissa_ * std::exp(a.log_scale_ - top) +
                             b.mantissa_ * std::exp(b.log_scale_ - top),
                         top);
  }

  friend ScaledComplex operator-(const ScaledComplex& a, const ScaledComplex& b) {
    return a + (-b);
  }

  friend ScaledComplex operator*(const ScaledComplex& a, const ScaledComplex& b) {
    if (a.is_zero() || b.is_zero()) return {};
    return ScaledComplex(a.mantissa_ * b.mantissa_, a.log_scale_ + b.log_scale_);
  }

  // Caller checks for a zero divisor.
  friend ScaledComplex operator/(const ScaledComplex& a, const ScaledComplex& b) {
    if (a.is_zero()) return {};
    return ScaledComplex(a.mantissa_ / b.mantissa_, a.log_scale_ - b.log_scale_);
  }

 private:
  void assign(std::complex<double> m, double s) {
    const double mag = std::abs(m);
    if (mag == 0.0) {
      mantissa_ = {};
      log_scale_ = 0.0;
      return;
    }
    mantissa_ = m / mag;
    log_scale_ = s + std::log(mag);
  }

  std::complex<double> mantissa_{};
  double log_scale_ = 0.0;
};

}  // namespace fpdde
