#pragma once

#include <gmpxx.h>

#include <compare>
#include <ostream>
#include <stdexcept>
#include <string>

namespace tgk {

using Rational = mpq_class;

inline bool is_zero(const Rational& q) { return sgn(q) == 0; }

inline std::string to_string(const Rational& q) { return q.get_str(); }

/// Gaussian rational re + im*i.  Every coefficient in the library is one of
/// these; zero-testing is exact.
class Scalar {
public:
  Scalar() = default;
  Scalar(long v) : re_(v) {}  // NOLINT(google-explicit-constructor)
  Scalar(Rational re) : re_(std::move(re)) { re_.canonicalize(); }  // NOLINT
  Scalar(Rational re, Rational im) : re_(std::move(re)), im_(std::move(im)) {
    re_.canonicalize();
    im_.canonicalize();
  }

  static Scalar i() { return {Rational(0), Rational(1)}; }

  const Rational& re() const { return re_; }
  const Rational& im() const { return im_; }

  bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
  bool is_real() const { return sgn(im_) == 0; }

  Scalar conj() const { return {re_, -im_}; }

  Scalar& operator+=(const Scalar& o) {
    re_ += o.re_;
    im_ += o.im_;
    return *this;
  }
  Scalar& operator-=(const Scalar& o) {
    re_ -= o.re_;
    im_ -= o.im_;
    return *this;
  }
  Scalar& operator*=(const Scalar& o) {
    Rational r = re_ * o.re_ - im_ * o.im_;
    Rational m = re_ * o.im_ + im_ * o.re_;
    re_ = std::move(r);
    im_ = std::move(m);
    return *this;
  }
  Scalar& operator/=(const Scalar& o) {
    Rational den = o.re_ * o.re_ + o.im_ * o.im_;
    if (sgn(den) == 0) throw std::domain_error("division by zero scalar");
    Rational r = (re_ * o.re_ + im_ * o.im_) / den;
    Rational m = (im_ * o.re_ - re_ * o.im_) / den;
    re_ = std::move(r);
    im_ = std::move(m);
    return *this;
  }

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }
  friend Scalar operator-(const Scalar& a) { return {-a.re_, -a.im_}; }

  friend bool operator==(const Scalar& a, const Scalar& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }

  /// i^k for any integer k.
  static Scalar i_power(long k) {
    switch (((k % 4) + 4) % 4) {
      case 0: return Scalar(1);
      case 1: return i();
      case 2: return Scalar(-1);
      default: return -i();
    }
  }

  /// Readable form: "3/2", "-I", "(1/2 - 3*I)".
  std::string str() const {
    if (sgn(im_) == 0) return re_.get_str();
    std::string imag;
    if (im_ == 1) imag = "I";
    else if (im_ == -1) imag = "-I";
    else imag = im_.get_str() + "*I";
    if (sgn(re_) == 0) return imag;
    Rational a = abs(im_);
    std::string tail = a == 1 ? "I" : a.get_str() + "*I";
    return "(" + re_.get_str() + (sgn(im_) < 0 ? " - " : " + ") + tail + ")";
  }

private:
  Rational re_{0};
  Rational im_{0};
};

inline bool is_zero(const Scalar& s) { return s.is_zero(); }

inline std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.str(); }

}  // namespace tgk
