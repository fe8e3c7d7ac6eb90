#pragma once

#include <gmpxx.h>

#include <string>

#include "unicoh/errors.hpp"

namespace unicoh {

/// Exact rational number. mpq_class keeps values in canonical reduced form.
using Rat = mpq_class;
using Int = mpz_class;

/// Gaussian rational a + b*i. All coefficient arithmetic in the library runs
/// through this type; purely rational data simply has im == 0.
struct GaussRat {
  Rat re, im;

  GaussRat() : re(0), im(0) {}
  GaussRat(long r) : re(r), im(0) {}
  GaussRat(const Rat& r) : re(r), im(0) {}
  GaussRat(Rat r, Rat i) : re(std::move(r)), im(std::move(i)) {}

  static GaussRat i() { return GaussRat(Rat(0), Rat(1)); }

  bool is_zero() const { return re == 0 && im == 0; }
  bool is_real() const { return im == 0; }
  bool is_integer() const { return im == 0 && re.get_den() == 1; }

  GaussRat conj() const { return GaussRat(re, -im); }
  /// re^2 + im^2 (= |z|^2, exact).
  Rat norm() const { return re * re + im * im; }

  GaussRat operator-() const { return GaussRat(-re, -im); }

  GaussRat& operator+=(const GaussRat& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  GaussRat& operator-=(const GaussRat& o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }
  GaussRat& operator*=(const GaussRat& o) {
    if (im == 0 && o.im == 0) {
      re *= o.re;
      return *this;
    }
    Rat r = re * o.re - im * o.im;
    im = re * o.im + im * o.re;
    re = std::move(r);
    return *this;
  }
  GaussRat& operator/=(const GaussRat& o);

  friend GaussRat operator+(GaussRat a, const GaussRat& b) { return a += b; }
  friend GaussRat operator-(GaussRat a, const GaussRat& b) { return a -= b; }
  friend GaussRat operator*(GaussRat a, const GaussRat& b) { return a *= b; }
  friend GaussRat operator/(GaussRat a, const GaussRat& b) { return a /= b; }
  friend bool operator==(const GaussRat& a, const GaussRat& b) {
    return a.re == b.re && a.im == b.im;
  }
  friend bool operator!=(const GaussRat& a, const GaussRat& b) { return !(a == b); }
};

/// Canonical text form of a rational: "p" or "p/q" with q > 0.
std::string rat_to_string(const Rat& r);

/// Parse "p" or "p/q". Rejects floats, whitespace, empty strings.
Rat rat_from_string(const std::string& s);

std::string gauss_to_string(const GaussRat& z);

} // namespace unicoh
