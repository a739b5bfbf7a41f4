#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <vector>

#include "pentagon/errors.hpp"

namespace pentagon {

using Complex = std::complex<double>;
using namespace std::complex_literals;

inline constexpr double kPi = 3.14159265358979323846264338327950288;

// r^p e^{i p theta}: power of a number given in polar form. The phase is an
// explicit input, so callers control the branch by bookkeeping phases
// additively instead of re-deriving them from a product.
inline Complex polar_pow(double r, double theta, double p) {
  return std::polar(std::pow(r, p), theta * p);
}

// Principal-branch real power of a single complex number. Products of several
// such factors must be powered factor by factor (phases add); powering the
// product directly can land on the wrong branch.
inline Complex fug_pow(const Complex& z, double p) {
  return polar_pow(std::abs(z), std::arg(z), p);
}

inline bool finite(const Complex& z) {
  return std::isfinite(z.real()) && std::isfinite(z.imag());
}

// Controls truncation of infinite products/series. tol is an absolute bound on
// the error of the log of the result; max_terms caps the number of ladder
// levels before TruncationFailure.
struct TruncationPolicy {
  double tol = 1e-14;
  std::size_t max_terms = 1'000'000;
};

enum class SbMethod { Product, Integral, Auto };

// Ellipsoid squashing parameter b with Re(b) > 0; Q = b + 1/b.
class SquashingParameter {
 public:
  explicit SquashingParameter(Complex b) : b_(b) {
    if (!(b.real() > 0.0) || !finite(b)) {
      throw DomainError("squashing parameter requires finite b with Re(b) > 0");
    }
  }
  Complex b() const { return b_; }
  Complex Q() const { return b_ + 1.0 / b_; }
  // The product representation converges only when both of its nomes lie
  // strictly inside the unit disc, i.e. Im(b^2) > 0.
  bool product_allowed() const { return (b_ * b_).imag() > 0.0; }

 private:
  Complex b_;
};

struct QuadratureResult {
  Complex value{0.0, 0.0};
  double est_error = 0.0;
  std::size_t nodes_used = 0;
  double truncation_radius = 0.0;
};

struct DecayReport {
  bool detected = false;
  double envelope_rate = 0.0;  // positive means decaying
  std::vector<double> sample_radii;
  std::vector<double> envelope;  // max |f| near each sample radius
};

}  // namespace pentagon
