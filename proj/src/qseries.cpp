#include "pentagon/qseries.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace pentagon {

Nome::Nome(Complex q) : q_(q), logq_(0.0), absq_(std::abs(q)) {
  if (!finite(q) || !(absq_ < 1.0) || absq_ <= 0.0) {
    throw DomainError("nome requires 0 < |q| < 1");
  }
  logq_ = std::log(q_);
}

Nome::Nome(Complex q, Complex logq) : q_(q), logq_(logq), absq_(std::abs(q)) {}

Nome Nome::squared() const { return Nome(q_ * q_, 2.0 * logq_); }

Complex qpow(const Nome& q, double r) {
  if (r == 0.0) return Complex(1.0, 0.0);
  return std::exp(r * q.log());
}

Complex pochhammer_fin(const Complex& a, const Nome& q, long n) {
  if (n < 0) throw DomainError("pochhammer_fin requires n >= 0");
  Complex acc(1.0, 0.0);
  Complex qk(1.0, 0.0);
  for (long k = 0; k < n; ++k) {
    acc *= (Complex(1.0, 0.0) - a * qk);
    qk *= q.value();
  }
  return acc;
}

namespace detail {

ProductParts pochhammer_inf_parts(const Complex& a, const Nome& q,
                                  const TruncationPolicy& pol,
                                  double* achieved) {
  ProductParts parts;
  const double absq = q.mod();
  const double geom = 1.0 - absq;
  Complex qk(1.0, 0.0);
  for (std::size_t j = 0;; ++j) {
    if (j >= pol.max_terms) {
      throw TruncationFailure(
          "pochhammer_inf: tail bound " +
          std::to_string(std::abs(a) * std::abs(qk) / geom) +
          " still above tolerance after max_terms levels");
    }
    parts.mantissa *= (Complex(1.0, 0.0) - a * qk);
    const double mag = std::abs(parts.mantissa);
    if (mag != 0.0 && (mag < 1e-8 || mag > 1e8)) {
      parts.logpart += std::log(parts.mantissa);
      parts.mantissa = Complex(1.0, 0.0);
    }
    qk *= q.value();
    const double tail = std::abs(a) * std::abs(qk) / geom;
    if (tail < pol.tol) {
      if (achieved) *achieved = tail;
      break;
    }
  }
  return parts;
}

}  // namespace detail

Complex pochhammer_inf(const Complex& a, const Nome& q,
                       const TruncationPolicy& pol, double* achieved) {
  const auto parts = detail::pochhammer_inf_parts(a, q, pol, achieved);
  if (parts.logpart == Complex(0.0, 0.0)) return parts.mantissa;
  return std::exp(parts.logpart) * parts.mantissa;
}

Complex pochhammer_ratio(std::span<const Complex> num,
                         std::span<const Complex> den, const Nome& q,
                         const TruncationPolicy& pol) {
  double scale = 0.0;
  for (const Complex& v : num) scale += std::abs(v);
  for (const Complex& v : den) scale += std::abs(v);
  const double absq = q.mod();
  const double geom = 1.0 - absq;

  Complex acc(1.0, 0.0);
  Complex logacc(0.0, 0.0);
  Complex qk(1.0, 0.0);
  for (std::size_t j = 0;; ++j) {
    if (j >= pol.max_terms) {
      throw TruncationFailure(
          "pochhammer_ratio: tolerance not reached within max_terms levels");
    }
    Complex level(1.0, 0.0);
    for (const Complex& v : num) level *= (Complex(1.0, 0.0) - v * qk);
    for (const Complex& v : den) {
      const Complex f = Complex(1.0, 0.0) - v * qk;
      if (std::abs(f) < 1e-12) {
        throw PoleHit("pochhammer_ratio: denominator factor within 1e-12 of zero at level " +
                      std::to_string(j));
      }
      level /= f;
    }
    acc *= level;
    const double mag = std::abs(acc);
    if (mag != 0.0 && (mag < 1e-8 || mag > 1e8)) {
      logacc += std::log(acc);
      acc = Complex(1.0, 0.0);
    }
    qk *= q.value();
    const double tail = scale * std::abs(qk) / geom;
    if (tail < pol.tol) break;
  }
  if (logacc == Complex(0.0, 0.0)) return acc;
  return std::exp(logacc) * acc;
}

}  // namespace pentagon
