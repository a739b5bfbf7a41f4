#pragma once

#include <span>

#include "pentagon/types.hpp"

namespace pentagon {

// Complex nome q with 0 < |q| < 1. A principal log is fixed at construction so
// that every fractional power q^r taken through this object sits on the same
// branch for the whole computation.
class Nome {
 public:
  explicit Nome(Complex q);
  Complex value() const { return q_; }
  Complex log() const { return logq_; }
  double mod() const { return absq_; }
  // Nome q^2 on the branch inherited from this one (log doubled).
  Nome squared() const;

 private:
  Nome(Complex q, Complex logq);
  Complex q_;
  Complex logq_;
  double absq_;
};

// q^r = exp(r log q) on the branch frozen in the Nome.
Complex qpow(const Nome& q, double r);

// (a;q)_n = prod_{k=0}^{n-1} (1 - a q^k); n = 0 gives 1, n < 0 is a domain
// error.
Complex pochhammer_fin(const Complex& a, const Nome& q, long n);

// (a;q)_inf truncated once the tail bound |a| |q|^J / (1 - |q|) falls below
// pol.tol. Throws TruncationFailure if the bound is not met within
// pol.max_terms levels. If achieved is non-null it receives the final tail
// bound actually attained.
Complex pochhammer_inf(const Complex& a, const Nome& q,
                       const TruncationPolicy& pol = {},
                       double* achieved = nullptr);

// prod_i (num_i;q)_inf / prod_j (den_j;q)_inf computed as a single product over
// ladder levels with numerator and denominator factors paired per level, so
// individually divergent-looking pieces stay bounded. Renormalizes through log
// space whenever the running accumulator leaves [1e-8, 1e8]. Throws PoleHit if
// a denominator factor comes within 1e-12 of zero.
Complex pochhammer_ratio(std::span<const Complex> num,
                         std::span<const Complex> den, const Nome& q,
                         const TruncationPolicy& pol = {});

namespace detail {
// (a;q)_inf split into mantissa * exp(logpart); building block for values whose
// magnitude can overflow a double.
struct ProductParts {
  Complex mantissa{1.0, 0.0};
  Complex logpart{0.0, 0.0};
};
ProductParts pochhammer_inf_parts(const Complex& a, const Nome& q,
                                  const TruncationPolicy& pol,
                                  double* achieved);
}  // namespace detail

}  // namespace pentagon
