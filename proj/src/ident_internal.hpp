#pragma once

// Internal declarations shared by the identity evaluators; not installed.

#include <cmath>

#include "pentagon/identities.hpp"
#include "pentagon/qseries.hpp"
#include "pentagon/quadrature.hpp"

namespace pentagon::detail {

// A fugacity tracked in polar form so that powers of products can be taken
// with additive phases (modulus and phase handled separately), keeping every
// half-integer power on one consistent branch.
struct Fug {
  double r = 1.0;
  double th = 0.0;
  Complex val() const { return std::polar(r, th); }
  Fug times(const Fug& o) const { return {r * o.r, th + o.th}; }
  Fug inv() const { return {1.0 / r, -th}; }
  Complex pw(double p) const { return polar_pow(r, th, p); }
};

inline Fug fug_of(const Complex& z) { return {std::abs(z), std::arg(z)}; }

inline Fug fug_qpow(const Nome& q, double r) {
  return {std::exp(r * q.log().real()), r * q.log().imag()};
}

// (x q^c; q)_inf for any real c; negative c goes through the finite
// reflection prefactor prod_{j=0}^{K-1} (1 - x q^{c+j}) with K = ceil(-c).
Complex poch_shifted(const Complex& x, double c, const Nome& q,
                     const TruncationPolicy& pol = {});

// Per-identity side evaluators (form already validated against the registry).
Complex s3b_sqed_side(Side side, FormVariant form, const PointS3bSqed& p,
                      double tol, Diagnostics* diag);
Complex s3b_flavored_side(Side side, FormVariant form,
                          const PointS3bFlavored& p, double tol,
                          Diagnostics* diag);
Complex s2s1_sqed_side(Side side, FormVariant form, const PointS2s1Sqed& p,
                       double tol, Diagnostics* diag);
Complex rp2s1_sqed_side(Side side, FormVariant form, const PointRp2s1Sqed& p,
                        double tol, Diagnostics* diag);
Complex s2s1_flavored_side(Side side, FormVariant form,
                           const PointS2s1Flavored& p, double tol,
                           Diagnostics* diag);

inline void merge_quadrature(Diagnostics* d, const QuadratureResult& r) {
  if (!d) return;
  d->quadrature_nodes += r.nodes_used;
  if (r.truncation_radius > d->truncation_radius) {
    d->truncation_radius = r.truncation_radius;
  }
}

}  // namespace pentagon::detail
