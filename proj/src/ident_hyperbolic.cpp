#include <algorithm>
#include <cmath>
#include <vector>

#include "ident_internal.hpp"
#include "internal.hpp"
#include "pentagon/doublesine.hpp"
#include "pentagon/quadrature.hpp"

// Side evaluators for the two identities built from the non-compact double
// sine: a gauge integral over the real line against products of sb factors
// whose arguments all live on a handful of fixed horizontal lines. Each line
// gets one SbLineEvaluator so the t-grid work is shared across the whole
// contour.

namespace pentagon::detail {

namespace {

// Probe offsets reach 1.107 * 40; keep the evaluators valid out to there.
constexpr double kLineReach = 45.5;

}  // namespace

Complex s3b_sqed_side(Side side, FormVariant /*form*/, const PointS3bSqed& pt,
                      double tol, Diagnostics* diag) {
  const SquashingParameter b(pt.b);
  const Complex iq2 = 0.5i * b.Q();
  if (side == Side::RHS) {
    const Complex r1 = sb(2.0 * pt.y - iq2, b, SbMethod::Auto, tol);
    const Complex r2 = sb(iq2 - pt.y, b, SbMethod::Auto, tol);
    return r1 * r2 * r2;
  }
  const double max_im = std::abs(pt.y.imag());
  const double max_re = std::abs(pt.y.real()) + kLineReach;
  const SbLineEvaluator ev(b, max_im, max_re, tol);
  const auto f = [&](double z) { return ev(pt.y - z) * ev(pt.y + z); };
  const QuadratureResult qr = integrate_realline(f, tol);
  merge_quadrature(diag, qr);
  return qr.value;
}

Complex s3b_flavored_side(Side side, FormVariant form,
                          const PointS3bFlavored& pt, double tol,
                          Diagnostics* diag) {
  const SquashingParameter b(pt.b);
  const Complex iq2 = 0.5i * b.Q();

  if (side == Side::RHS) {
    if (form == FormVariant::BFormCanonical) {
      // Triangle-block pairing; the diagonal factors moved to the left side.
      return bfun_s3b(pt.a[1] + pt.bvec[0], pt.a[2] + pt.bvec[1], b, tol) *
             bfun_s3b(pt.a[0] + pt.bvec[1], pt.a[2] + pt.bvec[0], b, tol);
    }
    Complex prod(1.0, 0.0);
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        prod *= sb(iq2 + pt.a[i] + pt.bvec[j], b, SbMethod::Auto, tol);
      }
    }
    return prod;
  }

  if (form == FormVariant::RawImagContour) {
    // Contour rotated onto the imaginary axis, z = i u. The sb factors are
    // then evaluated far outside the strip through the shift recursion; the
    // envelope does not decay, which the real-line integrator is expected to
    // report as NoDecay.
    const auto f = [&](double u) {
      Complex prod(0.0, 1.0);  // dz = i du
      for (int i = 0; i < 3; ++i) {
        prod *= sb(iq2 + pt.a[i] + Complex(0.0, u), b, SbMethod::Auto, tol);
        prod *= sb(iq2 + pt.bvec[i] - Complex(0.0, u), b, SbMethod::Auto, tol);
      }
      return prod;
    };
    const QuadratureResult qr = integrate_realline(f, tol);
    merge_quadrature(diag, qr);
    return qr.value;
  }

  // One evaluator per horizontal line Im = Q/2 + Im a_i (arguments a_i +- z)
  // and Im = Q/2 + Im b_i.
  std::vector<SbLineEvaluator> eva, evb;
  eva.reserve(3);
  evb.reserve(3);
  double re_max = 0.0;
  for (int i = 0; i < 3; ++i) {
    re_max = std::max({re_max, std::abs(pt.a[i].real()),
                       std::abs(pt.bvec[i].real())});
  }
  const double half_q = 0.5 * b.Q().real();
  for (int i = 0; i < 3; ++i) {
    eva.emplace_back(b, std::abs(half_q + pt.a[i].imag()),
                     re_max + kLineReach, tol);
    evb.emplace_back(b, std::abs(half_q + pt.bvec[i].imag()),
                     re_max + kLineReach, tol);
  }

  if (form == FormVariant::BFormCanonical) {
    Complex invdiag(1.0, 0.0);
    for (int i = 0; i < 3; ++i) {
      invdiag /= sb(iq2 + pt.a[i] + pt.bvec[i], b, SbMethod::Auto, tol);
    }
    const auto f = [&](double z) {
      Complex prod(1.0, 0.0);
      for (int i = 0; i < 3; ++i) {
        prod *= eva[i](iq2 + pt.a[i] - z) * evb[i](iq2 + pt.bvec[i] + z);
      }
      return prod;
    };
    const QuadratureResult qr = integrate_realline(f, tol);
    merge_quadrature(diag, qr);
    return invdiag * qr.value;
  }

  const auto f = [&](double z) {
    Complex prod(1.0, 0.0);
    for (int i = 0; i < 3; ++i) {
      prod *= eva[i](iq2 + pt.a[i] + z) * evb[i](iq2 + pt.bvec[i] - z);
    }
    return prod;
  };
  const QuadratureResult qr = integrate_realline(f, tol);
  merge_quadrature(diag, qr);
  return qr.value;
}

}  // namespace pentagon::detail
