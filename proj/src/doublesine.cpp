#include "pentagon/doublesine.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "internal.hpp"
#include "pentagon/quadrature.hpp"

namespace pentagon {

namespace detail {

Complex sinc_m1(const Complex& w) {
  if (std::abs(w) < 0.6) {
    const Complex w2 = w * w;
    return w2 * (-1.0 / 6.0 +
                 w2 * (1.0 / 120.0 +
                       w2 * (-1.0 / 5040.0 +
                             w2 * (1.0 / 362880.0 +
                                   w2 * (-1.0 / 39916800.0 +
                                         w2 * (1.0 / 6227020800.0))))));
  }
  return std::sin(w) / w - 1.0;
}

Complex sinhc_m1(const Complex& w) {
  if (std::abs(w) < 0.6) {
    const Complex w2 = w * w;
    return w2 * (1.0 / 6.0 +
                 w2 * (1.0 / 120.0 +
                       w2 * (1.0 / 5040.0 +
                             w2 * (1.0 / 362880.0 +
                                   w2 * (1.0 / 39916800.0 +
                                         w2 * (1.0 / 6227020800.0))))));
  }
  return std::sinh(w) / w - 1.0;
}

}  // namespace detail

namespace {

// sB(t) - 1 with sB = (sinh(bt)/(bt)) (sinh(t/b)/(t/b)), assembled from the
// two small increments so no leading 1 is ever subtracted.
Complex small_t_dB(const Complex& b, double t) {
  const Complex da = detail::sinhc_m1(b * t);
  const Complex db = detail::sinhc_m1(t / b);
  return da + db + da * db;
}

// Integrand of I(x) on (0, 1]: the bracket form of
//   sin(2xt) / (2 sinh(bt) sinh(t/b)) - x/t^2
// that stays fully cancellation-free as t -> 0.
Complex bracket_term(const Complex& x, const Complex& dB, double t) {
  const Complex dA = detail::sinc_m1(2.0 * x * t);
  return (x / (t * t)) * (dA - dB) / (1.0 + dB);
}

// Same integrand on [1, T): exponential form whose factors stay bounded for
// any in-strip x, however small the decay rate.
Complex osc_term(const Complex& x, const Complex& b, const Complex& Q,
                 double t) {
  const Complex e1 = std::exp((2.0i * x - Q) * t);
  const Complex e2 = std::exp((-2.0i * x - Q) * t);
  const Complex den = 1.0i * t * (1.0 - std::exp(-2.0 * b * t)) *
                      (1.0 - std::exp(-2.0 * t / b));
  return (e1 - e2) / den - x / (t * t);
}

// Keep at most ~6 wavelengths of sin(2xt) per 48-node panel.
double panel_width_for(double abs_re_x) {
  return std::min(3.0, 18.8 / std::max(1.0, 2.0 * abs_re_x));
}

Complex log_phase_constant(const SquashingParameter& bb) {
  const Complex b2 = bb.b() * bb.b();
  return 1.0i * kPi * (b2 + 1.0 / b2) / 24.0;
}

}  // namespace

Complex phase_constant(const SquashingParameter& bb) {
  return std::exp(log_phase_constant(bb));
}

Complex sb_integral(const Complex& x, const SquashingParameter& bb,
                    double tol) {
  if (!finite(x)) throw DomainError("sb_integral: non-finite argument");
  const Complex b = bb.b();
  const Complex Q = bb.Q();
  const double rate = Q.real() - 2.0 * std::abs(x.imag());
  if (rate < 2e-3) {
    throw StripViolation(
        "sb_integral: |Im x| exceeds Re(Q)/2 - 1e-3, outside the strip of the "
        "integral representation");
  }
  if (x == Complex(0.0, 0.0)) return Complex(1.0, 0.0);
  const double T = 1.0 + 38.0 / rate;
  const double w_osc = panel_width_for(std::abs(x.real()));

  HalflineOptions o1;
  o1.t_min = 0.0;
  o1.t_max = 1.0;
  o1.panel_width = std::min(0.5, w_osc);
  HalflineOptions o2;
  o2.t_min = 1.0;
  o2.t_max = T;
  o2.panel_width = w_osc;

  const auto f1 = [&](double t) { return bracket_term(x, small_t_dB(b, t), t); };
  const auto f2 = [&](double t) { return osc_term(x, b, Q, t); };
  // Beyond T the oscillatory part is below e^{-38}; the subtracted x/t^2 has
  // the exact tail -x/T.
  const Complex I = integrate_halfline(f1, tol * 0.4, o1).value +
                    integrate_halfline(f2, tol * 0.4, o2).value - x / T;
  return std::exp(-1.0i * I);
}

Complex sb_product(const Complex& x, const SquashingParameter& bb,
                   const TruncationPolicy& pol) {
  if (!finite(x)) throw DomainError("sb_product: non-finite argument");
  if (!bb.product_allowed()) {
    throw DomainError(
        "sb_product: product representation requires Im(b^2) > 0");
  }
  const Complex b = bb.b();
  const Complex b2 = b * b;
  const Nome q1(std::exp(2.0i * kPi * b2));
  const Nome q2(std::exp(-2.0i * kPi / b2));
  const Complex E1 = std::exp(1.0i * kPi * b2);
  const Complex E2 = std::exp(-1.0i * kPi / b2);
  const Complex num_arg = -std::exp(2.0 * kPi * b * x) * E1;
  const Complex den_arg = -std::exp(2.0 * kPi * x / b) * E2;
  const auto pn = detail::pochhammer_inf_parts(num_arg, q1, pol, nullptr);
  const auto pd = detail::pochhammer_inf_parts(den_arg, q2, pol, nullptr);
  return std::exp(-0.5i * kPi * x * x + pn.logpart - pd.logpart) *
         (pn.mantissa / pd.mantissa);
}

Complex sb(const Complex& x, const SquashingParameter& bb, SbMethod method,
           double tol) {
  if (!finite(x)) throw DomainError("sb: non-finite argument");
  const bool product_ready =
      bb.product_allowed() && (bb.b() * bb.b()).imag() >= 0.05;
  if (method == SbMethod::Product ||
      (method == SbMethod::Auto && product_ready)) {
    if (!bb.product_allowed()) {
      throw DomainError("sb: product method requires Im(b^2) > 0");
    }
    TruncationPolicy pol;
    pol.tol = std::min(1e-14, tol);
    return sb_product(x, bb, pol) / phase_constant(bb);
  }

  // Integral path: first march the argument into the strip with the shift
  // recursion, then evaluate the integral representation.
  const Complex b = bb.b();
  const double half_q = 0.5 * bb.Q().real();
  const Complex ib = 1.0i * b;
  Complex w = x;
  Complex num(1.0, 0.0), den(1.0, 0.0);
  int rungs = 0;
  while (std::abs(w.imag()) > half_q - 0.05) {
    if (++rungs > 200) {
      throw DomainError("sb: shift recursion exceeded 200 steps");
    }
    if (w.imag() < 0.0) {
      const Complex c = 2.0 * std::cosh(kPi * b * (w + 0.5 * ib));
      if (std::abs(c) < 1e-10) {
        throw PoleHit("sb: shift recursion factor vanishes (argument at a zero)");
      }
      num *= c;
      w += ib;
    } else {
      const Complex c = 2.0 * std::cosh(kPi * b * (w - 0.5 * ib));
      if (std::abs(c) < 1e-10) {
        throw PoleHit("sb: shift recursion hit a pole of the function");
      }
      den *= c;
      w -= ib;
    }
  }
  return (num / den) * sb_integral(w, bb, tol);
}

namespace detail {

SbLineEvaluator::SbLineEvaluator(const SquashingParameter& b, double max_im,
                                 double max_re, double tol)
    : b_(b), tol_(tol), max_im_(std::abs(max_im)), max_re_(std::abs(max_re)) {
  const double rate = b_.Q().real() - 2.0 * max_im_;
  if (rate < 0.12) {
    throw QuadratureFailure(
        "SbLineEvaluator: strip margin too small (decay rate below 0.12)");
  }
  T_ = 1.0 + 38.0 / rate;
  if ((b_.Q().real() - rate) * T_ > 690.0) {
    throw QuadratureFailure(
        "SbLineEvaluator: exponent range exceeds double capacity");
  }
  real_b_ = (b_.b().imag() == 0.0);
  cutoff_ = real_b_ ? 10.0 : std::numeric_limits<double>::infinity();
  logC_ = log_phase_constant(b_);
  grid_ = make_grid(1.0);

  // Self-check against a doubled-density grid at three probe arguments.
  const Grid fine = make_grid(2.0);
  const double xr = std::min(max_re_, 9.5);
  const Complex probes[3] = {
      Complex(0.31 * xr, 0.80 * max_im_),
      Complex(-0.77 * xr, -0.55 * max_im_),
      Complex(0.93 * xr, 0.20 * max_im_),
  };
  for (const Complex& p : probes) {
    const Complex v1 = quad_eval(grid_, p);
    const Complex v2 = quad_eval(fine, p);
    const double rel =
        std::abs(v1 - v2) / std::max({std::abs(v1), std::abs(v2), 1e-300});
    if (!(rel < std::max(tol_, 1e-11))) {
      throw QuadratureFailure("SbLineEvaluator: grid self-check failed");
    }
  }
}

SbLineEvaluator::Grid SbLineEvaluator::make_grid(double density) const {
  const auto& gx = gl48_nodes();
  const auto& gw = gl48_weights();
  const Complex b = b_.b();
  const Complex Q = b_.Q();
  Grid g;

  const double w_osc = panel_width_for(std::min(max_re_, cutoff_)) / density;

  const auto fill = [&](double a, double bnd, double width,
                        std::vector<double>& ts, std::vector<double>& ws) {
    const long n = std::max(1L, static_cast<long>(std::ceil((bnd - a) / width)));
    const double h = (bnd - a) / static_cast<double>(n);
    for (long i = 0; i < n; ++i) {
      const double mid = a + (i + 0.5) * h;
      for (int j = 0; j < 48; ++j) {
        ts.push_back(mid + 0.5 * h * gx[j]);
        ws.push_back(0.5 * h * gw[j]);
      }
    }
  };

  fill(0.0, 1.0, std::min(0.5, w_osc), g.t0, g.w0);
  g.dB.reserve(g.t0.size());
  for (double t : g.t0) g.dB.push_back(small_t_dB(b, t));

  fill(1.0, T_, w_osc, g.t1, g.w1);
  g.G.reserve(g.t1.size());
  for (double t : g.t1) {
    // 1 / (2 sinh(bt) sinh(t/b)) in overflow-free exponential form.
    g.G.push_back(2.0 * std::exp(-Q * t) /
                  ((1.0 - std::exp(-2.0 * b * t)) *
                   (1.0 - std::exp(-2.0 * t / b))));
  }
  return g;
}

Complex SbLineEvaluator::quad_eval(const Grid& g, const Complex& x) const {
  Complex I(0.0, 0.0);
  for (std::size_t k = 0; k < g.t0.size(); ++k) {
    const double t = g.t0[k];
    const Complex dA = sinc_m1(2.0 * x * t);
    I += g.w0[k] * (x / (t * t)) * ((dA - g.dB[k]) / (1.0 + g.dB[k]));
  }
  // The oscillatory factor is integrated numerically; the subtracted x/t^2 has
  // the closed form integral x (1 - 1/T) over [1, T].
  Complex osc(0.0, 0.0);
  for (std::size_t k = 0; k < g.t1.size(); ++k) {
    osc += g.w1[k] * std::sin(2.0 * x * g.t1[k]) * g.G[k];
  }
  I += osc - x * (1.0 - 1.0 / T_);
  I += -x / T_;  // analytic tail of the subtraction beyond T
  return std::exp(-1.0i * I);
}

Complex SbLineEvaluator::operator()(const Complex& x) const {
  if (std::abs(x.imag()) > max_im_ + 1e-9) {
    throw StripViolation(
        "SbLineEvaluator: argument outside the prepared strip");
  }
  if (x == Complex(0.0, 0.0)) return Complex(1.0, 0.0);
  if (real_b_ && std::abs(x.real()) >= cutoff_) {
    const double sgn = x.real() > 0.0 ? 1.0 : -1.0;
    return std::exp(sgn * (0.5i * kPi * x * x + logC_));
  }
  return quad_eval(grid_, x);
}

}  // namespace detail

}  // namespace pentagon
