#include "pentagon/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <deque>
#include <limits>
#include <string>
#include <vector>

#include "internal.hpp"

namespace pentagon {
namespace {

// 48-point Gauss-Legendre rule on [-1, 1], nodes found by Newton iteration on
// the Legendre recurrence at first use.
struct GaussNodes {
  std::array<double, 48> x{};
  std::array<double, 48> w{};
  GaussNodes() {
    constexpr int n = 48;
    for (int i = 0; i < n / 2; ++i) {
      double xi = std::cos(kPi * (i + 0.75) / (n + 0.5));
      double p1 = 0.0, p0 = 0.0, dp = 0.0;
      for (int it = 0; it < 100; ++it) {
        p0 = 1.0;
        p1 = xi;
        for (int k = 2; k <= n; ++k) {
          const double p2 = ((2.0 * k - 1.0) * xi * p1 - (k - 1.0) * p0) / k;
          p0 = p1;
          p1 = p2;
        }
        dp = n * (xi * p1 - p0) / (xi * xi - 1.0);
        const double dx = p1 / dp;
        xi -= dx;
        if (std::abs(dx) < 1e-15) break;
      }
      // one more recurrence pass at the converged node for the weight
      p0 = 1.0;
      p1 = xi;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * xi * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (xi * p1 - p0) / (xi * xi - 1.0);
      const double wi = 2.0 / ((1.0 - xi * xi) * dp * dp);
      x[i] = -xi;
      w[i] = wi;
      x[n - 1 - i] = xi;
      w[n - 1 - i] = wi;
    }
  }
};

const GaussNodes& gauss48() {
  static const GaussNodes g;
  return g;
}

Complex gauss_panel(const std::function<Complex(double)>& f, double a, double b,
                    std::size_t& nodes) {
  const auto& g = gauss48();
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  Complex s(0.0, 0.0);
  for (int i = 0; i < 48; ++i) s += g.w[i] * f(mid + half * g.x[i]);
  nodes += 48;
  return half * s;
}

Complex composite(const std::function<Complex(double)>& f, double a, double b,
                  double width, std::size_t& nodes) {
  const long n = std::max(1L, static_cast<long>(std::ceil((b - a) / width)));
  const double h = (b - a) / static_cast<double>(n);
  Complex tot(0.0, 0.0);
  for (long i = 0; i < n; ++i) {
    tot += gauss_panel(f, a + i * h, a + (i + 1) * h, nodes);
  }
  return tot;
}

// Halve the panel width until two successive composite evaluations agree
// within tol (relative to max(1, |value|)).
Complex refine_to_tol(const std::function<Complex(double)>& f, double a,
                      double b, double width0, double tol, std::size_t& nodes,
                      double& est, const char* context) {
  Complex prev(0.0, 0.0);
  bool have_prev = false;
  double width = width0;
  for (int level = 0; level < 22; ++level) {
    const Complex cur = composite(f, a, b, width, nodes);
    if (!finite(cur)) {
      throw QuadratureFailure(std::string(context) +
                              ": non-finite panel sum encountered");
    }
    if (have_prev) {
      const double diff = std::abs(cur - prev);
      if (diff <= tol * std::max(1.0, std::abs(cur))) {
        est = 2.0 * diff + std::numeric_limits<double>::min();
        return cur;
      }
    }
    prev = cur;
    have_prev = true;
    width *= 0.5;
    if (nodes > 3'000'000) {
      throw QuadratureFailure(std::string(context) +
                              ": node budget exhausted before tolerance");
    }
  }
  throw QuadratureFailure(std::string(context) +
                          ": refinement stalled above tolerance");
}

double safe_abs(const Complex& v) {
  const double m = std::abs(v);
  return std::isfinite(m) ? m : 1e300;
}

}  // namespace

QuadratureResult integrate_halfline(const std::function<Complex(double)>& f,
                                    double tol, const HalflineOptions& opt) {
  QuadratureResult res;
  std::size_t nodes = 0;
  const double t0 = opt.t_min;
  double T = opt.t_max;
  double scan_extra_est = 0.0;
  if (T <= 0.0) {
    // Truncate where the integrand has decayed well below tolerance.
    double scale = 0.0;
    double t = std::max(1.0, 2.0 * t0 + 1e-3);
    bool found = false;
    for (int k = 0; k < 28; ++k) {
      const double v = safe_abs(f(t));
      ++nodes;
      scale = std::max(scale, v);
      if (v <= tol * 1e-3 * std::max(1.0, scale)) {
        T = t;
        found = true;
        break;
      }
      t *= 2.0;
    }
    if (!found) {
      throw QuadratureFailure(
          "integrate_halfline: no truncation point found; integrand does not "
          "decay within the scanned range");
    }
    scan_extra_est = tol * 0.1 * std::max(1.0, scale);
  }
  const double width0 =
      opt.panel_width > 0.0 ? opt.panel_width : std::max((T - t0) / 16.0, 1e-3);
  double est = 0.0;
  const Complex core =
      refine_to_tol(f, t0, T, width0, tol * 0.5, nodes, est, "integrate_halfline");
  res.value = core + opt.small_t;
  res.est_error = est + scan_extra_est;
  res.nodes_used = nodes;
  res.truncation_radius = T;
  return res;
}

DecayReport probe_decay(const std::function<Complex(double)>& f) {
  DecayReport rep;
  static constexpr std::array<double, 4> radii = {5.0, 10.0, 20.0, 40.0};
  static constexpr std::array<double, 3> offsets = {1.0, 1.043, 1.107};
  for (double r : radii) {
    double env = 0.0;
    for (double c : offsets) {
      env = std::max(env, safe_abs(f(r * c)));
      env = std::max(env, safe_abs(f(-r * c)));
    }
    rep.sample_radii.push_back(r);
    rep.envelope.push_back(env);
    if (env == 0.0) break;  // underflowed: sampling farther out is pointless
  }
  const auto& e = rep.envelope;
  const std::size_t n = e.size();
  if (e.back() == 0.0) {
    // Envelope fell below the double floor: decayed if it was heading down.
    rep.detected = true;
    for (std::size_t k = (n >= 3 ? n - 3 : 0); k + 1 < n; ++k) {
      if (!(e[k] > e[k + 1])) rep.detected = false;
    }
  } else if (n == 4) {
    rep.detected = e[1] > e[2] && e[2] > e[3];
  }
  // Rate from the last adjacent pair of positive envelope values.
  for (std::size_t k = n; k-- > 1;) {
    if (e[k] > 0.0 && e[k - 1] > 0.0) {
      rep.envelope_rate = (std::log(e[k - 1]) - std::log(e[k])) /
                          (rep.sample_radii[k] - rep.sample_radii[k - 1]);
      break;
    }
  }
  return rep;
}

QuadratureResult integrate_realline(const std::function<Complex(double)>& f,
                                    double tol, const ReallineOptions& opt) {
  const DecayReport rep = probe_decay(f);
  if (!rep.detected) {
    throw NoDecay(
        "integrate_realline: integrand envelope does not decay along the real "
        "line");
  }

  // Inner-scale probe anchors both the target threshold and the truncation
  // search when the envelope is already tiny at the first probe radius.
  const double s0 = std::max({safe_abs(f(0.37)), safe_abs(f(-0.41)), safe_abs(f(1.13))});
  std::vector<double> rl;
  std::vector<double> el;
  rl.push_back(0.37);
  el.push_back(s0);
  rl.insert(rl.end(), rep.sample_radii.begin(), rep.sample_radii.end());
  el.insert(el.end(), rep.envelope.begin(), rep.envelope.end());

  double emax = 0.0;
  for (double v : el) emax = std::max(emax, v);
  const double target = tol * 1e-2 * std::max(1.0, emax);

  // Classify the falloff; a stable log-log slope means a power law.
  bool powerlaw = false;
  double p23 = 0.0;
  if (rep.envelope.size() == 4 && rep.envelope[1] > 0.0 &&
      rep.envelope[2] > 0.0 && rep.envelope[3] > 0.0) {
    const double p12 = std::log(rep.envelope[1] / rep.envelope[2]) / std::log(2.0);
    p23 = std::log(rep.envelope[2] / rep.envelope[3]) / std::log(2.0);
    powerlaw = std::isfinite(p12) && std::isfinite(p23) &&
               std::abs(p23 - p12) <= 0.15 * std::max(1.0, std::abs(p23)) &&
               p23 <= 30.0;
  }

  std::size_t nodes = 0;
  double R = 0.0;
  Complex tail(0.0, 0.0);
  double tail_est = 0.0;

  if (powerlaw) {
    if (p23 <= 1.2) {
      throw NoDecay(
          "integrate_realline: power-law envelope falls off too slowly to "
          "truncate");
    }
    // Snap to a half-integer exponent when the measurement sits on one.
    double p = p23;
    const double snapped = std::round(p * 2.0) / 2.0;
    if (std::abs(p - snapped) < 0.06) p = snapped;
    R = 40.0 * opt.radius_scale;
    // Complete the tail with an even inverse-power fit per side:
    // f(z) ~ z^{-p} (c0 + c2/z^2 + c4/z^4) beyond R.
    for (const double side : {+1.0, -1.0}) {
      const std::array<double, 3> zs = {R, 1.3 * R, 1.69 * R};
      std::array<Complex, 3> g{};
      for (int i = 0; i < 3; ++i) {
        g[i] = f(side * zs[i]) * std::pow(zs[i], p);
        ++nodes;
      }
      std::array<double, 3> u{};
      for (int i = 0; i < 3; ++i) u[i] = 1.0 / (zs[i] * zs[i]);
      // 3x3 Vandermonde solve in u for (c0, c2, c4).
      const double d01 = u[0] - u[1], d02 = u[0] - u[2], d12 = u[1] - u[2];
      const Complex c4 = (g[0] / (d01 * d02) - g[1] / (d01 * d12) + g[2] / (d02 * d12));
      const Complex c2 = (g[0] - g[1]) / d01 - c4 * (u[0] + u[1]);
      const Complex c0 = g[0] - c2 * u[0] - c4 * u[0] * u[0];
      const Complex side_tail = c0 * std::pow(R, 1.0 - p) / (p - 1.0) +
                                c2 * std::pow(R, -1.0 - p) / (p + 1.0) +
                                c4 * std::pow(R, -3.0 - p) / (p + 3.0);
      tail += side_tail;
      // Residual at a control point bounds how well the fit extrapolates.
      const double zc = 1.45 * R;
      const Complex gc = f(side * zc) * std::pow(zc, p);
      ++nodes;
      const double uc = 1.0 / (zc * zc);
      const double fit_resid = std::abs(gc - (c0 + c2 * uc + c4 * uc * uc));
      tail_est += 0.05 * std::abs(c4 * std::pow(R, -3.0 - p) / (p + 3.0)) +
                  fit_resid * std::pow(R, 1.0 - p) / (p - 1.0);
    }
  } else {
    // Exponential falloff: place R where the extrapolated envelope crosses the
    // target, interpolating within the first probe interval that brackets it.
    bool placed = false;
    for (std::size_t k = 1; k < el.size(); ++k) {
      if (el[k] < target && el[k - 1] >= target && el[k - 1] > 0.0) {
        double lam = 0.0;
        if (el[k] > 0.0) {
          lam = (std::log(el[k - 1]) - std::log(el[k])) / (rl[k] - rl[k - 1]);
        }
        if (lam > 0.0) {
          R = rl[k - 1] + (std::log(el[k - 1]) - std::log(target)) / lam;
          R = std::min(std::max(R, rl[k - 1]), rl[k]);
        } else {
          R = rl[k];
        }
        placed = true;
        break;
      }
    }
    if (!placed) {
      if (el.back() < target) {
        R = rl[1];  // everything beyond the first probe radius is already tiny
      } else {
        const double lam = rep.envelope_rate;
        if (!(lam > 1e-6)) {
          throw NoDecay(
              "integrate_realline: envelope rate too small to extrapolate a "
              "truncation radius");
        }
        R = rl.back() + (std::log(el.back()) - std::log(target)) / lam;
        if (R > 2000.0) {
          throw QuadratureFailure(
              "integrate_realline: required truncation radius exceeds 2000");
        }
      }
    }
    R *= opt.radius_scale;
    // Tail estimate: envelope at R over a conservative third of the measured
    // rate (the local rate may be slower than the probe-interval average).
    const double envR = std::max(safe_abs(f(R)), safe_abs(f(-R)));
    nodes += 2;
    const double lam_safe = std::max(rep.envelope_rate / 3.0, 1e-3);
    tail_est = 3.0 * envR / lam_safe;
  }

  const double width0 = opt.panel_width > 0.0
                            ? std::min(opt.panel_width, R / 8.0)
                            : R / 8.0;
  double est = 0.0;
  const Complex core =
      refine_to_tol(f, -R, R, width0, tol * 0.5, nodes, est, "integrate_realline");

  QuadratureResult res;
  res.value = core + tail;
  res.est_error = est + tail_est;
  res.nodes_used = nodes;
  res.truncation_radius = R;
  return res;
}

QuadratureResult contour_unit_circle(
    const std::function<Complex(const Complex&)>& f, double tol) {
  const auto eval = [&f](std::size_t k, std::size_t ntot) -> Complex {
    const double th = 2.0 * kPi * static_cast<double>(k) / static_cast<double>(ntot);
    Complex v;
    try {
      v = f(std::polar(1.0, th));
    } catch (const PoleHit& e) {
      throw PoleNearContour(std::string("contour_unit_circle: ") + e.what());
    }
    if (!finite(v) || std::abs(v) > 1e14) {
      throw PoleNearContour(
          "contour_unit_circle: integrand magnitude near-singular at a node");
    }
    return v;
  };

  std::size_t n = 64;
  std::size_t nodes = 0;
  Complex sum(0.0, 0.0);
  for (std::size_t k = 0; k < n; ++k) sum += eval(k, n);
  nodes += n;
  Complex mean = sum / static_cast<double>(n);
  for (;;) {
    if (2 * n > (1u << 20)) {
      throw QuadratureFailure(
          "contour_unit_circle: node cap 2^20 reached before convergence");
    }
    // Nodes of the doubled grid at odd positions; previous nodes are reused.
    Complex odd(0.0, 0.0);
    for (std::size_t k = 1; k < 2 * n; k += 2) odd += eval(k, 2 * n);
    nodes += n;
    const Complex mean2 = 0.5 * (mean + odd / static_cast<double>(n));
    const double diff = std::abs(mean2 - mean);
    n *= 2;
    mean = mean2;
    if (diff <= tol * std::max(1.0, std::abs(mean2))) {
      QuadratureResult res;
      res.value = mean;
      res.est_error = diff + std::numeric_limits<double>::min();
      res.nodes_used = nodes;
      res.truncation_radius = 1.0;
      return res;
    }
  }
}

QuadratureResult sum_bilateral(const std::function<Complex(long)>& term,
                               double tol, const BilateralOptions& opt) {
  Complex tot = term(0);
  if (!finite(tot)) throw NoDecay("sum_bilateral: non-finite central term");
  std::size_t used = 1;
  const auto threshold = [&]() { return tol * 1e-2 * std::max(1.0, std::abs(tot)); };

  for (const long dir : {+1L, -1L}) {
    int below_streak = 0;
    std::deque<double> window;
    for (long s = 1;; ++s) {
      if (static_cast<std::size_t>(s) > opt.max_each_way) {
        throw TruncationFailure(
            "sum_bilateral: term budget exhausted before tolerance");
      }
      const Complex v = term(dir * s);
      const double av = safe_abs(v);
      if (!finite(v)) throw NoDecay("sum_bilateral: non-finite term");
      tot += v;
      ++used;
      if (av < threshold()) {
        if (++below_streak >= 3) break;
      } else {
        below_streak = 0;
      }
      window.push_back(av);
      if (window.size() > 2 * opt.probe_window) window.pop_front();
      if (window.size() == 2 * opt.probe_window) {
        double older = 0.0, recent = 0.0;
        for (std::size_t i = 0; i < opt.probe_window; ++i) {
          older = std::max(older, window[i]);
          recent = std::max(recent, window[i + opt.probe_window]);
        }
        if (recent >= older && recent > threshold()) {
          throw NoDecay("sum_bilateral: terms fail to decay across the probe window");
        }
      }
    }
  }

  QuadratureResult res;
  res.value = tot;
  res.est_error = 3.0 * threshold();
  res.nodes_used = used;
  res.truncation_radius = 0.0;
  return res;
}

namespace detail {
const std::array<double, 48>& gl48_nodes() { return gauss48().x; }
const std::array<double, 48>& gl48_weights() { return gauss48().w; }
}  // namespace detail

}  // namespace pentagon
