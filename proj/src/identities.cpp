#include "pentagon/identities.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "ident_internal.hpp"
#include "pentagon/doublesine.hpp"

namespace pentagon {

namespace {

constexpr const char* kIdentityNames[] = {
    "s3b-sqed", "s2s1-sqed", "rp2s1-sqed", "s3b-flavored", "s2s1-flavored",
};

constexpr const char* kFormNames[] = {
    "raw-printed",      "raw-zflip",     "raw-paren-literal",
    "raw-stilde-neg",   "raw-imag-contour", "bform-printed",
    "bform-offset",     "bform-canonical",
};

std::size_t identity_index(IdentityId id) { return static_cast<std::size_t>(id); }

}  // namespace

const char* identity_name(IdentityId id) {
  return kIdentityNames[identity_index(id)];
}

IdentityId identity_from_name(const std::string& name) {
  std::string low = name;
  std::transform(low.begin(), low.end(), low.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  std::replace(low.begin(), low.end(), '_', '-');
  for (std::size_t i = 0; i < 5; ++i) {
    if (low == kIdentityNames[i]) return static_cast<IdentityId>(i);
  }
  throw ParseError("unknown identity '" + name +
                   "' (expected one of s3b-sqed, s2s1-sqed, rp2s1-sqed, "
                   "s3b-flavored, s2s1-flavored)");
}

const char* form_name(FormVariant v) {
  return kFormNames[static_cast<std::size_t>(v)];
}

std::vector<FormVariant> registered_variants(IdentityId id) {
  switch (id) {
    case IdentityId::S3B_SQED:
      return {FormVariant::RawAsPrinted};
    case IdentityId::S3B_FLAVORED:
      return {FormVariant::RawAsPrinted, FormVariant::BFormCanonical,
              FormVariant::RawImagContour};
    case IdentityId::S2S1_SQED:
      return {FormVariant::BFormCanonical, FormVariant::RawAsPrinted,
              FormVariant::RawZFlip, FormVariant::BFormPrinted,
              FormVariant::BFormOffset};
    case IdentityId::RP2S1_SQED:
      return {FormVariant::RawAsPrinted, FormVariant::BFormCanonical,
              FormVariant::RawStildeNeg, FormVariant::BFormPrinted};
    case IdentityId::S2S1_FLAVORED:
      return {FormVariant::BFormCanonical, FormVariant::RawAsPrinted,
              FormVariant::RawParenLiteral, FormVariant::BFormPrinted};
  }
  throw DomainError("unknown identity id");
}

FormVariant canonical_variant(IdentityId id) {
  return registered_variants(id).front();
}

FormVariant form_from_name(const std::string& name, IdentityId id) {
  std::string low = name;
  std::transform(low.begin(), low.end(), low.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  std::replace(low.begin(), low.end(), '_', '-');
  if (low == "canonical") return canonical_variant(id);
  if (low == "raw") return FormVariant::RawAsPrinted;
  if (low == "bform") return FormVariant::BFormPrinted;
  for (std::size_t i = 0; i < 8; ++i) {
    if (low == kFormNames[i]) return static_cast<FormVariant>(i);
  }
  throw ParseError("unknown form '" + name + "'");
}

double default_tolerance(IdentityId id) {
  switch (id) {
    case IdentityId::S3B_SQED:
    case IdentityId::S3B_FLAVORED:
      return 1e-5;
    default:
      return 1e-6;
  }
}

IdentityId point_identity(const ParamPoint& p) {
  if (std::holds_alternative<PointS3bSqed>(p)) return IdentityId::S3B_SQED;
  if (std::holds_alternative<PointS2s1Sqed>(p)) return IdentityId::S2S1_SQED;
  if (std::holds_alternative<PointRp2s1Sqed>(p)) return IdentityId::RP2S1_SQED;
  if (std::holds_alternative<PointS3bFlavored>(p)) return IdentityId::S3B_FLAVORED;
  return IdentityId::S2S1_FLAVORED;
}

namespace {

void require_point_matches(IdentityId id, const ParamPoint& p) {
  if (point_identity(p) != id) {
    throw DomainError(std::string("parameter point type does not match identity ") +
                      identity_name(id));
  }
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

}  // namespace

std::vector<std::string> validate_point(IdentityId id, const ParamPoint& p) {
  require_point_matches(id, p);
  std::vector<std::string> issues;
  switch (id) {
    case IdentityId::S3B_SQED: {
      const auto& pt = std::get<PointS3bSqed>(p);
      const double q2 = (pt.b + 1.0 / pt.b).real() * 0.5;
      if (!(pt.y.imag() > 0.02)) {
        issues.push_back("Im y = " + fmt(pt.y.imag()) +
                         " too small for integrand decay (need > 0.02)");
      }
      if (pt.y.imag() > q2 - 0.05) {
        issues.push_back("Im y too close to the strip boundary");
      }
      if (std::abs(pt.y.real()) < 0.04) {
        issues.push_back("Re y = " + fmt(pt.y.real()) +
                         " too close to the pole line (need |Re y| >= 0.04)");
      }
      break;
    }
    case IdentityId::S3B_FLAVORED: {
      const auto& pt = std::get<PointS3bFlavored>(p);
      const Complex q = pt.b + 1.0 / pt.b;
      Complex sum(0.0, 0.0);
      for (int i = 0; i < 3; ++i) sum += pt.a[i] + pt.bvec[i];
      const double bal = std::abs(sum + Complex(0.0, 1.0) * q);
      if (bal > 1e-13) {
        issues.push_back("balancing violated: |sum(a)+sum(b)+iQ| = " + fmt(bal));
      }
      const double half_q = 0.5 * q.real();
      for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
          const double im = half_q + pt.a[i].imag() + pt.bvec[j].imag();
          if (std::abs(im) > half_q - 0.07) {
            issues.push_back("argument a[" + std::to_string(i) + "]+b[" +
                             std::to_string(j) +
                             "] too close to the strip boundary");
          }
        }
        if (std::abs(pt.a[i].imag()) < 0.06 || std::abs(pt.bvec[i].imag()) < 0.06) {
          issues.push_back("flavor argument too close to the real axis");
        }
      }
      break;
    }
    case IdentityId::S2S1_SQED: {
      const auto& pt = std::get<PointS2s1Sqed>(p);
      const double aq = std::abs(pt.q);
      if (!(aq > 0.0 && aq < 1.0)) {
        issues.push_back("|q| outside (0, 1)");
        break;
      }
      const double ra = std::abs(pt.alpha);
      const double lo = 1.06 * std::sqrt(aq);
      if (ra <= lo || ra >= 0.95) {
        issues.push_back("|alpha| = " + fmt(ra) +
                         " outside the two-sided convergence chamber (" +
                         fmt(lo) + ", 0.95)");
      }
      if (std::abs(std::abs(pt.w) - 1.0) > 1e-12) {
        issues.push_back("|w| must equal 1");
      }
      break;
    }
    case IdentityId::RP2S1_SQED: {
      const auto& pt = std::get<PointRp2s1Sqed>(p);
      const double aq = std::abs(pt.q);
      if (!(aq > 0.0 && aq < 1.0)) {
        issues.push_back("|q| outside (0, 1)");
        break;
      }
      const double ra = std::abs(pt.a);
      if (ra <= 1.04 || ra >= 0.96 / std::sqrt(aq)) {
        issues.push_back("|a| = " + fmt(ra) +
                         " outside the convergence box (1.04, 0.96 q^{-1/2})");
      }
      if (std::abs(std::arg(pt.a)) > 0.5 * kPi - 0.05) {
        issues.push_back("arg(a) too close to the imaginary axis");
      }
      if (pt.s_tilde != pt.s) {
        issues.push_back("dual flux differs from s");
      }
      break;
    }
    case IdentityId::S2S1_FLAVORED: {
      const auto& pt = std::get<PointS2s1Flavored>(p);
      const double aq = std::abs(pt.q);
      if (!(aq > 0.0 && aq < 1.0)) {
        issues.push_back("|q| outside (0, 1)");
        break;
      }
      Complex pa(1.0, 0.0), pb(1.0, 0.0);
      long sn = 0, sm = 0;
      for (int i = 0; i < 3; ++i) {
        pa *= pt.a[i];
        pb *= pt.bvec[i];
        sn += pt.n[i];
        sm += pt.m[i];
      }
      const Complex root = std::sqrt(pt.q);
      if (std::abs(pa - root) > 1e-13 * std::max(1.0, std::abs(root))) {
        issues.push_back("balancing violated: |prod(a) - q^{1/2}| = " +
                         fmt(std::abs(pa - root)));
      }
      if (std::abs(pb - root) > 1e-13 * std::max(1.0, std::abs(root))) {
        issues.push_back("balancing violated: |prod(b) - q^{1/2}| = " +
                         fmt(std::abs(pb - root)));
      }
      if (sn != 0) issues.push_back("flux balancing violated: sum(n) != 0");
      if (sm != 0) issues.push_back("flux balancing violated: sum(m) != 0");
      for (int i = 0; i < 3; ++i) {
        const double r1 = std::abs(pt.a[i]), r2 = std::abs(pt.bvec[i]);
        if (r1 < 0.2 || r1 > 0.94 || r2 < 0.2 || r2 > 0.94) {
          issues.push_back("fugacity modulus outside the contour-validity band (0.2, 0.94)");
        }
      }
      break;
    }
  }
  return issues;
}

Complex bfun_s3b(const Complex& x, const Complex& y,
                 const SquashingParameter& b, double tol) {
  const Complex iq2 = 0.5i * b.Q();
  return sb(x + iq2, b, SbMethod::Auto, tol) * sb(y + iq2, b, SbMethod::Auto, tol) /
         sb(x + y + iq2, b, SbMethod::Auto, tol);
}

Complex bfun_s2s1(double m, const Complex& z, const Nome& q,
                  const TruncationPolicy& pol) {
  if (std::abs(z) == 0.0) throw DomainError("bfun_s2s1: z must be nonzero");
  return detail::poch_shifted(z, 0.5 * m + 0.5, q, pol) /
         detail::poch_shifted(1.0 / z, 0.5 * m, q, pol);
}

Complex bfun_rp2(const Complex& z, long m, const Nome& q, Diagnostics* diag,
                 const TruncationPolicy& pol) {
  if (m < 0) throw DomainError("bfun_rp2: flux label must be non-negative");
  if (std::abs(z) == 0.0) throw DomainError("bfun_rp2: z must be nonzero");
  if (diag && std::abs(std::arg(z)) > kPi - 0.1) {
    diag->warnings.push_back(
        "bfun_rp2: argument within 0.1 of the principal branch cut "
        "(quarter power is branch-ambiguous)");
  }
  const Nome q2 = q.squared();
  const double md = static_cast<double>(m);
  const Complex num[] = {z * qpow(q, md + 1.0)};
  const Complex den[] = {qpow(q, md) / z};
  return fug_pow(z, -0.25 + 0.5 * md) * qpow(q, -0.125 + 0.25 * md) *
         pochhammer_ratio(num, den, q2, pol);
}

Complex bfun_flavored(const Complex& a, long n, const Complex& b, long m,
                      const Nome& q, const TruncationPolicy& pol) {
  if (std::abs(a) == 0.0 || std::abs(b) == 0.0) {
    throw DomainError("bfun_flavored: fugacities must be nonzero");
  }
  const double an = std::abs(static_cast<double>(n));
  const double am = std::abs(static_cast<double>(m));
  const double anm = std::abs(static_cast<double>(n + m));
  const double e = 0.25 * (an + am - anm);
  const Complex phase = std::exp(e * std::log(-q.value()));  // principal branch
  const Complex fug = fug_pow(a, -0.5 * an + 0.5 * anm) *
                      fug_pow(b, -0.5 * am + 0.5 * anm);
  const Complex ab = a * b;
  const Complex num[] = {qpow(q, 1.0 + 0.5 * an) / a,
                         qpow(q, 1.0 + 0.5 * am) / b,
                         qpow(q, 0.5 * anm) * ab};
  const Complex den[] = {qpow(q, 0.5 * an) * a, qpow(q, 0.5 * am) * b,
                         qpow(q, 1.0 + 0.5 * anm) / ab};
  return phase * fug * pochhammer_ratio(num, den, q, pol);
}

Complex evaluate_side(IdentityId id, Side side, FormVariant form,
                      const ParamPoint& p, double tol, Diagnostics* diag) {
  require_point_matches(id, p);
  const auto reg = registered_variants(id);
  if (std::find(reg.begin(), reg.end(), form) == reg.end()) {
    throw DomainError(std::string("form '") + form_name(form) +
                      "' is not registered for identity " + identity_name(id));
  }
  switch (id) {
    case IdentityId::S3B_SQED:
      return detail::s3b_sqed_side(side, form, std::get<PointS3bSqed>(p), tol, diag);
    case IdentityId::S3B_FLAVORED:
      return detail::s3b_flavored_side(side, form, std::get<PointS3bFlavored>(p),
                                       tol, diag);
    case IdentityId::S2S1_SQED:
      return detail::s2s1_sqed_side(side, form, std::get<PointS2s1Sqed>(p), tol,
                                    diag);
    case IdentityId::RP2S1_SQED:
      return detail::rp2s1_sqed_side(side, form, std::get<PointRp2s1Sqed>(p),
                                     tol, diag);
    case IdentityId::S2S1_FLAVORED:
      return detail::s2s1_flavored_side(side, form,
                                        std::get<PointS2s1Flavored>(p), tol, diag);
  }
  throw DomainError("unknown identity id");
}

namespace {

struct Rng {
  std::mt19937_64 g;
  explicit Rng(IdentityId id, std::uint64_t seed)
      : g(seed * 0x9E3779B97F4A7C15ULL ^
          (static_cast<std::uint64_t>(identity_index(id)) * 0xD1B54A32D192ED03ULL +
           0x94D049BB133111EBULL)) {}
  double u01() { return static_cast<double>(g() >> 11) * 0x1.0p-53; }
  double uni(double lo, double hi) { return lo + (hi - lo) * u01(); }
  long uint_in(long lo, long hi) {  // inclusive
    const long span = hi - lo + 1;
    return lo + static_cast<long>(std::min<double>(u01() * span, span - 1));
  }
};

}  // namespace

ParamPoint sample_point(IdentityId id, std::uint64_t seed) {
  Rng rng(id, seed);
  for (int attempt = 0; attempt < 100; ++attempt) {
    switch (id) {
      case IdentityId::S3B_SQED: {
        PointS3bSqed pt;
        pt.b = Complex(rng.uni(0.7, 1.4), 0.0);
        const double sign = rng.u01() < 0.5 ? -1.0 : 1.0;
        pt.y = Complex(sign * rng.uni(0.05, 0.4), rng.uni(0.08, 0.35));
        if (!validate_point(id, pt).empty()) continue;
        return pt;
      }
      case IdentityId::S3B_FLAVORED: {
        PointS3bFlavored pt;
        pt.b = Complex(rng.uni(0.7, 1.4), 0.0);
        const double q = (pt.b + 1.0 / pt.b).real();
        double sum_im_a = 0.0, sum_re = 0.0;
        for (int i = 0; i < 3; ++i) {
          pt.a[i] = Complex(rng.uni(-0.35, 0.35), -rng.uni(0.18, 0.55));
          sum_im_a += pt.a[i].imag();
          sum_re += pt.a[i].real();
        }
        const double base = (-q - sum_im_a) / 3.0;
        const double d1 = rng.uni(-0.08, 0.08);
        const double d2 = rng.uni(-0.08, 0.08);
        const double re1 = rng.uni(-0.35, 0.35);
        const double re2 = rng.uni(-0.35, 0.35);
        pt.bvec[0] = Complex(re1, base + d1);
        pt.bvec[1] = Complex(re2, base + d2);
        pt.bvec[2] = Complex(-sum_re - re1 - re2, base - d1 - d2);
        if (std::abs(pt.bvec[2].real()) > 0.8) continue;
        bool ok = true;
        for (int i = 0; i < 3; ++i) {
          if (pt.bvec[i].imag() > -0.18 || pt.bvec[i].imag() < -0.75) ok = false;
        }
        if (!ok || !validate_point(id, pt).empty()) continue;
        return pt;
      }
      case IdentityId::S2S1_SQED: {
        PointS2s1Sqed pt;
        const double q = rng.uni(0.1, 0.6);
        pt.q = Complex(q, 0.0);
        const double lo = 1.12 * std::sqrt(q);
        const double hi = 0.94;
        pt.alpha = std::polar(rng.uni(lo, hi), rng.uni(-2.2, 2.2));
        pt.w = std::polar(1.0, rng.uni(-3.0, 3.0));
        pt.m = rng.uint_in(-2, 2);
        pt.n = rng.uint_in(-2, 2);
        if (!validate_point(id, pt).empty()) continue;
        return pt;
      }
      case IdentityId::RP2S1_SQED: {
        PointRp2s1Sqed pt;
        const double q = rng.uni(0.1, 0.6);
        pt.q = Complex(q, 0.0);
        const double hi = 0.95 / std::sqrt(q);
        pt.a = std::polar(rng.uni(1.05, std::min(hi, 2.2)),
                          rng.uni(-0.5 * kPi + 0.1, 0.5 * kPi - 0.1));
        pt.s = rng.uint_in(-2, 2);
        pt.s_tilde = pt.s;
        if (!validate_point(id, pt).empty()) continue;
        return pt;
      }
      case IdentityId::S2S1_FLAVORED: {
        PointS2s1Flavored pt;
        const double q = rng.uni(0.1, 0.6);
        pt.q = Complex(q, 0.0);
        const double scale = std::pow(q, 1.0 / 6.0);
        const double lo = 0.55 * scale;
        const double hi = std::min(0.93, 1.8 * scale);
        const double rootq = std::sqrt(q);
        bool ok = true;
        for (auto* side : {&pt.a, &pt.bvec}) {
          const double r1 = rng.uni(lo, hi), r2 = rng.uni(lo, hi);
          const double th1 = rng.uni(-2.2, 2.2), th2 = rng.uni(-2.2, 2.2);
          const double r3 = rootq / (r1 * r2);
          const double th3 = -(th1 + th2);
          if (r3 < std::max(lo, 0.21) || r3 > hi || std::abs(th3) > kPi - 0.05) {
            ok = false;
            break;
          }
          (*side)[0] = std::polar(r1, th1);
          (*side)[1] = std::polar(r2, th2);
          (*side)[2] = std::polar(r3, th3);
        }
        if (!ok) continue;
        for (auto* flux : {&pt.n, &pt.m}) {
          (*flux)[0] = rng.uint_in(-2, 2);
          (*flux)[1] = rng.uint_in(-2, 2);
          (*flux)[2] = -(*flux)[0] - (*flux)[1];
        }
        if (std::abs(pt.n[2]) > 2 || std::abs(pt.m[2]) > 2) continue;
        if (!validate_point(id, pt).empty()) continue;
        return pt;
      }
    }
  }
  throw SamplerExhausted(std::string("sample_point: no admissible point for ") +
                         identity_name(id) + " within 100 attempts");
}

int balance_condition_count(IdentityId id) {
  switch (id) {
    case IdentityId::S3B_FLAVORED:
      return 1;
    case IdentityId::S2S1_FLAVORED:
      return 2;
    default:
      return 0;
  }
}

ParamPoint perturb_balance(const ParamPoint& p, double eps, int which) {
  const IdentityId id = point_identity(p);
  if (which < 0 || which >= balance_condition_count(id)) {
    throw DomainError(std::string("perturb_balance: identity ") +
                      identity_name(id) + " has no balancing condition #" +
                      std::to_string(which));
  }
  ParamPoint out = p;
  if (id == IdentityId::S3B_FLAVORED) {
    std::get<PointS3bFlavored>(out).a[0] += eps;  // real shift off the surface
  } else {
    auto& pt = std::get<PointS2s1Flavored>(out);
    if (which == 0) {
      pt.a[0] *= std::polar(1.0, eps);  // phase rotation off prod(a) = q^{1/2}
    } else {
      pt.bvec[0] *= std::polar(1.0, eps);
    }
  }
  return out;
}

VerificationReport verify(IdentityId id, const ParamPoint& p, FormVariant form,
                          double tol) {
  require_point_matches(id, p);
  VerificationReport rep;
  rep.identity = id;
  rep.form = form;
  rep.point = p;
  rep.tolerance = tol;
  rep.diagnostics.warnings = validate_point(id, p);
  const double inner = std::max(tol / 100.0, 5e-15);
  rep.lhs = evaluate_side(id, Side::LHS, form, p, inner, &rep.diagnostics);
  rep.rhs = evaluate_side(id, Side::RHS, form, p, inner, &rep.diagnostics);
  rep.abs_residual = std::abs(rep.lhs - rep.rhs);
  const double denom = std::max(std::abs(rep.lhs), std::abs(rep.rhs));
  rep.rel_residual = denom > 0.0 ? rep.abs_residual / denom : 0.0;
  rep.passed = std::isfinite(rep.rel_residual) && rep.rel_residual < tol;
  return rep;
}

std::vector<VariantResult> variant_scan(IdentityId id,
                                        const std::vector<ParamPoint>& points,
                                        double tol) {
  if (points.size() < 3) {
    throw DomainError("variant_scan requires at least 3 points");
  }
  std::vector<VariantResult> results;
  for (const FormVariant v : registered_variants(id)) {
    VariantResult r;
    r.form = v;
    r.evaluated = true;
    for (const ParamPoint& p : points) {
      try {
        const VerificationReport rep = verify(id, p, v, tol);
        r.worst_rel = std::max(r.worst_rel, rep.rel_residual);
        if (!std::isfinite(rep.rel_residual)) {
          r.evaluated = false;
          r.error_kind = "NonFinite";
          r.error_message = "evaluation produced a non-finite value";
          break;
        }
      } catch (const Error& e) {
        r.evaluated = false;
        r.error_kind = e.kind();
        r.error_message = e.what();
        break;
      }
    }
    results.push_back(std::move(r));
  }
  std::stable_sort(results.begin(), results.end(),
                   [](const VariantResult& a, const VariantResult& b) {
                     if (a.evaluated != b.evaluated) return a.evaluated;
                     if (!a.evaluated) return false;
                     return a.worst_rel < b.worst_rel;
                   });
  if (!results.empty() && results.front().evaluated &&
      results.front().worst_rel < tol) {
    results.front().canonical = true;
  }
  return results;
}

namespace detail {

Complex poch_shifted(const Complex& x, double c, const Nome& q,
                     const TruncationPolicy& pol) {
  if (c >= 0.0) return pochhammer_inf(x * qpow(q, c), q, pol);
  const long k = static_cast<long>(std::ceil(-c));
  Complex pre(1.0, 0.0);
  for (long j = 0; j < k; ++j) {
    pre *= (Complex(1.0, 0.0) - x * qpow(q, c + static_cast<double>(j)));
  }
  return pre * pochhammer_inf(x * qpow(q, c + static_cast<double>(k)), q, pol);
}

}  // namespace detail

}  // namespace pentagon
