#include <algorithm>
#include <cmath>

#include "ident_internal.hpp"
#include "pentagon/quadrature.hpp"

// Side evaluators for the three q-series identities: a unit-circle gauge
// contour, optionally inside a bilateral flux sum, against ratios of infinite
// q-Pochhammer products. Fractional powers of fugacities are tracked in polar
// form (Fug) so products of fugacities keep additive phases; only the
// deliberately literal "as printed" readings use principal powers of (-q).

namespace pentagon::detail {

namespace {

long labs64(long v) { return v < 0 ? -v : v; }

double parity_sign(long k) { return (k % 2 == 0) ? 1.0 : -1.0; }

Complex zpow(const Complex& z, long k) {
  return std::pow(z, static_cast<double>(k));
}

// Principal branch of (-q)^e.
Complex neg_q_pow(const Nome& q, double e) {
  return std::exp(e * std::log(-q.value()));
}

// SR(zeta, B) = (q^{1 + B/2} / zeta; q)_inf / (q^{B/2} zeta; q)_inf.
Complex sr_block(const Complex& zeta, double B, const Nome& q,
                 const TruncationPolicy& pol) {
  const Complex num[] = {qpow(q, 1.0 + 0.5 * B) / zeta};
  const Complex den[] = {qpow(q, 0.5 * B) * zeta};
  return pochhammer_ratio(num, den, q, pol);
}

TruncationPolicy series_policy(double tol) {
  TruncationPolicy pol;
  pol.tol = std::min(pol.tol, 0.01 * tol);
  return pol;
}

void merge_sum(Diagnostics* d, const QuadratureResult& r) {
  if (!d) return;
  d->sum_terms += r.nodes_used;
  if (r.truncation_radius > d->truncation_radius) {
    d->truncation_radius = r.truncation_radius;
  }
}

// ---------------------------------------------------------------------------
// S^2 x S^1, SQED: bilateral monopole sum of gauge contours.

Complex s2s1_sqed_lhs_canonical(const PointS2s1Sqed& pt, const Nome& q,
                                const TruncationPolicy& pol, double tol,
                                Diagnostics* diag) {
  const Fug fa = fug_of(pt.alpha);
  const auto term = [&](long s) -> Complex {
    const long b1 = labs64(pt.m + s);
    const long b2 = labs64(pt.m - s);
    const long dl = (b1 - b2) / 2;
    const double bsum = static_cast<double>(b1 + b2);
    const Complex pref = std::pow(pt.w, static_cast<double>(s)) *
                         parity_sign(dl) * qpow(q, 0.25 * bsum) *
                         fa.pw(-0.5 * bsum);
    const auto g = [&](const Complex& z) {
      return zpow(z, pt.n - dl) *
             sr_block(pt.alpha * z, static_cast<double>(b1), q, pol) *
             sr_block(pt.alpha / z, static_cast<double>(b2), q, pol);
    };
    const QuadratureResult c = contour_unit_circle(g, tol);
    merge_quadrature(diag, c);
    return pref * c.value;
  };
  const QuadratureResult s = sum_bilateral(term, tol);
  merge_sum(diag, s);
  return s.value;
}

Complex s2s1_sqed_rhs_canonical(const PointS2s1Sqed& pt, const Nome& q,
                                const TruncationPolicy& pol) {
  const long bp = labs64(pt.m + pt.n);
  const long bm = labs64(pt.m - pt.n);
  const double sgn = parity_sign((bp + bm) / 2 + labs64(pt.m) + pt.n);
  const Fug a = fug_qpow(q, 0.25).times(fug_of(pt.alpha).inv());
  const Fug z1 = fug_qpow(q, 0.25).times(a).times(fug_of(pt.w).inv());
  const Fug z2 = fug_qpow(q, 0.25).times(a).times(fug_of(pt.w));
  const Fug z3 = fug_qpow(q, 0.5).times(a.inv()).times(a.inv());
  const auto dress = [&](const Fug& zeta, double B) {
    return qpow(q, 0.25 * B) * zeta.pw(-0.5 * B) *
           sr_block(zeta.val(), B, q, pol);
  };
  return sgn * dress(z1, static_cast<double>(bp)) *
         dress(z2, static_cast<double>(bm)) *
         dress(z3, 2.0 * static_cast<double>(labs64(pt.m)));
}

Complex s2s1_sqed_lhs_raw(const PointS2s1Sqed& pt, const Nome& q,
                          const TruncationPolicy& pol, bool zflip, double tol,
                          Diagnostics* diag) {
  const double mp = static_cast<double>(pt.m) + 0.5;  // physical flux
  const auto term = [&](long s) -> Complex {
    const double sp = 0.5 * (mp + static_cast<double>(s));
    const double sm = 0.5 * (mp - static_cast<double>(s));
    const auto g = [&](const Complex& z) {
      const Complex num = poch_shifted(z / pt.alpha, sp + 0.75, q, pol) *
                          poch_shifted(z / pt.alpha, sm + 0.75, q, pol);
      const Complex d1 = poch_shifted(pt.alpha / z, sp + 0.25, q, pol);
      const Complex d2 = zflip
                             ? poch_shifted(pt.alpha / z, sm + 0.25, q, pol)
                             : poch_shifted(pt.alpha * z, sm + 0.25, q, pol);
      return zpow(z, pt.n - s) * num / (d1 * d2);
    };
    const QuadratureResult c = contour_unit_circle(g, tol);
    merge_quadrature(diag, c);
    return parity_sign(s) * std::pow(pt.w, static_cast<double>(s)) * c.value;
  };
  const QuadratureResult s = sum_bilateral(term, tol);
  merge_sum(diag, s);
  return s.value;
}

Complex s2s1_sqed_rhs_raw(const PointS2s1Sqed& pt, const Nome& q,
                          const TruncationPolicy& pol) {
  const double mp = static_cast<double>(pt.m) + 0.5;
  const double np = 0.5 * (mp + static_cast<double>(pt.n));
  const double nm = 0.5 * (mp - static_cast<double>(pt.n));
  const Complex aw = pt.alpha * pt.w;
  const Complex num = poch_shifted(aw, np + 0.75, q, pol) *
                      poch_shifted(aw, nm + 0.75, q, pol) *
                      poch_shifted(1.0 / (pt.alpha * pt.alpha), mp + 0.5, q, pol);
  const Complex den = poch_shifted(1.0 / aw, nm + 0.25, q, pol) *
                      poch_shifted(pt.w / pt.alpha, np + 0.25, q, pol) *
                      poch_shifted(pt.alpha * pt.alpha, mp + 0.5, q, pol);
  return parity_sign(pt.n) * std::pow(pt.w, static_cast<double>(pt.n)) * num /
         den;
}

Complex s2s1_sqed_lhs_bform(const PointS2s1Sqed& pt, const Nome& q,
                            const TruncationPolicy& pol, double quarter,
                            double tol, Diagnostics* diag) {
  const double mp = static_cast<double>(pt.m) + 0.5;
  const Complex qq = qpow(q, quarter);
  const auto term = [&](long s) -> Complex {
    const double sd = static_cast<double>(s);
    const auto g = [&](const Complex& z) {
      return zpow(z, pt.n - s) *
             bfun_s2s1(mp - sd, z * qq / pt.alpha, q, pol) *
             bfun_s2s1(mp + sd, qq / (pt.alpha * z), q, pol);
    };
    const QuadratureResult c = contour_unit_circle(g, tol);
    merge_quadrature(diag, c);
    return parity_sign(s) * std::pow(pt.w, sd) * c.value;
  };
  const QuadratureResult s = sum_bilateral(term, tol);
  merge_sum(diag, s);
  return s.value;
}

Complex s2s1_sqed_rhs_bform(const PointS2s1Sqed& pt, const Nome& q,
                            const TruncationPolicy& pol, double quarter) {
  const double mp = static_cast<double>(pt.m) + 0.5;
  const double nd = static_cast<double>(pt.n);
  const Complex qq = qpow(q, quarter);
  return parity_sign(pt.n) * std::pow(pt.w, nd) *
         bfun_s2s1(mp + nd, pt.w * pt.alpha * qq, q, pol) *
         bfun_s2s1(mp - nd, pt.alpha * qq / pt.w, q, pol) *
         bfun_s2s1(mp + 0.5, qq / (pt.alpha * pt.alpha), q, pol);
}

// ---------------------------------------------------------------------------
// RP^2 x S^1, SQED: single gauge contour with a two-element holonomy sum.

Complex rp2_b3(const Fug& zeta, long mm, const Nome& q, const Nome& q2,
               const TruncationPolicy& pol) {
  const double md = static_cast<double>(mm);
  const Complex num[] = {zeta.val() * qpow(q, md + 1.0)};
  const Complex den[] = {qpow(q, md) / zeta.val()};
  return zeta.pw(-0.25 + 0.5 * md) * qpow(q, -0.125 + 0.25 * md) *
         pochhammer_ratio(num, den, q2, pol);
}

Complex rp2s1_sqed_rhs(const PointRp2s1Sqed& pt, FormVariant form,
                       const Nome& q, const Nome& q2,
                       const TruncationPolicy& pol) {
  const long st =
      labs64(form == FormVariant::RawStildeNeg ? -pt.s : pt.s_tilde);
  const Fug fa = fug_of(pt.a);
  if (form == FormVariant::BFormPrinted || form == FormVariant::BFormCanonical) {
    const Fug zi = fa.inv().times(fug_qpow(q, -0.5));  // a^{-1} q^{-1/2}
    const Fug z3 = fa.times(fa);                       // a^2
    return rp2_b3(zi, st, q, q2, pol) * rp2_b3(zi, st + 1, q, q2, pol) *
           rp2_b3(z3, 0, q, q2, pol);
  }
  const double sd = static_cast<double>(st);
  const Complex a2 = pt.a * pt.a;
  const Complex num[] = {qpow(q, 0.5 + sd) / pt.a, qpow(q, 1.5 + sd) / pt.a,
                         a2 * q.value()};
  const Complex den[] = {pt.a * qpow(q, 0.5 + sd), pt.a * qpow(q, 1.5 + sd),
                         1.0 / a2};
  return qpow(q, -0.125) * fa.pw(-0.5 - sd) *
         pochhammer_ratio(num, den, q2, pol);
}

Complex rp2s1_sqed_lhs(const PointRp2s1Sqed& pt, FormVariant form,
                       const Nome& q, const Nome& q2,
                       const TruncationPolicy& pol, double tol,
                       Diagnostics* diag) {
  const Fug fa = fug_of(pt.a);
  const Complex qsq[] = {q.value() * q.value()};
  const Complex qv[] = {q.value()};
  Complex c0 = pochhammer_ratio(qsq, qv, q2, pol);
  if (form != FormVariant::BFormPrinted) c0 *= qpow(q, 0.125);
  const auto g = [&](const Complex& z) {
    Complex sum(0.0, 0.0);
    for (long mm = 0; mm <= 1; ++mm) {
      const double md = static_cast<double>(mm);
      const Complex num[] = {pt.a * qpow(q, 1.0 + md) / z,
                             pt.a * qpow(q, 1.0 + md) * z};
      const Complex den[] = {z * qpow(q, md) / pt.a,
                             qpow(q, md) / (pt.a * z)};
      sum += fa.pw(-0.5 + md) * qpow(q, -0.25 + 0.5 * md) *
             pochhammer_ratio(num, den, q2, pol);
    }
    return zpow(z, pt.s) * sum;
  };
  const QuadratureResult c = contour_unit_circle(g, tol);
  merge_quadrature(diag, c);
  return c0 * c.value;
}

// ---------------------------------------------------------------------------
// S^2 x S^1, flavored: bilateral flux sum of gauge contours against three
// chiral-block pairs.

struct FlavoredSector {
  double em[3], en[3];
  long floors = 0;    // sum of integer floors of Ba/2 and Bb/2
  double sum_e = 0.0; // sum of all em + en
  long delta = 0;     // sum(em - en), an integer
};

FlavoredSector flavored_sector(const PointS2s1Flavored& pt, long m) {
  FlavoredSector s;
  long delta2 = 0;
  for (int i = 0; i < 3; ++i) {
    const long ba = labs64(pt.m[i] + m);
    const long bb = labs64(pt.n[i] - m);
    s.em[i] = 0.5 * static_cast<double>(ba);
    s.en[i] = 0.5 * static_cast<double>(bb);
    s.floors += ba / 2 + bb / 2;
    s.sum_e += s.em[i] + s.en[i];
    delta2 += ba - bb;
  }
  s.delta = delta2 / 2;
  return s;
}

Complex s2s1_flavored_lhs(const PointS2s1Flavored& pt, FormVariant form,
                          const Nome& q, const TruncationPolicy& pol,
                          double tol, Diagnostics* diag) {
  if (form == FormVariant::BFormPrinted) {
    // Printed triangle-block reading: flux roles of the two flavor groups
    // swapped, diagonal blocks flux-independent so hoisted out of the sum.
    Complex dblock(1.0, 0.0);
    double nd[3];
    for (int i = 0; i < 3; ++i) {
      nd[i] = 0.5 * static_cast<double>(labs64(pt.n[i] + pt.m[i]));
      const Complex ab = pt.a[i] * pt.bvec[i];
      const Complex num[] = {qpow(q, nd[i]) * ab};
      const Complex den[] = {qpow(q, 1.0 + nd[i]) / ab};
      dblock *= pochhammer_ratio(num, den, q, pol);
    }
    const auto term = [&](long m) -> Complex {
      double na[3], nb[3];
      double esum = 0.0;
      long zp2 = 0;
      Complex fug(1.0, 0.0);
      for (int i = 0; i < 3; ++i) {
        const long lna = labs64(pt.n[i] + m);
        const long lnb = labs64(pt.m[i] - m);
        na[i] = 0.5 * static_cast<double>(lna);
        nb[i] = 0.5 * static_cast<double>(lnb);
        esum += 0.5 * (na[i] + nb[i]) - 0.5 * nd[i];
        zp2 += lnb - lna;
        fug *= fug_of(pt.a[i]).pw(-na[i] + nd[i]) *
               fug_of(pt.bvec[i]).pw(-nb[i] + nd[i]);
      }
      const long zp = zp2 / 2;
      const Complex pref = neg_q_pow(q, esum) * fug * dblock;
      const auto g = [&](const Complex& z) {
        Complex num[6], den[6];
        for (int i = 0; i < 3; ++i) {
          num[2 * i] = qpow(q, 1.0 + na[i]) / (pt.a[i] * z);
          num[2 * i + 1] = qpow(q, 1.0 + nb[i]) * z / pt.bvec[i];
          den[2 * i] = qpow(q, na[i]) * pt.a[i] * z;
          den[2 * i + 1] = qpow(q, nb[i]) * pt.bvec[i] / z;
        }
        return zpow(z, zp) * pochhammer_ratio(num, den, q, pol);
      };
      const QuadratureResult c = contour_unit_circle(g, tol);
      merge_quadrature(diag, c);
      return pref * c.value;
    };
    const QuadratureResult s = sum_bilateral(term, tol);
    merge_sum(diag, s);
    return s.value;
  }

  const bool paren = form == FormVariant::RawParenLiteral;
  const bool printed_sign = form != FormVariant::BFormCanonical;
  const auto term = [&](long m) -> Complex {
    const FlavoredSector sec = flavored_sector(pt, m);
    Complex fug(1.0, 0.0);
    double en_sum = 0.0;
    for (int i = 0; i < 3; ++i) {
      fug *= fug_of(pt.a[i]).pw(-sec.em[i]) * fug_of(pt.bvec[i]).pw(-sec.en[i]);
      en_sum += sec.en[i];
    }
    Complex pref = printed_sign
                       ? neg_q_pow(q, 0.5 * sec.sum_e)
                       : parity_sign(sec.floors) * qpow(q, 0.5 * sec.sum_e);
    pref *= fug;
    if (paren) pref *= qpow(q, -en_sum);
    const auto g = [&](const Complex& z) {
      Complex num[6], den[6];
      for (int i = 0; i < 3; ++i) {
        num[2 * i] = qpow(q, 1.0 + sec.em[i]) / (pt.a[i] * z);
        num[2 * i + 1] = qpow(q, 1.0 + sec.en[i]) * z / pt.bvec[i];
        den[2 * i] = qpow(q, sec.em[i]) * pt.a[i] * z;
        den[2 * i + 1] =
            paren ? pt.bvec[i] / z : qpow(q, sec.en[i]) * pt.bvec[i] / z;
      }
      return zpow(z, -sec.delta) * pochhammer_ratio(num, den, q, pol);
    };
    const QuadratureResult c = contour_unit_circle(g, tol);
    merge_quadrature(diag, c);
    return pref * c.value;
  };
  const QuadratureResult s = sum_bilateral(term, tol);
  merge_sum(diag, s);
  return s.value;
}

// Triangle block over a product fugacity kept in polar form.
Complex bm_block(const Fug& u, long n, const Fug& v, long m, const Nome& q,
                 const TruncationPolicy& pol) {
  const double an = static_cast<double>(labs64(n));
  const double am = static_cast<double>(labs64(m));
  const double anm = static_cast<double>(labs64(n + m));
  const Fug uv = u.times(v);
  const Complex num[] = {qpow(q, 1.0 + 0.5 * an) / u.val(),
                         qpow(q, 1.0 + 0.5 * am) / v.val(),
                         qpow(q, 0.5 * anm) * uv.val()};
  const Complex den[] = {qpow(q, 0.5 * an) * u.val(),
                         qpow(q, 0.5 * am) * v.val(),
                         qpow(q, 1.0 + 0.5 * anm) / uv.val()};
  return neg_q_pow(q, 0.25 * (an + am - anm)) * u.pw(-0.5 * an + 0.5 * anm) *
         v.pw(-0.5 * am + 0.5 * anm) * pochhammer_ratio(num, den, q, pol);
}

Complex s2s1_flavored_rhs(const PointS2s1Flavored& pt, FormVariant form,
                          const Nome& q, const TruncationPolicy& pol) {
  if (form == FormVariant::BFormPrinted) {
    return bm_block(fug_of(pt.a[0]).times(fug_of(pt.bvec[1])),
                    pt.n[0] + pt.m[1],
                    fug_of(pt.a[2]).times(fug_of(pt.bvec[0])),
                    pt.n[2] + pt.m[0], q, pol) *
           bm_block(fug_of(pt.a[1]).times(fug_of(pt.bvec[0])),
                    pt.n[1] + pt.m[0],
                    fug_of(pt.a[2]).times(fug_of(pt.bvec[1])),
                    pt.n[2] + pt.m[1], q, pol);
  }
  const bool printed_sign = form != FormVariant::BFormCanonical;
  Complex rhs(1.0, 0.0);
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      const long flux = labs64(pt.m[i] + pt.n[j]);
      const double e = 0.5 * static_cast<double>(flux);
      const Complex ab = pt.a[i] * pt.bvec[j];
      const Complex num[] = {qpow(q, 1.0 + e) / ab};
      const Complex den[] = {qpow(q, e) * ab};
      const Complex pref = printed_sign
                               ? neg_q_pow(q, 0.5 * e)
                               : parity_sign(flux / 2) * qpow(q, 0.5 * e);
      rhs *= pref * fug_of(pt.a[i]).pw(-e) * fug_of(pt.bvec[j]).pw(-e) *
             pochhammer_ratio(num, den, q, pol);
    }
  }
  return rhs;
}

}  // namespace

// ---------------------------------------------------------------------------

Complex s2s1_sqed_side(Side side, FormVariant form, const PointS2s1Sqed& pt,
                       double tol, Diagnostics* diag) {
  const Nome q(pt.q);
  const TruncationPolicy pol = series_policy(tol);
  switch (form) {
    case FormVariant::BFormCanonical:
      return side == Side::LHS
                 ? s2s1_sqed_lhs_canonical(pt, q, pol, tol, diag)
                 : s2s1_sqed_rhs_canonical(pt, q, pol);
    case FormVariant::RawAsPrinted:
    case FormVariant::RawZFlip:
      return side == Side::LHS
                 ? s2s1_sqed_lhs_raw(pt, q, pol,
                                     form == FormVariant::RawZFlip, tol, diag)
                 : s2s1_sqed_rhs_raw(pt, q, pol);
    case FormVariant::BFormPrinted:
      return side == Side::LHS ? s2s1_sqed_lhs_bform(pt, q, pol, 0.25, tol, diag)
                               : s2s1_sqed_rhs_bform(pt, q, pol, 0.25);
    case FormVariant::BFormOffset:
      return side == Side::LHS
                 ? s2s1_sqed_lhs_bform(pt, q, pol, -0.25, tol, diag)
                 : s2s1_sqed_rhs_bform(pt, q, pol, -0.25);
    default:
      throw DomainError("unsupported form for this identity");
  }
}

Complex rp2s1_sqed_side(Side side, FormVariant form, const PointRp2s1Sqed& pt,
                        double tol, Diagnostics* diag) {
  const Nome q(pt.q);
  const Nome q2 = q.squared();
  const TruncationPolicy pol = series_policy(tol);
  if (side == Side::LHS) return rp2s1_sqed_lhs(pt, form, q, q2, pol, tol, diag);
  return rp2s1_sqed_rhs(pt, form, q, q2, pol);
}

Complex s2s1_flavored_side(Side side, FormVariant form,
                           const PointS2s1Flavored& pt, double tol,
                           Diagnostics* diag) {
  const Nome q(pt.q);
  const TruncationPolicy pol = series_policy(tol);
  if (side == Side::LHS) return s2s1_flavored_lhs(pt, form, q, pol, tol, diag);
  return s2s1_flavored_rhs(pt, form, q, pol);
}

}  // namespace pentagon::detail
