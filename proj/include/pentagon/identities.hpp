#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "pentagon/qseries.hpp"
#include "pentagon/types.hpp"

namespace pentagon {

enum class IdentityId {
  S3B_SQED,
  S2S1_SQED,
  RP2S1_SQED,
  S3B_FLAVORED,
  S2S1_FLAVORED,
};

enum class Side { LHS, RHS };

// Algebraic readings of each identity. RawAsPrinted is the plain chiral-block
// form; BForm* are the triangle-block rewrites; the remaining entries are
// nearby mis-readings kept on purpose so a scan can tell which reading the
// numbers actually support.
enum class FormVariant {
  RawAsPrinted,
  RawZFlip,         // z -> 1/z in the second chiral denominator (S2S1_SQED)
  RawParenLiteral,  // denominator scalar q^e left outside the product (S2S1_FLAVORED)
  RawStildeNeg,     // opposite sign convention for the dual flux (RP2S1_SQED)
  RawImagContour,   // integration along the imaginary axis (S3B_FLAVORED)
  BFormPrinted,
  BFormOffset,      // q^{1/4} -> q^{-1/4} in every triangle-block argument (S2S1_SQED)
  BFormCanonical,
};

const char* identity_name(IdentityId id);
IdentityId identity_from_name(const std::string& name);
const char* form_name(FormVariant v);
// Resolves a CLI form name; "canonical" and "raw" map through the registry of
// the given identity.
FormVariant form_from_name(const std::string& name, IdentityId id);

// Parameter points. Complex-valued fields follow each identity's conventions;
// integer fluxes are stored as long. Balanced families satisfy their
// constraints exactly by construction in sample_point.
struct PointS3bSqed {
  Complex b;
  Complex y;
};
struct PointS2s1Sqed {
  Complex q;
  Complex alpha;  // hatted fugacity
  Complex w;
  long m = 0;  // integer lattice label; the physical flux is m + 1/2
  long n = 0;
};
struct PointRp2s1Sqed {
  Complex q;
  Complex a;
  long s = 0;
  long s_tilde = 0;
};
struct PointS3bFlavored {
  Complex b;
  std::array<Complex, 3> a;
  std::array<Complex, 3> bvec;
};
struct PointS2s1Flavored {
  Complex q;
  std::array<Complex, 3> a;
  std::array<Complex, 3> bvec;
  std::array<long, 3> n;
  std::array<long, 3> m;
};

using ParamPoint = std::variant<PointS3bSqed, PointS2s1Sqed, PointRp2s1Sqed,
                                PointS3bFlavored, PointS2s1Flavored>;

IdentityId point_identity(const ParamPoint& p);

// Checks the point against its identity's admissibility constraints. Returns
// human-readable violation notes (empty means clean). Balancing violations are
// reported here rather than thrown so deliberately unbalanced points can still
// be evaluated.
std::vector<std::string> validate_point(IdentityId id, const ParamPoint& p);

struct Diagnostics {
  std::size_t quadrature_nodes = 0;
  std::size_t sum_terms = 0;
  double truncation_radius = 0.0;
  std::vector<std::string> warnings;
};

struct VerificationReport {
  IdentityId identity{};
  FormVariant form{};
  ParamPoint point;
  std::uint64_t seed = 0;  // seed that produced the point, when sampled
  Complex lhs{0.0, 0.0};
  Complex rhs{0.0, 0.0};
  double abs_residual = 0.0;
  double rel_residual = 0.0;  // |lhs-rhs| / max(|lhs|, |rhs|)
  bool passed = false;
  double tolerance = 0.0;
  Diagnostics diagnostics;
};

struct VariantResult {
  FormVariant form{};
  bool evaluated = false;      // false when evaluation raised a domain error
  double worst_rel = 0.0;      // over the scanned points (when evaluated)
  std::string error_kind;      // error class name when not evaluated
  std::string error_message;
  bool canonical = false;      // best-ranked variant below tolerance
};

// Triangle building blocks.
// bfun_s3b(x, y; b) = sb(x + iQ/2) sb(y + iQ/2) / sb(x + y + iQ/2).
Complex bfun_s3b(const Complex& x, const Complex& y,
                 const SquashingParameter& b, double tol = 1e-12);
// bfun_s2s1(m, z; q) = (z q^{m/2 + 1/2}; q)_inf / (z^{-1} q^{m/2}; q)_inf,
// with m any real number (negative powers go through reflection).
Complex bfun_s2s1(double m, const Complex& z, const Nome& q,
                  const TruncationPolicy& pol = {});
// bfun_rp2(z, m; q) = z^{-1/4 + m/2} q^{-1/8 + m/4}
//     (z q^{m+1}; q^2)_inf / (z^{-1} q^m; q^2)_inf, m in {0, 1, ...};
// the quarter power of z uses the principal branch, so a warning is recorded
// when arg(z) comes within 0.1 of the cut.
Complex bfun_rp2(const Complex& z, long m, const Nome& q,
                 Diagnostics* diag = nullptr, const TruncationPolicy& pol = {});
// bfun_flavored(a, n; b, m; q) =
//   (-q)^{|n|/4 + |m|/4 - |n+m|/4} a^{-|n|/2} b^{-|m|/2} (ab)^{|n+m|/2}
//   (q^{1+|n|/2} a^{-1}; q)_inf / (q^{|n|/2} a; q)_inf
//   (q^{1+|m|/2} b^{-1}; q)_inf / (q^{|m|/2} b; q)_inf
//   (q^{|n+m|/2} a b; q)_inf / (q^{1+|n+m|/2} (ab)^{-1}; q)_inf,
// symmetric under (a, n) <-> (b, m); the (-q) power uses the principal branch.
Complex bfun_flavored(const Complex& a, long n, const Complex& b, long m,
                      const Nome& q, const TruncationPolicy& pol = {});

// Evaluates one side of an identity in a given algebraic form. tol is the
// working accuracy target propagated to quadrature and series truncation.
Complex evaluate_side(IdentityId id, Side side, FormVariant form,
                      const ParamPoint& p, double tol,
                      Diagnostics* diag = nullptr);

// Deterministic admissible point generator: same (id, seed) always yields the
// same point; balancing constraints are solved exactly for the last member of
// each constrained family. Throws SamplerExhausted after 100 rejected draws.
ParamPoint sample_point(IdentityId id, std::uint64_t seed);

// Returns a copy of p with one balancing condition broken by eps:
//   S3B_FLAVORED: a_1 -> a_1 + eps              (which ignored; one condition)
//   S2S1_FLAVORED: which 0: a_1 -> a_1 e^{i eps}; which 1: b_1 -> b_1 e^{i eps}
// Other identities have no balancing condition; DomainError.
ParamPoint perturb_balance(const ParamPoint& p, double eps, int which = 0);
// Number of independent continuous balancing conditions for an identity.
int balance_condition_count(IdentityId id);

// Evaluates both sides at working tolerance tol/100 and compares.
VerificationReport verify(IdentityId id, const ParamPoint& p, FormVariant form,
                          double tol);

// All registered readings of an identity, canonical reading first.
std::vector<FormVariant> registered_variants(IdentityId id);
FormVariant canonical_variant(IdentityId id);

// Evaluates every registered variant at each point and ranks them by worst
// relative residual; variants that raise errors rank last. The best variant is
// marked canonical when its worst residual is below tol. Requires >= 3 points.
std::vector<VariantResult> variant_scan(IdentityId id,
                                        const std::vector<ParamPoint>& points,
                                        double tol);

// Default verification tolerance for an identity (tighter for the q-series
// identities, looser for the hyperbolic ones).
double default_tolerance(IdentityId id);

}  // namespace pentagon
