#pragma once

#include "pentagon/qseries.hpp"
#include "pentagon/types.hpp"

namespace pentagon {

// C_b = exp(i pi (b^2 + b^{-2}) / 24): the x-independent constant relating the
// two representations. On the overlap of their domains,
//   sb_product(x, b) = C_b * sb_integral(x, b).
Complex phase_constant(const SquashingParameter& b);

// Product representation
//   e^{-i pi x^2 / 2} (-e^{2 pi b x} E1; q1)_inf / (-e^{2 pi x / b} E2; q2)_inf
// with q1 = e^{2 pi i b^2}, E1 = e^{i pi b^2}, q2 = e^{-2 pi i / b^2},
// E2 = e^{-i pi / b^2}. The half-step factors E1, E2 are built directly from
// b^2: taking a square root of the computed nome can land on the wrong branch.
// Requires Im(b^2) > 0; throws DomainError otherwise.
Complex sb_product(const Complex& x, const SquashingParameter& b,
                   const TruncationPolicy& pol = {});

// Integral representation exp(-i I(x)) with
//   I(x) = int_0^inf dt/t [ sin(2 x t) / (2 sinh(b t) sinh(t / b)) - x / t ],
// valid on the strip |Im x| < Re(Q)/2. Arguments with |Im x| above
// Re(Q)/2 - 1e-3 are refused with StripViolation.
Complex sb_integral(const Complex& x, const SquashingParameter& b,
                    double tol = 1e-12);

// Full double-sine evaluator. Arguments outside the strip are first moved into
// it by the shift recursion
//   s(w) = 2 cosh(pi b (w + i b / 2)) s(w + i b)        (Im w < 0)
//   s(w) = s(w - i b) / (2 cosh(pi b (w - i b / 2)))    (Im w > 0)
// and the in-strip value is then computed by the representation selected by
// method (Auto prefers the product when its nomes are comfortably inside the
// unit disc, else the integral).
Complex sb(const Complex& x, const SquashingParameter& b,
           SbMethod method = SbMethod::Auto, double tol = 1e-12);

}  // namespace pentagon
