#pragma once

// Internal cross-module helpers; not part of the installed API.

#include <array>
#include <cstddef>
#include <vector>

#include "pentagon/doublesine.hpp"
#include "pentagon/types.hpp"

namespace pentagon::detail {

// 48-point Gauss-Legendre nodes/weights on [-1, 1] (owned by quadrature.cpp).
const std::array<double, 48>& gl48_nodes();
const std::array<double, 48>& gl48_weights();

// sin(w)/w - 1 and sinh(w)/w - 1, series-evaluated near zero so the result
// keeps full relative accuracy as w -> 0.
Complex sinc_m1(const Complex& w);
Complex sinhc_m1(const Complex& w);

// Double-sine evaluator specialized for a family of arguments on one strip:
// every argument must satisfy |Im x| <= max_im with Re(Q) - 2 max_im >= 0.12.
// The t-quadrature grid and the x-independent parts of the integrand are
// precomputed once, so each evaluation costs a single pass of sine calls over
// the grid; large |Re x| arguments short-circuit to the closed-form wings
//   sb(x) -> C_b^{+1} e^{+i pi x^2 / 2}   (Re x -> +infinity)
//   sb(x) -> C_b^{-1} e^{-i pi x^2 / 2}   (Re x -> -infinity)
// which hold below double precision for |Re x| >= 10 at real b.
class SbLineEvaluator {
 public:
  SbLineEvaluator(const SquashingParameter& b, double max_im, double max_re,
                  double tol);
  Complex operator()(const Complex& x) const;
  std::size_t grid_size() const { return grid_.t0.size() + grid_.t1.size(); }

 private:
  struct Grid {
    std::vector<double> t0, w0;  // nodes/weights on (0, 1]
    std::vector<Complex> dB;     // sB(t) - 1, sB = (sinh(bt)/(bt))(sinh(t/b)/(t/b))
    std::vector<double> t1, w1;  // nodes/weights on [1, T]
    std::vector<Complex> G;      // 1 / (2 sinh(b t) sinh(t / b))
  };
  Grid make_grid(double density) const;
  Complex quad_eval(const Grid& g, const Complex& x) const;

  SquashingParameter b_;
  double tol_;
  double max_im_;
  double max_re_;
  double T_ = 0.0;
  bool real_b_ = false;
  double cutoff_ = 10.0;  // |Re x| at which the closed-form wings take over
  Complex logC_;          // log of the cross-representation constant
  Grid grid_;
};

}  // namespace pentagon::detail
