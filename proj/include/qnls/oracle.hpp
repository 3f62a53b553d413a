#pragma once

#include <functional>
#include <stdexcept>
#include <vector>

#include "qnls/alcovefn.hpp"
#include "qnls/ybops.hpp"

// Brute-force checks that only ever evaluate functions at points: adaptive
// Gauss-Legendre quadrature for the integral operators and inner products,
// and finite differences for derivatives. Nothing here touches the closed-form
// integration of exp-poly sums.
namespace qnls::oracle {

struct QuadConfig {
  double rel_tol = 1e-8;
  double abs_tol = 1e-12;
  int max_subdivisions = 20;  // bisection depth per axis
  int max_dim = 3;            // largest number of nested integrals accepted
};

struct QuadResult {
  cplx value = 0.0;
  double error = 0.0;
};

struct QuadratureError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct WallCrossingError : std::domain_error {
  using std::domain_error::domain_error;
};

// Adaptive 15-point Gauss-Legendre on [a, b] (signed when a > b); the error
// estimate compares against the 7-point rule on the same panel.
QuadResult integrate(const std::function<cplx(double)>& g, double a, double b, const QuadConfig& cfg = {});

// Value of the operator at the point x, from its defining nested integrals with
// integrands evaluated pointwise. Symmetric families are evaluated at x sorted
// in decreasing order. Integration intervals are split at every coordinate of x.
QuadResult quad_apply(const OperatorSpec& spec, const AlcoveFunction& f, const std::vector<double>& x,
                      const QuadConfig& cfg = {});

// Integral of f conj(g) over [-L/2, L/2]^N, alcove by alcove.
QuadResult inner_product(const AlcoveFunction& f, const AlcoveFunction& g, double L, const QuadConfig& cfg = {});

// Central difference of F in x_j; richardson combines steps h and h/2 for fourth order.
// Throws WallCrossingError if the stencil leaves the alcove of x.
cplx fd_derivative(const AlcoveFunction& F, int j, const std::vector<double>& x, double h, bool richardson = false);

// Dunkl-type operator at x with the derivative replaced by fd_derivative.
cplx fd_dunkl(const AlcoveFunction& F, int j, double gamma, const std::vector<double>& x, double h,
              bool richardson = true);

}  // namespace qnls::oracle
