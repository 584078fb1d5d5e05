#pragma once

#include <functional>
#include <vector>

#include "lewisper/types.hpp"

namespace lewisper {
namespace quadrature {

struct Rule {
    std::vector<double> nodes;    // on [-1, 1]
    std::vector<double> weights;
};

// Gauss-Legendre rule of order n (cached).
const Rule& gauss_legendre(int n);

// Gauss-Legendre on [a, b] with n nodes.
cplx gl_integrate(const std::function<cplx(double)>& f, double a, double b, int n);

// Adaptive Gauss-Kronrod (G7/K15) on [a, b] to absolute tolerance tol.
cplx adaptive(const std::function<cplx(double)>& f, double a, double b, double tol,
              int max_depth = 24);

// Adaptive quadrature over [a, inf) for integrands with eventual rapid decay:
// panels of geometrically growing width until two consecutive panels fall
// below tol.
cplx adaptive_to_inf(const std::function<cplx(double)>& f, double a, double tol,
                     double first_width = 1.0);

// Integral over the whole line of g(tau) * e^{i omega tau} where g is smooth,
// slowly decaying and centered near tau = center: direct adaptive quadrature on
// a central window plus Euler-accelerated alternating half-period panels.
cplx fourier_line(const std::function<cplx(double)>& g, double center, double omega,
                  double tol);

}  // namespace quadrature
}  // namespace lewisper
