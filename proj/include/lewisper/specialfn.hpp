#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <utility>

#include "lewisper/types.hpp"

namespace lewisper {
namespace specialfn {

using Rational = boost::multiprecision::cpp_rational;

// K-Bessel function K_nu(t) for complex order, t > 0. Relative accuracy 1e-10
// on 1e-3 <= t <= 50 away from the deep-cancellation regime; supported range
// |Im nu| <= 50. Throws PrecisionError when cancellation exceeds 1e-7.
cplx bessel_k(cplx nu, double t);

// Renormalized kernel e^{pi |Im nu| / 2} * K_nu(t) together with the relative
// cancellation-floor estimate. Never throws for in-range arguments; this is
// the form every pipeline caller uses (the plain kernel underflows for large
// |Im nu| while the renormalized one stays O(1)).
struct ScaledBessel {
    cplx value;
    double cancellation;
};
ScaledBessel bessel_k_scaled(cplx nu, double t);

// Complex Gamma function, Lanczos approximation with reflection.
cplx gamma_complex(cplx z);

// Completed factor Gamma_nu(s) = (1 / (4 pi^s)) Gamma((s-nu)/2) Gamma((s+nu)/2).
cplx gamma_nu(const SpectralParameter& nu, cplx s);

// Bernoulli number B_k, convention B_1 = -1/2, exact rational, k <= 60.
const Rational& bernoulli(int k);
double bernoulli_d(int k);

// Hurwitz zeta sum_{n>=0} (n+z)^{-a} for Re a > 1, z off (-inf, 0].
cplx hurwitz_zeta(cplx a, cplx z);

// Truncated large-z expansion of hurwitz_zeta with the first omitted term as
// the error bound. num_terms counts the Bernoulli correction terms beyond the
// two-term leading part.
std::pair<cplx, double> hurwitz_asymptotic(cplx a, cplx z, int num_terms);

// Principal power z^p with cut along (-inf, 0].
cplx cpow(cplx z, cplx p);

}  // namespace specialfn
}  // namespace lewisper
