#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "lewisper/finrep.hpp"
#include "lewisper/types.hpp"

namespace lewisper {
namespace maass {

// Truncated Fourier data of a Maass cusp form: u(z) = sum_{k != 0} sqrt(y)
// K_nu(2 pi |k| y / N) e^{2 pi i k x / N} v_k.
struct MaassForm {
    SpectralParameter nu;
    finrep::FiniteRep rep;
    int period_N = 1;
    std::map<int, Vec> coeffs;  // k != 0 only
    int K_max = 0;
    double sup_coeff = 0.0;  // recorded sup_k ||v_k||

    int dim() const { return rep.dim; }
    int k_max() const { return K_max; }
};

// Validates cuspidality (no k = 0 entry) and the eta(T)-eigenvector condition.
MaassForm make_form(const SpectralParameter& nu, const finrep::FiniteRep& rep,
                    const std::map<int, Vec>& coeffs);

// True-scale evaluation of u at z (Im z > 0). Writes the truncation-tail
// estimate if requested; no warning is raised here because the estimate is
// part of the result.
Vec evaluate(const MaassForm& form, cplx z, double* tail_estimate = nullptr);

// Evaluation against the renormalized kernel e^{pi |Im nu| / 2} K_nu; this is
// the scale all residual checks use (the true scale is uniformly tiny for
// nu = iR and would make residuals vacuous).
Vec evaluate_renorm(const MaassForm& form, cplx z, double* tail_estimate = nullptr);

// max over samples of ||u(gamma z) - eta(gamma) u(z)|| / max(1, ||u(z)||), at
// the renormalized kernel scale. A truncation warning, if any, is appended to
// *warning.
double automorphy_residual(const MaassForm& form, const finrep::GroupWord& w,
                           const std::vector<cplx>& sample_points,
                           std::string* warning = nullptr);

// Trapezoid quadrature of int_0^N u(z + t) dt with 64 N nodes.
Vec cusp_integral(const MaassForm& form, cplx z);

// Same quadrature applied to an arbitrary N-periodic evaluator.
Vec cusp_integral_of(const std::function<Vec(cplx)>& u, int period_N, cplx z);

// Closed form 2 sign(k) (N/|k|)^nu pi^{-nu-1/2} / Gamma(1/2 - nu) sqrt(b)
// K_nu(2 pi |k| b / N) e^{2 pi i k a / N}.
cplx poisson_basis(int k, const SpectralParameter& nu, double a, double b, int N);

enum class Parity { Even, Odd };

// Hejhal-style implicit-automorphy solver, trivial representation only.
// Locates R in [r_lo, r_hi] by a sign-change/secant search on the collocation
// indicator, then accepts a candidate only if the independent automorphy
// residual under S at 20 non-collocation points is < 1e-6.
MaassForm hejhal_solve(double r_lo, double r_hi, Parity parity, int K_max = 25,
                       double y0 = 0.2);

// |a2 a3 - a6| for a scalar (trivial-rep) form.
double hecke_defect(const MaassForm& form);

}  // namespace maass
}  // namespace lewisper
