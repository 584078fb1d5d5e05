#pragma once

#include <string>
#include <vector>

#include "lewisper/maass.hpp"
#include "lewisper/types.hpp"

namespace lewisper {
namespace lfunc {

// Coefficient data with its fitted convergence abscissa sigma0 (log-log
// growth fit of ||v_k|| plus one).
struct DirichletData {
    maass::MaassForm form;
    double sigma0 = 1.0;
};

DirichletData dirichlet_data(const maass::MaassForm& form);

// L_eps(s) = sum_{k != 0} sign(k)^eps (N/|k|)^s v_k over the stored range;
// requires Re s > sigma0 + 1/2.
Vec dirichlet_L(const DirichletData& data, int eps, cplx s);

// Gamma_nu(s + eps) L_eps(s) at the true kernel scale.
Vec completed_L_series(const DirichletData& data, int eps, cplx s);

// Mellin route: int_1^inf [u_eps(y) y^s + (-1)^eps eta(S) u_eps(y) y^{1-s}] dy/y
// where u_0(y) = u(iy)/sqrt(y) and u_1(y) = sqrt(y)/(2 pi i) d/dx u(x+iy)|_{x=0}.
// True kernel scale.
Vec completed_L_mellin(const maass::MaassForm& form, int eps, cplx s,
                       double tol = 1e-12);

// Functional-equation defect at the renormalized kernel scale: the norm of
// int_lambda^{1/lambda} u_eps(y) [y^s I - (-1)^eps eta(S) y^{1-s}] dy/y
// (lambda = 0.7), maximized over the grid. Vanishes identically iff u_eps
// satisfies the S-transform law on [lambda, 1/lambda].
double functional_equation_residual(const maass::MaassForm& form, int eps,
                                    const std::vector<cplx>& s_grid);

struct ConverseReport {
    double fe_probe = 0.0;            // max FE residual over eps and probe grid
    double automorphy_residual = 0.0; // under S at 20 sample points
    bool flagged = false;
    std::string message;
};

struct ConverseResult {
    maass::MaassForm candidate;
    ConverseReport report;
};

// Builds the candidate form from coefficient data and probes the
// functional equation (threshold 1e-5) and S-automorphy. A failing probe
// flags the report; the candidate is returned either way.
ConverseResult converse_build(const DirichletData& data);

// e^{pi |Im nu| / 2}, the renormalization factor between the true and the
// working kernel scale.
double kernel_rescale(const SpectralParameter& nu);

}  // namespace lfunc
}  // namespace lewisper
