#pragma once

#include <cmath>
#include <complex>
#include <map>
#include <random>

#include "lewisper/lewis.hpp"
#include "lewisper/maass.hpp"
#include "lewisper/quadrature.hpp"
#include "lewisper/specialfn.hpp"
#include "lewisper/types.hpp"

namespace testutil {

using lewisper::cplx;
using lewisper::Vec;

inline double rel_err(cplx got, cplx want) {
    return std::abs(got - want) / std::max(1e-300, std::abs(want));
}

// Solved first odd cusp form, R near 9.5337; one solve per test process.
inline const lewisper::maass::MaassForm& solved_form() {
    static const lewisper::maass::MaassForm form =
        lewisper::maass::hejhal_solve(9.4, 9.7, lewisper::maass::Parity::Odd, 25);
    return form;
}

inline const lewisper::lewis::PeriodFunction& solved_pf() {
    static const lewisper::lewis::PeriodFunction pf =
        lewisper::lewis::make_period_function(
            lewisper::lewis::boundary_data(solved_form(),
                                           lewisper::lewis::DataMode::Integral),
            26);
    return pf;
}

// Same data with v_2 scaled by 1.1: breaks automorphy but not the
// eigenvector condition.
inline lewisper::maass::MaassForm perturbed_form() {
    const auto& base = solved_form();
    auto coeffs = base.coeffs;
    coeffs[2] *= 1.1;
    coeffs[-2] *= 1.1;
    return lewisper::maass::make_form(base.nu, base.rep, coeffs);
}

// Scalar synthetic data with geometric decay: any such family is an exact
// Lewis solution for the trivial twist at its nu.
inline lewisper::maass::MaassForm geometric_form(unsigned seed = 2024,
                                                 cplx nu = cplx(0.3, 0.0)) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    std::map<int, Vec> coeffs;
    for (int k = 1; k <= 18; ++k) {
        const double rho = std::pow(0.4, k);
        Vec up(1), down(1);
        up[0] = cplx(unif(rng), unif(rng)) * rho;
        down[0] = cplx(unif(rng), unif(rng)) * rho;
        coeffs[k] = up;
        coeffs[-k] = down;
    }
    return lewisper::maass::make_form(lewisper::spectral(nu),
                                      lewisper::finrep::trivial_rep(), coeffs);
}

// Two-dimensional synthetic data for the S3 standard twist (period N = 2):
// even modes in the +1 eigenspace of eta(T), odd modes in the -1 eigenspace,
// independent scalars above and below.
inline lewisper::maass::MaassForm twisted_form(unsigned seed = 7001,
                                               cplx nu = cplx(0.3, 0.0)) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    const double s3 = std::sqrt(3.0);
    Vec plus(2), minus(2);
    plus << 0.5, 0.5 * s3;
    minus << 0.5 * s3, -0.5;
    std::map<int, Vec> coeffs;
    for (int k = 1; k <= 18; ++k) {
        const double rho = std::pow(0.4, k);
        const Vec dir = (k % 2 == 0) ? plus : minus;
        coeffs[k] = (cplx(unif(rng), unif(rng)) * rho) * dir;
        coeffs[-k] = (cplx(unif(rng), unif(rng)) * rho) * dir;
    }
    return lewisper::maass::make_form(lewisper::spectral(nu),
                                      lewisper::finrep::s3_standard_rep(), coeffs);
}

inline lewisper::lewis::PeriodFunction direct_pf(const lewisper::maass::MaassForm& f,
                                                 int taylor_order = 26) {
    return lewisper::lewis::make_period_function(
        lewisper::lewis::boundary_data(f, lewisper::lewis::DataMode::DirectEverywhere),
        taylor_order);
}

inline lewisper::finrep::GroupWord word(const std::string& text) {
    return lewisper::finrep::GroupWord::parse(text);
}

// int_0^inf K_nu(2 pi y) y^{s-1} dy by direct quadrature: log-substituted
// head (the integrand is algebraically singular at 0, smooth in u = log y)
// plus the adaptive tail. Requires Re(s -+ Re nu) >= 1 so the discarded
// [0, e^-27] mass stays below 1e-11.
inline cplx kernel_mellin_quadrature(cplx nu, cplx s) {
    auto head = [&](double u) {
        const double y = std::exp(u);
        return lewisper::specialfn::bessel_k(nu, 2.0 * lewisper::pi * y) *
               lewisper::specialfn::cpow(y, s);
    };
    auto tail = [&](double y) {
        return lewisper::specialfn::bessel_k(nu, 2.0 * lewisper::pi * y) *
               lewisper::specialfn::cpow(y, s - 1.0);
    };
    return lewisper::quadrature::adaptive(head, -27.0, 0.0, 1e-13) +
           lewisper::quadrature::adaptive_to_inf(tail, 1.0, 1e-13);
}

// Line integral int_R (b^2 + (tau - a)^2)^(nu - 1/2) e^{2 pi i k tau / N} dtau
// computed by the oscillatory line quadrature; the conditionally convergent
// route the closed-form basis function must reproduce.
inline cplx fourier_line_integral(cplx nu, int k, int N, double a, double b) {
    auto g = [=](double tau) {
        const double q = b * b + (tau - a) * (tau - a);
        return lewisper::specialfn::cpow(cplx(q, 0.0), nu - 0.5);
    };
    const double omega = 2.0 * lewisper::pi * k / N;
    return lewisper::quadrature::fourier_line(g, a, omega, 1e-12);
}

}  // namespace testutil
