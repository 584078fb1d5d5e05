#include "lewisper/lfunc.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

#include "lewisper/errors.hpp"
#include "lewisper/quadrature.hpp"
#include "lewisper/specialfn.hpp"

namespace lewisper {
namespace lfunc {

namespace {

constexpr double kSplit = 0.7;  // window edge for the functional-equation probe

// Renormalized-kernel profile u_eps on the imaginary axis.
Vec u_eps_renorm(const maass::MaassForm& form, int eps, double y) {
    Vec acc = Vec::Zero(form.dim());
    for (const auto& [k, v] : form.coeffs) {
        const double ak = std::abs(static_cast<double>(k));
        const cplx kt =
            specialfn::bessel_k_scaled(form.nu.nu, 2.0 * pi * ak * y / form.period_N)
                .value;
        if (eps == 0)
            acc += kt * v;
        else
            acc += (static_cast<double>(k) / form.period_N) * y * kt * v;
    }
    return acc;
}

Vec integrate_vec(const std::function<Vec(double)>& f, double a, double b, double tol,
                  Eigen::Index dim) {
    Vec out(dim);
    for (Eigen::Index i = 0; i < dim; ++i)
        out[i] = quadrature::adaptive([&f, i](double y) { return f(y)[i]; }, a, b, tol);
    return out;
}

}  // namespace

DirichletData dirichlet_data(const maass::MaassForm& form) {
    DirichletData data;
    data.form = form;
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    int n = 0;
    for (const auto& [k, v] : form.coeffs) {
        if (k <= 0) continue;
        const double mag = v.norm();
        if (mag <= 0.0) continue;
        const double lx = std::log(static_cast<double>(k)), ly = std::log(mag);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
        ++n;
    }
    double alpha = 0.0;
    if (n >= 2) alpha = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    data.sigma0 = std::max(alpha, 0.0) + 1.0;
    return data;
}

Vec dirichlet_L(const DirichletData& data, int eps, cplx s) {
    if (eps != 0 && eps != 1) throw InputError("dirichlet_L: eps must be 0 or 1");
    if (!(s.real() > data.sigma0 + 0.5))
        throw DivergenceError("dirichlet_L: Re s below the convergence abscissa");
    const auto& form = data.form;
    Vec acc = Vec::Zero(form.dim());
    for (const auto& [k, v] : form.coeffs) {
        const double ak = std::abs(static_cast<double>(k));
        const double sign = (k < 0 && eps == 1) ? -1.0 : 1.0;
        acc += sign * specialfn::cpow(form.period_N / ak, s) * v;
    }
    return acc;
}

Vec completed_L_series(const DirichletData& data, int eps, cplx s) {
    return specialfn::gamma_nu(data.form.nu, s + static_cast<double>(eps)) *
           dirichlet_L(data, eps, s);
}

Vec completed_L_mellin(const maass::MaassForm& form, int eps, cplx s, double tol) {
    if (eps != 0 && eps != 1) throw InputError("completed_L_mellin: eps must be 0 or 1");
    const double beta = std::abs(form.nu.nu.imag());
    const double y_max =
        std::max(12.0, form.period_N * (0.5 * pi * beta + 40.0) / (2.0 * pi));
    const double sgn = (eps == 0) ? 1.0 : -1.0;
    const Mat eta_S = form.rep.mat_S;
    auto integrand = [&](double y) -> Vec {
        const Vec u = u_eps_renorm(form, eps, y);
        return specialfn::cpow(y, s - 1.0) * u +
               specialfn::cpow(y, -s) * (sgn * (eta_S * u));
    };
    const Vec val = integrate_vec(integrand, 1.0, y_max, tol, form.dim());
    return std::exp(-0.5 * pi * beta) * val;
}

double functional_equation_residual(const maass::MaassForm& form, int eps,
                                    const std::vector<cplx>& s_grid) {
    if (eps != 0 && eps != 1)
        throw InputError("functional_equation_residual: eps must be 0 or 1");
    const double sgn = (eps == 0) ? 1.0 : -1.0;
    const Mat eta_S = form.rep.mat_S;
    double worst = 0.0;
    for (const cplx& s : s_grid) {
        auto integrand = [&](double y) -> Vec {
            const Vec u = u_eps_renorm(form, eps, y);
            return specialfn::cpow(y, s - 1.0) * u -
                   specialfn::cpow(y, -s) * (sgn * (eta_S * u));
        };
        const Vec val =
            integrate_vec(integrand, kSplit, 1.0 / kSplit, 1e-12, form.dim());
        worst = std::max(worst, val.norm());
    }
    return worst;
}

ConverseResult converse_build(const DirichletData& data) {
    ConverseResult out;
    out.candidate = data.form;

    const std::vector<cplx> probe{0.8, cplx(1.0, 0.5), 1.3};
    double fe = 0.0;
    for (int eps : {0, 1})
        fe = std::max(fe, functional_equation_residual(data.form, eps, probe));
    out.report.fe_probe = fe;

    std::vector<cplx> pts;
    for (int i = 0; i < 20; ++i) {
        const double x = 0.05 + 0.40 * i / 19.0;
        const double y = 1.05 + 0.30 * ((7 * i) % 20) / 19.0;
        pts.emplace_back(x, y);
    }
    finrep::GroupWord s_word;
    s_word.tokens = {finrep::Tok::S};
    out.report.automorphy_residual =
        maass::automorphy_residual(data.form, s_word, pts);

    out.report.flagged = !(fe <= 1e-5);
    out.report.message = out.report.flagged
                             ? "functional-equation probe failed; candidate flagged"
                             : "functional-equation probe passed";
    return out;
}

double kernel_rescale(const SpectralParameter& nu) {
    return std::exp(0.5 * pi * std::abs(nu.nu.imag()));
}

}  // namespace lfunc
}  // namespace lewisper
