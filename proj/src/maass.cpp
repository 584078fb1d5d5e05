#include "lewisper/maass.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "lewisper/errors.hpp"
#include "lewisper/parallel.hpp"
#include "lewisper/specialfn.hpp"

namespace lewisper {
namespace maass {

using specialfn::bessel_k_scaled;

MaassForm make_form(const SpectralParameter& nu, const finrep::FiniteRep& rep,
                    const std::map<int, Vec>& coeffs) {
    MaassForm f;
    f.nu = nu;
    f.rep = rep;
    f.period_N = rep.order_T;
    f.coeffs = coeffs;
    for (const auto& [k, v] : coeffs) {
        if (k == 0) throw InputError("make_form: k = 0 entry violates cuspidality");
        if (v.size() != rep.dim)
            throw DimensionError("make_form: coefficient vector length != rep dimension");
        const double norm = v.norm();
        const cplx phase =
            std::exp(cplx(0.0, 2.0 * pi * static_cast<double>(k) / f.period_N));
        const double defect = (rep.mat_T * v - phase * v).norm();
        if (norm > 0.0 && defect >= 1e-10 * norm)
            throw InputError("make_form: v_k not in the required eta(T) eigenspace");
        f.K_max = std::max(f.K_max, std::abs(k));
        f.sup_coeff = std::max(f.sup_coeff, norm);
    }
    return f;
}

namespace {

// Shared mode sum; scaled = true uses the renormalized kernel.
Vec mode_sum(const MaassForm& form, cplx z, bool scaled, double* tail_estimate) {
    if (z.imag() <= 0.0) throw DomainError("evaluate: Im z > 0 required");
    const double x = z.real(), y = z.imag();
    const double beta = std::abs(form.nu.nu.imag());
    const double sq = std::sqrt(y);
    Vec acc = Vec::Zero(form.rep.dim);
    for (const auto& [k, v] : form.coeffs) {
        const double t = 2.0 * pi * std::abs(k) * y / form.period_N;
        const cplx kernel = bessel_k_scaled(form.nu.nu, t).value;
        const cplx phase =
            std::exp(cplx(0.0, 2.0 * pi * k * x / form.period_N));
        acc += (sq * kernel * phase) * v;
    }
    if (!scaled) acc *= std::exp(-0.5 * pi * beta);
    if (tail_estimate) {
        // Geometric bound on the omitted modes; the renormalized kernel is
        // bounded by e^{pi beta / 2 - t}.
        const double t1 = 2.0 * pi * (form.K_max + 1) * y / form.period_N;
        const double ratio = std::exp(-2.0 * pi * y / form.period_N);
        double bound =
            2.0 * sq * form.sup_coeff * std::exp(0.5 * pi * beta - t1) / (1.0 - ratio);
        if (!scaled) bound *= std::exp(-0.5 * pi * beta);
        *tail_estimate = bound;
    }
    return acc;
}

}  // namespace

Vec evaluate(const MaassForm& form, cplx z, double* tail_estimate) {
    return mode_sum(form, z, false, tail_estimate);
}

Vec evaluate_renorm(const MaassForm& form, cplx z, double* tail_estimate) {
    return mode_sum(form, z, true, tail_estimate);
}

double automorphy_residual(const MaassForm& form, const finrep::GroupWord& w,
                           const std::vector<cplx>& sample_points, std::string* warning) {
    const auto m = w.int_matrix();
    const double a = static_cast<double>(m[0]), b = static_cast<double>(m[1]);
    const double c = static_cast<double>(m[2]), d = static_cast<double>(m[3]);
    const Mat eta = rep_of_word(form.rep, w);
    double worst = 0.0;
    bool tail_bad = false;
    for (cplx z : sample_points) {
        const cplx gz = (a * z + b) / (c * z + d);
        double tail = 0.0;
        const Vec ug = evaluate_renorm(form, gz, &tail);
        const Vec uz = evaluate_renorm(form, z);
        if (tail > 1e-10) tail_bad = true;
        const double res = (ug - eta * uz).norm() / std::max(1.0, uz.norm());
        worst = std::max(worst, res);
    }
    if (tail_bad && warning)
        *warning += "automorphy_residual: sample mapped too low, truncation tail above 1e-10; ";
    return worst;
}

Vec cusp_integral_of(const std::function<Vec(cplx)>& u, int period_N, cplx z) {
    if (z.imag() <= 0.0) throw DomainError("cusp_integral: Im z > 0 required");
    const int nodes = 64 * period_N;
    const double h = static_cast<double>(period_N) / nodes;
    Vec acc = 0.5 * (u(z) + u(z + static_cast<double>(period_N)));
    for (int j = 1; j < nodes; ++j) acc += u(z + j * h);
    return h * acc;
}

Vec cusp_integral(const MaassForm& form, cplx z) {
    return cusp_integral_of([&form](cplx w) { return evaluate(form, w); }, form.period_N,
                            z);
}

cplx poisson_basis(int k, const SpectralParameter& nu, double a, double b, int N) {
    if (k == 0) throw DomainError("poisson_basis: k must be nonzero");
    if (b <= 0.0) throw DomainError("poisson_basis: b > 0 required");
    const double ak = std::abs(k);
    const cplx Nk = std::exp(nu.nu * std::log(static_cast<double>(N) / ak));
    const cplx pif = std::exp(-(nu.nu + 0.5) * std::log(pi));
    const cplx gam = specialfn::gamma_complex(0.5 - nu.nu);  // PoleError at the shifts
    const cplx kb = specialfn::bessel_k(nu.nu, 2.0 * pi * ak * b / N);
    const cplx phase = std::exp(cplx(0.0, 2.0 * pi * k * a / N));
    return 2.0 * (k > 0 ? 1.0 : -1.0) * Nk * pif / gam * std::sqrt(b) * kb * phase;
}

// ---------------------------------------------------------------------------
// Hejhal solver
// ---------------------------------------------------------------------------

namespace {

// Pullback into the standard fundamental domain.
cplx pullback(cplx z) {
    for (int it = 0; it < 50; ++it) {
        double x = z.real() - std::round(z.real());
        z = cplx(x, z.imag());
        if (std::norm(z) < 1.0 - 1e-12) {
            z = -1.0 / z;
        } else {
            break;
        }
    }
    return z;
}

struct SolveContext {
    double R = 0.0;
    int K = 25;
    int Q = 36;
    Parity parity = Parity::Odd;

    double trig(double arg) const {
        return parity == Parity::Odd ? std::sin(arg) : std::cos(arg);
    }

    // Coefficients c_1..c_K (c_1 = 1) from the implicit-automorphy system at
    // collocation height y0; writes the SVD condition number.
    Eigen::VectorXd solve_coeffs(double y0, double* cond = nullptr) const {
        const cplx nu(0.0, R);
        std::vector<double> k_y0(K + 1, 0.0);
        for (int k = 1; k <= K; ++k)
            k_y0[k] = bessel_k_scaled(nu, 2.0 * pi * k * y0).value.real();
        Eigen::MatrixXd A(Q, K);
        parallel_for(Q, [&](long j) {
            const double x = (static_cast<double>(j) + 0.5) / (2.0 * Q);
            const cplx z(x, y0);
            const cplx zs = pullback(z);
            const double xs = zs.real(), ys = zs.imag();
            const double sq0 = std::sqrt(y0), sqs = std::sqrt(ys);
            for (int k = 1; k <= K; ++k) {
                const double ks =
                    bessel_k_scaled(nu, 2.0 * pi * k * ys).value.real();
                A(j, k - 1) = sq0 * k_y0[k] * trig(2.0 * pi * k * x) -
                              sqs * ks * trig(2.0 * pi * k * xs);
            }
        });
        Eigen::BDCSVD<Eigen::MatrixXd> svd(A.rightCols(K - 1),
                                           Eigen::ComputeThinU | Eigen::ComputeThinV);
        if (cond) {
            const auto& sv = svd.singularValues();
            *cond = sv(0) / std::max(sv(sv.size() - 1), 1e-300);
        }
        Eigen::VectorXd rhs = -A.col(0);
        Eigen::VectorXd tail = svd.solve(rhs);
        Eigen::VectorXd c(K);
        c(0) = 1.0;
        c.tail(K - 1) = tail;
        return c;
    }

    // Indicator whose zero crossings mark eigenvalues: the second coefficient
    // must agree between two collocation heights.
    double indicator() const {
        double cond = 0.0;
        Eigen::VectorXd c1 = solve_coeffs(0.20, &cond);
        if (cond > 1e12)
            throw ConditioningError("hejhal_solve: collocation system ill-conditioned",
                                    cond);
        Eigen::VectorXd c2 = solve_coeffs(0.17);
        return c1(1) - c2(1);
    }
};

MaassForm build_candidate(double R, Parity parity, int K) {
    SolveContext ctx;
    ctx.R = R;
    ctx.K = K;
    ctx.parity = parity;
    Eigen::VectorXd c = ctx.solve_coeffs(0.20);
    std::map<int, Vec> coeffs;
    for (int k = 1; k <= K; ++k) {
        Vec v(1), vm(1);
        v(0) = c(k - 1);
        vm(0) = parity == Parity::Odd ? -c(k - 1) : c(k - 1);
        coeffs[k] = v;
        coeffs[-k] = vm;
    }
    return make_form(spectral(cplx(0.0, R)), finrep::trivial_rep(), coeffs);
}

double validation_residual(const MaassForm& form) {
    std::vector<cplx> pts;
    for (int i = 0; i < 20; ++i) {
        const double x = 0.05 + 0.40 * i / 19.0;
        const double y = 1.05 + 0.30 * ((i * 7) % 20) / 19.0;
        pts.emplace_back(x, y);
    }
    finrep::GroupWord s;
    s.tokens = {finrep::Tok::S};
    return automorphy_residual(form, s, pts);
}

}  // namespace

MaassForm hejhal_solve(double r_lo, double r_hi, Parity parity, int K_max, double y0) {
    if (!(r_lo > 1.0 && r_hi < 20.0 && r_lo < r_hi))
        throw DomainError("hejhal_solve: window must lie within (1, 20)");
    if (K_max < 5 || K_max > 60) throw DomainError("hejhal_solve: K_max outside [5, 60]");
    (void)y0;  // collocation heights fixed at 0.20 / 0.17 (see indicator)

    SolveContext ctx;
    ctx.K = K_max;
    ctx.parity = parity;

    const int scan_n = 13;
    std::vector<double> rs(scan_n), gs(scan_n);
    for (int i = 0; i < scan_n; ++i) {
        rs[i] = r_lo + (r_hi - r_lo) * i / (scan_n - 1);
        ctx.R = rs[i];
        gs[i] = ctx.indicator();
    }
    for (int i = 0; i + 1 < scan_n; ++i) {
        if (!(gs[i] * gs[i + 1] < 0.0)) continue;
        // Secant refinement of the crossing.
        double a = rs[i], b = rs[i + 1], fa = gs[i], fb = gs[i + 1];
        double root = b;
        bool converged = false;
        for (int it = 0; it < 40; ++it) {
            if (fb == fa) break;
            root = b - fb * (b - a) / (fb - fa);
            if (!(root > r_lo - 0.1 && root < r_hi + 0.1)) break;
            if (std::abs(root - b) < 1e-11) {
                converged = true;
                break;
            }
            ctx.R = root;
            const double fr = ctx.indicator();
            a = b;
            fa = fb;
            b = root;
            fb = fr;
        }
        if (!converged) continue;
        MaassForm cand = build_candidate(root, parity, K_max);
        if (validation_residual(cand) < 1e-6) return cand;
    }
    throw NotFoundError("hejhal_solve: no validated eigenvalue in window");
}

double hecke_defect(const MaassForm& form) {
    auto a = [&](int k) {
        auto it = form.coeffs.find(k);
        return it == form.coeffs.end() ? cplx(0.0) : it->second(0);
    };
    return std::abs(a(2) * a(3) - a(6));
}

}  // namespace maass
}  // namespace lewisper
