#include "lewisper/lewis.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

#include "lewisper/errors.hpp"
#include "lewisper/parallel.hpp"
#include "lewisper/quadrature.hpp"
#include "lewisper/specialfn.hpp"
#include "lewisper/transfer.hpp"

namespace lewisper {
namespace lewis {

namespace {

constexpr double kAxisTol = 1e-13;
constexpr double kIntegralLo = 1.0;
constexpr double kIntegralHi = 12.0;
constexpr int kIntegralNodes = 400;
constexpr int kTaylorSamples = 512;
constexpr double kTaylorRadius = 0.45;
constexpr int kMaxRecursionDepth = 64;

cplx a_exponent(const SpectralParameter& nu) { return 2.0 * nu.nu + 1.0; }

// One-sided f series; side > 0 uses k > 0, side < 0 uses k < 0 with the
// leading minus sign. No domain checks: callers guarantee convergence.
Vec f_core(const BoundaryData& bd, cplx z, int side) {
    const auto& form = bd.form;
    Vec acc = Vec::Zero(form.dim());
    if (bd.v0_injection.size() == form.dim() && form.dim() > 0)
        acc = 0.5 * bd.v0_injection;
    const cplx two_pi_i_over_N(0.0, 2.0 * pi / form.period_N);
    for (const auto& [k, v] : form.coeffs) {
        if (side > 0 ? k <= 0 : k >= 0) continue;
        const double ak = std::abs(static_cast<double>(k));
        const cplx knu = std::exp(form.nu.nu * std::log(ak));
        acc += knu * std::exp(two_pi_i_over_N * static_cast<double>(k) * z) * v;
    }
    if (side < 0) acc = -acc;
    return acc;
}

// Geometric extrapolation of the dropped modes beyond the stored range.
double f_tail_estimate(const BoundaryData& bd, double im_z, int side) {
    const auto& form = bd.form;
    double t_prev = 0.0, t_last = 0.0;
    int k_prev = 0, k_last = 0;
    for (const auto& [k, v] : form.coeffs) {
        if (side > 0 ? k <= 0 : k >= 0) continue;
        const int ik = std::abs(k);
        const double ak = static_cast<double>(ik);
        const double mag = std::pow(ak, form.nu.nu.real()) * v.norm() *
                           std::exp(-2.0 * pi * ak * std::abs(im_z) / form.period_N);
        // Keep the two largest |k| modes regardless of map iteration order.
        if (ik > k_last) {
            t_prev = t_last;
            k_prev = k_last;
            t_last = mag;
            k_last = ik;
        } else if (ik > k_prev) {
            t_prev = mag;
            k_prev = ik;
        }
    }
    if (t_prev <= 0.0 || t_last <= 0.0 || k_last == k_prev) return 0.0;
    const double q = std::pow(t_last / t_prev, 1.0 / (k_last - k_prev));
    if (q >= 0.999) return std::numeric_limits<double>::infinity();
    return t_last * q / (1.0 - q);
}

Vec psi_f(const BoundaryData& bd, cplx z, int side) {
    const cplx a = a_exponent(bd.form.nu);
    const Vec left = f_core(bd, z, side);
    const Vec right = f_core(bd, -1.0 / z, side);
    return left - specialfn::cpow(z, -a) * (bd.form.rep.mat_S * right);
}

bool is_direct(const PeriodFunction& pf, cplx z, int side) {
    const double lim = 1.02 * pf.direct_eta * std::max(1.0, std::norm(z));
    return side * z.imag() >= lim;
}

cplx i_raw(const PeriodFunction& pf, cplx zeta) {
    const cplx s = 0.5 + pf.source.form.nu.nu;
    const cplx z2 = zeta * zeta;
    cplx acc = 0.0;
    for (std::size_t i = 0; i < pf.nodes.size(); ++i) {
        const double t = pf.nodes[i];
        const cplx w1 = t / (t * t + z2);
        const cplx w2 = (1.0 / t) / (1.0 / (t * t) + z2);
        acc += pf.wux[i] * (specialfn::cpow(w1, s) - specialfn::cpow(w2, s));
    }
    return acc;
}

Vec psi_integral(const PeriodFunction& pf, cplx z, int side) {
    const cplx raw = i_raw(pf, z);
    cplx val;
    if (side > 0)
        val = raw / pf.cnorm_plus;
    else if (side < 0)
        val = raw / pf.cnorm_minus;
    else
        val = 0.5 * (raw / pf.cnorm_plus + raw / pf.cnorm_minus);
    Vec out(1);
    out[0] = val;
    return out;
}

Vec psi_recurse(const PeriodFunction& pf, cplx z, int depth);

Vec psi_point(const PeriodFunction& pf, cplx z, int depth) {
    const bool on_axis = std::abs(z.imag()) <= kAxisTol * std::max(1.0, std::abs(z.real()));
    if (on_axis && z.real() <= 0.0)
        throw DomainError("psi_eval: z on the cut (-inf, 0]");
    if (pf.source.mode == DataMode::DirectEverywhere) {
        if (on_axis)
            return 0.5 * (psi_f(pf.source, cplx(z.real(), 0.0), +1) +
                          psi_f(pf.source, cplx(z.real(), 0.0), -1));
        return psi_f(pf.source, z, z.imag() > 0.0 ? +1 : -1);
    }
    if (z.imag() > 0.0 && is_direct(pf, z, +1)) return psi_f(pf.source, z, +1);
    if (z.imag() < 0.0 && is_direct(pf, z, -1)) return psi_f(pf.source, z, -1);
    if (z.real() > 0.0)
        return psi_integral(pf, z, on_axis ? 0 : (z.imag() > 0.0 ? +1 : -1));
    return psi_recurse(pf, z, depth);
}

// Lewis relation solved for psi(z): pushes the argument toward the right
// half-plane. Only reached for Re z <= 0 off the cut in Integral mode.
Vec psi_recurse(const PeriodFunction& pf, cplx z, int depth) {
    if (depth >= kMaxRecursionDepth)
        throw DomainError("psi_eval: continuation recursion depth exceeded");
    const auto& rep = pf.source.form.rep;
    const cplx a = a_exponent(pf.source.form.nu);
    const cplx zp1 = z + 1.0;
    if (std::abs(zp1) < 1e-12) throw DomainError("psi_eval: z too close to -1");
    const Mat t_inv = rep.mat_T.inverse();
    const Mat st_inv = rep.mat_S * t_inv;
    const Vec first = psi_point(pf, zp1, depth + 1);
    const Vec second = psi_point(pf, z / zp1, depth + 1);
    return t_inv * first + specialfn::cpow(zp1, -a) * (t_inv * (st_inv * second));
}

struct LewisWords {
    Mat eta_T;
    Mat eta_ST_inv;  // eta(S T^-1)
};

LewisWords lewis_words(const finrep::FiniteRep& rep) {
    return {rep.mat_T, rep.mat_S * rep.mat_T.inverse()};
}

double residual_at(const Evaluator& psi, const SpectralParameter& nu,
                   const LewisWords& words, cplx z) {
    const cplx a = 2.0 * nu.nu + 1.0;
    const Vec base = psi(z);
    const Vec lhs = words.eta_T * base;
    const Vec rhs = psi(z + 1.0) +
                    specialfn::cpow(z + 1.0, -a) * (words.eta_ST_inv * psi(z / (z + 1.0)));
    return (lhs - rhs).norm() / std::max(1.0, base.norm());
}

}  // namespace

BoundaryData boundary_data(const maass::MaassForm& form, DataMode mode) {
    BoundaryData bd;
    bd.form = form;
    bd.mode = mode;
    return bd;
}

Vec f_eval(const BoundaryData& bd, cplx z) {
    const bool on_axis = std::abs(z.imag()) <= kAxisTol;
    if (on_axis && bd.mode == DataMode::Integral)
        throw DomainError("f_eval: z on the real axis");
    int side = z.imag() > 0.0 ? +1 : -1;
    if (on_axis) {
        const Vec up = f_core(bd, z, +1);
        const Vec lo = f_core(bd, z, -1);
        return 0.5 * (up + lo);
    }
    const double tail = f_tail_estimate(bd, z.imag(), side);
    if (!(tail < 1e-14 * std::max(1.0, static_cast<double>(bd.form.sup_coeff))))
        throw PrecisionError("f_eval: |Im z| too small for series truncation", tail);
    return f_core(bd, z, side);
}

PeriodFunction make_period_function(const BoundaryData& bd, int taylor_order) {
    PeriodFunction pf;
    pf.source = bd;
    const auto& form = bd.form;
    if (form.dim() == 0 || form.coeffs.empty())
        throw InputError("make_period_function: empty boundary data");

    if (bd.mode == DataMode::Integral) {
        if (form.dim() != 1)
            throw DomainError("make_period_function: integral route requires scalar data");
        if (form.period_N != 1)
            throw DomainError("make_period_function: integral route requires period 1");
        pf.direct_eta = std::log(1e10) * form.period_N / (2.0 * pi * form.k_max());

        // Antisymmetric mode amplitudes k (v_k - v_-k); they drive the
        // x-derivative of u on the imaginary axis.
        int k_max = form.k_max();
        std::vector<cplx> amp(static_cast<std::size_t>(k_max) + 1, 0.0);
        double amp_sup = 0.0;
        for (const auto& [k, v] : form.coeffs) {
            if (k > 0) amp[static_cast<std::size_t>(k)] += v[0];
            if (k < 0) amp[static_cast<std::size_t>(-k)] -= v[0];
        }
        for (const auto& c : amp) amp_sup = std::max(amp_sup, std::abs(c));
        if (amp_sup < 1e-13 * std::max(1.0, static_cast<double>(form.sup_coeff)))
            throw DomainError(
                "make_period_function: integral route needs antisymmetric modes");

        const auto rule = quadrature::gauss_legendre(kIntegralNodes);
        pf.nodes.resize(rule.nodes.size());
        pf.wux.resize(rule.nodes.size());
        const double half = 0.5 * (kIntegralHi - kIntegralLo);
        const double mid = 0.5 * (kIntegralHi + kIntegralLo);
        for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
            const double t = mid + half * rule.nodes[i];
            pf.nodes[i] = t;
            cplx ux = 0.0;
            for (int k = 1; k <= k_max; ++k) {
                if (amp[static_cast<std::size_t>(k)] == cplx(0.0)) continue;
                const auto kt = specialfn::bessel_k_scaled(form.nu.nu, 2.0 * pi * k * t);
                ux += static_cast<double>(k) * kt.value * amp[static_cast<std::size_t>(k)];
            }
            pf.wux[i] = half * rule.weights[i] * std::sqrt(t) * ux;
        }

        const cplx zp(1.0, 0.6);
        pf.cnorm_plus = i_raw(pf, zp) / psi_f(bd, zp, +1)[0];
        pf.cnorm_minus = i_raw(pf, std::conj(zp)) / psi_f(bd, std::conj(zp), -1)[0];
    }

    if (taylor_order > 0) {
        // With independent one-sided data the axis restriction is only
        // real-analytic; its germ is the average of the one-sided germs,
        // each sampled inside the strip set by the coefficient decay.
        const bool glued = bd.mode != DataMode::Integral;
        double radius = kTaylorRadius;
        if (glued) {
            double rate = std::numeric_limits<double>::infinity();
            for (const auto& [k, v] : form.coeffs) {
                const double mag = v.norm();
                if (mag <= 0.0) continue;
                rate = std::min(rate, -std::log(std::min(mag, 0.99)) /
                                          std::abs(static_cast<double>(k)));
            }
            if (std::isfinite(rate) && rate > 0.0) {
                const double sigma = form.period_N * rate / (2.0 * pi);
                radius = std::min(kTaylorRadius, 0.75 * sigma);
            }
        }
        std::vector<Vec> samples(kTaylorSamples);
        for (int j = 0; j < kTaylorSamples; ++j) {
            const double th = 2.0 * pi * j / kTaylorSamples;
            const cplx z = 1.0 + radius * std::exp(cplx(0.0, th));
            samples[static_cast<std::size_t>(j)] =
                glued ? (0.5 * (psi_f(bd, z, +1) + psi_f(bd, z, -1))).eval()
                      : psi_point(pf, z, 0);
        }
        pf.taylor_at_1.resize(static_cast<std::size_t>(taylor_order) + 1);
        for (int m = 0; m <= taylor_order; ++m) {
            Vec c = Vec::Zero(form.dim());
            for (int j = 0; j < kTaylorSamples; ++j) {
                const double th = 2.0 * pi * j / kTaylorSamples;
                c += samples[static_cast<std::size_t>(j)] * std::exp(cplx(0.0, -m * th));
            }
            pf.taylor_at_1[static_cast<std::size_t>(m)] =
                c / (kTaylorSamples * std::pow(radius, m));
        }
    }
    return pf;
}

Vec psi_eval(const PeriodFunction& pf, cplx z) { return psi_point(pf, z, 0); }

Vec psi_eval_side(const PeriodFunction& pf, double x, int side) {
    if (x <= 0.0) throw DomainError("psi_eval_side: x must be positive");
    if (pf.source.mode == DataMode::DirectEverywhere) {
        if (side == 0)
            return 0.5 * (psi_f(pf.source, x, +1) + psi_f(pf.source, x, -1));
        return psi_f(pf.source, x, side);
    }
    return psi_integral(pf, x, side);
}

std::vector<cplx> standard_grid() {
    std::vector<cplx> grid;
    for (int i = 0; i < 100; ++i)
        grid.push_back(0.1 * std::pow(100.0, i / 99.0));
    const cplx up = std::exp(cplx(0.0, pi / 3.0));
    for (int i = 0; i < 20; ++i) {
        const double r = 0.2 * std::pow(250.0, i / 19.0);
        grid.push_back(r * up);
        grid.push_back(r * std::conj(up));
    }
    return grid;
}

double lewis_residual(const PeriodFunction& pf, const std::vector<cplx>& grid) {
    return lewis_residual_of([&pf](cplx z) { return psi_eval(pf, z); },
                             pf.source.form.nu, pf.source.form.rep, grid);
}

double lewis_residual_of(const Evaluator& psi, const SpectralParameter& nu,
                         const finrep::FiniteRep& rep, const std::vector<cplx>& grid) {
    const LewisWords words = lewis_words(rep);
    std::vector<double> res(grid.size(), 0.0);
    parallel_for(grid.size(), [&](std::size_t i) {
        res[i] = residual_at(psi, nu, words, grid[i]);
    });
    return *std::max_element(res.begin(), res.end());
}

Vec bruggeman_invert(const Evaluator& psi, const SpectralParameter& nu,
                     const finrep::FiniteRep& rep, cplx z) {
    if (nu.is_half_integer_shift)
        throw DegenerateParameterError("bruggeman_invert: 1 + e^{-+2 pi i nu} vanishes");
    const cplx a = 2.0 * nu.nu + 1.0;
    const cplx phase = z.imag() >= 0.0 ? std::exp(cplx(0.0, -2.0 * pi) * nu.nu)
                                       : std::exp(cplx(0.0, 2.0 * pi) * nu.nu);
    const Vec comb = psi(z) + specialfn::cpow(z, -a) * (rep.mat_S * psi(-1.0 / z));
    return comb / (1.0 + phase);
}

Evaluator slash(const Evaluator& psi, const finrep::GroupWord& w,
                const SpectralParameter& nu, const finrep::FiniteRep& rep) {
    const auto m = w.int_matrix();
    if (m[0] < 0 || m[1] < 0 || m[2] < 0 || m[3] < 0)
        throw DomainError("slash: word outside the positive semigroup");
    const Mat eta_inv = finrep::rep_of_word(rep, w).inverse();
    const cplx a = 2.0 * nu.nu + 1.0;
    const double ma = static_cast<double>(m[0]), mb = static_cast<double>(m[1]);
    const double mc = static_cast<double>(m[2]), md = static_cast<double>(m[3]);
    return [psi, eta_inv, a, ma, mb, mc, md](cplx z) -> Vec {
        const cplx den = mc * z + md;
        return specialfn::cpow(den, -a) * (eta_inv * psi((ma * z + mb) / den));
    };
}

std::vector<finrep::GroupWord> semigroup_words(int n) {
    if (n < 0 || n > 20) throw RangeError("semigroup_words: length must be in [0, 20]");
    std::vector<finrep::GroupWord> words{finrep::GroupWord{}};
    for (int i = 0; i < n; ++i) {
        std::vector<finrep::GroupWord> next;
        next.reserve(words.size() * 2);
        for (const auto& w : words) {
            auto wt = w, wp = w;
            wt.tokens.push_back(finrep::Tok::T);
            wp.tokens.push_back(finrep::Tok::Tp);
            next.push_back(std::move(wt));
            next.push_back(std::move(wp));
        }
        words = std::move(next);
    }
    return words;
}

Vec continue_by_semigroup(const PeriodFunction& pf, int n, cplx z) {
    if (pf.taylor_at_1.empty())
        throw InputError("continue_by_semigroup: Taylor data at 1 required");
    const auto& form = pf.source.form;
    const Evaluator psi = [&pf](cplx w) { return psi_eval(pf, w); };
    for (double x : {0.8, 1.3}) {
        const double scale = std::max(1.0, psi(x).norm());
        const double q0 =
            transfer::q0_compute(psi, form.nu, form.rep, x, 12, &pf.taylor_at_1).norm();
        const double qi =
            transfer::qinf_compute(psi, form.nu, form.rep, x, 12, &pf.taylor_at_1).norm();
        if (!(q0 < 1e-6 * scale && qi < 1e-6 * scale))
            throw NotEigenfunctionError(
                "continue_by_semigroup: transfer fixed-point equations violated");
    }
    const auto words = semigroup_words(n);
    Vec acc = Vec::Zero(form.dim());
    for (const auto& w : words) acc += slash(psi, w, form.nu, form.rep)(z);
    return acc;
}

BoundaryLimit boundary_limit_residual(const PeriodFunction& pf) {
    const auto& form = pf.source.form;
    const cplx nu = form.nu.nu;
    const cplx up_fac = std::exp(cplx(0.0, -pi) * nu) *
                        (1.0 + std::exp(cplx(0.0, -2.0 * pi) * nu));
    const cplx lo_fac = std::exp(cplx(0.0, pi) * nu) *
                        (1.0 + std::exp(cplx(0.0, 2.0 * pi) * nu));
    auto estimate = [&](double y) {
        const Vec up = f_core(pf.source, cplx(0.0, y), +1);
        const Vec lo = f_core(pf.source, cplx(0.0, -y), -1);
        return (up_fac * up + lo_fac * lo).norm();
    };
    const double r20 = estimate(20.0);
    const double r40 = estimate(40.0);
    return {r40, std::abs(r40 - r20)};
}

AsymptoticCheck asymptotic_bound_check(const PeriodFunction& pf, double C) {
    return asymptotic_bound_check_of([&pf](cplx z) { return psi_eval(pf, z); },
                                     pf.source.form.nu, C);
}

AsymptoticCheck asymptotic_bound_check_of(const Evaluator& psi,
                                          const SpectralParameter& nu, double C) {
    if (!(C > 0.0 && C < 2.0 * nu.nu.real() + 1.0))
        throw DomainError("asymptotic_bound_check: need 0 < C < 2 Re nu + 1");
    const cplx dirs[3] = {1.0, std::exp(cplx(0.0, pi / 3.0)),
                          std::exp(cplx(0.0, -pi / 3.0))};
    AsymptoticCheck out;
    out.worst_slope = -1e9;
    double amp_max = 0.0;
    bool slopes_ok = true;
    for (const cplx& dir : dirs) {
        double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
        const int n = 12;
        for (int i = 0; i < n; ++i) {
            const double r = 10.0 * std::pow(10.0, i / (n - 1.0));
            const double mag = psi(r * dir).norm();
            amp_max = std::max(amp_max, mag * std::pow(r, C));
            const double lx = std::log(r), ly = std::log(std::max(mag, 1e-300));
            sx += lx;
            sy += ly;
            sxx += lx * lx;
            sxy += lx * ly;
        }
        const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
        out.worst_slope = std::max(out.worst_slope, slope);
        if (!(slope <= -C + 0.1)) slopes_ok = false;
    }
    out.bound = 10.0 * amp_max;
    for (int i = 0; i < 25; ++i) {
        const double x = 0.01 * std::pow(100.0, i / 24.0);
        out.sup_small = std::max(out.sup_small, psi(x).norm());
    }
    out.pass = slopes_ok && out.sup_small <= out.bound;
    return out;
}

}  // namespace lewis
}  // namespace lewisper
