#include "lewisper/transfer.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

#include "lewisper/errors.hpp"
#include "lewisper/parallel.hpp"
#include "lewisper/specialfn.hpp"

namespace lewisper {
namespace transfer {

namespace {

constexpr int kDirectBranches = 24;   // direct terms before residue-class tails
constexpr int kTailPowers = 12;       // binomial expansion depth of the tails
constexpr int kCircleSamples = 512;   // collocation circle for the disc model
constexpr int kTaylorSamples = 512;
constexpr double kTaylorRadius = 0.45;

cplx a_exponent(const SpectralParameter& nu) { return 2.0 * nu.nu + 1.0; }

Mat eta_Tp(const finrep::FiniteRep& rep) {
    return rep.mat_S * rep.mat_T.inverse() * rep.mat_S;
}

// Branch words for the two operators, n = 1, 2, ...:
//   Linf: eta(T' T^{n-1})^-1;  L0 (branch index n-1 >= 0): eta(T T'^{n-1})^-1.
// Both sequences have period rep.order_T.
std::vector<Mat> branch_words(Kind kind, const finrep::FiniteRep& rep, long count) {
    const Mat t_inv = rep.mat_T.inverse();
    const Mat tp_inv = eta_Tp(rep).inverse();
    std::vector<Mat> words;
    words.reserve(static_cast<std::size_t>(count));
    Mat w = kind == Kind::Linf ? tp_inv : t_inv;
    for (long n = 1; n <= count; ++n) {
        words.push_back(w);
        w = kind == Kind::Linf ? (t_inv * w).eval() : (tp_inv * w).eval();
    }
    return words;
}

double tail_from_last(double last_norm, double n, const cplx& a) {
    if (a.real() > 1.05) return last_norm * (n + 1.0) / (a.real() - 1.0);
    return last_norm * n;
}

double binom_table(int m, int t) {
    double b = 1.0;
    for (int i = 1; i <= t; ++i) b *= static_cast<double>(m - i + 1) / i;
    return b;
}

cplx cbinom(const cplx& w, int j) {
    cplx b = 1.0;
    for (int i = 1; i <= j; ++i) b *= (w - static_cast<double>(i - 1)) / static_cast<double>(i);
    return b;
}

}  // namespace

ApplyResult apply_L0(const Evaluator& psi, const SpectralParameter& nu,
                     const finrep::FiniteRep& rep, double x, long n_max) {
    if (!(x > 0.0)) throw DomainError("apply_L0: x must be positive");
    if (nu.nu.real() < -1e-12)
        throw DivergenceError("apply_L0: series diverges for Re nu < 0");
    const cplx a = a_exponent(nu);
    const Mat t_inv = rep.mat_T.inverse();
    const Mat tp_inv = eta_Tp(rep).inverse();
    const double w = 1.0 / x;
    Vec acc = Vec::Zero(rep.dim);
    Mat word = t_inv;  // eta(T T'^n)^-1 at n = 0
    double last = 0.0;
    for (long n = 0; n <= n_max; ++n) {
        const double base = static_cast<double>(n) + w;
        const Vec term =
            specialfn::cpow(base, -a) * (word * psi(1.0 + 1.0 / base));
        acc += term;
        last = term.norm();
        word = tp_inv * word;
    }
    return {specialfn::cpow(x, -a) * acc,
            std::pow(x, -a.real()) * tail_from_last(last, static_cast<double>(n_max) + w, a)};
}

ApplyResult apply_Linf(const Evaluator& psi, const SpectralParameter& nu,
                       const finrep::FiniteRep& rep, double x, long n_max) {
    if (!(x > 0.0)) throw DomainError("apply_Linf: x must be positive");
    if (nu.nu.real() < -1e-12)
        throw DivergenceError("apply_Linf: series diverges for Re nu < 0");
    const cplx a = a_exponent(nu);
    const Mat t_inv = rep.mat_T.inverse();
    Vec acc = Vec::Zero(rep.dim);
    Mat word = eta_Tp(rep).inverse();  // eta(T' T^{n-1})^-1 at n = 1
    double last = 0.0;
    for (long n = 1; n <= n_max; ++n) {
        const double base = static_cast<double>(n) + x;
        const Vec term =
            specialfn::cpow(base, -a) * (word * psi(1.0 - 1.0 / base));
        acc += term;
        last = term.norm();
        word = t_inv * word;
    }
    return {acc, tail_from_last(last, static_cast<double>(n_max) + x, a)};
}

std::vector<Vec> taylor_at_1(const Evaluator& psi, int order, Eigen::Index dim) {
    std::vector<Vec> samples(kTaylorSamples);
    for (int j = 0; j < kTaylorSamples; ++j) {
        const double th = 2.0 * pi * j / kTaylorSamples;
        samples[static_cast<std::size_t>(j)] =
            psi(1.0 + kTaylorRadius * std::exp(cplx(0.0, th)));
    }
    std::vector<Vec> out(static_cast<std::size_t>(order) + 1);
    for (int m = 0; m <= order; ++m) {
        Vec c = Vec::Zero(dim);
        for (int j = 0; j < kTaylorSamples; ++j) {
            const double th = 2.0 * pi * j / kTaylorSamples;
            c += samples[static_cast<std::size_t>(j)] * std::exp(cplx(0.0, -m * th));
        }
        out[static_cast<std::size_t>(m)] = c / (kTaylorSamples * std::pow(kTaylorRadius, m));
    }
    return out;
}

namespace {

// Shared residue-class tail: sum_{n > NF} (n+x)^{-a} W_n P_m(1/(n+x)) with
// psi expanded around 1 as sum_m C_m (sign/(n+x))^m.
Vec class_tail(const std::vector<Vec>& taylor, int M, double sign,
               const std::vector<Mat>& words, const cplx& a, double x, int period,
               Eigen::Index dim) {
    Vec acc = Vec::Zero(dim);
    double scale = 0.0;
    for (const auto& c : taylor) scale = std::max(scale, c.norm());
    for (int m = 0; m <= M && m < static_cast<int>(taylor.size()); ++m) {
        const Vec& Cm = taylor[static_cast<std::size_t>(m)];
        const cplx ex = a + static_cast<double>(m);
        if (ex.real() <= 1.0 + 1e-9) {
            if (Cm.norm() <= 1e-8 * std::max(1.0, scale)) continue;
            throw PrecisionError(
                "q-compute: non-vanishing order-" + std::to_string(m) +
                    " Taylor term with non-convergent tail exponent",
                Cm.norm());
        }
        Mat coeff = Mat::Zero(dim, dim);
        for (int c = 0; c < period; ++c) {
            const long n0 = kDirectBranches + 1 + c;
            // words[n] covers branch index n+1; period makes the class choice valid.
            const Mat& w = words[static_cast<std::size_t>((n0 - 1) % words.size())];
            const cplx zeta = specialfn::hurwitz_zeta(
                ex, (static_cast<double>(n0) + x) / period);
            coeff += w * (zeta * specialfn::cpow(static_cast<double>(period), -ex));
        }
        acc += std::pow(sign, m) * (coeff * Cm);
    }
    return acc;
}

}  // namespace

Vec qinf_compute(const Evaluator& psi, const SpectralParameter& nu,
                 const finrep::FiniteRep& rep, double x, int taylor_order,
                 const std::vector<Vec>* taylor) {
    if (!(x > 0.0)) throw DomainError("qinf_compute: x must be positive");
    const cplx a = a_exponent(nu);
    std::vector<Vec> local;
    if (taylor == nullptr) {
        local = taylor_at_1(psi, taylor_order + 1, rep.dim);
        taylor = &local;
    }
    const auto words = branch_words(Kind::Linf, rep, kDirectBranches + rep.order_T);
    Vec acc = psi(x);
    for (int n = 1; n <= kDirectBranches; ++n) {
        const double base = static_cast<double>(n) + x;
        acc -= specialfn::cpow(base, -a) *
               (words[static_cast<std::size_t>(n - 1)] * psi(1.0 - 1.0 / base));
    }
    acc -= class_tail(*taylor, taylor_order, -1.0, words, a, x, rep.order_T, rep.dim);
    return acc;
}

Vec q0_compute(const Evaluator& psi, const SpectralParameter& nu,
               const finrep::FiniteRep& rep, double x, int taylor_order,
               const std::vector<Vec>* taylor) {
    if (!(x > 0.0)) throw DomainError("q0_compute: x must be positive");
    const cplx a = a_exponent(nu);
    std::vector<Vec> local;
    if (taylor == nullptr) {
        local = taylor_at_1(psi, taylor_order + 1, rep.dim);
        taylor = &local;
    }
    const auto words = branch_words(Kind::L0, rep, kDirectBranches + rep.order_T + 1);
    Vec acc = specialfn::cpow(x, -a) * psi(1.0 / x);
    for (int n = 0; n <= kDirectBranches; ++n) {
        const double base = static_cast<double>(n) + x;
        acc -= specialfn::cpow(base, -a) *
               (words[static_cast<std::size_t>(n)] * psi(1.0 + 1.0 / base));
    }
    // words[i] is the branch-(i) weight for L0 (index from 0): shift by one so
    // the class tail starting at n = kDirectBranches + 1 lines up.
    std::vector<Mat> shifted(words.begin() + 1, words.end());
    acc -= class_tail(*taylor, taylor_order, 1.0, shifted, a, x, rep.order_T, rep.dim);
    return acc;
}

std::vector<Vec> cstar_coeffs(const std::vector<Vec>& taylor, const SpectralParameter& nu,
                              int M) {
    if (static_cast<int>(taylor.size()) < M + 2)
        throw InputError("cstar_coeffs: need Taylor orders up to M + 1");
    const cplx a = a_exponent(nu);
    const Eigen::Index dim = taylor.front().size();
    std::vector<Vec> out(static_cast<std::size_t>(M) + 2);
    for (int p = -1; p <= M; ++p) {
        Vec acc = Vec::Zero(dim);
        for (int q = 0; q <= p + 1; ++q) {
            const cplx den = static_cast<double>(q) + a - 1.0;
            if (std::abs(den) < 1e-12)
                throw DegenerateParameterError("cstar_coeffs: pole at q + 2 nu = 0");
            const int j = p - q + 1;
            const double sign = (j % 2 == 0) ? 1.0 : -1.0;
            acc += sign * specialfn::bernoulli_d(j) *
                   cbinom(static_cast<double>(p) + a - 1.0, j) / den *
                   taylor[static_cast<std::size_t>(q)];
        }
        out[static_cast<std::size_t>(p) + 1] = acc;
    }
    return out;
}

TransferOperatorDisc make_disc(Kind kind, const SpectralParameter& nu,
                               const finrep::FiniteRep& rep, int basis_size, long n_max,
                               double radius) {
    if (basis_size < 2 || n_max < 8 || !(radius > 0.0 && radius < 2.0))
        throw InputError("make_disc: invalid discretization parameters");
    const cplx a = a_exponent(nu);
    if (a.real() <= 1.0 + 1e-9)
        throw DomainError("make_disc: residue-class tails need Re nu > 0");

    TransferOperatorDisc disc;
    disc.kind = kind;
    disc.nu = nu;
    disc.rep = rep;
    disc.basis_size = basis_size;
    disc.n_max = n_max;
    disc.radius = radius;

    const Eigen::Index d = rep.dim;
    const int q = rep.order_T;
    const auto words = branch_words(kind, rep, std::max<long>(n_max, q));

    std::vector<double> binom(static_cast<std::size_t>(basis_size) *
                              (kTailPowers + 1));
    for (int m = 0; m < basis_size; ++m)
        for (int t = 0; t <= kTailPowers; ++t)
            binom[static_cast<std::size_t>(m) * (kTailPowers + 1) + t] =
                binom_table(m, t);

    // Branch values F_m(z_j) on the collocation circle, m-major storage.
    std::vector<Mat> values(static_cast<std::size_t>(kCircleSamples) * basis_size,
                            Mat::Zero(d, d));
    parallel_for(static_cast<std::size_t>(kCircleSamples), [&](std::size_t j) {
        const double th = 2.0 * pi * static_cast<double>(j) / kCircleSamples;
        const cplx z = 1.0 + radius * std::exp(cplx(0.0, th));
        std::vector<cplx> pw(static_cast<std::size_t>(n_max));
        std::vector<cplx> wb(static_cast<std::size_t>(n_max));
        for (long n = 1; n <= n_max; ++n) {
            const cplx nz = static_cast<double>(n) + z;
            pw[static_cast<std::size_t>(n - 1)] = specialfn::cpow(nz, -a);
            wb[static_cast<std::size_t>(n - 1)] = (1.0 / nz - 1.0) / radius;
        }
        // Residue-class zeta data for the truncated remainder.
        std::vector<Mat> tail_t(kTailPowers + 1, Mat::Zero(d, d));
        for (int t = 0; t <= kTailPowers; ++t) {
            for (int c = 0; c < q; ++c) {
                const long n0 = n_max + 1 + c;
                const Mat& w = words[static_cast<std::size_t>((n0 - 1) % q)];
                const cplx ex = a + static_cast<double>(t);
                const cplx zeta = specialfn::hurwitz_zeta(
                    ex, (static_cast<double>(n0) + z) / static_cast<double>(q));
                tail_t[static_cast<std::size_t>(t)] +=
                    w * (zeta * specialfn::cpow(static_cast<double>(q), -ex));
            }
        }
        std::vector<cplx> acc_pow(static_cast<std::size_t>(n_max), 1.0);
        double rm = 1.0;
        for (int m = 0; m < basis_size; ++m) {
            Mat f = Mat::Zero(d, d);
            // Per-class scalar sums, then one matrix multiply per class.
            for (int c = 0; c < q; ++c) {
                cplx s = 0.0;
                for (long n = c + 1; n <= n_max; n += q)
                    s += pw[static_cast<std::size_t>(n - 1)] *
                         acc_pow[static_cast<std::size_t>(n - 1)];
                f += words[static_cast<std::size_t>(c)] * s;
            }
            // Remainder: ((1/(n+z) - 1)/r)^m expanded in powers of 1/(n+z).
            const double sign_m = (m % 2 == 0) ? 1.0 : -1.0;
            for (int t = 0; t <= std::min(m, kTailPowers); ++t) {
                const double sign_t = (t % 2 == 0) ? 1.0 : -1.0;
                f += (sign_m * sign_t *
                      binom[static_cast<std::size_t>(m) * (kTailPowers + 1) + t] / rm) *
                     tail_t[static_cast<std::size_t>(t)];
            }
            values[static_cast<std::size_t>(j) * basis_size + m] = f;
            for (long n = 1; n <= n_max; ++n)
                acc_pow[static_cast<std::size_t>(n - 1)] *=
                    wb[static_cast<std::size_t>(n - 1)];
            rm *= radius;
        }
    });

    disc.matrix = Mat::Zero(basis_size * d, basis_size * d);
    for (int m = 0; m < basis_size; ++m) {
        for (int mp = 0; mp < basis_size; ++mp) {
            Mat g = Mat::Zero(d, d);
            for (int j = 0; j < kCircleSamples; ++j) {
                const double th = 2.0 * pi * j / kCircleSamples;
                g += values[static_cast<std::size_t>(j) * basis_size + m] *
                     std::exp(cplx(0.0, -mp * th));
            }
            disc.matrix.block(mp * d, m * d, d, d) = g / kCircleSamples;
        }
    }
    return disc;
}

namespace {

Spectrum eigen_of(const Mat& m, int how_many) {
    Eigen::ComplexEigenSolver<Mat> solver(m);
    if (solver.info() != Eigen::Success)
        throw ConvergenceError("eigen decomposition failed", {}, {});
    const auto& vals = solver.eigenvalues();
    std::vector<Eigen::Index> idx(static_cast<std::size_t>(vals.size()));
    for (Eigen::Index i = 0; i < vals.size(); ++i) idx[static_cast<std::size_t>(i)] = i;
    std::sort(idx.begin(), idx.end(), [&](Eigen::Index a, Eigen::Index b) {
        return std::abs(vals[a]) > std::abs(vals[b]);
    });
    Spectrum out;
    const int n = std::min<int>(how_many, static_cast<int>(vals.size()));
    out.vectors = Mat(m.rows(), n);
    for (int i = 0; i < n; ++i) {
        out.eigenvalues.push_back(vals[idx[static_cast<std::size_t>(i)]]);
        out.vectors.col(i) = solver.eigenvectors().col(idx[static_cast<std::size_t>(i)]);
    }
    return out;
}

}  // namespace

Spectrum spectrum(const TransferOperatorDisc& disc, int how_many) {
    Spectrum coarse = eigen_of(disc.matrix, how_many);
    const TransferOperatorDisc fine =
        make_disc(disc.kind, disc.nu, disc.rep, 2 * disc.basis_size, disc.n_max,
                  disc.radius);
    Spectrum refined = eigen_of(fine.matrix, how_many);
    for (std::size_t i = 0; i < coarse.eigenvalues.size(); ++i) {
        const double dev = std::abs(coarse.eigenvalues[i] - refined.eigenvalues[i]);
        if (dev > 1e-6 * std::max(1.0, std::abs(coarse.eigenvalues[i])))
            throw ConvergenceError("transfer spectrum unstable under basis doubling",
                                   coarse.eigenvalues, refined.eigenvalues);
    }
    coarse.converged = true;
    return coarse;
}

Vec disc_eigenfunction(const TransferOperatorDisc& disc, const Spectrum& spec, int idx,
                       cplx z) {
    if (idx < 0 || idx >= spec.vectors.cols())
        throw RangeError("disc_eigenfunction: eigenpair index out of range");
    if (std::abs(z - 1.0) > disc.radius + 1e-12)
        throw DomainError("disc_eigenfunction: z outside the disc");
    const Eigen::Index d = disc.rep.dim;
    const cplx w = (z - 1.0) / disc.radius;
    Vec acc = Vec::Zero(d);
    cplx p = 1.0;
    for (int m = 0; m < disc.basis_size; ++m) {
        acc += p * spec.vectors.col(idx).segment(m * d, d);
        p *= w;
    }
    return acc;
}

Vec linf_eigenfunction(const TransferOperatorDisc& disc, const Spectrum& spec, int idx,
                       double x) {
    return disc_eigenfunction(disc, spec, idx, 1.0 - x);
}

Vec apply_disc_series(const TransferOperatorDisc& disc,
                      const std::function<Vec(cplx)>& h, cplx z) {
    const cplx a = a_exponent(disc.nu);
    const Eigen::Index d = disc.rep.dim;
    const int q = disc.rep.order_T;
    const auto words = branch_words(disc.kind, disc.rep, std::max<long>(disc.n_max, q));
    Vec acc = Vec::Zero(d);
    for (long n = 1; n <= disc.n_max; ++n) {
        const cplx nz = static_cast<double>(n) + z;
        acc += specialfn::cpow(nz, -a) *
               (words[static_cast<std::size_t>((n - 1) % q)] * h(1.0 / nz));
    }
    // Remainder through a short Taylor expansion of h at 0.
    const int orders = 8, samples = 32;
    const double r0 = 0.15;
    std::vector<Vec> hs(samples);
    for (int j = 0; j < samples; ++j)
        hs[static_cast<std::size_t>(j)] =
            h(r0 * std::exp(cplx(0.0, 2.0 * pi * j / samples)));
    for (int t = 0; t <= orders; ++t) {
        Vec ht = Vec::Zero(d);
        for (int j = 0; j < samples; ++j)
            ht += hs[static_cast<std::size_t>(j)] *
                  std::exp(cplx(0.0, -2.0 * pi * t * j / samples));
        ht /= samples * std::pow(r0, t);
        Mat coeff = Mat::Zero(d, d);
        for (int c = 0; c < q; ++c) {
            const long n0 = disc.n_max + 1 + c;
            const cplx ex = a + static_cast<double>(t);
            const cplx zeta = specialfn::hurwitz_zeta(
                ex, (static_cast<double>(n0) + z) / static_cast<double>(q));
            coeff += words[static_cast<std::size_t>((n0 - 1) % q)] *
                     (zeta * specialfn::cpow(static_cast<double>(q), -ex));
        }
        acc += coeff * ht;
    }
    return acc;
}

}  // namespace transfer
}  // namespace lewisper
