#include "lewisper/specialfn.hpp"

#include <cmath>
#include <limits>
#include <mutex>
#include <sstream>
#include <vector>

#include "lewisper/errors.hpp"

namespace lewisper {

SpectralParameter spectral(cplx nu) {
    SpectralParameter p;
    p.nu = nu;
    p.s_weight = 2.0 * nu + 1.0;
    const double re = nu.real();
    p.is_half_integer_shift =
        std::abs(nu.imag()) < 1e-12 && std::abs(re - (std::round(re - 0.5) + 0.5)) < 1e-12;
    return p;
}

namespace specialfn {

cplx cpow(cplx z, cplx p) {
    if (z.real() <= 0.0 && z.imag() == 0.0)
        throw DomainError("cpow: argument on the cut (-inf, 0]");
    return std::exp(p * std::log(z));
}

// ---------------------------------------------------------------------------
// Gamma
// ---------------------------------------------------------------------------

namespace {

// Lanczos g = 7, 9 coefficients.
const double lanczos_g = 7.0;
const double lanczos_c[9] = {0.99999999999980993,     676.5203681218851,
                             -1259.1392167224028,     771.32342877765313,
                             -176.61502916214059,     12.507343278686905,
                             -0.13857109526572012,    9.9843695780195716e-6,
                             1.5056327351493116e-7};

bool near_nonpositive_integer(cplx z, double tol = 1e-12) {
    if (z.real() > 0.5) return false;
    return std::abs(z.imag()) < tol && std::abs(z.real() - std::round(z.real())) < tol;
}

cplx gamma_positive(cplx z) {
    // z with Re z >= 0.5
    z -= 1.0;
    cplx x = lanczos_c[0];
    for (int i = 1; i < 9; ++i) x += lanczos_c[i] / (z + static_cast<double>(i));
    cplx t = z + lanczos_g + 0.5;
    return std::sqrt(2.0 * pi) * std::pow(t, z + 0.5) * std::exp(-t) * x;
}

}  // namespace

cplx gamma_complex(cplx z) {
    if (near_nonpositive_integer(z))
        throw PoleError("gamma_complex: pole at nonpositive integer");
    if (z.real() < 0.5) {
        // Reflection: Gamma(z) = pi / (sin(pi z) Gamma(1 - z)).
        return pi / (std::sin(pi * z) * gamma_positive(1.0 - z));
    }
    return gamma_positive(z);
}

cplx gamma_nu(const SpectralParameter& nu, cplx s) {
    const cplx a1 = (s - nu.nu) / 2.0, a2 = (s + nu.nu) / 2.0;
    if (near_nonpositive_integer(a1) || near_nonpositive_integer(a2))
        throw PoleError("gamma_nu: Gamma factor pole");
    return gamma_complex(a1) * gamma_complex(a2) / (4.0 * std::exp(s * std::log(pi)));
}

// ---------------------------------------------------------------------------
// K-Bessel
// ---------------------------------------------------------------------------

namespace {

struct KResult {
    cplx scaled;          // e^{pi beta / 2} K_nu(t)
    double cancellation;  // relative cancellation-floor estimate
};

// Trapezoid on K_nu(t) = int_0^inf e^{-t cosh u} cosh(nu u) du, renormalized
// by e^{pi beta / 2} with beta = |Im nu| so the summands stay representable.
KResult bessel_core(cplx nu, double t) {
    const double beta = std::abs(nu.imag());
    const double alpha = std::abs(nu.real());
    // Step resolves both the oscillation e^{i beta u} and, at large t, the
    // integrand width ~ 1/sqrt(t).
    const double h = pi / ((beta + 38.0) * std::max(1.0, std::sqrt(t) / 6.0));
    const double pref = 0.5 * pi * beta;
    cplx sum = 0.5 * std::exp(cplx(pref - t, 0.0));  // u = 0 term: cosh(0) = 1
    double absum = std::abs(sum);
    for (int j = 1;; ++j) {
        const double u = j * h;
        const double expo = pref - t * std::cosh(u) + alpha * u;
        if (expo < -46.0 && u > 1.0) break;
        if (j > 2000000) break;
        const cplx term = std::exp(cplx(pref - t * std::cosh(u), 0.0)) * std::cosh(nu * u);
        sum += term;
        absum += std::abs(term);
    }
    KResult r;
    r.scaled = h * sum;
    const double denom = std::abs(sum);
    r.cancellation = denom > 0.0
                         ? std::numeric_limits<double>::epsilon() * absum / denom
                         : 1.0;
    return r;
}

}  // namespace

ScaledBessel bessel_k_scaled(cplx nu, double t) {
    if (t <= 0.0) throw DomainError("bessel_k: t must be positive");
    if (std::abs(nu.imag()) > 50.0)
        throw DomainError("bessel_k: |Im nu| > 50 unsupported");
    KResult r = bessel_core(nu, t);
    return {r.scaled, r.cancellation};
}

cplx bessel_k(cplx nu, double t) {
    ScaledBessel s = bessel_k_scaled(nu, t);
    if (s.cancellation > 1e-7) {
        std::ostringstream os;
        os << "bessel_k: cancellation floor " << s.cancellation
           << " exceeds 1e-7 at nu = (" << nu.real() << "," << nu.imag() << "), t = " << t;
        throw PrecisionError(os.str(), s.cancellation);
    }
    return std::exp(-0.5 * pi * std::abs(nu.imag())) * s.value;
}

// ---------------------------------------------------------------------------
// Bernoulli numbers
// ---------------------------------------------------------------------------

namespace {

std::vector<Rational> build_bernoulli(int kmax) {
    using boost::multiprecision::cpp_int;
    std::vector<Rational> b(kmax + 1);
    std::vector<std::vector<cpp_int>> binom(kmax + 2);
    for (int n = 0; n <= kmax + 1; ++n) {
        binom[n].resize(n + 1);
        binom[n][0] = binom[n][n] = 1;
        for (int k = 1; k < n; ++k) binom[n][k] = binom[n - 1][k - 1] + binom[n - 1][k];
    }
    b[0] = 1;
    for (int k = 1; k <= kmax; ++k) {
        Rational acc = 0;
        for (int j = 0; j < k; ++j) acc += Rational(binom[k + 1][j]) * b[j];
        b[k] = -acc / Rational(binom[k + 1][k]);
    }
    return b;
}

}  // namespace

const Rational& bernoulli(int k) {
    if (k < 0 || k > 60) throw RangeError("bernoulli: k outside [0, 60]");
    static const std::vector<Rational> table = build_bernoulli(60);
    return table[k];
}

double bernoulli_d(int k) { return static_cast<double>(bernoulli(k)); }

// ---------------------------------------------------------------------------
// Hurwitz zeta
// ---------------------------------------------------------------------------

namespace {

cplx pochhammer(cplx a, int m) {
    cplx p = 1.0;
    for (int i = 0; i < m; ++i) p *= a + static_cast<double>(i);
    return p;
}

// Euler-Maclaurin tail sum_{n >= 0} (n + w)^{-a} with |w| large.
cplx em_tail(cplx a, cplx w, int terms) {
    cplx acc = cpow(w, 1.0 - a) / (a - 1.0) + 0.5 * cpow(w, -a);
    for (int j = 1; j <= terms; ++j) {
        acc += bernoulli_d(2 * j) / std::tgamma(2.0 * j + 1.0) * pochhammer(a, 2 * j - 1) *
               cpow(w, -a - (2.0 * j - 1.0));
    }
    return acc;
}

}  // namespace

cplx hurwitz_zeta(cplx a, cplx z) {
    if (a.real() <= 1.0)
        throw DomainError("hurwitz_zeta: requires Re a > 1");
    if (z.real() <= 0.0 && std::abs(z.imag()) == 0.0)
        throw DomainError("hurwitz_zeta: z on the cut (-inf, 0]");
    // Direct terms to the shift threshold, then the asymptotic expansion.
    const int shift = 30;
    cplx acc = 0.0;
    for (int n = 0; n < shift; ++n) acc += cpow(z + static_cast<double>(n), -a);
    return acc + em_tail(a, z + static_cast<double>(shift), 12);
}

std::pair<cplx, double> hurwitz_asymptotic(cplx a, cplx z, int num_terms) {
    if (std::abs(z) <= 1.0)
        throw DivergenceError("hurwitz_asymptotic: |z| <= 1 is outside the expansion regime");
    if (a.real() <= 1.0)
        throw DomainError("hurwitz_asymptotic: requires Re a > 1");
    cplx value = em_tail(a, z, num_terms);
    const int j = num_terms + 1;
    const double bound = std::abs(bernoulli_d(2 * j) / std::tgamma(2.0 * j + 1.0) *
                                  pochhammer(a, 2 * j - 1) * cpow(z, -a - (2.0 * j - 1.0)));
    return {value, bound};
}

}  // namespace specialfn
}  // namespace lewisper
