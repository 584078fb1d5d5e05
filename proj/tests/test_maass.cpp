#include <doctest.h>

#include <cmath>
#include <map>

#include "lewisper/errors.hpp"
#include "lewisper/finrep.hpp"
#include "lewisper/maass.hpp"
#include "helpers.hpp"

using namespace lewisper;
using namespace lewisper::maass;
using testutil::rel_err;

namespace {

std::vector<cplx> probe_points() {
    std::vector<cplx> pts;
    for (int i = 0; i < 20; ++i)
        pts.push_back(cplx(-0.45 + 0.9 * i / 19.0, 0.9 + 0.5 * ((7 * i) % 20) / 19.0));
    return pts;
}

}  // namespace

TEST_CASE("form construction validates cuspidality and eigenvector structure") {
    const auto rep = finrep::s3_standard_rep();
    std::map<int, Vec> coeffs;
    Vec plus(2);
    plus << 0.5, 0.5 * std::sqrt(3.0);

    coeffs[0] = plus;
    CHECK_THROWS_AS((void)make_form(spectral(0.3), rep, coeffs), InputError);

    coeffs.clear();
    coeffs[1] = plus;  // odd mode must sit in the -1 eigenspace
    CHECK_THROWS_AS((void)make_form(spectral(0.3), rep, coeffs), InputError);

    coeffs.clear();
    Vec wrong(1);
    wrong << 1.0;
    coeffs[2] = wrong;
    CHECK_THROWS_AS((void)make_form(spectral(0.3), rep, coeffs), DimensionError);
}

TEST_CASE("synthetic data is periodic and automorphic under the translation") {
    const auto tw = testutil::twisted_form();
    CHECK(tw.period_N == 2);
    const cplx z(0.37, 1.21);
    CHECK((evaluate(tw, z + cplx(2.0, 0.0)) - evaluate(tw, z)).norm() < 1e-12);
    CHECK(automorphy_residual(tw, testutil::word("T"), probe_points()) < 1e-12);

    const auto geo = testutil::geometric_form();
    CHECK(geo.period_N == 1);
    CHECK((evaluate(geo, z + cplx(1.0, 0.0)) - evaluate(geo, z)).norm() < 1e-13);
}

TEST_CASE("evaluation decays toward the cusp and reports truncation tails") {
    const auto geo = testutil::geometric_form();
    double tail_low = 0.0, tail_high = 0.0;
    const Vec at1 = evaluate(geo, cplx(0.1, 1.0), &tail_low);
    const Vec at5 = evaluate(geo, cplx(0.1, 5.0), &tail_high);
    CHECK(at5.norm() < at1.norm() * 1e-8);
    CHECK(tail_low >= 0.0);
    CHECK(tail_high <= tail_low);

    double tail_shallow = 0.0;
    (void)evaluate(geo, cplx(0.0, 0.05), &tail_shallow);
    CHECK(tail_shallow > tail_low);

    CHECK_THROWS_AS((void)evaluate(geo, cplx(0.0, -1.0)), DomainError);
}

TEST_CASE("evaluation is linear in the coefficients") {
    const auto f1 = testutil::geometric_form(2024);
    const auto f2 = testutil::geometric_form(5555);
    std::map<int, Vec> sum;
    for (const auto& [k, v] : f1.coeffs) sum[k] = v;
    for (const auto& [k, v] : f2.coeffs) {
        auto it = sum.find(k);
        if (it == sum.end()) sum[k] = v;
        else it->second += v;
    }
    const auto fs = make_form(f1.nu, f1.rep, sum);
    const cplx z(0.23, 0.8);
    CHECK((evaluate(fs, z) - evaluate(f1, z) - evaluate(f2, z)).norm() < 1e-14);
}

TEST_CASE("cusp integrals vanish for cuspidal data and pick out a constant mode") {
    const auto& solved = testutil::solved_form();
    const auto tw = testutil::twisted_form();
    CHECK(cusp_integral(solved, cplx(0.15, 0.9)).norm() < 1e-9);
    CHECK(cusp_integral(tw, cplx(-0.2, 1.1)).norm() < 1e-9);

    // A constant mode survives the average: u = sqrt(y) c integrates to N sqrt(y) c.
    Vec c(2);
    c << cplx(0.7, -0.2), cplx(0.1, 0.4);
    auto u = [&](cplx z) -> Vec { return std::sqrt(z.imag()) * c; };
    const cplx z(0.3, 1.1);
    const Vec got = cusp_integral_of(u, 2, z);
    CHECK((got - 2.0 * std::sqrt(1.1) * c).norm() < 1e-12);
}

TEST_CASE("closed-form line-integral basis: live quadrature and fixed references") {
    struct Case {
        int k, N;
        double nu, a, b;
        cplx quad, basis;
    };
    const Case cases[] = {
        {1, 1, 0.25, 0.0, 1.0,
         cplx(6.7627077071776333e-4, 0.0), cplx(2.1526367205659564e-4, 0.0)},
        {2, 1, 0.15, 0.3, 0.8,
         cplx(-1.3919695263383106e-5, -1.011325058572261e-5),
         cplx(-4.0978999446264907e-6, -2.977298585281959e-6)},
        {3, 2, 0.4, -0.25, 1.2,
         cplx(-6.9350006543441196e-7, -6.9350006543441196e-7),
         cplx(-2.2480955103753053e-7, -2.2480955103753053e-7)},
    };
    for (const auto& c : cases) {
        const cplx live_quad = testutil::fourier_line_integral(c.nu, c.k, c.N, c.a, c.b);
        CHECK(rel_err(live_quad, c.quad) < 1e-8);
        const cplx live_basis = poisson_basis(c.k, spectral(c.nu), c.a, c.b, c.N);
        CHECK(rel_err(live_basis, c.basis) < 1e-8);
        // Bridge between the two routes.
        const double sign = c.k > 0 ? 1.0 : -1.0;
        const cplx bridged = sign * std::pow(c.b, 0.5 - c.nu) / pi * live_quad;
        CHECK(rel_err(live_basis, bridged) < 1e-8);
    }
    CHECK_THROWS_AS((void)poisson_basis(1, spectral(0.5), 0.0, 1.0, 1), PoleError);
    CHECK_THROWS_AS((void)poisson_basis(0, spectral(0.25), 0.0, 1.0, 1), DomainError);
    CHECK_THROWS_AS((void)poisson_basis(1, spectral(0.25), 0.0, -1.0, 1), DomainError);
}

TEST_CASE("eigenvalue search locates the first odd form and validates it") {
    const auto& form = testutil::solved_form();
    CHECK(std::abs(form.nu.nu.imag() - 9.533695260764828) < 1e-3);
    CHECK(std::abs(form.nu.nu.real()) < 1e-12);
    CHECK(std::abs(form.coeffs.at(1)[0] - 1.0) < 1e-12);
    CHECK(automorphy_residual(form, testutil::word("S"), probe_points()) < 1e-6);
    CHECK(hecke_defect(form) < 1e-4);
}

TEST_CASE("eigenvalue search rejects windows without a validated eigenvalue") {
    // No indicator crossing at all in [9.0, 9.2] for even parity.
    CHECK_THROWS_AS((void)hejhal_solve(9.0, 9.2, Parity::Even, 25), NotFoundError);
    // [9.4, 9.7] contains the odd eigenvalue; the even-parity indicator still
    // produces a crossing there, and only the automorphy gate rejects it.
    CHECK_THROWS_AS((void)hejhal_solve(9.4, 9.7, Parity::Even, 25), NotFoundError);
    CHECK_THROWS_AS((void)hejhal_solve(0.2, 0.4, Parity::Odd, 25), DomainError);
}

TEST_CASE("perturbed coefficients break automorphy measurably") {
    const auto bad = testutil::perturbed_form();
    CHECK(automorphy_residual(bad, testutil::word("S"), probe_points()) > 1e-3);
}
