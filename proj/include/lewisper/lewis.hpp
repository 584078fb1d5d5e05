#pragma once

#include <functional>
#include <vector>

#include "lewisper/maass.hpp"
#include "lewisper/types.hpp"

namespace lewisper {
namespace lewis {

using Evaluator = std::function<Vec(cplx)>;

// How psi is evaluated away from the f-series convergence regions.
// Integral: automorphic (solved) forms; a calibrated integral representation
//   covers the right half-plane and the Lewis recursion covers the rest.
// DirectEverywhere: synthetic data with geometric coefficient decay whose
//   f-series converge on all of C minus the cut.
enum class DataMode { Integral, DirectEverywhere };

// Boundary data f_u: upper half-plane uses k > 0, lower uses k < 0 with the
// leading minus sign; k^nu via the principal logarithm of positive k.
struct BoundaryData {
    maass::MaassForm form;
    DataMode mode = DataMode::Integral;
    Vec v0_injection;  // optional constant term (size 0 = none); f gains +-(1/2) v0
};

BoundaryData boundary_data(const maass::MaassForm& form, DataMode mode);

Vec f_eval(const BoundaryData& bd, cplx z);

// Period function psi(z) = f(z) - z^{-2 nu - 1} eta(S) f(-1/z) on C minus
// (-inf, 0], with optional Taylor data at 1.
struct PeriodFunction {
    BoundaryData source;
    std::vector<Vec> taylor_at_1;  // C_m, m = 0..M

    // Integral-route machinery (Integral mode, scalar forms).
    std::vector<double> nodes;   // Gauss-Legendre nodes on [1, 12]
    std::vector<cplx> wux;       // weight * sqrt(t) * sum_k k (v_k - v_-k) Ktilde(2 pi k t)
    cplx cnorm_plus = 1.0;       // calibration I_raw / psi_f at 1 + 0.6i
    cplx cnorm_minus = 1.0;      // calibration at 1 - 0.6i
    double direct_eta = 0.0;     // direct-region threshold parameter
};

PeriodFunction make_period_function(const BoundaryData& bd, int taylor_order = 26);

// Average of the two one-sided limits on (0, inf); elsewhere the value.
Vec psi_eval(const PeriodFunction& pf, cplx z);

// side > 0: limit from above; side < 0: from below; 0: average.
Vec psi_eval_side(const PeriodFunction& pf, double x, int side);

// 100 log-spaced x in [0.1, 10] plus rays arg z = +-pi/3, |z| in [0.2, 50].
std::vector<cplx> standard_grid();

// max over grid of || eta(T) psi(z) - psi(z+1)
//   - (z+1)^{-2nu-1} eta(S T^-1) psi(z/(z+1)) || / max(1, ||psi(z)||).
double lewis_residual(const PeriodFunction& pf, const std::vector<cplx>& grid);
double lewis_residual_of(const Evaluator& psi, const SpectralParameter& nu,
                         const finrep::FiniteRep& rep, const std::vector<cplx>& grid);

// Inverse Bruggeman transform:
// (psi(z) + z^{-2nu-1} eta(S) psi(-1/z)) / (1 + e^{-+ 2 pi i nu}), upper sign
// exponent -2 pi i nu in the upper half-plane.
Vec bruggeman_invert(const Evaluator& psi, const SpectralParameter& nu,
                     const finrep::FiniteRep& rep, cplx z);

// Slash action (psi | gamma)(z) = (cz+d)^{-2nu-1} eta(gamma)^-1 psi(gamma z)
// for words in the positive semigroup generated by T and T'.
Evaluator slash(const Evaluator& psi, const finrep::GroupWord& w,
                const SpectralParameter& nu, const finrep::FiniteRep& rep);

// All 2^n words in {T, T'} of length n.
std::vector<finrep::GroupWord> semigroup_words(int n);

// Continuation psi(z) = sum_{gamma in Q_n} (psi | gamma)(z). The fixed-point
// precondition is checked through the Q-obstruction norms.
Vec continue_by_semigroup(const PeriodFunction& pf, int n, cplx z);

struct BoundaryLimit {
    double residual;           // limit estimate at Y = 40
    double cauchy_difference;  // |estimate(40) - estimate(20)|
};

// Norm of e^{-pi i nu}(psi + z^{-2nu-1} eta(S) psi(-1/z)) at iY plus
// e^{+pi i nu}(same) at -iY, evaluated through the boundary-data series (the
// combination unfolds exactly to (1 + e^{-+2 pi i nu}) f(+-iY)).
BoundaryLimit boundary_limit_residual(const PeriodFunction& pf);

struct AsymptoticCheck {
    bool pass = false;
    double worst_slope = 0.0;  // worst fitted decay exponent over the rays
    double sup_small = 0.0;    // sup ||psi|| on |z| in [0.01, 1]
    double bound = 0.0;        // allowed bound for sup_small
};

// Fits log||psi|| against log|z| on |z| in [10, 100] along rays
// arg z in {0, +-pi/3}; pass iff every slope <= -C + 0.1 and the sup on
// [0.01, 1] stays below 10x the largest ray amplitude.
AsymptoticCheck asymptotic_bound_check(const PeriodFunction& pf, double C);
AsymptoticCheck asymptotic_bound_check_of(const Evaluator& psi,
                                          const SpectralParameter& nu, double C);

}  // namespace lewis
}  // namespace lewisper
