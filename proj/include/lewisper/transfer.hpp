#pragma once

#include <functional>
#include <vector>

#include "lewisper/finrep.hpp"
#include "lewisper/types.hpp"

namespace lewisper {
namespace transfer {

using Evaluator = std::function<Vec(cplx)>;

struct ApplyResult {
    Vec value;
    double tail;  // estimated truncation remainder
};

// L0 psi(x) = x^{-a} sum_{n>=0} (n + 1/x)^{-a} eta(T T'^n)^-1 psi(1 + 1/(n + 1/x)),
// a = 2 nu + 1, summed directly to n_max with an extrapolated tail estimate.
ApplyResult apply_L0(const Evaluator& psi, const SpectralParameter& nu,
                     const finrep::FiniteRep& rep, double x, long n_max = 10000);

// Linf psi(x) = sum_{n>=1} (n + x)^{-a} eta(T' T^{n-1})^-1 psi(1 - 1/(n + x)).
ApplyResult apply_Linf(const Evaluator& psi, const SpectralParameter& nu,
                       const finrep::FiniteRep& rep, double x, long n_max = 10000);

// Taylor coefficients of an analytic evaluator at 1 from a Cauchy circle
// of radius 0.45 with 512 samples.
std::vector<Vec> taylor_at_1(const Evaluator& psi, int order, Eigen::Index dim);

// Fixed-point obstructions. Direct branches up to n = 24; the remainder is
// resummed per residue class of the word period through Hurwitz zeta values
// weighted by the Taylor coefficients at 1 (orders m <= taylor_order).
Vec q0_compute(const Evaluator& psi, const SpectralParameter& nu,
               const finrep::FiniteRep& rep, double x, int taylor_order,
               const std::vector<Vec>* taylor = nullptr);
Vec qinf_compute(const Evaluator& psi, const SpectralParameter& nu,
                 const finrep::FiniteRep& rep, double x, int taylor_order,
                 const std::vector<Vec>* taylor = nullptr);

// Asymptotic coefficients C*_p, p = -1..M, from Taylor data C_0..C_{M+1}:
// C*_p = sum_{q=0}^{p+1} C_q (-1)^{p-q+1} B_{p-q+1} binom(p+a-1, p-q+1)/(q+a-1).
// Returned vector index i corresponds to p = i - 1.
std::vector<Vec> cstar_coeffs(const std::vector<Vec>& taylor, const SpectralParameter& nu,
                              int M);

enum class Kind { L0, Linf };

// Finite section of the transfer operator in the scaled polynomial basis
// ((z-1)/radius)^m on the disc |z-1| <= radius; branch n carries weight
// (n+z)^{-a} and the kind-dependent representation word.
struct TransferOperatorDisc {
    Kind kind = Kind::Linf;
    SpectralParameter nu;
    finrep::FiniteRep rep;
    int basis_size = 40;
    long n_max = 200;
    double radius = 1.2;
    Mat matrix;  // (basis_size * dim) square, blocks ordered (power, component)
};

TransferOperatorDisc make_disc(Kind kind, const SpectralParameter& nu,
                               const finrep::FiniteRep& rep, int basis_size = 40,
                               long n_max = 200, double radius = 1.2);

struct Spectrum {
    std::vector<cplx> eigenvalues;  // descending modulus
    Mat vectors;                    // columns matching eigenvalues
    bool converged = false;
};

// Top eigenvalues, verified against a doubled basis; disagreement beyond
// 1e-6 raises a convergence error carrying both spectra.
Spectrum spectrum(const TransferOperatorDisc& disc, int how_many);

// Eigenfunction of the disc model in its own chart, h(z) from the
// coefficient column.
Vec disc_eigenfunction(const TransferOperatorDisc& disc, const Spectrum& spec, int idx,
                       cplx z);

// Same eigenfunction transported to the Linf chart by z -> 1 - x, so the
// leading invariant density appears as 1/(2-x).
Vec linf_eigenfunction(const TransferOperatorDisc& disc, const Spectrum& spec, int idx,
                       double x);

// Direct branch-series application of the disc operator to an analytic h,
// independent of the collocation matrix.
Vec apply_disc_series(const TransferOperatorDisc& disc,
                      const std::function<Vec(cplx)>& h, cplx z);

}  // namespace transfer
}  // namespace lewisper
