#pragma once

#include <Eigen/Dense>
#include <complex>

namespace lewisper {

using cplx = std::complex<double>;
using Vec = Eigen::VectorXcd;
using Mat = Eigen::MatrixXcd;

inline constexpr double pi = 3.14159265358979323846;

// Spectral parameter nu; the Laplace eigenvalue is 1/4 - nu^2 and every
// slash/transfer exponent is s_weight = 2 nu + 1.
struct SpectralParameter {
    cplx nu;
    cplx s_weight;
    bool is_half_integer_shift;
};

SpectralParameter spectral(cplx nu);

}  // namespace lewisper
