#pragma once

// Probabilists' Hermite polynomials He_n, the modified family Ĥe_k whose
// (M-2)-th member is the characteristic polynomial of the reduced shear
// matrix, their zeros, Gauss-Hermite quadrature for the unit-mass Gaussian,
// and the Hermite transformation matrices built on those zeros.
//
// Every list of zeros or nodes is sorted in descending order.

#include <Eigen/Dense>

#include <vector>

namespace kramers {

/// Gauss-Hermite rule for the weight exp(-x^2/2)/sqrt(2 pi).
struct QuadratureRule {
    int order = 0;
    std::vector<double> nodes;   // zeros of He_M, strictly descending
    std::vector<double> weights; // positive, summing to one
};

/// Eigenvector matrices of the full shear transport matrix.
///   matrix_r(i,j)       = He_i(lambda_j) / i!
///   matrix_r_tilde(i,j) = He_i(lambda_j)
/// with zero-based i, j and lambda_j the descending zeros of He_M.
struct HermiteTransform {
    int order = 0;
    QuadratureRule rule;
    Eigen::MatrixXd matrix_r;
    Eigen::MatrixXd matrix_r_tilde;
};

/// He_n(x): He_0 = 1, He_1 = x, He_{k+1} = x He_k - k He_{k-1}.
double hermite_value(int n, double x);

/// Ĥe_k(x): Ĥe_0 = 1, Ĥe_1 = x, Ĥe_{k+1} = x Ĥe_k - (k+2) Ĥe_{k-1}.
double modified_hermite_value(int k, double x);

/// Zeros and weights of the M-point Gauss-Hermite rule, computed as the
/// spectrum of the symmetric Jacobi matrix (off-diagonal sqrt(k)). Weights are
/// the squared first components of the normalized eigenvectors.
/// Throws InvalidArgument for M < 1 and NumericalFailure if the tridiagonal
/// eigensolver does not converge.
QuadratureRule hermite_rule(int order);

/// The M-2 zeros of Ĥe_{M-2}, descending. Requires M >= 3.
std::vector<double> modified_hermite_roots(int order);

HermiteTransform hermite_transform(int order);

/// Eigenvectors of the reduced shear matrix, one column per descending zero
/// lambda_hat_j of Ĥe_{M-2}:
///   rhat(i,j) = 2 Ĥe_i(lambda_hat_j) / (i+2)!     (zero-based i)
/// so that the first row is identically one.
Eigen::MatrixXd rhat_matrix(int order);

/// Same as rhat_matrix but on caller-supplied eigenvalues.
Eigen::MatrixXd rhat_columns(int rows, const std::vector<double>& lambda_hat);

} // namespace kramers
