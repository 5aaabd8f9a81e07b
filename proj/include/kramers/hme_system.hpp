#pragma once

// The decoupled steady shear subsystem of the linearized moment equations,
//
//   M dV/dy = -(1/Kn) Q V,   V = (u_1, σ_12, f_{e1+2e2}, ..., f_{e1+(M-1)e2}),
//
// and the spectral structure of its reduced block M̂ (acting on the moments
// beyond u_1 and σ_12).

#include <Eigen/Dense>

#include <optional>
#include <vector>

namespace kramers {

struct ShearSystem {
    int order = 0;
    Eigen::MatrixXd matrix_m;    // M x M: super-diagonal 1..M-1, sub-diagonal 1
    Eigen::MatrixXd matrix_q;    // diag(0, 1, ..., 1)
    Eigen::MatrixXd matrix_mhat; // (M-2) x (M-2): super-diagonal 3..M-1, sub-diagonal 1
};

/// Eigen-split of M̂. Positive eigenvalues are the Knudsen-layer decay
/// rates; the zero eigenvalue (odd M) belongs to the non-positive part.
struct SpectralSplit {
    int order = 0;
    std::vector<double> lambda_plus;   // ⌊M/2⌋-1 values, descending
    std::vector<double> lambda_nonpos; // the remaining ⌈M/2⌉-1 values, descending
    Eigen::MatrixXd rhat;              // all columns, same order as lambda_plus ++ lambda_nonpos
    Eigen::MatrixXd rhat_plus;
    Eigen::MatrixXd rhat_minus;
};

/// Row-parity blocks of R̂ (rows counted from one, as "even"/"odd" rows) and
/// the permutation listing even rows before odd ones.
struct ParityBlocks {
    Eigen::MatrixXd plus_even;
    Eigen::MatrixXd plus_odd;
    Eigen::MatrixXd minus_even;
    Eigen::MatrixXd minus_odd;
    std::vector<int> permutation; // one-based row numbers in stacked order
};

struct LayerWidths {
    std::optional<double> w_min; // empty for M = 3: no layer modes
    std::vector<double> lambda_plus;
};

/// Throws InvalidArgument for M < 3.
ShearSystem build_shear_system(int order);

SpectralSplit spectral_split(const ShearSystem& sys);

ParityBlocks parity_blocks(const SpectralSplit& split);

LayerWidths layer_widths(const SpectralSplit& split);

/// Positive zeros of Ĥe_{M-2}, descending; the decay rates of order M.
std::vector<double> layer_rates(int order);

/// Row/column equilibrated copy of a matrix (max-abs scaling, a few sweeps).
Eigen::MatrixXd equilibrate(const Eigen::MatrixXd& a);

/// σ_min / σ_max of the equilibrated matrix. Invertibility witness that does
/// not depend on the scaling of rows and columns.
double scaled_rank_ratio(const Eigen::MatrixXd& a);

} // namespace kramers
