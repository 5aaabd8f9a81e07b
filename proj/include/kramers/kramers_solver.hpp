#pragma once

// Kramers' problem for the order-M shear subsystem: bounded solution in the
// half-space y >= 0 over a Maxwell wall with accommodation coefficient χ,
//
//   u(y) = -σ y / Kn - 2 Σ_i ĉ_i exp(-y / (Kn λ̂_i)) + c_0,
//
// with the ⌊M/2⌋ constants (c_0, ĉ_1, ...) fixed by the odd-β wall moments.

#include "kramers/halfspace_moments.hpp"

#include <Eigen/Dense>

#include <vector>

namespace kramers {

/// Reciprocal condition number (2-norm, after row/column equilibration)
/// below which the boundary system is declared numerically singular.
inline constexpr double kSingularRcond = 1e-15;

/// A c = -σ b with c = (c_0, ĉ_1, ..., ĉ_{⌊M/2⌋-1}) and
/// A = (h | (S - 2 h e_1^T) R̂_+).
struct BoundaryAssembly {
    int order = 0;
    double chi = 1.0;
    Eigen::MatrixXd matrix_a;
    Eigen::VectorXd vector_b;
    Eigen::VectorXd vector_h;
    Eigen::MatrixXd matrix_s;
    Eigen::MatrixXd rhat_plus;
    std::vector<double> lambda_plus;
    double det_a = 0.0;
    double cond_a = 0.0; // of the equilibrated matrix

    bool numerically_singular() const;

    /// Solves A c = -σ b (equilibrated partial-pivot LU plus one refinement
    /// step). Throws NumericalFailure if the system is numerically singular.
    Eigen::VectorXd solve(double sigma12) const;
};

BoundaryAssembly assemble_boundary_system(int order, double chi);

/// Sweep variant sharing one χ-independent half-space table.
BoundaryAssembly assemble_boundary_system(const HalfSpaceTable& table, int order, double chi);

class KramersSolution {
public:
    int order = 0;
    double chi = 1.0;
    double kn = 1.0;
    double sigma12 = 1.0;
    double c0 = 0.0;
    std::vector<double> c_hat;      // mode amplitudes, paired with lambda_hat
    std::vector<double> lambda_hat; // positive decay rates, descending
    Eigen::MatrixXd rhat_plus;      // (M-2) x modes, first row all ones

    int mode_count() const { return static_cast<int>(c_hat.size()); }

    /// Dimensionless velocity u_1(y). Requires y >= 0.
    double velocity(double y) const;
    double velocity_derivative(double y) const;

    /// ũ(y) = -Kn u_1(y) / σ.
    double normalized_velocity(double y) const;

    /// ũ_d(y) = -2 Kn Σ (ĉ_i/σ) exp(-y/(Kn λ̂_i)), so that ũ = y + ζ - ũ_d.
    double velocity_defect(double y) const;

    /// ζ = -Kn c_0 / σ.
    double slip_coefficient() const;

    /// μ_eff/μ = 1 / (dũ/dy) = 1 / (1 + Σ c_i exp(-y/(λ̂_i Kn))),
    /// c_i = -2 ĉ_i / (λ̂_i σ). Throws NumericalFailure at a pole.
    double effective_viscosity(double y) const;

    /// First-moment block (f_{e1+2e2}, ..., f_{e1+(M-1)e2}) at y.
    Eigen::VectorXd higher_moments(double y) const;

    /// Full moment vector V(y) = (u_1, σ_12, f_{e1+2e2}, ...).
    Eigen::VectorXd moment_vector(double y) const;

    /// dV/dy, analytically.
    Eigen::VectorXd moment_vector_derivative(double y) const;

private:
    void require_position(double y) const;
    void require_shear() const;
};

/// Throws InvalidArgument for M < 3, χ outside (0,1], Kn <= 0 or a
/// non-finite σ; NumericalFailure if the boundary system is singular.
KramersSolution solve_kramers(int order, double chi, double kn, double sigma12 = 1.0);

KramersSolution solve_kramers(const HalfSpaceTable& table, int order, double chi, double kn,
                              double sigma12 = 1.0);

/// Effective viscosity ratio of the R26 Knudsen-layer fit (Gu & Emerson).
double gu_r26_viscosity(double chi, double kn, double y);

/// Empirical BGK-based wall function of Lockerby et al. Requires y > 0.
double lockerby_viscosity(double y);

} // namespace kramers
