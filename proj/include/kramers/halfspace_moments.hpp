#pragma once

// Gaussian moments entering the Maxwell wall condition.
//
//   K(k,m)   = ∫_R  φ(ξ) ξ^k He_m(ξ) dξ,       φ the unit Gaussian
//   S*(k,m)  = ∫_0^∞ ξ^k He_m(ξ) e^{-ξ²/2} dξ
//   S(k,m;χ) = χ̂ S*(k,m) / sqrt(2π),  χ̂ = 1 (m even), (2-χ)/χ (m odd)

#include <Eigen/Dense>

#include <vector>

namespace kramers {

/// J_0 = 1, J_1 = u, J_{k+1} = u J_k + k θ J_{k-1}: the k-th moment of
/// (ξ - u_1) under a Maxwellian of temperature θ displaced by u.
double j_moment(int k, double u, double theta);

double full_moment_k(int k, int m);

double half_moment_sstar(int k, int m);

/// Throws InvalidArgument unless 0 < chi <= 1.
double accommodation_moment_s(int k, int m, double chi);

/// Dense table of S*(k,m) for 0 <= k <= max_k, 0 <= m <= max_m.
///
/// Rows k = 0, 1 are seeded from the defining integral; k >= 2 follows
/// S*(k,m) = (k-1) S*(k-2,m) + m S*(k-1,m-1). The χ-dependent S(k,m) is a
/// per-column rescaling of this core, so one table serves a whole χ sweep.
class HalfSpaceTable {
public:
    HalfSpaceTable(int max_k, int max_m);

    int max_k() const { return max_k_; }
    int max_m() const { return max_m_; }

    double sstar(int k, int m) const;
    double s(int k, int m, double chi) const;

private:
    int max_k_;
    int max_m_;
    Eigen::MatrixXd values_;
};

/// Vectors and matrix of the linearized shear wall condition for order M,
/// rows indexed by odd β = 1, 3, ..., 2⌊M/2⌋-1:
///   h_r = (β-1)!! / sqrt(2π),   b_r = S(β,1;χ),   S_{r,a} = S(β, a+2; χ)
/// for a = 0..M-3.
struct BoundaryMoments {
    Eigen::VectorXd h;
    Eigen::VectorXd b;
    Eigen::MatrixXd s;
};

BoundaryMoments boundary_vectors_and_matrix(int order, double chi);

/// Same, reusing a precomputed table (must cover k < M, m < M).
BoundaryMoments boundary_vectors_and_matrix(const HalfSpaceTable& table, int order, double chi);

/// Accommodation factor χ̂ for column parity m.
double accommodation_factor(int m, double chi);

void validate_chi(double chi);

} // namespace kramers
