#include "kramers/kramers_solver.hpp"

#include "kramers/error.hpp"
#include "kramers/hme_system.hpp"

#include <Eigen/LU>
#include <Eigen/SVD>

#include <cmath>
#include <limits>
#include <sstream>
#include <string>

namespace kramers {

namespace {

void validate_inputs(int order, double chi, double kn, double sigma12)
{
    if (order < 3)
        throw InvalidArgument("order must be >= 3, got " + std::to_string(order));
    validate_chi(chi);
    if (!(kn > 0.0) || !std::isfinite(kn))
        throw InvalidArgument("Knudsen number must be positive and finite");
    if (!std::isfinite(sigma12))
        throw InvalidArgument("shear stress must be finite");
}

} // namespace

bool BoundaryAssembly::numerically_singular() const
{
    return !std::isfinite(cond_a) || 1.0 / cond_a < kSingularRcond || det_a == 0.0;
}

Eigen::VectorXd BoundaryAssembly::solve(double sigma12) const
{
    if (numerically_singular()) {
        std::ostringstream msg;
        msg << "boundary system is numerically singular for M=" << order << ", chi=" << chi
            << " (equilibrated condition number " << cond_a << ")";
        throw NumericalFailure(msg.str());
    }

    const Eigen::Index n = matrix_a.rows();
    Eigen::VectorXd row_scale(n), col_scale(n);
    Eigen::MatrixXd e = matrix_a;
    row_scale.setOnes();
    col_scale.setOnes();
    for (int sweep = 0; sweep < 3; ++sweep) {
        for (Eigen::Index i = 0; i < n; ++i) {
            const double s = e.row(i).cwiseAbs().maxCoeff();
            e.row(i) /= s;
            row_scale(i) /= s;
        }
        for (Eigen::Index j = 0; j < n; ++j) {
            const double s = e.col(j).cwiseAbs().maxCoeff();
            e.col(j) /= s;
            col_scale(j) /= s;
        }
    }

    // e = diag(row_scale) A diag(col_scale)
    const Eigen::PartialPivLU<Eigen::MatrixXd> lu(e);
    const Eigen::VectorXd rhs = -sigma12 * vector_b;
    Eigen::VectorXd c = col_scale.cwiseProduct(lu.solve(row_scale.cwiseProduct(rhs)));
    const Eigen::VectorXd residual = rhs - matrix_a * c;
    c += col_scale.cwiseProduct(lu.solve(row_scale.cwiseProduct(residual)));
    return c;
}

BoundaryAssembly assemble_boundary_system(const HalfSpaceTable& table, int order, double chi)
{
    validate_inputs(order, chi, 1.0, 0.0);

    const ShearSystem sys = build_shear_system(order);
    const SpectralSplit split = spectral_split(sys);
    const BoundaryMoments bm = boundary_vectors_and_matrix(table, order, chi);

    BoundaryAssembly a;
    a.order = order;
    a.chi = chi;
    a.vector_h = bm.h;
    a.vector_b = bm.b;
    a.matrix_s = bm.s;
    a.rhat_plus = split.rhat_plus;
    a.lambda_plus = split.lambda_plus;

    const Eigen::Index n = bm.h.size();
    Eigen::MatrixXd shifted = bm.s;
    shifted.col(0) -= 2.0 * bm.h;
    a.matrix_a.resize(n, n);
    a.matrix_a.col(0) = bm.h;
    if (n > 1)
        a.matrix_a.rightCols(n - 1) = shifted * split.rhat_plus;

    a.det_a = Eigen::PartialPivLU<Eigen::MatrixXd>(a.matrix_a).determinant();
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(equilibrate(a.matrix_a));
    const auto& sv = svd.singularValues();
    a.cond_a = sv(sv.size() - 1) > 0.0 ? sv(0) / sv(sv.size() - 1)
                                       : std::numeric_limits<double>::infinity();
    return a;
}

BoundaryAssembly assemble_boundary_system(int order, double chi)
{
    validate_inputs(order, chi, 1.0, 0.0);
    return assemble_boundary_system(HalfSpaceTable(order, order), order, chi);
}

KramersSolution solve_kramers(const HalfSpaceTable& table, int order, double chi, double kn,
                              double sigma12)
{
    validate_inputs(order, chi, kn, sigma12);
    const BoundaryAssembly assembly = assemble_boundary_system(table, order, chi);
    const Eigen::VectorXd c = assembly.solve(sigma12);

    KramersSolution sol;
    sol.order = order;
    sol.chi = chi;
    sol.kn = kn;
    sol.sigma12 = sigma12;
    sol.c0 = c(0);
    sol.c_hat.assign(c.data() + 1, c.data() + c.size());
    sol.lambda_hat = assembly.lambda_plus;
    sol.rhat_plus = assembly.rhat_plus;
    return sol;
}

KramersSolution solve_kramers(int order, double chi, double kn, double sigma12)
{
    validate_inputs(order, chi, kn, sigma12);
    return solve_kramers(HalfSpaceTable(order, order), order, chi, kn, sigma12);
}

void KramersSolution::require_position(double y) const
{
    if (!(y >= 0.0))
        throw InvalidArgument("position must satisfy y >= 0");
}

void KramersSolution::require_shear() const
{
    if (sigma12 == 0.0)
        throw InvalidArgument("normalization by the shear stress needs sigma12 != 0");
}

double KramersSolution::velocity(double y) const
{
    require_position(y);
    double layer = 0.0;
    for (int i = 0; i < mode_count(); ++i)
        layer += c_hat[i] * std::exp(-y / (kn * lambda_hat[i]));
    return -sigma12 * y / kn - 2.0 * layer + c0;
}

double KramersSolution::velocity_derivative(double y) const
{
    require_position(y);
    double layer = 0.0;
    for (int i = 0; i < mode_count(); ++i)
        layer += c_hat[i] / (kn * lambda_hat[i]) * std::exp(-y / (kn * lambda_hat[i]));
    return -sigma12 / kn + 2.0 * layer;
}

double KramersSolution::normalized_velocity(double y) const
{
    require_shear();
    return -kn * velocity(y) / sigma12;
}

double KramersSolution::velocity_defect(double y) const
{
    require_shear();
    require_position(y);
    double sum = 0.0;
    for (int i = 0; i < mode_count(); ++i)
        sum += c_hat[i] / sigma12 * std::exp(-y / (kn * lambda_hat[i]));
    return -2.0 * kn * sum;
}

double KramersSolution::slip_coefficient() const
{
    require_shear();
    return -kn * c0 / sigma12;
}

double KramersSolution::effective_viscosity(double y) const
{
    require_shear();
    require_position(y);
    double denom = 1.0;
    for (int i = 0; i < mode_count(); ++i) {
        const double ci = -2.0 * c_hat[i] / (lambda_hat[i] * sigma12);
        denom += ci * std::exp(-y / (lambda_hat[i] * kn));
    }
    if (!(denom > 0.0)) {
        std::ostringstream msg;
        msg << "effective viscosity pole at y=" << y << " (M=" << order << ", chi=" << chi << ")";
        throw NumericalFailure(msg.str());
    }
    return 1.0 / denom;
}

Eigen::VectorXd KramersSolution::higher_moments(double y) const
{
    require_position(y);
    Eigen::VectorXd amp(mode_count());
    for (int i = 0; i < mode_count(); ++i)
        amp(i) = c_hat[i] * std::exp(-y / (kn * lambda_hat[i]));
    if (mode_count() == 0)
        return Eigen::VectorXd::Zero(order - 2);
    return rhat_plus * amp;
}

Eigen::VectorXd KramersSolution::moment_vector(double y) const
{
    Eigen::VectorXd v(order);
    v(0) = velocity(y);
    v(1) = sigma12;
    v.tail(order - 2) = higher_moments(y);
    return v;
}

Eigen::VectorXd KramersSolution::moment_vector_derivative(double y) const
{
    require_position(y);
    Eigen::VectorXd amp(mode_count());
    for (int i = 0; i < mode_count(); ++i)
        amp(i) = -c_hat[i] / (kn * lambda_hat[i]) * std::exp(-y / (kn * lambda_hat[i]));
    Eigen::VectorXd d(order);
    d(0) = velocity_derivative(y);
    d(1) = 0.0;
    d.tail(order - 2) = mode_count() == 0 ? Eigen::VectorXd::Zero(order - 2) : Eigen::VectorXd(rhat_plus * amp);
    return d;
}

double gu_r26_viscosity(double chi, double kn, double y)
{
    validate_chi(chi);
    if (!(kn > 0.0))
        throw InvalidArgument("Knudsen number must be positive");
    if (!(y >= 0.0))
        throw InvalidArgument("position must satisfy y >= 0");
    const double denom = 0.48517e-2 * chi * chi + 0.64884 * chi + 8.0995;
    const double wall = (chi - 2.0) / chi;
    const double c1 = wall * (0.81265e-1 * chi * chi + 1.2824 * chi) / denom;
    const double c2 = wall * (0.8565e-3 * chi * chi + 0.362 * chi) / denom;
    return 1.0 / (1.0 - (1.3042 * c1 * std::exp(-1.265 * y / kn) +
                         1.6751 * c2 * std::exp(-0.5102 * y / kn)));
}

double lockerby_viscosity(double y)
{
    if (y == 0.0) {
        throw InvalidArgument("Lockerby wall function is singular at y = 0 "
                              "(mu_eff -> 0 as y -> 0+)");
    }
    if (!(y > 0.0))
        throw InvalidArgument("position must satisfy y > 0");
    return 1.0 / (1.0 + 0.1859 * std::pow(y, -0.464) * std::exp(-0.7902 * y));
}

} // namespace kramers
