#include "kramers/halfspace_moments.hpp"

#include "kramers/error.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace kramers {

namespace {

const double kSqrtTwoPi = std::sqrt(2.0 * std::numbers::pi);

// He_m(0): zero for odd m, (-1)^{m/2} (m-1)!! for even m.
double hermite_at_zero(int m)
{
    if (m % 2 == 1)
        return 0.0;
    double v = 1.0;
    for (int j = m - 1; j > 0; j -= 2)
        v *= -j;
    return v;
}

double double_factorial(int n)
{
    double v = 1.0;
    for (int j = n; j > 1; j -= 2)
        v *= j;
    return v;
}

void require_nonneg(int k, int m, const char* what)
{
    if (k < 0 || m < 0)
        throw InvalidArgument(std::string(what) + ": indices must be non-negative");
}

} // namespace

void validate_chi(double chi)
{
    if (!(chi > 0.0 && chi <= 1.0)) {
        throw InvalidArgument("accommodation coefficient must lie in (0, 1], got " +
                              std::to_string(chi));
    }
}

double accommodation_factor(int m, double chi)
{
    return m % 2 == 0 ? 1.0 : (2.0 - chi) / chi;
}

double j_moment(int k, double u, double theta)
{
    if (k < 0)
        throw InvalidArgument("j_moment: negative order");
    if (!(theta > 0.0))
        throw InvalidArgument("j_moment: theta must be positive");
    if (k == 0)
        return 1.0;
    double prev = 1.0, cur = u;
    for (int j = 1; j < k; ++j) {
        const double next = u * cur + j * theta * prev;
        prev = cur;
        cur = next;
    }
    return cur;
}

double full_moment_k(int k, int m)
{
    require_nonneg(k, m, "full_moment_k");
    if (k < m || (k - m) % 2 != 0)
        return 0.0;
    // ξ^k = Σ_m k! / (m! 2^j j!) He_m with j = (k-m)/2, and ‖He_m‖² = m!.
    const int j = (k - m) / 2;
    double v = 1.0;
    for (int i = j + 1; i <= k; ++i)
        v *= i;
    return std::ldexp(v, -j);
}

HalfSpaceTable::HalfSpaceTable(int max_k, int max_m)
    : max_k_(max_k), max_m_(max_m), values_(Eigen::MatrixXd::Zero(max_k + 1, max_m + 1))
{
    if (max_k < 0 || max_m < 0)
        throw InvalidArgument("HalfSpaceTable: negative extent");

    // Row 0: ∫_0^∞ He_m e^{-ξ²/2} = He_{m-1}(0) for m >= 1.
    values_(0, 0) = std::sqrt(std::numbers::pi / 2.0);
    for (int m = 1; m <= max_m; ++m)
        values_(0, m) = hermite_at_zero(m - 1);
    if (max_k == 0)
        return;

    // Row 1: ξ He_m = He_{m+1} + m He_{m-1}.
    values_(1, 0) = 1.0;
    for (int m = 1; m <= max_m; ++m)
        values_(1, m) = hermite_at_zero(m) + m * values_(0, m - 1);

    // Integration by parts; the boundary term at 0 vanishes once k >= 2.
    for (int k = 2; k <= max_k; ++k) {
        values_(k, 0) = (k - 1) * values_(k - 2, 0);
        for (int m = 1; m <= max_m; ++m)
            values_(k, m) = (k - 1) * values_(k - 2, m) + m * values_(k - 1, m - 1);
    }
}

double HalfSpaceTable::sstar(int k, int m) const
{
    if (k < 0 || m < 0 || k > max_k_ || m > max_m_) {
        throw InvalidArgument("HalfSpaceTable: index (" + std::to_string(k) + "," +
                              std::to_string(m) + ") outside table");
    }
    return values_(k, m);
}

double HalfSpaceTable::s(int k, int m, double chi) const
{
    return accommodation_factor(m, chi) * sstar(k, m) / kSqrtTwoPi;
}

double half_moment_sstar(int k, int m)
{
    require_nonneg(k, m, "half_moment_sstar");
    return HalfSpaceTable(k, m).sstar(k, m);
}

double accommodation_moment_s(int k, int m, double chi)
{
    require_nonneg(k, m, "accommodation_moment_s");
    validate_chi(chi);
    return accommodation_factor(m, chi) * half_moment_sstar(k, m) / kSqrtTwoPi;
}

BoundaryMoments boundary_vectors_and_matrix(const HalfSpaceTable& table, int order, double chi)
{
    if (order < 3)
        throw InvalidArgument("boundary_vectors_and_matrix: order must be >= 3");
    validate_chi(chi);

    const int rows = order / 2;
    BoundaryMoments out;
    out.h.resize(rows);
    out.b.resize(rows);
    out.s.resize(rows, order - 2);
    for (int r = 0; r < rows; ++r) {
        const int beta = 2 * r + 1;
        out.h(r) = double_factorial(beta - 1) / kSqrtTwoPi;
        out.b(r) = table.s(beta, 1, chi);
        for (int a = 2; a < order; ++a)
            out.s(r, a - 2) = table.s(beta, a, chi);
    }
    return out;
}

BoundaryMoments boundary_vectors_and_matrix(int order, double chi)
{
    if (order < 3)
        throw InvalidArgument("boundary_vectors_and_matrix: order must be >= 3");
    return boundary_vectors_and_matrix(HalfSpaceTable(order, order), order, chi);
}

} // namespace kramers
