#include "doctest.h"
#include "oracles.hpp"

#include "kramers/error.hpp"
#include "kramers/kramers_solver.hpp"

#include <cmath>
#include <random>

using namespace kramers;

namespace {
const double kKn = 1.0 / std::sqrt(2.0);
const double kChis[] = {0.1, 0.3, 0.5, 0.7, 0.9, 1.0};

double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }
} // namespace

TEST_CASE("M = 3 has no layer and an affine velocity")
{
    const auto a = assemble_boundary_system(3, 1.0);
    CHECK(a.matrix_a.rows() == 1);
    CHECK(a.det_a == doctest::Approx(1.0 / std::sqrt(2.0 * oracle::kPi)).epsilon(1e-15));
    const auto s = solve_kramers(3, 0.8, 0.5, 1.3);
    CHECK(s.mode_count() == 0);
    for (double y : {0.0, 0.5, 3.0})
        CHECK(s.velocity(y) == doctest::Approx(-1.3 * y / 0.5 + s.c0).epsilon(1e-15));
    CHECK(s.velocity_defect(2.0) == 0.0);
}

TEST_CASE("closed forms for M = 4 and M = 5")
{
    for (double chi : kChis) {
        CAPTURE(chi);
        const auto s4 = solve_kramers(4, chi, kKn);
        CHECK(rel(s4.c_hat[0], oracle::m4_c_hat(chi)) < 1e-12);
        CHECK(rel(s4.c0, oracle::m4_c0(chi)) < 1e-12);
        const auto s5 = solve_kramers(5, chi, kKn);
        CHECK(rel(s5.c_hat[0], oracle::m5_c_hat(chi)) < 1e-12);
        CHECK(rel(s5.c0, oracle::m5_c0(chi)) < 1e-12);
    }
}

TEST_CASE("the opposite-sign M = 4 amplitude does not satisfy the wall system")
{
    const auto a = assemble_boundary_system(4, 1.0);
    Eigen::Vector2d flipped(oracle::m4_c0(1.0), oracle::m4_c_hat_flipped(1.0));
    Eigen::Vector2d fixed(oracle::m4_c0(1.0), oracle::m4_c_hat(1.0));
    CHECK((a.matrix_a * fixed + a.vector_b).cwiseAbs().maxCoeff() < 1e-14);
    CHECK((a.matrix_a * flipped + a.vector_b).cwiseAbs().maxCoeff() > 1e-2);
}

TEST_CASE("M = 4 observables at the wall")
{
    const auto s = solve_kramers(4, 1.0, kKn);
    const double ch = oracle::m4_c_hat(1.0);
    const double c0 = oracle::m4_c0(1.0);
    CHECK(s.velocity(0.0) == doctest::Approx(-2.0 * ch + c0).epsilon(1e-13));
    CHECK(s.velocity_defect(0.0) == doctest::Approx(-2.0 * kKn * ch).epsilon(1e-13));
    CHECK(s.slip_coefficient() == doctest::Approx(-kKn * c0).epsilon(1e-13));
    CHECK(s.effective_viscosity(0.0) ==
          doctest::Approx(1.0 / (1.0 - 2.0 * ch / std::sqrt(3.0))).epsilon(1e-13));
    CHECK(s.velocity(0.0) == doctest::Approx(-1.1030656).epsilon(1e-7));
    CHECK(s.velocity_defect(0.0) == doctest::Approx(0.2124835).epsilon(1e-6));
    CHECK(s.effective_viscosity(0.0) == doctest::Approx(0.8521575).epsilon(1e-6));

    const auto s5 = solve_kramers(5, 1.0, kKn);
    CHECK(s5.slip_coefficient() == doctest::Approx(-kKn * oracle::m5_c0(1.0)).epsilon(1e-13));
}

TEST_CASE("solution invariants over random draws")
{
    std::mt19937 rng(12345);
    std::uniform_int_distribution<int> order(3, 30);
    std::uniform_real_distribution<double> chi(0.05, 1.0), kn(0.05, 3.0), y(0.0, 6.0), sig(-2.0, 2.0);
    for (int trial = 0; trial < 60; ++trial) {
        const int m = order(rng);
        const double c = chi(rng), k = kn(rng), sg = sig(rng) + 2.5;
        CAPTURE(m);
        CAPTURE(c);
        const auto s = solve_kramers(m, c, k, sg);
        CHECK(s.mode_count() == m / 2 - 1);
        CHECK(s.lambda_hat.size() == s.c_hat.size());
        CHECK(s.sigma12 == sg);

        // residual of A c = -σ b
        const auto a = assemble_boundary_system(m, c);
        Eigen::VectorXd cv(a.matrix_a.rows());
        cv(0) = s.c0;
        for (int i = 0; i < s.mode_count(); ++i)
            cv(i + 1) = s.c_hat[i];
        const double res = (a.matrix_a * cv + sg * a.vector_b).cwiseAbs().maxCoeff();
        CHECK(res < 1e-12 * std::abs(sg) * a.vector_b.cwiseAbs().maxCoeff());

        for (int p = 0; p < 5; ++p) {
            const double yy = y(rng);
            const double lhs = s.normalized_velocity(yy);
            const double rhs = yy + s.slip_coefficient() - s.velocity_defect(yy);
            CHECK(std::abs(lhs - rhs) <= 1e-13 * std::max(1.0, std::abs(lhs)));
        }
    }
}

TEST_CASE("linearity in sigma12")
{
    for (int m : {4, 7, 12, 25}) {
        const auto a = solve_kramers(m, 0.6, 0.9, 1.0);
        const auto b = solve_kramers(m, 0.6, 0.9, 2.0);
        CHECK(b.c0 == doctest::Approx(2.0 * a.c0).epsilon(1e-13));
        for (int i = 0; i < a.mode_count(); ++i)
            CHECK(std::abs(b.c_hat[i] - 2.0 * a.c_hat[i]) <= 1e-13 * std::abs(b.c0));
        CHECK(b.slip_coefficient() == doctest::Approx(a.slip_coefficient()).epsilon(1e-13));
    }
}

TEST_CASE("zeta scales with Kn")
{
    for (int m : {4, 9, 16}) {
        const double base = solve_kramers(m, 0.8, 1.0).slip_coefficient();
        for (double kn : {0.1, kKn, 2.0})
            CHECK(solve_kramers(m, 0.8, kn).slip_coefficient() / kn == doctest::Approx(base).epsilon(1e-13));
    }
}

TEST_CASE("effective viscosity matches the derivative of u_tilde")
{
    for (int m : {4, 8, 13}) {
        const auto s = solve_kramers(m, 0.9, kKn);
        const double h = 1e-5;
        const double d = (s.normalized_velocity(1.0 + h) - s.normalized_velocity(1.0 - h)) / (2 * h);
        CHECK(std::abs(1.0 / d - s.effective_viscosity(1.0)) < 1e-8);
        CHECK(std::abs(s.effective_viscosity(200.0 * kKn) - 1.0) < 1e-6);
    }
}

TEST_CASE("far-field decay bound")
{
    const auto s = solve_kramers(10, 1.0, kKn);
    double amp = 0.0, lmax = 0.0;
    for (int i = 0; i < s.mode_count(); ++i) {
        amp += 2.0 * std::abs(s.c_hat[i]);
        lmax = std::max(lmax, s.lambda_hat[i]);
    }
    for (double y : {5.0, 10.0, 20.0})
        CHECK(std::abs(s.velocity(y) + y / kKn - s.c0) <= amp * std::exp(-y / (kKn * lmax)) + 1e-15);
}

TEST_CASE("frozen high-precision slip coefficients")
{
    for (const auto& f : oracle::kFrozenSlip)
        CHECK(solve_kramers(f.order, 1.0, kKn).slip_coefficient() == doctest::Approx(f.zeta).epsilon(1e-9));
}

TEST_CASE("input validation")
{
    CHECK_THROWS_AS(solve_kramers(2, 1.0, 1.0), InvalidArgument);
    CHECK_THROWS_AS(solve_kramers(4, 0.0, 1.0), InvalidArgument);
    CHECK_THROWS_AS(solve_kramers(4, 1.2, 1.0), InvalidArgument);
    CHECK_THROWS_AS(solve_kramers(4, 1.0, 0.0), InvalidArgument);
    CHECK_THROWS_AS(solve_kramers(4, 1.0, 1.0, std::nan("")), InvalidArgument);
    const auto s = solve_kramers(4, 1.0, 1.0, 0.0);
    CHECK(s.c0 == 0.0);
    CHECK_THROWS_AS(s.slip_coefficient(), InvalidArgument);
    CHECK_THROWS_AS(s.normalized_velocity(1.0), InvalidArgument);
    const auto t = solve_kramers(4, 1.0, 1.0);
    CHECK_THROWS_AS(t.velocity(-1.0), InvalidArgument);
}

TEST_CASE("determinant witness on the chi grid")
{
    for (int m = 3; m <= 40; ++m)
        for (int j = 0; j < 96; ++j) {
            const double chi = 0.05 + 0.95 * j / 95.0;
            const auto a = assemble_boundary_system(m, chi);
            CHECK_FALSE(a.numerically_singular());
            CHECK(std::isfinite(a.det_a));
            CHECK(a.det_a != 0.0);
        }
}

TEST_CASE("Gu R26 fit")
{
    const double denom = 0.0048517 + 0.64884 + 8.0995;
    const double c1 = -(0.081265 + 1.2824) / denom;
    const double c2 = -(0.0008565 + 0.362) / denom;
    const double ref = 1.0 / (1.0 - (1.3042 * c1 + 1.6751 * c2));
    CHECK(gu_r26_viscosity(1.0, kKn, 0.0) == doctest::Approx(ref).epsilon(1e-15));
    const double y = 0.4;
    const double ref_y =
        1.0 / (1.0 - (1.3042 * c1 * std::exp(-1.265 * y / kKn) + 1.6751 * c2 * std::exp(-0.5102 * y / kKn)));
    CHECK(gu_r26_viscosity(1.0, kKn, y) == doctest::Approx(ref_y).epsilon(1e-15));
    CHECK(std::abs(gu_r26_viscosity(0.6, kKn, 40.0 * kKn) - 1.0) < 1e-6);
    CHECK_THROWS_AS(gu_r26_viscosity(0.0, kKn, 1.0), InvalidArgument);
}

TEST_CASE("Lockerby wall function")
{
    CHECK(lockerby_viscosity(1.0) == doctest::Approx(1.0 / (1.0 + 0.1859 * std::exp(-0.7902))).epsilon(1e-15));
    CHECK(lockerby_viscosity(1.0) == doctest::Approx(0.9222).epsilon(1e-4));
    CHECK(lockerby_viscosity(1e-12) < 0.01);
    CHECK(std::abs(lockerby_viscosity(20.0 * kKn) - 1.0) < 1e-6);
    CHECK_THROWS_AS(lockerby_viscosity(0.0), InvalidArgument);
    CHECK_THROWS_AS(lockerby_viscosity(-1.0), InvalidArgument);
}

TEST_CASE("model error signs near the wall")
{
    const auto ref = solve_kramers(40, 1.0, kKn);
    for (double y : {0.02, 0.05, 0.1, 0.2, 0.3, 0.5, 1.0}) {
        CAPTURE(y);
        CHECK(ref.effective_viscosity(y) - gu_r26_viscosity(1.0, kKn, y) < 0.0);
    }
    // Lockerby lies below the reference at the wall and beyond the layer core;
    // in between (about 0.11 < y < 0.35) it crosses above.
    for (double y : {0.02, 0.05, 0.1, 0.5, 1.0}) {
        CAPTURE(y);
        CHECK(ref.effective_viscosity(y) - lockerby_viscosity(y) > 0.0);
    }
    CHECK(ref.effective_viscosity(0.2) - lockerby_viscosity(0.2) < 0.0);
}
