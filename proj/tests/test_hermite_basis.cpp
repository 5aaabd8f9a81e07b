#include "doctest.h"
#include "oracles.hpp"

#include "kramers/hermite_basis.hpp"
#include "kramers/hme_system.hpp"

#include <algorithm>
#include <cmath>

using namespace kramers;

TEST_CASE("hermite_value on small cases")
{
    CHECK(hermite_value(0, 7.3) == 1.0);
    CHECK(hermite_value(2, 1.0) == doctest::Approx(0.0));
    CHECK(hermite_value(3, 2.0) == doctest::Approx(2.0));
}

TEST_CASE("hermite_value agrees with the monomial expansion")
{
    for (int n = 0; n <= 14; ++n)
        for (double x : {-3.1, -0.7, 0.0, 0.4, 1.9, 4.2}) {
            const double ref = oracle::hermite_monomial(n, x);
            CHECK(std::abs(hermite_value(n, x) - ref) <= 1e-11 * std::max(1.0, std::abs(ref)));
        }
}

TEST_CASE("modified Hermite values and roots")
{
    CHECK(std::abs(modified_hermite_value(2, std::sqrt(3.0))) < 1e-14);
    CHECK(std::abs(modified_hermite_value(3, std::sqrt(7.0))) < 1e-13);
    CHECK(modified_hermite_value(3, 1.0) == doctest::Approx(-6.0));

    for (int k = 0; k <= 10; ++k) {
        const auto c = oracle::modified_hermite_coefficients(k);
        for (double x : {-2.5, -1.0, 0.3, 1.7, 3.3}) {
            const double ref = oracle::horner(c, x);
            CHECK(std::abs(modified_hermite_value(k, x) - ref) <= 1e-10 * std::max(1.0, std::abs(ref)));
        }
    }

    const auto r4 = modified_hermite_roots(4);
    REQUIRE(r4.size() == 2);
    CHECK(r4[0] == doctest::Approx(std::sqrt(3.0)).epsilon(1e-15));
    CHECK(r4[1] == doctest::Approx(-std::sqrt(3.0)).epsilon(1e-15));
    const auto r5 = modified_hermite_roots(5);
    REQUIRE(r5.size() == 3);
    CHECK(r5[0] == doctest::Approx(std::sqrt(7.0)).epsilon(1e-15));
    CHECK(r5[1] == 0.0);
    const auto r3 = modified_hermite_roots(3);
    REQUIRE(r3.size() == 1);
    CHECK(r3[0] == 0.0);
    CHECK(layer_rates(3).empty());
}

TEST_CASE("hermite_rule small orders")
{
    const auto r1 = hermite_rule(1);
    REQUIRE(r1.nodes.size() == 1);
    CHECK(r1.nodes[0] == 0.0);
    CHECK(r1.weights[0] == doctest::Approx(1.0));

    const auto r3 = hermite_rule(3);
    CHECK(r3.nodes[0] == doctest::Approx(std::sqrt(3.0)).epsilon(1e-15));
    CHECK(std::abs(r3.nodes[1]) < 1e-15);
    CHECK(r3.weights[0] == doctest::Approx(1.0 / 6.0).epsilon(1e-14));
    CHECK(r3.weights[1] == doctest::Approx(2.0 / 3.0).epsilon(1e-14));
    CHECK(r3.weights[2] == doctest::Approx(1.0 / 6.0).epsilon(1e-14));

    const auto r4 = hermite_rule(4);
    CHECK(r4.nodes[0] == doctest::Approx(std::sqrt(3.0 + std::sqrt(6.0))).epsilon(1e-15));
    CHECK(r4.nodes[1] == doctest::Approx(std::sqrt(3.0 - std::sqrt(6.0))).epsilon(1e-15));
}

TEST_CASE("quadrature invariants for M <= 40")
{
    for (int m = 1; m <= 40; ++m) {
        CAPTURE(m);
        const auto r = hermite_rule(m);
        double sw = 0.0, s2 = 0.0;
        for (int i = 0; i < m; ++i) {
            CHECK(std::abs(r.nodes[i] + r.nodes[m - 1 - i]) < 1e-13);
            CHECK(r.weights[i] > 0.0);
            if (i > 0)
                CHECK(r.nodes[i] < r.nodes[i - 1]);
            sw += r.weights[i];
            s2 += r.weights[i] * r.nodes[i] * r.nodes[i];
        }
        CHECK(std::abs(sw - 1.0) < 1e-13);
        if (m >= 2)
            CHECK(std::abs(s2 - 1.0) < 1e-12);
        for (int j = 0; j < m; ++j) {
            double s = 0.0, scale = 0.0;
            for (int i = 0; i < m; ++i) {
                s += r.weights[i] * hermite_value(j, r.nodes[i]);
                scale += std::abs(r.weights[i] * hermite_value(j, r.nodes[i]));
            }
            CHECK(std::abs(s - (j == 0 ? 1.0 : 0.0)) < 1e-13 * std::max(1.0, scale));
        }
    }
}

TEST_CASE("zeros of He_M interlace with He_{M+1}")
{
    for (int m = 1; m < 40; ++m) {
        const auto a = hermite_rule(m).nodes;
        const auto b = hermite_rule(m + 1).nodes;
        for (int i = 0; i < m; ++i) {
            CHECK(b[i] > a[i]);
            CHECK(a[i] > b[i + 1]);
        }
    }
}

TEST_CASE("modified roots are symmetric and descending")
{
    for (int m = 3; m <= 40; ++m) {
        const auto r = modified_hermite_roots(m);
        const std::size_t n = r.size();
        for (std::size_t i = 0; i < n; ++i) {
            CHECK(std::abs(r[i] + r[n - 1 - i]) < 1e-13);
            if (i > 0)
                CHECK(r[i] < r[i - 1]);
        }
        const bool has_zero = std::any_of(r.begin(), r.end(), [](double x) { return x == 0.0; });
        CHECK(has_zero == (m % 2 == 1));
    }
}

TEST_CASE("hermite_transform entries and identities")
{
    CHECK(hermite_transform(1).matrix_r(0, 0) == 1.0);

    const auto t3 = hermite_transform(3);
    CHECK(t3.matrix_r(1, 0) == doctest::Approx(std::sqrt(3.0)).epsilon(1e-15));

    const ShearSystem s3 = build_shear_system(3);
    Eigen::VectorXd lam(3);
    for (int i = 0; i < 3; ++i)
        lam(i) = t3.rule.nodes[i];
    const Eigen::MatrixXd res = s3.matrix_m * t3.matrix_r - t3.matrix_r * lam.asDiagonal();
    CHECK(res.cwiseAbs().maxCoeff() < 1e-13);

    for (int m = 1; m <= 40; ++m) {
        CAPTURE(m);
        const auto t = hermite_transform(m);
        Eigen::VectorXd w(m);
        for (int i = 0; i < m; ++i)
            w(i) = t.rule.weights[i];
        const Eigen::MatrixXd id = w.asDiagonal() * t.matrix_r_tilde.transpose() * t.matrix_r;
        const Eigen::MatrixXd err = id - Eigen::MatrixXd::Identity(m, m);
        if (m <= 12)
            CHECK(err.cwiseAbs().maxCoeff() < 1e-12);
        // entry (k, j) carries the factor sqrt(w_k / w_j); remove it
        const Eigen::VectorXd sw = w.cwiseSqrt();
        CHECK((sw.cwiseInverse().asDiagonal() * err * sw.asDiagonal()).cwiseAbs().maxCoeff() < 1e-12);
        // r_ij = He_{i-1}(λ_j)/(i-1)! spot check
        double fact = 1.0;
        for (int i = 0; i < std::min(m, 8); ++i) {
            if (i > 0)
                fact *= i;
            const double ref = oracle::hermite_monomial(i, t.rule.nodes[0]) / fact;
            CHECK(t.matrix_r(i, 0) == doctest::Approx(ref).epsilon(1e-10));
        }
    }
}

TEST_CASE("rhat_matrix against displayed small cases")
{
    const Eigen::MatrixXd r4 = rhat_matrix(4);
    CHECK(r4(0, 0) == 1.0);
    CHECK(r4(0, 1) == 1.0);
    CHECK(r4(1, 0) == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-15));
    CHECK(r4(1, 1) == doctest::Approx(-1.0 / std::sqrt(3.0)).epsilon(1e-15));

    const Eigen::MatrixXd r5 = rhat_matrix(5);
    const double s7 = std::sqrt(7.0);
    const double ref[3][3] = {{1, 1, 1}, {s7 / 3, 0, -s7 / 3}, {1.0 / 3, -0.25, 1.0 / 3}};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            CHECK(std::abs(r5(i, j) - ref[i][j]) < 1e-14);
}

TEST_CASE("rhat eigen-residual for M <= 40")
{
    for (int m = 3; m <= 40; ++m) {
        CAPTURE(m);
        const ShearSystem s = build_shear_system(m);
        const auto roots = modified_hermite_roots(m);
        const Eigen::MatrixXd r = rhat_matrix(m);
        Eigen::VectorXd lam(roots.size());
        for (std::size_t i = 0; i < roots.size(); ++i)
            lam(i) = roots[i];
        const Eigen::MatrixXd res = s.matrix_mhat * r - r * lam.asDiagonal();
        CHECK(res.cwiseAbs().maxCoeff() < 1e-10);
    }
}

TEST_CASE("invalid orders are rejected")
{
    CHECK_THROWS(hermite_rule(0));
    CHECK_THROWS(modified_hermite_roots(2));
    CHECK_THROWS(rhat_matrix(2));
}
