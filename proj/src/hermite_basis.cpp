#include "kramers/hermite_basis.hpp"

#include "kramers/error.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>

namespace kramers {

namespace {

// Orders above this use compensated summation when normalizing weights.
constexpr int kCompensatedOrder = 40;

double neumaier_sum(const std::vector<double>& values)
{
    double sum = 0.0;
    double carry = 0.0;
    for (double v : values) {
        const double t = sum + v;
        if (std::abs(sum) >= std::abs(v))
            carry += (sum - t) + v;
        else
            carry += (v - t) + sum;
        sum = t;
    }
    return sum + carry;
}

// Orthonormal three-term family p_{k+1} = (x p_k - b_k p_{k-1}) / b_{k+1}
// where b_k = sqrt(offdiag(k)). Returns (p_n(x), p_{n-1}(x), p_n'(x)).
struct OrthoValue {
    double value;
    double previous;
    double derivative;
};

OrthoValue orthonormal_eval(int n, double x, const std::function<double(int)>& beta)
{
    double p_prev = 0.0, p = 1.0;
    double d_prev = 0.0, d = 0.0;
    for (int k = 0; k < n; ++k) {
        const double b_next = beta(k + 1);
        const double b_k = k == 0 ? 0.0 : beta(k);
        const double p_next = (x * p - b_k * p_prev) / b_next;
        const double d_next = (p + x * d - b_k * d_prev) / b_next;
        p_prev = p;
        p = p_next;
        d_prev = d;
        d = d_next;
    }
    return {p, p_prev, d};
}

// Zeros of the degree-n member of the family with Jacobi off-diagonals
// beta(1..n-1), polished by Newton steps and mirrored to exact symmetry.
std::vector<double> symmetric_jacobi_zeros(int n, const std::function<double(int)>& beta,
                                           const char* family)
{
    if (n == 0)
        return {};
    if (n == 1)
        return {0.0};

    Eigen::VectorXd diag = Eigen::VectorXd::Zero(n);
    Eigen::VectorXd sub(n - 1);
    for (int k = 1; k < n; ++k)
        sub(k - 1) = beta(k);

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
    solver.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) {
        throw NumericalFailure(std::string("tridiagonal eigensolver did not converge for ") +
                               family + " of degree " + std::to_string(n) + " (max " +
                               std::to_string(Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>::m_maxIterations) +
                               " sweeps per eigenvalue)");
    }

    std::vector<double> roots(solver.eigenvalues().data(), solver.eigenvalues().data() + n);
    for (double& x : roots) {
        for (int step = 0; step < 2; ++step) {
            const auto e = orthonormal_eval(n, x, beta);
            if (e.derivative == 0.0)
                break;
            const double dx = e.value / e.derivative;
            if (!std::isfinite(dx) || std::abs(dx) > 1e-8 * std::max(1.0, std::abs(x)))
                break;
            x -= dx;
        }
    }
    std::sort(roots.begin(), roots.end(), std::greater<>());

    for (int i = 0; i < n / 2; ++i) {
        const double r = 0.5 * (roots[i] - roots[n - 1 - i]);
        roots[i] = r;
        roots[n - 1 - i] = -r;
    }
    if (n % 2 == 1)
        roots[n / 2] = 0.0;
    return roots;
}

double hermite_beta(int k) { return std::sqrt(static_cast<double>(k)); }

double modified_beta(int k) { return std::sqrt(static_cast<double>(k + 2)); }

void require_order(int order, int minimum, const char* what)
{
    if (order < minimum) {
        throw InvalidArgument(std::string(what) + ": order must be >= " + std::to_string(minimum) +
                              ", got " + std::to_string(order));
    }
}

} // namespace

double hermite_value(int n, double x)
{
    if (n < 0)
        throw InvalidArgument("hermite_value: negative degree");
    if (n == 0)
        return 1.0;
    double prev = 1.0, cur = x;
    for (int k = 1; k < n; ++k) {
        const double next = x * cur - k * prev;
        prev = cur;
        cur = next;
    }
    return cur;
}

double modified_hermite_value(int k, double x)
{
    if (k < 0)
        throw InvalidArgument("modified_hermite_value: negative degree");
    if (k == 0)
        return 1.0;
    double prev = 1.0, cur = x;
    for (int j = 1; j < k; ++j) {
        const double next = x * cur - (j + 2) * prev;
        prev = cur;
        cur = next;
    }
    return cur;
}

QuadratureRule hermite_rule(int order)
{
    require_order(order, 1, "hermite_rule");

    QuadratureRule rule;
    rule.order = order;
    rule.nodes = symmetric_jacobi_zeros(order, hermite_beta, "He");

    // Christoffel numbers: w_i = 1 / (M p_{M-1}(x_i)^2) with p_k = He_k/sqrt(k!).
    // Unlike squared eigenvector components these keep full relative accuracy
    // in the tails.
    rule.weights.resize(order);
    for (int i = 0; i < order; ++i) {
        const auto e = orthonormal_eval(order, rule.nodes[i], hermite_beta);
        rule.weights[i] = 1.0 / (order * e.previous * e.previous);
    }
    for (int i = 0; i < order / 2; ++i) {
        const double w = 0.5 * (rule.weights[i] + rule.weights[order - 1 - i]);
        rule.weights[i] = w;
        rule.weights[order - 1 - i] = w;
    }

    double total = 0.0;
    if (order > kCompensatedOrder) {
        total = neumaier_sum(rule.weights);
    } else {
        for (double w : rule.weights)
            total += w;
    }
    for (double& w : rule.weights)
        w /= total;
    return rule;
}

std::vector<double> modified_hermite_roots(int order)
{
    require_order(order, 3, "modified_hermite_roots");
    return symmetric_jacobi_zeros(order - 2, modified_beta, "modified He");
}

HermiteTransform hermite_transform(int order)
{
    HermiteTransform t;
    t.order = order;
    t.rule = hermite_rule(order);
    t.matrix_r.resize(order, order);
    t.matrix_r_tilde.resize(order, order);

    for (int j = 0; j < order; ++j) {
        const double x = t.rule.nodes[j];
        // He_i / i! via (x p_i - p_{i-1}) / (i+1): no separate factorial.
        double p_prev = 0.0, p = 1.0;
        double h_prev = 0.0, h = 1.0;
        for (int i = 0; i < order; ++i) {
            t.matrix_r(i, j) = p;
            t.matrix_r_tilde(i, j) = h;
            const double p_next = (x * p - p_prev) / (i + 1);
            const double h_next = x * h - i * h_prev;
            p_prev = p;
            p = p_next;
            h_prev = h;
            h = h_next;
        }
    }
    return t;
}

Eigen::MatrixXd rhat_columns(int rows, const std::vector<double>& lambda_hat)
{
    const int cols = static_cast<int>(lambda_hat.size());
    Eigen::MatrixXd r(rows, cols);
    for (int j = 0; j < cols; ++j) {
        const double x = lambda_hat[j];
        // q_i = 2 Ĥe_i / (i+2)!, q_{i+1} = (x q_i - q_{i-1}) / (i+3).
        double q_prev = 0.0, q = 1.0;
        for (int i = 0; i < rows; ++i) {
            r(i, j) = q;
            const double q_next = (x * q - q_prev) / (i + 3);
            q_prev = q;
            q = q_next;
        }
    }
    return r;
}

Eigen::MatrixXd rhat_matrix(int order)
{
    require_order(order, 3, "rhat_matrix");
    return rhat_columns(order - 2, modified_hermite_roots(order));
}

} // namespace kramers
