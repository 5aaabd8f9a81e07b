#pragma once

// Independent reference computations for the tests. Nothing here calls the
// library: polynomials are expanded in monomials, integrals use Gauss-Legendre
// panels, and half-space moments are tracked exactly as a + b sqrt(pi/2).

#include <cmath>
#include <cstdint>
#include <functional>
#include <vector>

#include <quadmath.h>

namespace oracle {

inline const double kPi = 3.14159265358979323846;
inline const double kSqrtHalfPi = std::sqrt(kPi / 2.0);

/// Monomial coefficients (index = power) of He_n via the explicit sum.
inline std::vector<std::int64_t> hermite_coefficients(int n)
{
    std::vector<std::int64_t> c(static_cast<std::size_t>(n) + 1, 0);
    // He_n(x) = n! Σ_j (-1)^j x^{n-2j} / (j! (n-2j)! 2^j)
    for (int j = 0; 2 * j <= n; ++j) {
        // n! / (j! (n-2j)! 2^j) computed as a product of exact integer ratios
        std::int64_t v = 1;
        for (int t = n - 2 * j + 1; t <= n; ++t)
            v *= t; // n! / (n-2j)!
        for (int t = 1; t <= j; ++t)
            v /= 2 * t; // / (j! 2^j) = / (2j)!!
        c[n - 2 * j] = (j % 2 ? -v : v);
    }
    return c;
}

/// Monomial coefficients of the modified family Ĥe_k.
inline std::vector<double> modified_hermite_coefficients(int k)
{
    std::vector<double> prev{1.0}, cur{0.0, 1.0};
    if (k == 0)
        return prev;
    for (int j = 1; j < k; ++j) {
        std::vector<double> next(cur.size() + 1, 0.0);
        for (std::size_t p = 0; p < cur.size(); ++p)
            next[p + 1] += cur[p];
        for (std::size_t p = 0; p < prev.size(); ++p)
            next[p] -= (j + 2) * prev[p];
        prev = cur;
        cur = next;
    }
    return cur;
}

template <class T>
double horner(const std::vector<T>& c, double x)
{
    double v = 0.0;
    for (std::size_t i = c.size(); i-- > 0;)
        v = v * x + static_cast<double>(c[i]);
    return v;
}

inline double hermite_monomial(int n, double x) { return horner(hermite_coefficients(n), x); }

/// Gauss-Legendre nodes/weights on [-1, 1] (Newton on P_n).
inline void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w)
{
    x.assign(n, 0.0);
    w.assign(n, 0.0);
    for (int i = 0; i < n; ++i) {
        double z = std::cos(kPi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = z;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2 * k - 1) * z * p1 - (k - 1) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (z * p1 - p0) / (z * z - 1.0);
            const double dz = p1 / dp;
            z -= dz;
            if (std::abs(dz) < 1e-16)
                break;
        }
        x[i] = z;
        w[i] = 2.0 / ((1.0 - z * z) * dp * dp);
    }
}

/// Composite Gauss-Legendre integral of f over [a, b].
inline double integrate(const std::function<double(double)>& f, double a, double b, int panels = 64,
                        int points = 20)
{
    std::vector<double> x, w;
    gauss_legendre(points, x, w);
    const double h = (b - a) / panels;
    double sum = 0.0;
    for (int p = 0; p < panels; ++p) {
        const double mid = a + (p + 0.5) * h;
        for (int i = 0; i < points; ++i)
            sum += w[i] * f(mid + 0.5 * h * x[i]);
    }
    return 0.5 * h * sum;
}

/// ∫_0^∞ ξ^k He_m(ξ) e^{-ξ²/2} dξ by composite Gauss-Legendre on [0, 16]
/// (tail below e^{-120}) in quad precision. The integrand reaches ~1e10
/// while some integrals vanish, so double precision cannot resolve 1e-10.
inline double sstar_quadrature(int k, int m)
{
    using Q = __float128;
    constexpr int points = 24;
    constexpr int panels = 64;
    Q x[points], w[points];
    for (int i = 0; i < points; ++i) {
        Q z = std::cos(kPi * (i + 0.75) / (points + 0.5));
        Q dp = 0;
        for (int it = 0; it < 8; ++it) {
            Q p0 = 1, p1 = z;
            for (int j = 2; j <= points; ++j) {
                const Q p2 = ((2 * j - 1) * z * p1 - (j - 1) * p0) / j;
                p0 = p1;
                p1 = p2;
            }
            dp = points * (z * p1 - p0) / (z * z - 1);
            z -= p1 / dp;
        }
        x[i] = z;
        w[i] = 2 / ((1 - z * z) * dp * dp);
    }
    auto integrand = [&](Q t) {
        Q h0 = 1, h1 = t; // He by its three-term recurrence
        Q he = m == 0 ? h0 : h1;
        for (int n = 1; n < m; ++n) {
            he = t * h1 - n * h0;
            h0 = h1;
            h1 = he;
        }
        Q pw = 1;
        for (int n = 0; n < k; ++n)
            pw *= t;
        return pw * he * expq(-t * t / 2);
    };
    const Q a = 0, b = 16, h = (b - a) / panels;
    Q sum = 0;
    for (int p = 0; p < panels; ++p) {
        const Q mid = a + (p + Q(0.5)) * h;
        for (int i = 0; i < points; ++i)
            sum += w[i] * integrand(mid + h / 2 * x[i]);
    }
    return static_cast<double>(h / 2 * sum);
}

/// Exact value a + b sqrt(pi/2).
struct HalfPiNumber {
    std::int64_t a = 0;
    std::int64_t b = 0;
    double value() const { return static_cast<double>(a) + static_cast<double>(b) * kSqrtHalfPi; }
};

inline std::int64_t double_factorial(int n)
{
    std::int64_t v = 1;
    for (int t = n; t > 1; t -= 2)
        v *= t;
    return v;
}

/// ∫_0^∞ ξ^n e^{-ξ²/2} dξ = (n-1)!! sqrt(pi/2) for even n, (n-1)!! for odd n.
inline HalfPiNumber sstar_exact(int k, int m)
{
    const std::vector<std::int64_t> c = hermite_coefficients(m);
    HalfPiNumber r;
    for (std::size_t p = 0; p < c.size(); ++p) {
        if (c[p] == 0)
            continue;
        const int n = k + static_cast<int>(p);
        const std::int64_t df = double_factorial(n - 1);
        if (n % 2 == 0)
            r.b += c[p] * df;
        else
            r.a += c[p] * df;
    }
    return r;
}

/// Boundary constants for M = 4 (amplitude sign follows from the wall system).
inline double m4_c_hat(double chi, double sigma = 1.0)
{
    return std::sqrt(kPi) * (chi - 2.0) /
           (2.0 * (std::sqrt(3.0 * kPi) * (2.0 - chi) + 2.0 * std::sqrt(2.0) * chi)) * sigma;
}

/// The same amplitude with the opposite sign.
inline double m4_c_hat_flipped(double chi, double sigma = 1.0) { return -m4_c_hat(chi, sigma); }

inline double m4_c0(double chi, double sigma = 1.0)
{
    return kSqrtHalfPi * (chi - 2.0) / chi *
           (1.0 + std::sqrt(2.0) * chi /
                      (4.0 * std::sqrt(2.0) * chi + 2.0 * std::sqrt(3.0 * kPi) * (2.0 - chi))) *
           sigma;
}

inline double m5_c_hat(double chi, double sigma = 1.0)
{
    return -3.0 * std::sqrt(kPi) * (chi - 2.0) /
           (2.0 * (3.0 * std::sqrt(7.0 * kPi) * (chi - 2.0) - 10.0 * std::sqrt(2.0) * chi)) * sigma;
}

inline double m5_c0(double chi, double sigma = 1.0)
{
    return kSqrtHalfPi * (chi - 2.0) / chi *
           (1.0 - 2.0 * std::sqrt(2.0) * chi /
                      (3.0 * std::sqrt(7.0 * kPi) * (chi - 2.0) - 10.0 * std::sqrt(2.0) * chi)) *
           sigma;
}

/// Slip coefficients at χ = 1, Kn = 1/√2 from a 60-digit evaluation of the
/// same boundary system (mpmath, frozen).
struct FrozenSlip {
    int order;
    double zeta;
};
inline const FrozenSlip kFrozenSlip[] = {
    {20, 1.0134106420482203},
    {30, 1.0144205130828741},
    {40, 1.0148938150232807},
};

} // namespace oracle
