#include "cuspv/sym2.hpp"

#include "cuspv/arith.hpp"
#include "cuspv/errors.hpp"
#include "cuspv/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

namespace cuspv {

namespace {

constexpr double kPi = std::numbers::pi;

// log of the Poisson CDF Q(m, x) = e^{-x} sum_{j < m} x^j / j!, i.e. the
// regularized upper incomplete gamma Gamma(m, x)/Gamma(m).  All terms are
// positive, so log-sum-exp loses nothing.
double log_poisson_cdf(int m, double x) {
    if (m <= 0) return -std::numeric_limits<double>::infinity();
    if (x <= 0.0) return 0.0;
    double lmax = -std::numeric_limits<double>::infinity();
    std::vector<double> lt(static_cast<size_t>(m));
    for (int j = 0; j < m; ++j) {
        lt[static_cast<size_t>(j)] = j * std::log(x) - std::lgamma(j + 1.0);
        lmax = std::max(lmax, lt[static_cast<size_t>(j)]);
    }
    double s = 0.0;
    for (double v : lt) s += std::exp(v - lmax);
    return lmax + std::log(s) - x;
}

// Chernoff form of the same tail for x > m-1: Q(m, x) <= exp(-x + a(1 + ln(x/a)))
// with a = m-1; certifies truncation of the spectral-strip sum.
double log_poisson_cdf_bound(int m, double x) {
    const double a = m - 1.0;
    if (a <= 0.0) return -x;
    if (x <= a) return 0.0;
    return -x + a * (1.0 + std::log(x / a));
}

// lambda_f(n^2) in double via multiplicativity and the Chebyshev recursion
// at each prime; needs every prime factor of n inside the table.
double lambda_square(const HeckeEigenform& f, std::uint64_t n) {
    double out = 1.0;
    for (auto [p, e] : factorize(n)) {
        if (p > static_cast<std::uint64_t>(f.n_max()))
            throw NumericError("l_sym2_at_1: prime " + std::to_string(p) +
                               " beyond the lambda table; deepen the basis");
        const double lp = f.lambda(p);
        double prev = 1.0, cur = lp;
        for (unsigned j = 1; j < 2 * e; ++j) {
            const double next = lp * cur - prev;
            prev = cur;
            cur = next;
        }
        out *= cur;
    }
    return out;
}

} // namespace

Sym2Value l_sym2_at_1(const HeckeEigenform& f, double tol, double T0) {
    if (!(tol > 0.0) || !(T0 >= 1.0))
        throw ConfigError("l_sym2_at_1: need tol > 0 and T0 >= 1");
    const double zeta2 = kPi * kPi / 6.0;

    std::vector<double> lam_sq{0.0}; // lam_sq[n] = lambda(n^2), grown on demand
    auto ensure = [&](std::uint64_t n) {
        while (lam_sq.size() <= n)
            lam_sq.push_back(lambda_square(f, static_cast<std::uint64_t>(lam_sq.size())));
    };
    auto smoothed = [&](double T) {
        // |lambda(n^2)| <= d(n^2) <= 1.3 n, so the tail beyond N is below
        // 1.3 T e^{-N/T}; N keeps that two orders under tol.
        const auto N = static_cast<std::uint64_t>(
            std::ceil(T * std::log(std::max(1e5 * T, 130.0 * T / tol))));
        ensure(N);
        double acc = 0.0, comp = 0.0;
        for (std::uint64_t n = 1; n <= N; ++n) {
            const double term = lam_sq[n] / static_cast<double>(n) *
                                std::exp(-static_cast<double>(n) / T);
            const double y = term - comp;
            const double t = acc + y;
            comp = (t - acc) - y;
            acc = t;
        }
        return zeta2 * acc;
    };

    Sym2Value out;
    out.k = f.k();
    out.index = f.index();
    double T = T0;
    double prev = smoothed(T);
    for (int d = 1; d <= 12; ++d) {
        T *= 2.0;
        const double cur = smoothed(T);
        out.value = cur;
        out.T = T;
        out.gap = std::abs(cur - prev);
        out.doublings = d;
        if (out.gap < tol) {
            out.stabilized = true;
            return out;
        }
        prev = cur;
    }
    out.stabilized = false;
    return out;
}

int sym2_norm_nmax(int k) {
    const double strip =
        ((k - 2) + 10.0 * std::sqrt(std::max(k - 2, 1)) + 60.0) / (4.0 * kPi);
    const double arc = 1.5 * (k - 1) / (4.0 * kPi * 0.866) + 48.0;
    return static_cast<int>(std::ceil(std::max(strip, arc))) + 2;
}

namespace {

// Scaled partial Fourier sum on the arc: returns |F|^2 and the scaling
// exponent C(y) with F = sum_n lambda(n) exp(h_n - C) e(nx),
// h_n = (k-1)/2 ln n - 2 pi n y.
double scaled_mass(const HeckeEigenform& f, double x, double y, double* C_out) {
    const int k = f.k();
    const double half = 0.5 * (k - 1);
    const double nstar = std::max(1.0, half / (2.0 * kPi * y));
    const double C = half * std::log(nstar) - 2.0 * kPi * nstar * y;
    double re = 0.0, im = 0.0;
    for (int n = 1;; ++n) {
        const double h = half * std::log(static_cast<double>(n)) - 2.0 * kPi * n * y - C;
        if (n > nstar && h < -45.0) break;
        if (n > f.n_max())
            throw NumericError("l_sym2_norm: lambda table too shallow for the arc sum");
        const double w = f.lambda(static_cast<std::uint64_t>(n)) * std::exp(h);
        re += w * std::cos(2.0 * kPi * n * x);
        im += w * std::sin(2.0 * kPi * n * x);
    }
    *C_out = C;
    return re * re + im * im;
}

} // namespace

double l_sym2_norm(const HeckeEigenform& f) {
    const int k = f.k();
    if (k < 12 || k % 2 != 0)
        throw ConfigError("l_sym2_norm: not a cusp form weight");

    // Strip y >= 1, unfolded exactly:
    //   (2 pi^2 / (k-1)) sum_n lambda(n)^2 Q(k-1, 4 pi n)
    double strip = 0.0;
    bool certified = false;
    for (int n = 1; n <= f.n_max(); ++n) {
        const double x = 4.0 * kPi * n;
        const double lq = log_poisson_cdf(k - 1, x);
        const double lam = f.lambda(static_cast<std::uint64_t>(n));
        strip += lam * lam * std::exp(lq);
        // residual tail: |lambda(m)|^2 <= m, bound sum_{m > n} m Q(k-1, 4 pi m)
        if (x > (k - 2) + 6.0) {
            const double lb = log_poisson_cdf_bound(k - 1, 4.0 * kPi * (n + 1)) +
                              std::log(n + 1.0);
            // successive bounds shrink by at least e^{-4 pi + 1}; certify with factor 2
            if (lb < std::log(std::max(strip, 1e-300)) - 36.0) {
                certified = true;
                break;
            }
        }
    }
    if (!certified)
        throw NumericError("l_sym2_norm: lambda table too shallow to certify the strip tail "
                           "(need n_max >= " + std::to_string(sym2_norm_nmax(k)) + ")");
    strip *= 2.0 * kPi * kPi / (k - 1);

    // Arc sliver between the unit circle and y = 1, times the (4 pi)^k /
    // Gamma(k) prefactor folded into the integrand exponent so nothing
    // overflows at large weight.
    const double lp = std::log(kPi / 2.0) + k * std::log(4.0 * kPi) - std::lgamma(k);
    auto g = [&](double x, double y) {
        double C = 0.0;
        const double m = scaled_mass(f, x, y, &C);
        const double expo = lp + (k - 2) * std::log(y) + 2.0 * C;
        return std::exp(expo) * m;
    };
    double arc = 0.0;
    const int x_panels = 32;
    for (int px = 0; px < x_panels; ++px) {
        const double x0 = 0.5 * px / x_panels, x1 = 0.5 * (px + 1) / x_panels;
        arc += gauss_legendre(
            [&](double x) {
                const double ylo = std::sqrt(1.0 - x * x);
                return gauss_legendre([&](double y) { return g(x, y); }, ylo, 1.0, 16);
            },
            x0, x1, 12);
    }
    arc *= 2.0; // x -> -x symmetry

    return strip + arc;
}

double log_petersson_norm_sq(const HeckeEigenform& f) {
    const int k = f.k();
    const double L = l_sym2_norm(f);
    if (!(L > 0.0))
        throw NumericError("log_petersson_norm_sq: nonpositive symmetric-square value");
    return std::log(2.0 / kPi) + std::lgamma(k) - k * std::log(4.0 * kPi) + std::log(L);
}

} // namespace cuspv
