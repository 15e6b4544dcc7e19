#pragma once

// One-dimensional quadrature with explicit error control.  Finite
// intervals go through adaptive Gauss-Kronrod; semi-infinite ones through
// a double-exponential transform.  A result whose error estimate exceeds
// the requested tolerance raises NumericError rather than being returned.

#include <functional>
#include <limits>

namespace cuspv {

enum class QuadScheme { adaptive_gk, tanh_sinh, exp_sinh };

struct QuadratureSpec {
    QuadScheme scheme = QuadScheme::adaptive_gk;
    double abs_tol = 1e-12;
    double rel_tol = 1e-10;
    int max_depth = 15;
};

struct QuadResult {
    double value = 0;
    double error_estimate = 0;
};

// Integrate f over [a, b]; b may be +infinity (scheme exp_sinh or
// adaptive_gk with internal splitting is chosen automatically if the
// spec's scheme cannot represent the interval).
QuadResult integrate(const std::function<double(double)>& f, double a, double b,
                     const QuadratureSpec& spec = {});

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// Fixed-order Gauss-Legendre on [a, b]; building block for panelized
// integrands with known kinks (b2 seams, heat-grid rows).
double gauss_legendre(const std::function<double(double)>& f, double a, double b, int order);

} // namespace cuspv
