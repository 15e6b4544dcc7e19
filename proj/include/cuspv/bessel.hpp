#pragma once

// Bessel functions in the two shapes the Petersson and Maass machinery
// needs.
//
// bessel_j: J_nu(x) for nu >= 0, x >= 0.  Regime map: power series for
// x <= max(10, nu/2); backward (Miller) recurrence normalized by the
// Neumann sum for x <= 2 nu; forward recurrence seeded by J_0, J_1
// large-argument asymptotics beyond.  Integer orders cover every internal
// use; non-integer orders are accepted where the series or asymptotic
// regimes apply.
//
// bessel_k_imag: K_{it}(x) = int_0^inf exp(-x cosh u) cos(t u) du.  The
// integrand cancels down to size ~exp(-pi t / 2), so the integral is
// evaluated in MPFR interim precision scaled with |t|, by tanh-sinh
// quadrature on [0, U] with U fixed by exp(-x cosh U) dropping 60+ orders
// below the result.

#include <cstdint>

namespace cuspv {

double bessel_j(double nu, double x);

// K_{it}(x), real for real t (even in t).  x > 50 underflows to exact 0
// by design: K decays like e^{-x} and every consumer integrates against
// weights of at most polynomial growth.
double bessel_k_imag(double t, double x);

// log of the first-term bound |J_nu(x)| <= (x/2)^nu / Gamma(nu+1); used
// for certified truncation of Kloosterman-Bessel tails.
double log_bessel_j_bound(double nu, double x);

} // namespace cuspv
