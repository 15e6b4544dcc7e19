#pragma once

// The symmetric-square L-value at the edge, two ways.
//
// l_sym2_at_1 realizes the smoothed Dirichlet series
//   zeta(2) * sum_n lambda_f(n^2) n^{-1} e^{-n/T},
// doubling T until successive values differ by less than tol.  Its error
// decays only like c_k / T (measured: c_12 ~ 1.15), so tight tolerances
// are honestly reported as non-stabilized rather than met.
//
// l_sym2_norm computes the same value through the Petersson norm:
//   L(1, sym^2 f) = (pi/2) (4 pi)^k ||f||^2 / Gamma(k),
//   ||f||^2 = int_F y^{k-2} |f|^2 dx dy
// with the y >= 1 part summed exactly as sum_n |lambda(n)|^2 *
// Q(k-1, 4 pi n) (regularized incomplete gamma) and the sliver between
// the unit arc and y = 1 by quadrature.  Accuracy ~1e-9 relative at cost
// O(k) per form; this is the producer used wherever the Petersson
// identity demands L-values far beyond what the smoothed series can give.

#include "cuspv/qforms.hpp"

namespace cuspv {

struct Sym2Value {
    int k = 0;
    int index = 0;
    double value = 0;       // smoothed sum at the final T
    double T = 0;
    double gap = 0;         // |value(T) - value(T/2)| at the final T
    int doublings = 0;
    bool stabilized = false;
};

// Twelve doublings without stabilization come back with stabilized =
// false and the last gap on record; a lambda table too shallow to feed
// the next cutoff throws NumericError.
Sym2Value l_sym2_at_1(const HeckeEigenform& f, double tol, double T0 = 16.0);

// Lambda table depth l_sym2_norm needs at weight k.
int sym2_norm_nmax(int k);

double l_sym2_norm(const HeckeEigenform& f);

// ln ||f||^2 for the lambda-normalized form; mass normalization for the
// microlocal measures and renders.
double log_petersson_norm_sq(const HeckeEigenform& f);

} // namespace cuspv
