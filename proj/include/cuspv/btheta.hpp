#pragma once

// The limiting Hermitian forms B_theta of the quantum variance at
// squeezing scale (k-1)^theta, and their phase transition at theta = 1/2.
//
// Regime kernel (m, n nonzero mode indices):
//   f_{theta,m,n}(y) = 1                                   0 < theta < 1/2
//                    = exp(-2 pi^2 y^2 (m^2 + n^2))        theta = 1/2
//                    = 0                                    theta > 1/2
//
// Nonzero-mode pairs:
//   B_theta(P_{V1,h1}, P_{V2,h2}) = (pi/4) tau_1((|h1|,|h2|))
//       int_0^inf V1(y/|h1|) conj(V2)(y/|h2|) f_{theta,h1,h2}(y) dy/y^2.
// Mixed zero/nonzero pairs vanish.  The zero-mode (Eisenstein) pair is
// theta-independent:
//   (pi/4) int 1/t^2 G1(t) G2(t) dt,
//   G_i(t) = int b2(y) Vtilde_i(t/y) dy/y^2 = (1/t) int b2(t/u) Vtilde_i(u) du,
// which vanishes identically for t <= inf supp V_i when int V_i y^{-2} dy = 0.
//
// Evaluation against Maass forms:
//   B_theta(1_B phi1, 1_B phi2) = 4 pi sum_{m,n>=1} tau_1((m,n))
//       lambda_1(m) lambda_2(n) (mn)^{-1/2} I_theta(m, n; t1, t2),
//   I_theta = int_{max(m,n)}^inf K_{it1}(2 pi y) K_{it2}(2 pi y)
//             f_{theta,m,n}(y) dy/y,
// zero unless both forms are even.

#include "cuspv/maass.hpp"
#include "cuspv/weights.hpp"

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

namespace cuspv {

enum class ThetaRegime { low, critical, high };

ThetaRegime theta_regime(double theta);

double f_theta_kernel(double theta, std::int64_t m, std::int64_t n, double y);

// One Fourier mode of an observable on the cusp box: coeff * V(y) e(m x).
struct ModeEntry {
    std::int64_t m = 0;
    std::complex<double> coeff{1.0, 0.0};
    TestWeight V;
};

// Finitely many modes; supports bounded below by 1; any zero mode must be
// mean-zero (validated at construction to 1e-10).
struct FourierObservable {
    std::vector<ModeEntry> modes;
    static FourierObservable make(std::vector<ModeEntry> modes);
    std::string describe() const;
};

// Nonzero-mode pair (h1, h2 != 0).  Critical-regime Gaussian truncated
// where 2 pi^2 y^2 (h1^2 + h2^2) > 60.
double b_theta_poincare(const TestWeight& V1, std::int64_t h1,
                        const TestWeight& V2, std::int64_t h2, double theta);

// Zero-mode pair; requires mean-zero weights; theta-independent.
// depth doubles the panel resolution for self-consistency checks.
double b_theta_eisenstein(const TestWeight& V1, const TestWeight& V2, int depth = 1);

std::complex<double> b_theta_general(const FourierObservable& psi1,
                                     const FourierObservable& psi2, double theta);

// I_theta(m, n; t1, t2); real when t1 == t2.
double i_theta(std::int64_t m, std::int64_t n, double t1, double t2, double theta);

// Partial sums S_1..S_N of the Maass-pair expansion of
// B_theta(1_B phi1, 1_B phi2) over square truncations m, n <= j.
// All zeros exactly unless both forms are even.
std::vector<double> b_theta_maass_partial(const MaassFormData& phi1,
                                          const MaassFormData& phi2,
                                          double theta, int N);

inline std::vector<double> b_theta_maass_partial(const MaassFormData& phi,
                                                 double theta, int N) {
    return b_theta_maass_partial(phi, phi, theta, N);
}

// Weighted nonnegativity probe, partial sums S_1..S_N over square
// truncations m, n <= j:
//   sum_{m,n<=j} tau_1((m,n)) lambda(m) lambda(n) (mn)^{-1/2}
//       int_0^inf |K_{it}(2 pi y)|^2 w(y/m) w(y/n) dy/y.
std::vector<double> corollary_weighted(const MaassFormData& phi, const TestWeight& w, int N);

// Sobolev norm ||1_B psi||_{2,N} of a purely cuspidal observable: sqrt of
//   sum_{j<=N} sum_{m!=0} |2 pi m|^{2j} int_1^inf |V_m(y)|^2 dy/y^2.
// Rejects observables carrying a zero mode.
double sobolev_norm(const FourierObservable& psi, int N);

} // namespace cuspv
