#pragma once

// Shifted convolutions, squeezed Poincare observables, and the variance
// asymptotics they satisfy on average over the spectrum.
//
//   A_f^W(X, h) = sum_n lambda_f(n) lambda_f(n+h) W((n + h/2)/X)
//
// admits the divisor-sum rewriting (Hecke relations)
//   A_f^W(X, h) = sum_{d | h} sum_r lambda_f(r (r+d)) W((h/d)(r + d/2)/X),
// for h = 0: sum_d sum_r lambda_f(r^2) W(d r / X).
//
// The microlocal observables are squeezed incomplete Poincare series
// M_H P_{V,h} at H = (k-1)^theta; their mass-measure integrals have the
// exact unfolding
//   mu_f(M_H P_{V,h}) = ||f||^{-2} sum_n lambda(n) lambda(n+h)
//       (n(n+h))^{(k-1)/2} int_0^inf V(y/H) y^{k-2} e^{-2 pi (2n+h) y} dy
// and the large-k surrogate
//   (2 pi^2 / ((k-1) L)) sum_n lambda(n) lambda(n+h)
//       V((k-1)^{1-theta} / (4 pi (n + h/2)))
//       (sqrt(n(n+h)) / (n + h/2))^{k-1}.
//
// Experiments compare spectrally averaged sums against the predicted
// main terms, reporting empirical/predicted ratios per K.

#include "cuspv/qforms.hpp"
#include "cuspv/weights.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace cuspv {

struct PoincareObservable {
    TestWeight V;       // support in (1, inf)
    std::int64_t h = 0;
    std::string describe() const;
};

// The squeeze M_H f(z) = f(x + i y / H); carries the scale H = (k-1)^theta
// and the cusp box B_H = {y > H} of volume 1/H.
struct SqueezeSpec {
    double theta = 0;
    double H(int k) const;
};

double shifted_conv_direct(const HeckeEigenform& f, const TestWeight& W,
                           std::int64_t h, double X);
double shifted_conv_hecke(const HeckeEigenform& f, const TestWeight& W,
                          std::int64_t h, double X);

// tau_1((h1,h2)) int_0^inf W1(h1 y) W2(h2 y) dy   (h1, h2 >= 1)
double blf_main_term(const TestWeight& W1, std::int64_t h1,
                     const TestWeight& W2, std::int64_t h2);

struct ExperimentReport {
    double theta = 0;
    int K = 0;
    std::string obs1, obs2;
    double empirical = 0;
    double predicted = 0;
    double ratio = 0;
    std::vector<std::pair<int, double>> per_k;  // weight k -> its cell value
};

void write_report_csv(const std::string& path, const ExperimentReport& r);
void write_per_k_csv(const std::string& path, const ExperimentReport& r);

// Variance of shifted-convolution sums across the spectral window
// u((k-1)/K): empirical
//   sum_{2|k} u((k-1)/K) (2 pi^2 / (k-1)) sum_f A1 A2 / L(1, sym^2 f)
// with X(k) = (k-1)^{1-theta}, against
//   B_{h1,h2}(W1, W2) (K^{2-theta}/2) int u(y) y^{1-theta} dy.
ExperimentReport qvthm_experiment(int K, double theta,
                                  const TestWeight& W1, std::int64_t h1,
                                  const TestWeight& W2, std::int64_t h2,
                                  BasisCache& cache, const TestWeight& u,
                                  int threads = 1);

double mu_poincare_exact(const HeckeEigenform& f, const TestWeight& V,
                         std::int64_t h, double theta);
double mu_poincare_approx(const HeckeEigenform& f, const TestWeight& V,
                          std::int64_t h, double theta);

// Quantum variance: empirical
//   sum_{2|k} u((k-1)/K) sum_f L(1, sym^2 f) mu_f(P1) conj(mu_f(P2))
// against B_theta(P1, P2) K^{1-theta} int u(y) y^{-theta} dy.
ExperimentReport variance_experiment(int K, double theta,
                                     const PoincareObservable& P1,
                                     const PoincareObservable& P2,
                                     BasisCache& cache, const TestWeight& u,
                                     int threads = 1);

// sum_{2|k} u((k-1)/K) sum_f L(1, sym^2 f)  vs  (zeta(2)^2/12)(K^2/2) int u y dy.
ExperimentReport zeroth_moment(int K, BasisCache& cache, const TestWeight& u,
                               int threads = 1);

// sum_{2|k} u((k-1)/K) sum_f L mu_f(M_H P_{V,0})  vs
// nu(P_{V,0}) (zeta(2)^2/12)(K^{2-theta}/2) int u y^{1-theta} dy,
// nu(P_{V,0}) = (3/pi) int V(y) y^{-2} dy.
ExperimentReport first_moment(int K, double theta, const TestWeight& V,
                              BasisCache& cache, const TestWeight& u,
                              int threads = 1);

struct PlanckRow {
    int k = 0;
    double mu = 0;        // mu_f(M_H psi_V), exact unfolding
    double nu = 0;        // (3/pi) H^{-1} int V y^{-2} dy
    double ratio = 0;     // |mu| / nu
    double approx = 0;    // surrogate sum; identically 0 once theta >= 1
};

std::vector<PlanckRow> planck_failure_probe(double theta, const std::vector<int>& ks,
                                            const TestWeight& V, BasisCache& cache);

struct EulerMacResult {
    double lhs = 0;       // sum_d V(X/(r d))
    double rhs = 0;       // (X/r) int V y^{-2} dy - int b2(y) Vtilde(X/(r y)) y^{-2} dy
    double residual = 0;
};

EulerMacResult euler_maclaurin_check(const TestWeight& V, double X, std::uint64_t r);

} // namespace cuspv
