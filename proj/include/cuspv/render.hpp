#pragma once

// Pointwise evaluation of eigenforms, mass-density renders, and the
// horocycle localization diagnostic.
//
// evaluate_form sums a_f(n) e(nz) with a certified cutoff: terms are
// dropped once n^{(k-1)/2} e^{-2 pi n y} falls 20 orders below the
// running peak and the term ratio is provably < 1/2.  The mass density
// y^k |f|^2 / ||f||^2 is computed in log scale, so renders work at
// weights where the raw coefficients overflow doubles.
//
// ghosh_sarnak_residual measures sup_x over a 256-point grid of
//   | (e/l)^{(k-1)/2} f(x + i y_l) - lambda_f(l) e(l x) |,
// y_l = (k-1)/(4 pi l).  The normalizer (e/l)^{(k-1)/2} is the one that
// makes the n = l term of the a_f(1)=1-normalized expansion match
// lambda_f(l) e(lx) exactly; the alternative reading (e/l)^{k-1} pairs
// with y^{k/2}-weighted evaluations and is documented in the CLI report
// header alongside this one.

#include "cuspv/qforms.hpp"

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

namespace cuspv {

// Smallest table depth that lets the truncated expansion at height y meet
// its certified-tail stopping rule.
int evaluate_form_depth(int k, double y);

// f(x + iy) with a_f(1) = 1 normalization; requires y >= 0.05.
std::complex<double> evaluate_form(const HeckeEigenform& f, double x, double y);

// y^k |f(z)|^2 / ||f||^2 given ln ||f||^2 (see log_petersson_norm_sq).
double mass_density(const HeckeEigenform& f, double x, double y, double log_norm_sq);

struct HeatGrid {
    int nx = 0, ny = 0;
    double x0 = 0, x1 = 0, y0 = 0, y1 = 0;
    bool log_y = false;
    std::vector<double> v;  // row-major, rows = y slices bottom-up
    double at(int ix, int iy) const { return v[static_cast<size_t>(iy) * nx + ix]; }
};

HeatGrid heatmap(const HeckeEigenform& f, int nx, int ny,
                 double x0, double x1, double y0, double y1, bool log_y);

// 16-bit ASCII PGM (P2), intensity log-compressed v -> log(1 + v/median).
void write_pgm(const std::string& path, const HeatGrid& g);
void write_grid_csv(const std::string& path, const HeatGrid& g);

struct GhoshSarnakResult {
    int k = 0;
    std::uint64_t l = 0;
    double sup_residual = 0;
};

GhoshSarnakResult ghosh_sarnak_residual(const HeckeEigenform& f, std::uint64_t l,
                                        int grid_points = 256);

} // namespace cuspv
