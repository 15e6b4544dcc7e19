// Pointwise evaluation and rendering of eigenforms.
//
// All magnitudes run through the log-scaled partial sum
//   f(x + iy) = e^{L} sum_n sgn(lambda(n)) e^{lm(n) - L} e(nx),
//   lm(n) = ln|lambda(n)| + (k-1)/2 ln n - 2 pi n y,  L = max_n lm(n),
// so the density y^k |f|^2 / ||f||^2 stays representable at weights where
// the raw coefficients a(n) = lambda(n) n^{(k-1)/2} overflow doubles.
//
// Truncation certificate: the envelope env(n) = (k+1)/2 ln n - 2 pi n y
// dominates lm(n) (Deligne gives |lambda(n)| <= d(n) <= n).  The sum stops
// at the first n past the envelope peak where env(n) < env_max - 20 ln 10
// and env(n+1) - env(n) < -ln 2; the remaining tail is then geometrically
// dominated by twice the first dropped term.

#include "cuspv/render.hpp"

#include "cuspv/csvio.hpp"
#include "cuspv/errors.hpp"
#include "cuspv/sym2.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <vector>

namespace cuspv {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kMinHeight = 0.05;
constexpr double kDropLog = 46.0517018598809137;   // 20 ln 10

double envelope(int k, double y, double n) {
    return 0.5 * (k + 1) * std::log(n) - 2.0 * kPi * n * y;
}

// Scaled Fourier sum: returns S with f(x + iy) = S * e^{scale}.
std::complex<double> scaled_sum(const HeckeEigenform& f, double x, double y, double& scale) {
    if (y < kMinHeight)
        throw ConfigError("evaluate_form: y = " + std::to_string(y) +
                          " below the supported height " + std::to_string(kMinHeight));
    const int k = f.k();
    const int need = evaluate_form_depth(k, y);
    if (need > f.n_max())
        throw ConfigError("evaluate_form: height y = " + std::to_string(y) + " at k = " +
                          std::to_string(k) + " needs lambda to " + std::to_string(need) +
                          ", form provides " + std::to_string(f.n_max()));

    std::vector<double> lm(static_cast<std::size_t>(need) + 1,
                           -std::numeric_limits<double>::infinity());
    scale = -std::numeric_limits<double>::infinity();
    for (int n = 1; n <= need; ++n) {
        double l = f.lambda(static_cast<std::uint64_t>(n));
        if (l == 0.0) continue;
        lm[static_cast<std::size_t>(n)] =
            std::log(std::fabs(l)) + 0.5 * (k - 1) * std::log(double(n)) - 2.0 * kPi * n * y;
        scale = std::max(scale, lm[static_cast<std::size_t>(n)]);
    }
    if (!std::isfinite(scale)) {
        scale = 0.0;
        return {0.0, 0.0};
    }
    std::complex<double> s{0.0, 0.0};
    for (int n = 1; n <= need; ++n) {
        double l = lm[static_cast<std::size_t>(n)];
        if (!std::isfinite(l)) continue;
        double mag = std::exp(l - scale);
        if (f.lambda(static_cast<std::uint64_t>(n)) < 0.0) mag = -mag;
        double ph = 2.0 * kPi * n * x;
        s += mag * std::complex<double>(std::cos(ph), std::sin(ph));
    }
    return s;
}

} // namespace

int evaluate_form_depth(int k, double y) {
    if (y < kMinHeight)
        throw ConfigError("evaluate_form_depth: y below the supported height");
    double emax = envelope(k, y, 1.0);
    int n = 1;
    for (;;) {
        ++n;
        double e = envelope(k, y, double(n));
        emax = std::max(emax, e);
        bool deep = e < emax - kDropLog;
        bool ratio = envelope(k, y, double(n + 1)) - e < -std::log(2.0);
        if (deep && ratio) return n + 8;
        if (n > 100000000)
            throw NumericError("evaluate_form_depth: stopping rule unreachable");
    }
}

std::complex<double> evaluate_form(const HeckeEigenform& f, double x, double y) {
    double scale = 0.0;
    std::complex<double> s = scaled_sum(f, x, y, scale);
    return s * std::exp(scale);
}

double mass_density(const HeckeEigenform& f, double x, double y, double log_norm_sq) {
    double scale = 0.0;
    std::complex<double> s = scaled_sum(f, x, y, scale);
    double a = std::abs(s);
    if (a == 0.0) return 0.0;
    return std::exp(f.k() * std::log(y) + 2.0 * (scale + std::log(a)) - log_norm_sq);
}

HeatGrid heatmap(const HeckeEigenform& f, int nx, int ny,
                 double x0, double x1, double y0, double y1, bool log_y) {
    if (nx < 2 || ny < 2) throw ConfigError("heatmap: need at least a 2x2 grid");
    if (!(y0 >= kMinHeight && y1 > y0)) throw ConfigError("heatmap: need 0.05 <= y0 < y1");
    HeatGrid g;
    g.nx = nx;
    g.ny = ny;
    g.x0 = x0;
    g.x1 = x1;
    g.y0 = y0;
    g.y1 = y1;
    g.log_y = log_y;
    g.v.assign(static_cast<std::size_t>(nx) * ny, 0.0);
    const double lnorm = log_petersson_norm_sq(f);
    const double lr = std::log(y1 / y0);
    for (int iy = 0; iy < ny; ++iy) {
        double ty = double(iy) / (ny - 1);
        double y = log_y ? y0 * std::exp(lr * ty) : y0 + (y1 - y0) * ty;
        for (int ix = 0; ix < nx; ++ix) {
            double x = x0 + (x1 - x0) * double(ix) / (nx - 1);
            g.v[static_cast<std::size_t>(iy) * nx + ix] = mass_density(f, x, y, lnorm);
        }
    }
    return g;
}

void write_pgm(const std::string& path, const HeatGrid& g) {
    std::vector<double> sorted(g.v);
    std::nth_element(sorted.begin(), sorted.begin() + sorted.size() / 2, sorted.end());
    double med = sorted[sorted.size() / 2];
    if (med <= 0.0) med = *std::max_element(g.v.begin(), g.v.end());
    if (med <= 0.0) med = 1.0;
    std::vector<double> w(g.v.size());
    double wmax = 0.0;
    for (std::size_t i = 0; i < g.v.size(); ++i) {
        w[i] = std::log1p(g.v[i] / med);
        wmax = std::max(wmax, w[i]);
    }
    std::ofstream out(path);
    if (!out) throw ConfigError("write_pgm: cannot open " + path);
    out << "P2\n" << g.nx << " " << g.ny << "\n65535\n";
    // PGM rows run top-down; the grid stores rows bottom-up
    for (int iy = g.ny - 1; iy >= 0; --iy) {
        for (int ix = 0; ix < g.nx; ++ix) {
            int pix = wmax > 0.0
                          ? static_cast<int>(std::lround(65535.0 * w[static_cast<std::size_t>(iy) * g.nx + ix] / wmax))
                          : 0;
            out << pix << (ix + 1 == g.nx ? "\n" : " ");
        }
    }
    out.flush();
    if (!out) throw ConfigError("write_pgm: write failed for " + path);
}

void write_grid_csv(const std::string& path, const HeatGrid& g) {
    std::ofstream out(path);
    if (!out) throw ConfigError("write_grid_csv: cannot open " + path);
    out << "x,y,value\n";
    const double lr = std::log(g.y1 / g.y0);
    for (int iy = 0; iy < g.ny; ++iy) {
        double ty = double(iy) / (g.ny - 1);
        double y = g.log_y ? g.y0 * std::exp(lr * ty) : g.y0 + (g.y1 - g.y0) * ty;
        for (int ix = 0; ix < g.nx; ++ix) {
            double x = g.x0 + (g.x1 - g.x0) * double(ix) / (g.nx - 1);
            out << fmt_g(x) << "," << fmt_g(y) << "," << fmt_g(g.at(ix, iy)) << "\n";
        }
    }
    out.flush();
    if (!out) throw ConfigError("write_grid_csv: write failed for " + path);
}

GhoshSarnakResult ghosh_sarnak_residual(const HeckeEigenform& f, std::uint64_t l,
                                        int grid_points) {
    const int k = f.k();
    if (l < 1 || double(l) > std::sqrt(double(k - 1) / std::log(double(k - 1))))
        throw ConfigError("ghosh_sarnak_residual: l must satisfy 1 <= l <= sqrt((k-1)/log(k-1))");
    if (grid_points < 1) throw ConfigError("ghosh_sarnak_residual: grid_points must be >= 1");
    const double yl = double(k - 1) / (4.0 * kPi * double(l));
    // N_{k,l} = (e/l)^{(k-1)/2} folded into the scale exponent
    const double lshift = 0.5 * (k - 1) * (1.0 - std::log(double(l)));
    const double lam = f.lambda(l);
    GhoshSarnakResult r;
    r.k = k;
    r.l = l;
    for (int j = 0; j < grid_points; ++j) {
        double x = double(j) / grid_points;
        double scale = 0.0;
        std::complex<double> s = scaled_sum(f, x, yl, scale);
        std::complex<double> lhs = s * std::exp(scale + lshift);
        double ph = 2.0 * kPi * double(l) * x;
        std::complex<double> rhs = lam * std::complex<double>(std::cos(ph), std::sin(ph));
        r.sup_residual = std::max(r.sup_residual, std::abs(lhs - rhs));
    }
    return r;
}

} // namespace cuspv
