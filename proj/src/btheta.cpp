// The limiting Hermitian forms B_theta and their phase transition at
// theta = 1/2.
//
// Nonzero-mode pairs reduce to a single weighted integral against the
// regime kernel f_theta.  The zero-mode (Eisenstein) pair is the triple
// integral
//   (pi/4) iiint b2(y1) b2(y2) Vt1(t/y1) Vt2(t/y2) dy1/y1^2 dy2/y2^2 dt/t^2,
// which factors through G_i(t) = int b2(y) Vt_i(t/y) dy/y^2
//                              = (1/t) int b2(t/u) Vt_i(u) du.
// For t below the support of V_i the periodized Bernoulli factor is the
// plain polynomial and G_i(t) = t * int V_i(u) u^-2 du, so mean-zero
// weights make the integrand vanish identically there; for large t one
// partial integration against b3 (b3' = b2, max |B_3| = 1/(12 sqrt 3))
// gives |G_i(t)| <= (1/(72 sqrt 3)) TV(u^2 Vt_i) / t^2, which certifies
// the truncation of the t-integral.  Both integrals are panelized at the
// kinks of the periodized Bernoulli polynomials (t/u crossing integers).
//
// Maass-pair evaluations integrate products of K-Bessel values of
// imaginary order; K_{it}(2 pi y) is zero past y = 8 by the evaluation
// contract (the true tail is below e^-100), so every y-integral lives on
// [max(m,n), 8] and vanishes once max(m,n) >= 8.

#include "cuspv/btheta.hpp"

#include "cuspv/arith.hpp"
#include "cuspv/bessel.hpp"
#include "cuspv/errors.hpp"
#include "cuspv/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>
#include <vector>

namespace cuspv {

namespace {

constexpr double kPi = 3.14159265358979323846;

struct Kahan {
    double s = 0.0, c = 0.0;
    void add(double x) {
        double y = x - c;
        double t = s + y;
        c = (t - s) - y;
        s = t;
    }
};

double mean_against_y2(const TestWeight& V) {
    return integrate([&](double y) { return V(y) / (y * y); },
                     V.support_lo(), V.support_hi(),
                     {QuadScheme::adaptive_gk, 1e-14, 1e-12, 15}).value;
}

// G(t) = (1/t) int b2(t/u) Vt(u) du, panelized at the seams u = t/m.
double g_factor(double t, const TestWeight& Vt) {
    const double a = Vt.support_lo(), A = Vt.support_hi();
    std::vector<double> edges{a};
    auto mhi = static_cast<std::int64_t>(std::floor(t / a));
    for (std::int64_t m = mhi; m >= 1; --m) {
        double u = t / double(m);
        if (u > a && u < A && u > edges.back() + 1e-12) edges.push_back(u);
    }
    if (A > edges.back()) edges.push_back(A);
    Kahan acc;
    for (std::size_t i = 0; i + 1 < edges.size(); ++i)
        acc.add(gauss_legendre([&](double u) { return b2(t / u) * Vt(u); },
                               edges[i], edges[i + 1], 12));
    return acc.s / t;
}

// Total variation of u^2 Vt(u) over the support, by fine sampling; feeds
// the |G| <= C / t^2 truncation certificate.
double tv_bound(const TestWeight& Vt) {
    const int N = 8192;
    const double a = Vt.support_lo(), A = Vt.support_hi();
    double prev = 0.0, tv = 0.0;
    for (int i = 0; i <= N; ++i) {
        double u = a + (A - a) * double(i) / double(N);
        double g = u * u * Vt(u);
        tv += std::fabs(g - prev);
        prev = g;
    }
    return tv;
}

} // namespace

ThetaRegime theta_regime(double theta) {
    if (!(theta >= 0.0)) throw ConfigError("theta_regime: theta must be >= 0");
    if (theta < 0.5) return ThetaRegime::low;
    if (theta == 0.5) return ThetaRegime::critical;
    return ThetaRegime::high;
}

double f_theta_kernel(double theta, std::int64_t m, std::int64_t n, double y) {
    switch (theta_regime(theta)) {
        case ThetaRegime::low:
            return 1.0;
        case ThetaRegime::critical: {
            double s = double(m) * double(m) + double(n) * double(n);
            return std::exp(-2.0 * kPi * kPi * y * y * s);
        }
        case ThetaRegime::high:
            return 0.0;
    }
    return 0.0;
}

double b_theta_poincare(const TestWeight& V1, std::int64_t h1,
                        const TestWeight& V2, std::int64_t h2, double theta) {
    if (h1 == 0 || h2 == 0)
        throw ConfigError("b_theta_poincare: mode indices must be nonzero");
    const auto reg = theta_regime(theta);
    if (reg == ThetaRegime::high) return 0.0;
    const double m1 = double(h1 < 0 ? -h1 : h1), m2 = double(h2 < 0 ? -h2 : h2);
    double ylo = std::max(V1.support_lo() * m1, V2.support_lo() * m2);
    double yhi = std::min(V1.support_hi() * m1, V2.support_hi() * m2);
    const double s = m1 * m1 + m2 * m2;
    if (reg == ThetaRegime::critical)
        yhi = std::min(yhi, std::sqrt(60.0 / (2.0 * kPi * kPi * s)));
    if (!(ylo < yhi)) return 0.0;
    auto f = [&](double y) {
        double v = V1(y / m1) * V2(y / m2) / (y * y);
        if (reg == ThetaRegime::critical)
            v *= std::exp(-2.0 * kPi * kPi * y * y * s);
        return v;
    };
    auto res = integrate(f, ylo, yhi, {QuadScheme::adaptive_gk, 1e-15, 1e-11, 15});
    return kPi / 4.0 *
           double(tau1(gcd_u64(static_cast<std::uint64_t>(m1), static_cast<std::uint64_t>(m2)))) *
           res.value;
}

double b_theta_eisenstein(const TestWeight& V1, const TestWeight& V2, int depth) {
    if (depth < 1) throw ConfigError("b_theta_eisenstein: depth must be >= 1");
    for (const TestWeight* V : {&V1, &V2}) {
        double m = mean_against_y2(*V);
        if (std::fabs(m) > 1e-8)
            throw ConfigError("b_theta_eisenstein: zero-mode weight " + V->describe() +
                              " is not mean-zero against y^-2 (integral " + std::to_string(m) + ")");
    }
    TestWeight Vt1 = weight_tilde(V1);
    TestWeight Vt2 = weight_tilde(V2);
    const bool same = V1.describe() == V2.describe();

    // |G_i(t)| <= Ci / t^2 certifies the tail int_T^inf |G1 G2| / t^2
    // <= C1 C2 / (5 T^5); pick T for a 1e-10 absolute tail.
    const double bern3 = 1.0 / (12.0 * std::sqrt(3.0));
    const double c1 = bern3 / 6.0 * 1.5 * tv_bound(Vt1);
    const double c2 = same ? c1 : bern3 / 6.0 * 1.5 * tv_bound(Vt2);
    const double tlo = std::max(V1.support_lo(), V2.support_lo());
    double T = std::pow(c1 * c2 / (5.0 * 1e-10), 0.2);
    T = std::min(std::max({T, V1.support_hi(), V2.support_hi(), tlo + 1.0}), 1e4);

    // Seams of the t-integrand: G_i is C^1 with curvature kinks where a
    // b2 seam enters or leaves the u-support, t = m a_i or m A_i.
    std::vector<double> edges{tlo};
    for (const TestWeight* V : {&V1, &V2}) {
        for (double bound : {V->support_lo(), V->support_hi()}) {
            for (std::int64_t m = 1; double(m) * bound < T; ++m) {
                double t = double(m) * bound;
                if (t > tlo) edges.push_back(t);
            }
        }
    }
    edges.push_back(T);
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end(),
                            [](double x, double y) { return std::fabs(x - y) < 1e-11; }),
                edges.end());

    const double wmax = 0.5 / double(depth);
    Kahan acc;
    for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
        double lo = edges[i], hi = edges[i + 1];
        int pieces = std::max(1, static_cast<int>(std::ceil((hi - lo) / wmax)));
        for (int p = 0; p < pieces; ++p) {
            double plo = lo + (hi - lo) * double(p) / pieces;
            double phi = lo + (hi - lo) * double(p + 1) / pieces;
            acc.add(gauss_legendre([&](double t) {
                double g1 = g_factor(t, Vt1);
                double g2 = same ? g1 : g_factor(t, Vt2);
                return g1 * g2 / (t * t);
            }, plo, phi, 12));
        }
    }
    return kPi / 4.0 * acc.s;
}

FourierObservable FourierObservable::make(std::vector<ModeEntry> modes) {
    for (const auto& e : modes) {
        if (e.V.support_lo() < 1.0)
            throw ConfigError("FourierObservable: mode " + std::to_string(e.m) +
                              " weight " + e.V.describe() + " not supported in y >= 1");
        if (e.m == 0) {
            double mz = mean_against_y2(e.V);
            if (std::fabs(mz) > 1e-10)
                throw ConfigError("FourierObservable: zero mode must be mean-zero against y^-2"
                                  " (integral " + std::to_string(mz) + ")");
        }
    }
    FourierObservable psi;
    psi.modes = std::move(modes);
    return psi;
}

std::string FourierObservable::describe() const {
    std::ostringstream os;
    os << "psi[";
    for (std::size_t i = 0; i < modes.size(); ++i) {
        if (i) os << ";";
        os << "m=" << modes[i].m;
        if (modes[i].coeff != std::complex<double>(1.0, 0.0))
            os << "*(" << modes[i].coeff.real() << "," << modes[i].coeff.imag() << ")";
        os << ":" << modes[i].V.describe();
    }
    os << "]";
    return os.str();
}

std::complex<double> b_theta_general(const FourierObservable& psi1,
                                     const FourierObservable& psi2, double theta) {
    std::complex<double> total{0.0, 0.0};
    for (const auto& e1 : psi1.modes) {
        for (const auto& e2 : psi2.modes) {
            double pair;
            if (e1.m != 0 && e2.m != 0)
                pair = b_theta_poincare(e1.V, e1.m, e2.V, e2.m, theta);
            else if (e1.m == 0 && e2.m == 0)
                pair = b_theta_eisenstein(e1.V, e2.V);
            else
                continue;   // mixed zero/nonzero pairs vanish
            total += e1.coeff * std::conj(e2.coeff) * pair;
        }
    }
    return total;
}

double i_theta(std::int64_t m, std::int64_t n, double t1, double t2, double theta) {
    if (m < 1 || n < 1) throw ConfigError("i_theta: m, n must be >= 1");
    const auto reg = theta_regime(theta);
    if (reg == ThetaRegime::high) return 0.0;
    const double lo = double(std::max(m, n));
    double hi = 8.0;   // K_{it}(2 pi y) vanishes past y = 8 (x > 50 contract)
    const double s = double(m) * double(m) + double(n) * double(n);
    if (reg == ThetaRegime::critical)
        hi = std::min(hi, std::sqrt(60.0 / (2.0 * kPi * kPi * s)));
    if (!(lo < hi)) return 0.0;
    auto f = [&](double y) {
        double v = bessel_k_imag(t1, 2.0 * kPi * y) * bessel_k_imag(t2, 2.0 * kPi * y) / y;
        if (reg == ThetaRegime::critical) v *= std::exp(-2.0 * kPi * kPi * y * y * s);
        return v;
    };
    Kahan acc;
    int panels = std::max(1, static_cast<int>(std::ceil((hi - lo) * 4.0)));
    for (int p = 0; p < panels; ++p) {
        double plo = lo + (hi - lo) * double(p) / panels;
        double phi = lo + (hi - lo) * double(p + 1) / panels;
        acc.add(gauss_legendre(f, plo, phi, 12));
    }
    return acc.s;
}

std::vector<double> b_theta_maass_partial(const MaassFormData& phi1,
                                          const MaassFormData& phi2,
                                          double theta, int N) {
    if (N < 1) throw ConfigError("b_theta_maass_partial: N must be >= 1");
    if (!phi1.even || !phi2.even)
        return std::vector<double>(static_cast<std::size_t>(N), 0.0);
    for (const MaassFormData* phi : {&phi1, &phi2})
        if (N > phi->n_max())
            throw ConfigError("b_theta_maass_partial: need lambda up to " + std::to_string(N) +
                              ", " + phi->source + " provides " + std::to_string(phi->n_max()));
    const auto reg = theta_regime(theta);

    // In the low regime I_theta(m, n) depends only on l = max(m, n):
    // precompute the suffix integrals J(l) = int_l^8 K K / y dy from unit
    // segments so each Bessel value is computed once.
    std::vector<double> J(9, 0.0);
    if (reg == ThetaRegime::low) {
        for (int l = 7; l >= 1; --l) {
            Kahan seg;
            for (int p = 0; p < 4; ++p) {
                double plo = l + 0.25 * p, phi_ = l + 0.25 * (p + 1);
                seg.add(gauss_legendre([&](double y) {
                    return bessel_k_imag(phi1.t, 2.0 * kPi * y) *
                           bessel_k_imag(phi2.t, 2.0 * kPi * y) / y;
                }, plo, phi_, 12));
            }
            J[l] = J[l + 1] + seg.s;
        }
    }

    auto pair_i = [&](std::int64_t m, std::int64_t n) {
        if (reg == ThetaRegime::high) return 0.0;
        if (reg == ThetaRegime::low) {
            auto l = std::max(m, n);
            return l <= 8 ? J[static_cast<std::size_t>(l)] : 0.0;
        }
        return i_theta(m, n, phi1.t, phi2.t, theta);
    };

    std::vector<double> out(static_cast<std::size_t>(N));
    Kahan acc;
    for (std::int64_t j = 1; j <= N; ++j) {
        // border pairs (m, j) and (j, n) with m, n < j, plus the corner
        for (std::int64_t m = 1; m < j; ++m) {
            double common = double(tau1(gcd_u64(m, j))) / std::sqrt(double(m) * double(j));
            double iv = pair_i(m, j);   // == pair_i(j, m)
            acc.add(common * phi1.lambda[m] * phi2.lambda[j] * iv);
            acc.add(common * phi1.lambda[j] * phi2.lambda[m] * iv);
        }
        acc.add(double(tau1(static_cast<std::uint64_t>(j))) *
                phi1.lambda[j] * phi2.lambda[j] / double(j) * pair_i(j, j));
        out[static_cast<std::size_t>(j - 1)] = 4.0 * kPi * acc.s;
    }
    return out;
}

std::vector<double> corollary_weighted(const MaassFormData& phi, const TestWeight& w, int N) {
    if (N < 1) throw ConfigError("corollary_weighted: N must be >= 1");
    if (N > phi.n_max())
        throw ConfigError("corollary_weighted: need lambda up to " + std::to_string(N) +
                          ", file provides " + std::to_string(phi.n_max()));
    const double a = w.support_lo(), A = w.support_hi();
    auto pair_term = [&](std::int64_t m, std::int64_t n) {
        double ylo = a * double(std::max(m, n));
        double yhi = std::min(A * double(std::min(m, n)), 8.0);
        if (!(ylo < yhi)) return 0.0;
        auto f = [&](double y) {
            double kv = bessel_k_imag(phi.t, 2.0 * kPi * y);
            return kv * kv * w(y / double(m)) * w(y / double(n)) / y;
        };
        double iv = integrate(f, ylo, yhi, {QuadScheme::adaptive_gk, 1e-15, 1e-9, 12}).value;
        return double(tau1(gcd_u64(m, n))) * phi.lambda[m] * phi.lambda[n] /
               std::sqrt(double(m) * double(n)) * iv;
    };
    std::vector<double> out(static_cast<std::size_t>(N));
    Kahan acc;
    for (std::int64_t j = 1; j <= N; ++j) {
        for (std::int64_t m = 1; m < j; ++m)
            acc.add(2.0 * pair_term(m, j));   // (m, j) and (j, m) agree
        acc.add(pair_term(j, j));
        out[static_cast<std::size_t>(j - 1)] = acc.s;
    }
    return out;
}

double sobolev_norm(const FourierObservable& psi, int N) {
    if (N < 0) throw ConfigError("sobolev_norm: N must be >= 0");
    std::map<std::int64_t, std::vector<const ModeEntry*>> groups;
    for (const auto& e : psi.modes) {
        if (e.m == 0)
            throw ConfigError("sobolev_norm: observable carries a zero mode");
        groups[e.m].push_back(&e);
    }
    Kahan total;
    for (const auto& [m, entries] : groups) {
        double lo = entries.front()->V.support_lo(), hi = entries.front()->V.support_hi();
        for (const auto* e : entries) {
            lo = std::min(lo, e->V.support_lo());
            hi = std::max(hi, e->V.support_hi());
        }
        auto f = [&](double y) {
            std::complex<double> v{0.0, 0.0};
            for (const auto* e : entries) v += e->coeff * e->V(y);
            return std::norm(v) / (y * y);
        };
        double I = integrate(f, lo, hi, {QuadScheme::adaptive_gk, 1e-14, 1e-11, 15}).value;
        double x = (2.0 * kPi * double(m < 0 ? -m : m));
        x *= x;
        double geo = 0.0, p = 1.0;
        for (int j = 0; j <= N; ++j) {
            geo += p;
            p *= x;
        }
        total.add(I * geo);
    }
    return std::sqrt(total.s);
}

} // namespace cuspv
