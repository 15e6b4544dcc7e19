// Shifted convolution sums, squeezed Poincare masses, and the spectral
// averages that compare them against their predicted main terms.
//
// The two routes to A_f^W(h, X):
//   direct   sum_n lambda(n) lambda(n+h) W((n + h/2)/X)
//   Hecke    sum_{d|h} sum_r lambda(r(r+d)) W((h/d)(r + d/2)/X)
// (h = 0: sum_{d,r} lambda(r^2) W(d r / X)) agree identically; both are
// finite because W is compactly supported.
//
// The mass of a squeezed Poincare observable unfolds exactly: with
// a_f(n) = lambda_f(n) n^{(k-1)/2} and H = (k-1)^theta,
//   mu_f(M_H P_{V,h}) = ||f||^{-2} sum_n a(n) a(n+h)
//       int_0^inf V(y/H) y^{k-2} e^{-2 pi (2n+h) y} dy,
//   ||f||^2 = (2/pi) Gamma(k) (4 pi)^{-k} L(1, sym^2 f).
// The factor y^{k-2} e^{-cy} peaks at y* = (k-2)/c with relative width
// 1/sqrt(k-2), so each integral is evaluated with the peak value divided
// out and reassembled in log scale; the n-sum is truncated once the
// Laplace point has left the support and the terms have collapsed.
//
// Every experiment follows one pattern: a cell per even weight k in the
// window of u((k-1)/K), a parallel map over cells, and an ordered
// compensated reduction so the report is identical at any thread count.

#include "cuspv/variance.hpp"

#include "cuspv/arith.hpp"
#include "cuspv/btheta.hpp"
#include "cuspv/csvio.hpp"
#include "cuspv/errors.hpp"
#include "cuspv/quadrature.hpp"
#include "cuspv/sym2.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <thread>
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

// Even weights with (k-1)/K inside the open support of u.
std::vector<int> even_weights_in_window(const TestWeight& u, int K) {
    std::vector<int> ks;
    auto klo = static_cast<std::int64_t>(std::floor(u.support_lo() * K)) - 1;
    auto khi = static_cast<std::int64_t>(std::ceil(u.support_hi() * K)) + 2;
    for (std::int64_t k = std::max<std::int64_t>(4, klo); k <= khi; ++k) {
        if (k % 2 != 0) continue;
        double t = double(k - 1) / double(K);
        if (t <= u.support_lo() || t >= u.support_hi()) continue;
        ks.push_back(static_cast<int>(k));
    }
    return ks;
}

// Parallel map over independent weight cells.  Cell internals are
// single-threaded, so the values do not depend on the thread count; the
// caller reduces them in k order.
template <typename Fn>
std::vector<double> map_cells(const std::vector<int>& ks, int threads, Fn&& fn) {
    std::vector<double> out(ks.size(), 0.0);
    if (ks.empty()) return out;
    int nw = std::max(1, std::min<int>(threads, static_cast<int>(ks.size())));
    if (nw == 1) {
        for (std::size_t i = 0; i < ks.size(); ++i) out[i] = fn(ks[i]);
        return out;
    }
    std::vector<std::exception_ptr> errs(ks.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= ks.size()) return;
            try {
                out[i] = fn(ks[i]);
            } catch (...) {
                errs[i] = std::current_exception();
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(nw);
    for (int t = 0; t < nw; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    for (auto& e : errs)
        if (e) std::rethrow_exception(e);
    return out;
}

ExperimentReport finish_report(double theta, int K, std::string o1, std::string o2,
                               const std::vector<int>& ks, const std::vector<double>& cells,
                               double predicted) {
    ExperimentReport r;
    r.theta = theta;
    r.K = K;
    r.obs1 = std::move(o1);
    r.obs2 = std::move(o2);
    r.per_k.reserve(ks.size());
    Kahan acc;
    for (std::size_t i = 0; i < ks.size(); ++i) {
        acc.add(cells[i]);
        r.per_k.emplace_back(ks[i], cells[i]);
    }
    r.empirical = acc.s;
    r.predicted = predicted;
    r.ratio = predicted != 0.0 ? r.empirical / predicted : 0.0;
    return r;
}

double u_moment(const TestWeight& u, double p) {
    auto res = integrate([&](double y) { return u(y) * std::pow(y, p); },
                         u.support_lo(), u.support_hi(),
                         {QuadScheme::adaptive_gk, 1e-14, 1e-12, 15});
    return res.value;
}

// Table depth for the unfolded mass sum: terms peak while the Laplace
// point (k-2)/(2 pi (2n+h)) sits inside [H a_V, H A_V]; past
// n* = ((k-2)/(2 pi H a_V) - h)/2 they collapse like a Gaussian of width
// n*/sqrt(k-1).
int mu_exact_table_depth(int k, double theta, const TestWeight& V, std::int64_t h) {
    double H = std::pow(double(k - 1), theta);
    double nstar = std::max(1.0, 0.5 * ((k - 2) / (2.0 * kPi * H * V.support_lo()) - double(h)));
    double width = nstar / std::sqrt(double(std::max(2, k - 1)));
    return static_cast<int>(std::ceil(nstar + 12.0 * width + double(h))) + 16;
}

int mu_approx_table_depth(int k, double theta, const TestWeight& V, std::int64_t h) {
    double hi = std::pow(double(k - 1), 1.0 - theta) / (4.0 * kPi * V.support_lo());
    if (hi < 1.0) return 2;
    return static_cast<int>(std::ceil(hi)) + static_cast<int>(std::llabs(h)) + 2;
}

std::string csv_quote(const std::string& s) {
    std::string out;
    out.reserve(s.size() + 2);
    out.push_back('"');
    for (char c : s) {
        out.push_back(c);
        if (c == '"') out.push_back('"');
    }
    out.push_back('"');
    return out;
}

// Predicted pair form for two Poincare observables: nonzero modes pair
// through the theta-regime kernel, zero modes through the
// theta-independent Eisenstein functional, mixed pairs vanish.
double pair_form(const PoincareObservable& P1, const PoincareObservable& P2, double theta) {
    if (P1.h != 0 && P2.h != 0) return b_theta_poincare(P1.V, P1.h, P2.V, P2.h, theta);
    if (P1.h == 0 && P2.h == 0) return b_theta_eisenstein(P1.V, P2.V);
    return 0.0;
}

} // namespace

std::string PoincareObservable::describe() const {
    std::ostringstream os;
    os << "P[h=" << h << "," << V.describe() << "]";
    return os.str();
}

double SqueezeSpec::H(int k) const {
    if (k < 2) throw ConfigError("SqueezeSpec::H: weight must be at least 2");
    return std::pow(double(k - 1), theta);
}

double shifted_conv_direct(const HeckeEigenform& f, const TestWeight& W,
                           std::int64_t h, double X) {
    if (h < 0) throw ConfigError("shifted_conv_direct: shift h must be >= 0");
    if (!(X > 0.0)) throw ConfigError("shifted_conv_direct: X must be positive");
    const double half = 0.5 * double(h);
    auto nlo = std::max<std::int64_t>(1, static_cast<std::int64_t>(std::ceil(W.support_lo() * X - half)));
    auto nhi = static_cast<std::int64_t>(std::floor(W.support_hi() * X - half));
    Kahan acc;
    for (std::int64_t n = nlo; n <= nhi; ++n) {
        double w = W((double(n) + half) / X);
        if (w == 0.0) continue;
        acc.add(f.lambda(static_cast<std::uint64_t>(n)) *
                f.lambda(static_cast<std::uint64_t>(n + h)) * w);
    }
    return acc.s;
}

double shifted_conv_hecke(const HeckeEigenform& f, const TestWeight& W,
                          std::int64_t h, double X) {
    if (h < 0) throw ConfigError("shifted_conv_hecke: shift h must be >= 0");
    if (!(X > 0.0)) throw ConfigError("shifted_conv_hecke: X must be positive");
    const double a = W.support_lo(), A = W.support_hi();
    Kahan acc;
    if (h == 0) {
        auto rhi = static_cast<std::int64_t>(std::floor(A * X));
        for (std::int64_t r = 1; r <= rhi; ++r) {
            auto dlo = std::max<std::int64_t>(1, static_cast<std::int64_t>(std::ceil(a * X / double(r))));
            auto dhi = static_cast<std::int64_t>(std::floor(A * X / double(r)));
            if (dhi < dlo) continue;
            double lam = f.lambda_ext(static_cast<std::uint64_t>(r) * static_cast<std::uint64_t>(r));
            for (std::int64_t d = dlo; d <= dhi; ++d) {
                double w = W(double(d) * double(r) / X);
                if (w == 0.0) continue;
                acc.add(lam * w);
            }
        }
        return acc.s;
    }
    auto ds = divisors(static_cast<std::uint64_t>(h));
    std::sort(ds.begin(), ds.end());
    for (std::uint64_t d : ds) {
        const double scale = double(h) / double(d);   // = e in n = e r
        const double half = 0.5 * double(d);
        auto rlo = std::max<std::int64_t>(1, static_cast<std::int64_t>(std::ceil(a * X / scale - half)));
        auto rhi = static_cast<std::int64_t>(std::floor(A * X / scale - half));
        for (std::int64_t r = rlo; r <= rhi; ++r) {
            double w = W(scale * (double(r) + half) / X);
            if (w == 0.0) continue;
            acc.add(f.lambda_ext(static_cast<std::uint64_t>(r) *
                                 static_cast<std::uint64_t>(r + static_cast<std::int64_t>(d))) * w);
        }
    }
    return acc.s;
}

double blf_main_term(const TestWeight& W1, std::int64_t h1,
                     const TestWeight& W2, std::int64_t h2) {
    if (h1 < 1 || h2 < 1) throw ConfigError("blf_main_term: shifts must be >= 1");
    const double lo = std::max(W1.support_lo() / double(h1), W2.support_lo() / double(h2));
    const double hi = std::min(W1.support_hi() / double(h1), W2.support_hi() / double(h2));
    if (!(lo < hi)) return 0.0;
    auto res = integrate([&](double y) { return W1(double(h1) * y) * W2(double(h2) * y); },
                         lo, hi, {QuadScheme::adaptive_gk, 1e-14, 1e-11, 15});
    return double(tau1(gcd_u64(static_cast<std::uint64_t>(h1), static_cast<std::uint64_t>(h2)))) *
           res.value;
}

void write_report_csv(const std::string& path, const ExperimentReport& r) {
    std::ofstream os(path);
    if (!os) throw DataError("write_report_csv: cannot open " + path);
    os << "theta,K,obs1,obs2,empirical,predicted,ratio\n";
    os << fmt_g(r.theta) << ',' << r.K << ',' << csv_quote(r.obs1) << ',' << csv_quote(r.obs2)
       << ',' << fmt_g(r.empirical) << ',' << fmt_g(r.predicted) << ',' << fmt_g(r.ratio) << '\n';
    os.flush();
    if (!os) throw DataError("write_report_csv: write failed for " + path);
}

void write_per_k_csv(const std::string& path, const ExperimentReport& r) {
    std::ofstream os(path);
    if (!os) throw DataError("write_per_k_csv: cannot open " + path);
    os << "k,cell\n";
    for (const auto& [k, v] : r.per_k) os << k << ',' << fmt_g(v) << '\n';
    os.flush();
    if (!os) throw DataError("write_per_k_csv: write failed for " + path);
}

ExperimentReport qvthm_experiment(int K, double theta,
                                  const TestWeight& W1, std::int64_t h1,
                                  const TestWeight& W2, std::int64_t h2,
                                  BasisCache& cache, const TestWeight& u, int threads) {
    if (K < 2) throw ConfigError("qvthm_experiment: K must be >= 2");
    if (h1 < 1 || h2 < 1) throw ConfigError("qvthm_experiment: shifts must be >= 1");
    if (!(theta >= 0.0 && theta < 1.0))
        throw ConfigError("qvthm_experiment: theta must lie in [0, 1)");
    auto ks = even_weights_in_window(u, K);
    auto cell = [&](int k) -> double {
        if (dim_cusp_forms(k) == 0) return 0.0;
        double uk = u(double(k - 1) / double(K));
        if (uk == 0.0) return 0.0;
        double X = std::pow(double(k - 1), 1.0 - theta);
        auto need = [&](const TestWeight& W, std::int64_t h) {
            return static_cast<int>(std::ceil(W.support_hi() * X + 0.5 * double(h))) + 2;
        };
        int depth = std::max({sym2_norm_nmax(k), need(W1, h1), need(W2, h2)});
        auto basis = cache.get(k, depth);
        Kahan s;
        for (const auto& f : basis->forms) {
            double A1 = shifted_conv_direct(f, W1, h1, X);
            double A2 = shifted_conv_direct(f, W2, h2, X);
            s.add(A1 * A2 / l_sym2_norm(f));
        }
        return uk * (2.0 * kPi * kPi / double(k - 1)) * s.s;
    };
    auto cells = map_cells(ks, threads, cell);
    double predicted = blf_main_term(W1, h1, W2, h2) *
                       0.5 * std::pow(double(K), 2.0 - theta) * u_moment(u, 1.0 - theta);
    std::ostringstream o1, o2;
    o1 << "A[h=" << h1 << "," << W1.describe() << "]";
    o2 << "A[h=" << h2 << "," << W2.describe() << "]";
    return finish_report(theta, K, o1.str(), o2.str(), ks, cells, predicted);
}

double mu_poincare_exact(const HeckeEigenform& f, const TestWeight& V,
                         std::int64_t h, double theta) {
    if (theta < 0.0) throw ConfigError("mu_poincare_exact: theta must be >= 0");
    const std::int64_t hh = h < 0 ? -h : h;   // the mass is even in h
    const int k = f.k();
    const double H = std::pow(double(k - 1), theta);
    const double ylo = H * V.support_lo(), yhi = H * V.support_hi();
    const double km2 = double(k - 2);
    const double lognorm = log_petersson_norm_sq(f);
    const QuadratureSpec qs{QuadScheme::adaptive_gk, 1e-16, 1e-9, 15};
    Kahan acc;
    double maxmag = 0.0;
    for (std::int64_t n = 1;; ++n) {
        if (static_cast<std::uint64_t>(n + hh) > static_cast<std::uint64_t>(f.n_max()))
            throw ConfigError("mu_poincare_exact: lambda table too shallow (need n > " +
                              std::to_string(f.n_max()) + " at k=" + std::to_string(k) + ")");
        const double c = 2.0 * kPi * double(2 * n + hh);
        const double ystar = km2 / c;
        const double yc = std::clamp(ystar, ylo, yhi);
        const double gmax = km2 * std::log(yc) - c * yc;
        auto scaled = [&](double y) {
            double v = V(y / H);
            if (v == 0.0) return 0.0;
            return v * std::exp(km2 * std::log(y) - c * y - gmax);
        };
        double J;
        if (ystar > ylo && ystar < yhi)
            J = integrate(scaled, ylo, ystar, qs).value + integrate(scaled, ystar, yhi, qs).value;
        else
            J = integrate(scaled, ylo, yhi, qs).value;
        double prod = f.lambda(static_cast<std::uint64_t>(n)) *
                      f.lambda(static_cast<std::uint64_t>(n + hh));
        double term = 0.0;
        if (prod != 0.0 && J > 0.0) {
            double logmag = std::log(std::fabs(prod)) +
                            0.5 * (km2 + 1.0) * (std::log(double(n)) + std::log(double(n + hh))) +
                            gmax + std::log(J) - lognorm;
            term = std::copysign(std::exp(logmag), prod);
        }
        acc.add(term);
        double mag = std::fabs(term);
        maxmag = std::max(maxmag, mag);
        bool past = double(2 * n + hh) > km2 / (2.0 * kPi * ylo);
        if (past && n >= 4 && mag <= 1e-18 * maxmag) break;
    }
    return acc.s;
}

double mu_poincare_approx(const HeckeEigenform& f, const TestWeight& V,
                          std::int64_t h, double theta) {
    const std::int64_t hh = h < 0 ? -h : h;
    const int k = f.k();
    const double Xk = std::pow(double(k - 1), 1.0 - theta);
    const double lo = Xk / (4.0 * kPi * V.support_hi()) - 0.5 * double(hh);
    const double hi = Xk / (4.0 * kPi * V.support_lo()) - 0.5 * double(hh);
    auto nlo = std::max<std::int64_t>(1, static_cast<std::int64_t>(std::ceil(lo)));
    auto nhi = static_cast<std::int64_t>(std::floor(hi));
    if (nhi < nlo) return 0.0;   // empty support; always hit once theta >= 1
    Kahan acc;
    for (std::int64_t n = nlo; n <= nhi; ++n) {
        double m = double(n) + 0.5 * double(hh);
        double v = V(Xk / (4.0 * kPi * m));
        if (v == 0.0) continue;
        double shrink = std::exp(0.5 * double(k - 1) *
                                 std::log1p(-0.25 * double(hh) * double(hh) / (m * m)));
        acc.add(f.lambda(static_cast<std::uint64_t>(n)) *
                f.lambda(static_cast<std::uint64_t>(n + hh)) * v * shrink);
    }
    return 2.0 * kPi * kPi / (double(k - 1) * l_sym2_norm(f)) * acc.s;
}

ExperimentReport variance_experiment(int K, double theta,
                                     const PoincareObservable& P1,
                                     const PoincareObservable& P2,
                                     BasisCache& cache, const TestWeight& u, int threads) {
    if (K < 2) throw ConfigError("variance_experiment: K must be >= 2");
    // theta = 0 is out of scope: the predicted main term routes through the
    // limiting forms, which start at the squeezed regime
    if (!(theta > 0.0 && theta < 1.0))
        throw ConfigError("variance_experiment: theta must lie in (0, 1)");
    if (P1.V.support_lo() < 1.0 || P2.V.support_lo() < 1.0)
        throw ConfigError("variance_experiment: observable weights must be supported in y >= 1");
    auto ks = even_weights_in_window(u, K);
    auto cell = [&](int k) -> double {
        if (dim_cusp_forms(k) == 0) return 0.0;
        double uk = u(double(k - 1) / double(K));
        if (uk == 0.0) return 0.0;
        int depth = std::max({sym2_norm_nmax(k),
                              mu_exact_table_depth(k, theta, P1.V, P1.h),
                              mu_exact_table_depth(k, theta, P2.V, P2.h)});
        auto basis = cache.get(k, depth);
        Kahan s;
        for (const auto& f : basis->forms) {
            double L = l_sym2_norm(f);
            double m1 = mu_poincare_exact(f, P1.V, P1.h, theta);
            double m2 = mu_poincare_exact(f, P2.V, P2.h, theta);
            s.add(L * m1 * m2);
        }
        return uk * s.s;
    };
    auto cells = map_cells(ks, threads, cell);
    double predicted = pair_form(P1, P2, theta) *
                       std::pow(double(K), 1.0 - theta) * u_moment(u, -theta);
    return finish_report(theta, K, P1.describe(), P2.describe(), ks, cells, predicted);
}

ExperimentReport zeroth_moment(int K, BasisCache& cache, const TestWeight& u, int threads) {
    if (K < 2) throw ConfigError("zeroth_moment: K must be >= 2");
    auto ks = even_weights_in_window(u, K);
    auto cell = [&](int k) -> double {
        if (dim_cusp_forms(k) == 0) return 0.0;
        double uk = u(double(k - 1) / double(K));
        if (uk == 0.0) return 0.0;
        auto basis = cache.get(k, sym2_norm_nmax(k));
        Kahan s;
        for (const auto& f : basis->forms) s.add(l_sym2_norm(f));
        return uk * s.s;
    };
    auto cells = map_cells(ks, threads, cell);
    const double zeta2 = kPi * kPi / 6.0;
    double predicted = (zeta2 * zeta2 / 12.0) * 0.5 * double(K) * double(K) * u_moment(u, 1.0);
    return finish_report(0.0, K, "L(1,sym2)", "1", ks, cells, predicted);
}

ExperimentReport first_moment(int K, double theta, const TestWeight& V,
                              BasisCache& cache, const TestWeight& u, int threads) {
    if (K < 2) throw ConfigError("first_moment: K must be >= 2");
    if (!(theta > 0.0 && theta < 1.0))
        throw ConfigError("first_moment: theta must lie in (0, 1)");
    auto ks = even_weights_in_window(u, K);
    auto cell = [&](int k) -> double {
        if (dim_cusp_forms(k) == 0) return 0.0;
        double uk = u(double(k - 1) / double(K));
        if (uk == 0.0) return 0.0;
        int depth = std::max(sym2_norm_nmax(k), mu_exact_table_depth(k, theta, V, 0));
        auto basis = cache.get(k, depth);
        Kahan s;
        for (const auto& f : basis->forms)
            s.add(l_sym2_norm(f) * mu_poincare_exact(f, V, 0, theta));
        return uk * s.s;
    };
    auto cells = map_cells(ks, threads, cell);
    double nu = (3.0 / kPi) * integrate([&](double y) { return V(y) / (y * y); },
                                        V.support_lo(), V.support_hi(),
                                        {QuadScheme::adaptive_gk, 1e-14, 1e-12, 15}).value;
    const double zeta2 = kPi * kPi / 6.0;
    double predicted = nu * (zeta2 * zeta2 / 12.0) *
                       0.5 * std::pow(double(K), 2.0 - theta) * u_moment(u, 1.0 - theta);
    std::ostringstream o1;
    o1 << "P[h=0," << V.describe() << "]";
    return finish_report(theta, K, o1.str(), "1", ks, cells, predicted);
}

std::vector<PlanckRow> planck_failure_probe(double theta, const std::vector<int>& ks,
                                            const TestWeight& V, BasisCache& cache) {
    if (!(theta > 0.0)) throw ConfigError("planck_failure_probe: theta must be positive");
    if (V.support_lo() < 1.0)
        throw ConfigError("planck_failure_probe: V must be supported in y >= 1");
    double nu1 = (3.0 / kPi) * integrate([&](double y) { return V(y) / (y * y); },
                                         V.support_lo(), V.support_hi(),
                                         {QuadScheme::adaptive_gk, 1e-14, 1e-12, 15}).value;
    if (std::fabs(nu1) < 1e-13)
        throw ConfigError("planck_failure_probe: V pairs to zero against y^-2");
    std::vector<PlanckRow> rows;
    rows.reserve(ks.size());
    for (int k : ks) {
        if (k % 2 != 0 || dim_cusp_forms(k) == 0)
            throw ConfigError("planck_failure_probe: no cusp forms at weight " + std::to_string(k));
        int depth = std::max({sym2_norm_nmax(k),
                              mu_exact_table_depth(k, theta, V, 0),
                              mu_approx_table_depth(k, theta, V, 0)});
        auto basis = cache.get(k, depth);
        const auto& f = basis->forms.front();
        PlanckRow row;
        row.k = k;
        row.mu = mu_poincare_exact(f, V, 0, theta);
        row.nu = nu1 / std::pow(double(k - 1), theta);
        row.ratio = std::fabs(row.mu) / std::fabs(row.nu);
        row.approx = mu_poincare_approx(f, V, 0, theta);
        rows.push_back(row);
    }
    return rows;
}

EulerMacResult euler_maclaurin_check(const TestWeight& V, double X, std::uint64_t r) {
    if (!(X > 0.0) || r == 0)
        throw ConfigError("euler_maclaurin_check: need X > 0 and r >= 1");
    const double a = V.support_lo(), A = V.support_hi();
    EulerMacResult res;
    Kahan lhs;
    auto dlo = static_cast<std::uint64_t>(std::max(1.0, std::ceil(X / (double(r) * A))));
    auto dhi_f = std::floor(X / (double(r) * a));
    auto dhi = dhi_f < 1.0 ? 0 : static_cast<std::uint64_t>(dhi_f);
    for (std::uint64_t d = dlo; d <= dhi; ++d) lhs.add(V(X / (double(r) * double(d))));
    res.lhs = lhs.s;

    const QuadratureSpec tight{QuadScheme::adaptive_gk, 1e-14, 1e-12, 15};
    double m = integrate([&](double y) { return V(y) / (y * y); }, a, A, tight).value;
    TestWeight Vt = weight_tilde(V);
    const double ylo = X / (double(r) * A), yhi = X / (double(r) * a);
    auto g = [&](double y) { return b2(y) * Vt(X / (double(r) * y)) / (y * y); };
    // b2 has kinks at the integers: panelize between consecutive seams.
    std::vector<double> edges{ylo};
    for (auto s = static_cast<std::int64_t>(std::ceil(ylo));
         s <= static_cast<std::int64_t>(std::floor(yhi)); ++s) {
        if (double(s) > edges.back()) edges.push_back(double(s));
    }
    if (yhi > edges.back()) edges.push_back(yhi);
    Kahan corr;
    for (std::size_t i = 0; i + 1 < edges.size(); ++i)
        corr.add(integrate(g, edges[i], edges[i + 1], tight).value);

    res.rhs = X / double(r) * m - corr.s;
    res.residual = std::fabs(res.lhs - res.rhs);
    return res;
}

} // namespace cuspv
