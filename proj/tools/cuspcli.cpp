// cuspvariance command-line front end.
//
// Subcommands: forms, petersson, qvthm, variance, moments, btheta, maass,
// heatmap, ghosh-sarnak, planck-failure.  Artifacts are CSV (and PGM for
// heatmap) under --out.  Exit codes: 0 all checks pass, 1 a check or
// computation failed, 2 configuration error.  Failures additionally emit
// one machine-readable line on stderr:
//   cuspcli-error<TAB>kind=<config|data|numeric|check><TAB>msg=<text>

#include "cuspv/arith.hpp"
#include "cuspv/btheta.hpp"
#include "cuspv/csvio.hpp"
#include "cuspv/errors.hpp"
#include "cuspv/maass.hpp"
#include "cuspv/petersson.hpp"
#include "cuspv/qforms.hpp"
#include "cuspv/render.hpp"
#include "cuspv/sym2.hpp"
#include "cuspv/variance.hpp"
#include "cuspv/weights.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <complex>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>
#include <string>
#include <vector>

namespace {

using namespace cuspv;

constexpr double kPi = 3.14159265358979323846;

void error_line(const std::string& kind, const std::string& msg) {
    std::cerr << "cuspcli-error\tkind=" << kind << "\tmsg=" << msg << "\n";
}

std::string join_path(const std::string& dir, const std::string& name) {
    if (dir.empty() || dir == ".") return name;
    return dir.back() == '/' ? dir + name : dir + "/" + name;
}

struct Common {
    std::string cache_path = "eigencache.txt";
    std::string out_dir = ".";
    int threads = 1;
};

// 12:40 -> [12, 40]
std::pair<int, int> parse_range(const std::string& s) {
    auto pos = s.find(':');
    if (pos == std::string::npos) {
        int k = std::stoi(s);
        return {k, k};
    }
    return {std::stoi(s.substr(0, pos)), std::stoi(s.substr(pos + 1))};
}

int run_forms(const Common& c, int k, int nmax) {
    BasisCache cache(c.cache_path);
    auto basis = cache.get(k, nmax);
    cache.flush();
    std::cout << "k=" << basis->k << " dim=" << basis->forms.size()
              << " n_max=" << basis->n_max << "\n";
    for (const auto& f : basis->forms)
        std::cout << "  form " << f.index() << "  lambda(2)=" << fmt_g(f.lambda(2))
                  << (f.exact() ? "  (exact integer coefficients)" : "") << "\n";
    std::cout << "cache: " << (c.cache_path.empty() ? "(memory only)" : c.cache_path) << "\n";
    return 0;
}

int run_petersson(const Common& c, const std::string& weights, int nmax, double tol) {
    auto [klo, khi] = parse_range(weights);
    BasisCache cache(c.cache_path);
    auto rows = petersson_check(klo, khi, nmax, tol * 0.1, cache);
    cache.flush();
    write_petersson_csv(join_path(c.out_dir, "petersson.csv"), rows);
    double worst = 0;
    for (const auto& r : rows) worst = std::max(worst, r.abs_diff);
    std::cout << "petersson: " << rows.size() << " cases, worst |lhs-rhs| = "
              << fmt_g(worst) << ", tolerance " << fmt_g(tol) << "\n";
    if (worst > tol) {
        error_line("check", "petersson identity exceeded tolerance");
        return 1;
    }
    return 0;
}

int run_qvthm(const Common& c, int K, double theta, std::int64_t h1, std::int64_t h2,
              double a, double A) {
    BasisCache cache(c.cache_path);
    TestWeight W = TestWeight::bump(a, A);
    TestWeight u = TestWeight::bump(1.0, 2.0);
    auto rep = qvthm_experiment(K, theta, W, h1, W, h2, cache, u, c.threads);
    cache.flush();
    write_report_csv(join_path(c.out_dir, "qvthm_report.csv"), rep);
    write_per_k_csv(join_path(c.out_dir, "qvthm_per_k.csv"), rep);
    std::cout << "qvthm: K=" << K << " theta=" << theta << " empirical=" << fmt_g(rep.empirical)
              << " predicted=" << fmt_g(rep.predicted) << " ratio=" << fmt_g(rep.ratio) << "\n";
    if (!std::isfinite(rep.empirical) || !std::isfinite(rep.predicted)) {
        error_line("check", "qvthm produced non-finite values");
        return 1;
    }
    return 0;
}

int run_variance(const Common& c, int K, double theta, std::int64_t h1, std::int64_t h2,
                 double a, double A) {
    BasisCache cache(c.cache_path);
    PoincareObservable P1{TestWeight::bump(a, A), h1};
    PoincareObservable P2{TestWeight::bump(a, A), h2};
    TestWeight u = TestWeight::bump(1.0, 2.0);
    auto rep = variance_experiment(K, theta, P1, P2, cache, u, c.threads);
    cache.flush();
    write_report_csv(join_path(c.out_dir, "variance_report.csv"), rep);
    write_per_k_csv(join_path(c.out_dir, "variance_per_k.csv"), rep);
    std::cout << "variance: K=" << K << " theta=" << theta << " empirical=" << fmt_g(rep.empirical)
              << " predicted=" << fmt_g(rep.predicted) << " ratio=" << fmt_g(rep.ratio) << "\n";
    if (!std::isfinite(rep.empirical) || !std::isfinite(rep.predicted)) {
        error_line("check", "variance produced non-finite values");
        return 1;
    }
    if (h1 == h2 && rep.empirical < 0) {
        error_line("check", "diagonal variance sum came out negative");
        return 1;
    }
    return 0;
}

int run_moments(const Common& c, const std::string& which, int K, double theta,
                double a, double A) {
    BasisCache cache(c.cache_path);
    TestWeight u = TestWeight::bump(1.0, 2.0);
    ExperimentReport rep;
    if (which == "zeroth") {
        rep = zeroth_moment(K, cache, u, c.threads);
    } else if (which == "first") {
        rep = first_moment(K, theta, TestWeight::bump(a, A), cache, u, c.threads);
    } else {
        throw ConfigError("moments: --which must be zeroth or first");
    }
    cache.flush();
    write_report_csv(join_path(c.out_dir, which + "_moment_report.csv"), rep);
    write_per_k_csv(join_path(c.out_dir, which + "_moment_per_k.csv"), rep);
    std::cout << which << " moment: K=" << K << " empirical=" << fmt_g(rep.empirical)
              << " predicted=" << fmt_g(rep.predicted) << " ratio=" << fmt_g(rep.ratio) << "\n";
    if (!std::isfinite(rep.ratio)) {
        error_line("check", "moment ratio non-finite");
        return 1;
    }
    return 0;
}

int run_btheta(const Common& c, double theta, std::int64_t h1, std::int64_t h2,
               double a, double A, bool eisenstein) {
    std::ofstream outf(join_path(c.out_dir, "btheta.csv"));
    if (!outf) throw ConfigError("cannot open btheta.csv for writing");
    outf << "kind,theta,h1,h2,value\n";
    if (eisenstein) {
        TestWeight V = mean_zero_bump(a, A);
        double v = b_theta_eisenstein(V, V);
        outf << "eisenstein," << fmt_g(theta) << ",0,0," << fmt_g(v) << "\n";
        std::cout << "b_theta eisenstein pair (" << V.describe() << "): " << fmt_g(v) << "\n";
    } else {
        TestWeight V = TestWeight::bump(a, A);
        double v = b_theta_poincare(V, h1, V, h2, theta);
        outf << "poincare," << fmt_g(theta) << "," << h1 << "," << h2 << "," << fmt_g(v) << "\n";
        std::cout << "b_theta cuspidal pair h=(" << h1 << "," << h2 << ") theta=" << theta
                  << ": " << fmt_g(v) << "\n";
    }
    outf.flush();
    if (!outf) throw ConfigError("write failed for btheta.csv");
    return 0;
}

int run_maass(const Common& c, const std::string& file, double theta, int N) {
    MaassFormData phi = parse_maass_file(file);
    auto sums = b_theta_maass_partial(phi, theta, N);
    std::ofstream outf(join_path(c.out_dir, "maass_partial.csv"));
    if (!outf) throw ConfigError("cannot open maass_partial.csv for writing");
    outf << "N,partial_sum\n";
    for (int j = 0; j < N; ++j)
        outf << (j + 1) << "," << fmt_g(sums[static_cast<std::size_t>(j)]) << "\n";
    outf.flush();
    if (!outf) throw ConfigError("write failed for maass_partial.csv");
    std::cout << "maass: t=" << phi.t << " parity=" << (phi.even ? "even" : "odd")
              << " theta=" << theta << " S_" << N << "=" << fmt_g(sums.back()) << "\n";
    return 0;
}

int run_heatmap(const Common& c, int k, int index, double ymin, double ymax,
                int nx, int ny, bool log_y) {
    BasisCache cache(c.cache_path);
    int depth = std::max(evaluate_form_depth(k, ymin), sym2_norm_nmax(k));
    auto basis = cache.get(k, depth);
    cache.flush();
    if (index < 0 || index >= static_cast<int>(basis->forms.size()))
        throw ConfigError("heatmap: form index out of range, dim = " +
                          std::to_string(basis->forms.size()));
    const auto& f = basis->forms[static_cast<std::size_t>(index)];
    HeatGrid g = heatmap(f, nx, ny, -0.5, 0.5, ymin, ymax, log_y);
    write_pgm(join_path(c.out_dir, "heatmap.pgm"), g);
    write_grid_csv(join_path(c.out_dir, "heatmap.csv"), g);

    // modular-invariance spot check: y^k |f|^2 at z and -1/z
    std::mt19937_64 rng(20260814);
    std::uniform_real_distribution<double> ux(-0.5, 0.5), uy(0.9, 1.4);
    double lnorm = log_petersson_norm_sq(f);
    double worst = 0;
    for (int i = 0; i < 10; ++i) {
        double x = ux(rng), y = uy(rng);
        std::complex<double> z{x, y};
        std::complex<double> w = -1.0 / z;
        double m1 = mass_density(f, x, y, lnorm);
        double m2 = mass_density(f, w.real(), w.imag(), lnorm);
        worst = std::max(worst, std::fabs(m1 - m2) / std::max(1e-300, std::fabs(m1)));
    }
    std::cout << "heatmap: k=" << k << " form " << index << " grid " << nx << "x" << ny
              << " invariance spot-check rel err " << fmt_g(worst) << "\n";
    if (!(worst < 1e-8)) {
        error_line("check", "modular invariance spot check failed");
        return 1;
    }
    return 0;
}

int run_ghosh_sarnak(const Common& c, const std::string& weights, std::uint64_t l) {
    auto [klo, khi] = parse_range(weights);
    BasisCache cache(c.cache_path);
    std::ofstream outf(join_path(c.out_dir, "ghosh_sarnak.csv"));
    if (!outf) throw ConfigError("cannot open ghosh_sarnak.csv for writing");
    // Normalizer reading: (e/l)^{(k-1)/2} matches the n=l term of the
    // a(1)=1 expansion exactly; the printed alternative (e/l)^{k-1} pairs
    // with y^{k/2}-weighted evaluations instead.
    outf << "# normalizer=(e/l)^((k-1)/2); alternative reading (e/l)^(k-1) "
            "pairs with y^(k/2) f\n";
    outf << "k,l,sup_residual\n";
    int printed = 0;
    for (int k = klo; k <= khi; ++k) {
        if (k % 2 != 0 || dim_cusp_forms(k) < 1) continue;
        double yl = double(k - 1) / (4.0 * kPi * double(l));
        int depth = std::max({evaluate_form_depth(k, std::max(0.05, yl)),
                              static_cast<int>(l) + 1, 2});
        auto basis = cache.get(k, depth);
        const auto& f = basis->forms.front();
        auto r = ghosh_sarnak_residual(f, l);
        outf << r.k << "," << r.l << "," << fmt_g(r.sup_residual) << "\n";
        std::cout << "ghosh-sarnak: k=" << r.k << " l=" << r.l
                  << " sup residual " << fmt_g(r.sup_residual) << "\n";
        ++printed;
    }
    cache.flush();
    outf.flush();
    if (!outf) throw ConfigError("write failed for ghosh_sarnak.csv");
    if (printed == 0) {
        error_line("check", "no weights with dim S_k > 0 in the requested range");
        return 1;
    }
    return 0;
}

int run_planck(const Common& c, double theta, std::vector<int> ks, double a, double A) {
    BasisCache cache(c.cache_path);
    auto rows = planck_failure_probe(theta, ks, TestWeight::bump(a, A), cache);
    cache.flush();
    std::ofstream outf(join_path(c.out_dir, "planck.csv"));
    if (!outf) throw ConfigError("cannot open planck.csv for writing");
    outf << "k,mu,nu,ratio,approx\n";
    for (const auto& r : rows) {
        outf << r.k << "," << fmt_g(r.mu) << "," << fmt_g(r.nu) << "," << fmt_g(r.ratio)
             << "," << fmt_g(r.approx) << "\n";
        std::cout << "planck: k=" << r.k << " |mu|/nu=" << fmt_g(r.ratio)
                  << " approx=" << fmt_g(r.approx) << "\n";
    }
    outf.flush();
    if (!outf) throw ConfigError("write failed for planck.csv");
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"cuspvariance: Hecke eigenforms, Petersson averages, and "
                 "quantum-variance experiments for the modular surface"};
    app.set_config("--config", "", "flat key=value config file; flags win");

    Common common;
    app.add_option("--cache", common.cache_path,
                   "eigenvalue cache file (env CUSPVARIANCE_CACHE overrides the default)")
        ->envname("CUSPVARIANCE_CACHE")
        ->capture_default_str();
    app.add_option("--out", common.out_dir, "output directory for artifacts")
        ->capture_default_str();
    app.add_option("--threads", common.threads, "worker threads for experiment cells")
        ->check(CLI::Range(1, 256))
        ->capture_default_str();
    app.require_subcommand(1);

    // forms
    auto* sc_forms = app.add_subcommand("forms", "build/extend the eigenform cache");
    int f_k = 12, f_nmax = 100;
    sc_forms->add_option("--weight", f_k, "weight k")->required();
    sc_forms->add_option("--nmax", f_nmax, "eigenvalue depth")->capture_default_str();

    // petersson
    auto* sc_pet = app.add_subcommand("petersson", "verify the Petersson identity");
    std::string p_weights = "12:40";
    int p_nmax = 5;
    double p_tol = 1e-6;
    sc_pet->add_option("--weights", p_weights, "weight range k_min:k_max")->capture_default_str();
    sc_pet->add_option("--nmax", p_nmax, "check 1 <= n1 <= n2 <= nmax")->capture_default_str();
    sc_pet->add_option("--tol", p_tol, "pass tolerance on |lhs-rhs|")->capture_default_str();

    // qvthm
    auto* sc_qv = app.add_subcommand("qvthm", "shifted-convolution variance experiment");
    int q_K = 32;
    double q_theta = 0.3, q_a = 1.0, q_A = 2.0;
    std::int64_t q_h1 = 1, q_h2 = 1;
    sc_qv->add_option("--K", q_K)->capture_default_str();
    sc_qv->add_option("--theta", q_theta)->capture_default_str();
    sc_qv->add_option("--h1", q_h1)->capture_default_str();
    sc_qv->add_option("--h2", q_h2)->capture_default_str();
    sc_qv->add_option("--a", q_a, "weight support left end")->capture_default_str();
    sc_qv->add_option("--A", q_A, "weight support right end")->capture_default_str();

    // variance
    auto* sc_var = app.add_subcommand("variance", "quantum variance experiment");
    int v_K = 32;
    double v_theta = 0.3, v_a = 1.0, v_A = 2.0;
    std::int64_t v_h1 = 1, v_h2 = 1;
    sc_var->add_option("--K", v_K)->capture_default_str();
    sc_var->add_option("--theta", v_theta)->capture_default_str();
    sc_var->add_option("--h1", v_h1)->capture_default_str();
    sc_var->add_option("--h2", v_h2)->capture_default_str();
    sc_var->add_option("--a", v_a)->capture_default_str();
    sc_var->add_option("--A", v_A)->capture_default_str();

    // moments
    auto* sc_mom = app.add_subcommand("moments", "spectral moment experiments");
    std::string m_which = "zeroth";
    int m_K = 32;
    double m_theta = 0.3, m_a = 1.0, m_A = 2.0;
    sc_mom->add_option("--which", m_which, "zeroth or first")->capture_default_str();
    sc_mom->add_option("--K", m_K)->capture_default_str();
    sc_mom->add_option("--theta", m_theta)->capture_default_str();
    sc_mom->add_option("--a", m_a)->capture_default_str();
    sc_mom->add_option("--A", m_A)->capture_default_str();

    // btheta
    auto* sc_bt = app.add_subcommand("btheta", "limiting-form evaluations");
    double b_theta = 0.3, b_a = 1.0, b_A = 2.0;
    std::int64_t b_h1 = 1, b_h2 = 1;
    bool b_eis = false;
    sc_bt->add_option("--theta", b_theta)->capture_default_str();
    sc_bt->add_option("--h1", b_h1)->capture_default_str();
    sc_bt->add_option("--h2", b_h2)->capture_default_str();
    sc_bt->add_option("--a", b_a)->capture_default_str();
    sc_bt->add_option("--A", b_A)->capture_default_str();
    sc_bt->add_flag("--eisenstein", b_eis, "zero-mode pair with the mean-zero bump");

    // maass
    auto* sc_ma = app.add_subcommand("maass", "Maass-pair partial sums");
    std::string ma_file;
    double ma_theta = 0.3;
    int ma_N = 20;
    sc_ma->add_option("--file", ma_file, "Maass data file")->required();
    sc_ma->add_option("--theta", ma_theta)->capture_default_str();
    sc_ma->add_option("--N", ma_N, "square truncation")->capture_default_str();

    // heatmap
    auto* sc_hm = app.add_subcommand("heatmap", "render the mass density");
    int hm_k = 12, hm_index = 0, hm_nx = 128, hm_ny = 128;
    double hm_ymin = 0.5, hm_ymax = 3.0;
    bool hm_logy = false;
    sc_hm->add_option("--weight", hm_k)->capture_default_str();
    sc_hm->add_option("--index", hm_index)->capture_default_str();
    sc_hm->add_option("--ymin", hm_ymin)->capture_default_str();
    sc_hm->add_option("--ymax", hm_ymax)->capture_default_str();
    sc_hm->add_option("--nx", hm_nx)->capture_default_str();
    sc_hm->add_option("--ny", hm_ny)->capture_default_str();
    sc_hm->add_flag("--log-y", hm_logy, "geometric y spacing");

    // ghosh-sarnak
    auto* sc_gs = app.add_subcommand("ghosh-sarnak", "horocycle localization residual");
    std::string gs_weights = "50:50";
    std::uint64_t gs_l = 2;
    sc_gs->add_option("--weights", gs_weights, "weight range k_min:k_max")->capture_default_str();
    sc_gs->add_option("--l", gs_l, "horocycle index")->capture_default_str();

    // planck-failure
    auto* sc_pf = app.add_subcommand("planck-failure", "theta >= 1 breakdown probe");
    double pf_theta = 1.0, pf_a = 1.0, pf_A = 2.0;
    std::vector<int> pf_ks{50, 100, 200};
    sc_pf->add_option("--theta", pf_theta)->capture_default_str();
    sc_pf->add_option("--ks", pf_ks, "weights to probe")->delimiter(',')->capture_default_str();
    sc_pf->add_option("--a", pf_a)->capture_default_str();
    sc_pf->add_option("--A", pf_A)->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        error_line("config", e.what());
        return 2;
    }

    try {
        if (sc_forms->parsed()) return run_forms(common, f_k, f_nmax);
        if (sc_pet->parsed()) return run_petersson(common, p_weights, p_nmax, p_tol);
        if (sc_qv->parsed()) return run_qvthm(common, q_K, q_theta, q_h1, q_h2, q_a, q_A);
        if (sc_var->parsed()) return run_variance(common, v_K, v_theta, v_h1, v_h2, v_a, v_A);
        if (sc_mom->parsed()) return run_moments(common, m_which, m_K, m_theta, m_a, m_A);
        if (sc_bt->parsed()) return run_btheta(common, b_theta, b_h1, b_h2, b_a, b_A, b_eis);
        if (sc_ma->parsed()) return run_maass(common, ma_file, ma_theta, ma_N);
        if (sc_hm->parsed())
            return run_heatmap(common, hm_k, hm_index, hm_ymin, hm_ymax, hm_nx, hm_ny, hm_logy);
        if (sc_gs->parsed()) return run_ghosh_sarnak(common, gs_weights, gs_l);
        if (sc_pf->parsed()) return run_planck(common, pf_theta, pf_ks, pf_a, pf_A);
        error_line("config", "no subcommand selected");
        return 2;
    } catch (const ConfigError& e) {
        error_line("config", e.what());
        return 2;
    } catch (const DataError& e) {
        error_line("data", e.what());
        return 1;
    } catch (const NumericError& e) {
        error_line("numeric", e.what());
        return 1;
    } catch (const std::exception& e) {
        error_line("numeric", e.what());
        return 1;
    }
}
