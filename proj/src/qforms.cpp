#include "cuspv/qforms.hpp"

#include "cuspv/arith.hpp"
#include "cuspv/errors.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace cuspv {

int dim_cusp_forms(int k) {
    if (k < 12 || k % 2 != 0) return 0;
    int d = k / 12;
    if (k % 12 == 2) d -= 1;
    return d;
}

std::vector<QSeries> miller_basis(int k, int prec) {
    const int d = dim_cusp_forms(k);
    if (d == 0) return {};
    if (prec < d + 1)
        throw ConfigError("miller_basis: prec must be at least dim+1");

    const QSeries e4 = eisenstein_q(4, prec);
    const QSeries e6 = eisenstein_q(6, prec);
    const QSeries delta = delta_q(prec);

    std::vector<QSeries> rows;
    rows.reserve(d);
    QSeries delta_pow = delta;
    for (int j = 1; j <= d; ++j) {
        const int m = k - 12 * j;
        // m is even, nonnegative, and never 2: for k = 2 mod 12 the top
        // power j = d keeps m >= 14.
        if (m < 0 || m % 2 != 0 || m == 2)
            throw NumericError("miller_basis: internal weight bookkeeping failed");
        const int b = (m % 4 == 0) ? 0 : 1;
        const int a = (m - 6 * b) / 4;
        QSeries row = delta_pow * e4.pow(static_cast<unsigned>(a));
        if (b == 1) row = row * e6;
        rows.push_back(std::move(row));
        if (j < d) delta_pow = delta_pow * delta;
    }

    // Echelonize from the deepest leading power down; the pivots are
    // already 1 (Delta^j E4^a E6^b = q^j + ...), so no divisions occur and
    // integrality is preserved.
    for (int j = d; j >= 1; --j) {
        QSeries& g = rows[static_cast<size_t>(j) - 1];
        for (int i = j + 1; i <= d; ++i) {
            const mpq_class c = g[i];
            if (c == 0) continue;
            QSeries scaled = rows[static_cast<size_t>(i) - 1];
            scaled *= c;
            g -= scaled;
        }
    }
    for (int j = 1; j <= d; ++j) {
        const QSeries& g = rows[static_cast<size_t>(j) - 1];
        for (int i = 1; i <= d; ++i)
            if (g[i] != mpq_class(i == j ? 1 : 0))
                throw NumericError("miller_basis: echelon pivot check failed");
        for (int n = 0; n <= prec; ++n)
            if (g[n].get_den() != 1)
                throw NumericError("miller_basis: non-integral coefficient");
    }
    return rows;
}

std::vector<std::vector<mpq_class>> hecke_matrix(const std::vector<QSeries>& basis,
                                                 int k, std::uint64_t n) {
    const int d = static_cast<int>(basis.size());
    if (d == 0) return {};
    for (const auto& g : basis)
        if (static_cast<std::uint64_t>(g.prec()) < n * static_cast<std::uint64_t>(d))
            throw ConfigError("hecke_matrix: basis precision below n*dim");

    std::vector<std::vector<mpq_class>> M(static_cast<size_t>(d),
                                          std::vector<mpq_class>(static_cast<size_t>(d)));
    for (int r = 1; r <= d; ++r) {
        const auto divs = divisors(gcd_u64(static_cast<std::uint64_t>(r), n));
        for (int i = 0; i < d; ++i) {
            mpq_class acc(0);
            for (std::uint64_t e : divs) {
                mpz_class ek;
                mpz_ui_pow_ui(ek.get_mpz_t(), e, static_cast<unsigned>(k - 1));
                acc += mpq_class(ek) * basis[static_cast<size_t>(i)]
                           [static_cast<int>(static_cast<std::uint64_t>(r) * n / (e * e))];
            }
            M[static_cast<size_t>(r) - 1][static_cast<size_t>(i)] = acc;
        }
    }
    return M;
}

namespace {

// Characteristic polynomial by the Faddeev-LeVerrier recurrence, exact over
// the rationals; the coefficients of a monic integer matrix charpoly are
// integers, which is asserted before the squarefree step.
std::vector<mpz_class> charpoly_int(const std::vector<std::vector<mpq_class>>& M) {
    const size_t d = M.size();
    std::vector<std::vector<mpq_class>> N(d, std::vector<mpq_class>(d));
    for (size_t i = 0; i < d; ++i) N[i][i] = 1;
    std::vector<mpq_class> c(d + 1);
    c[0] = 1;
    std::vector<std::vector<mpq_class>> T(d, std::vector<mpq_class>(d));
    for (size_t step = 1; step <= d; ++step) {
        for (size_t i = 0; i < d; ++i)
            for (size_t j = 0; j < d; ++j) {
                mpq_class acc(0);
                for (size_t l = 0; l < d; ++l)
                    if (M[i][l] != 0 && N[l][j] != 0) acc += M[i][l] * N[l][j];
                T[i][j] = acc;
            }
        mpq_class tr(0);
        for (size_t i = 0; i < d; ++i) tr += T[i][i];
        c[step] = -tr / static_cast<long>(step);
        N = T;
        for (size_t i = 0; i < d; ++i) N[i][i] += c[step];
    }
    std::vector<mpz_class> out(d + 1);
    for (size_t i = 0; i <= d; ++i) {
        if (c[i].get_den() != 1)
            throw NumericError("charpoly: non-integer coefficient, matrix not integral");
        out[i] = c[i].get_num();
    }
    return out;
}

using u64 = std::uint64_t;

u64 mulmod(u64 a, u64 b, u64 m) {
    return static_cast<u64>((static_cast<unsigned __int128>(a) * b) % m);
}

u64 powmod(u64 a, u64 e, u64 m) {
    u64 r = 1 % m;
    while (e) {
        if (e & 1u) r = mulmod(r, a, m);
        a = mulmod(a, a, m);
        e >>= 1u;
    }
    return r;
}

// gcd degree of p and p' over F_q; degree 0 certifies gcd_Z(p, p') = 1,
// hence p squarefree (p monic, so no degree drop mod q).
int gcd_degree_mod(const std::vector<mpz_class>& p, u64 q) {
    const size_t d = p.size() - 1;
    std::vector<u64> a(d + 1), b;
    for (size_t i = 0; i <= d; ++i) {
        // p is stored leading-first: p[0] x^d + ... + p[d]
        u64 r = mpz_fdiv_ui(p[i].get_mpz_t(), q);
        a[i] = r;
    }
    b.resize(d);
    for (size_t i = 0; i < d; ++i) {
        u64 coef = mulmod(a[i], (d - i) % q, q);
        b[i] = coef;
    }
    auto deg = [](const std::vector<u64>& v) -> int {
        for (size_t i = 0; i < v.size(); ++i)
            if (v[i] != 0) return static_cast<int>(v.size() - 1 - i);
        return -1;
    };
    auto normalize = [&](std::vector<u64>& v) {
        int dg = deg(v);
        if (dg < 0) { v.clear(); return; }
        v.erase(v.begin(), v.end() - (dg + 1));
    };
    normalize(a);
    normalize(b);
    while (!b.empty()) {
        // a mod b
        const u64 inv_lead = powmod(b[0], q - 2, q);
        while (a.size() >= b.size()) {
            if (a[0] != 0) {
                const u64 f = mulmod(a[0], inv_lead, q);
                for (size_t i = 0; i < b.size(); ++i)
                    a[i] = (a[i] + q - mulmod(f, b[i], q)) % q;
            }
            a.erase(a.begin());
            int dg = deg(a);
            if (dg < 0) { a.clear(); break; }
            a.erase(a.begin(), a.end() - (dg + 1));
        }
        std::swap(a, b);
        normalize(b);
    }
    return a.empty() ? -1 : static_cast<int>(a.size() - 1);
}

void certify_squarefree(const std::vector<mpz_class>& p) {
    static const u64 primes[] = {9223372036854775783ULL, 9223372036854775643ULL,
                                 9223372036854775549ULL, 9223372036854775507ULL,
                                 9223372036854775433ULL};
    for (u64 q : primes) {
        if (gcd_degree_mod(p, q) == 0) return;
    }
    throw NumericError("hecke_eigenforms: characteristic polynomial failed the "
                       "squarefree certificate; repeated T_2 eigenvalue suspected");
}

mpq_class horner_exact(const std::vector<mpz_class>& p, const mpq_class& x) {
    mpq_class acc(0);
    for (const auto& c : p) acc = acc * x + mpq_class(c);
    return acc;
}

Real horner_pre(const std::vector<Real>& rp, const Real& x) {
    Real acc(0, kRealBits);
    for (const auto& c : rp) acc = acc * x + c;
    return acc;
}

// Seeds come from a sign-change scan of the characteristic polynomial in
// 384-bit arithmetic over [-B, B], B = 2^{(k-1)/2 + 2}; the Deligne bound
// |a_f(2)| <= 2^{(k-1)/2 + 1} keeps every root well inside.  A double
// eigensolve on the Miller-basis T_2 is useless here: the entries grow like
// 2^{k-1} while the eigenvalue gaps are only ~2^{(k-1)/2}, so for large k
// the QR backward error swallows the spectrum whole.  Each bracket is
// shrunk by bisection, polished by Newton, and finally certified with exact
// rational sign changes.  Returns the roots in ascending order.
std::vector<Real> certified_real_roots(const std::vector<mpz_class>& p, int k) {
    const int d = static_cast<int>(p.size()) - 1;

    Real scale(0, kRealBits);
    mpf_set_ui(scale.get_mpf_t(), 2);
    mpf_pow_ui(scale.get_mpf_t(), scale.get_mpf_t(), static_cast<unsigned>((k - 1) / 2 + 2));

    std::vector<Real> rp, rpd;
    rp.reserve(p.size());
    for (const auto& c : p) rp.emplace_back(mpq_class(c), kRealBits);
    rpd.reserve(p.size() - 1);
    for (size_t i = 0; i + 1 < p.size(); ++i)
        rpd.emplace_back(mpq_class(p[i] * static_cast<long>(p.size() - 1 - i)), kRealBits);

    // Refine the grid with coprime densities (8d * 3^t) so each retry lands
    // on fresh abscissae; a stray exact zero at a grid point then cannot
    // survive refinement.
    std::vector<std::pair<Real, Real>> brackets;
    for (int t = 0; t <= 8 && brackets.empty(); ++t) {
        long m = 8L * d;
        for (int i = 0; i < t; ++i) m *= 3;
        std::vector<std::pair<Real, Real>> found;
        bool clean = true;
        Real x_prev(0, kRealBits);
        int s_prev = 0;
        for (long j = 0; j <= m && clean; ++j) {
            Real x = scale * Real(2 * j - m, kRealBits) / Real(m, kRealBits);
            const int s = sgn(horner_pre(rp, x));
            if (s == 0) { clean = false; break; }
            if (j > 0 && s != s_prev) found.emplace_back(x_prev, x);
            x_prev = x;
            s_prev = s;
        }
        if (clean && static_cast<int>(found.size()) == d) brackets = std::move(found);
    }
    if (brackets.empty())
        throw NumericError("hecke_eigenforms: failed to isolate the T_2 eigenvalues "
                           "by sign changes");

    Real tiny(0, kRealBits);
    mpf_set_ui(tiny.get_mpf_t(), 1);
    mpf_div_2exp(tiny.get_mpf_t(), tiny.get_mpf_t(), 336);

    Real half(0.5, kRealBits);
    std::vector<Real> roots;
    for (auto& [blo, bhi] : brackets) {
        Real lo = blo, hi = bhi;
        int slo = sgn(horner_pre(rp, lo));
        for (int it = 0; it < 60; ++it) {
            Real mid = (lo + hi) * half;
            const int sm = sgn(horner_pre(rp, mid));
            if (sm == 0) { lo = mid; hi = mid; break; }
            if (sm == slo) lo = mid; else hi = mid;
        }
        Real x = (lo + hi) * half;
        for (int it = 0; it < 120; ++it) {
            Real f = horner_pre(rp, x);
            Real fp = horner_pre(rpd, x);
            if (fp == 0)
                throw NumericError("hecke_eigenforms: Newton hit a critical point");
            Real dx = f / fp;
            x -= dx;
            Real bound = tiny * (abs(x) + scale);
            if (abs(dx) <= bound && it >= 3) break;
            if (it == 119)
                throw NumericError("hecke_eigenforms: Newton failed to converge");
        }
        roots.push_back(x);
    }
    std::sort(roots.begin(), roots.end(),
              [](const Real& a, const Real& b) { return a < b; });

    // Exact certificates: p changes sign across [root - delta, root + delta],
    // and the brackets are pairwise disjoint, so these are d distinct real
    // roots of a degree-d polynomial: all of them, each simple.
    Real delta_f = scale;
    mpf_div_2exp(delta_f.get_mpf_t(), delta_f.get_mpf_t(), 100);
    const mpq_class delta(delta_f);
    mpq_class prev_hi;
    bool have_prev = false;
    for (const Real& r : roots) {
        const mpq_class c(r);
        const mpq_class lo = c - delta, hi = c + delta;
        const mpq_class flo = horner_exact(p, lo), fhi = horner_exact(p, hi);
        if (!((flo < 0 && fhi > 0) || (flo > 0 && fhi < 0)))
            throw NumericError("hecke_eigenforms: sign-change certificate failed");
        if (have_prev && !(prev_hi < lo))
            throw NumericError("hecke_eigenforms: root brackets overlap");
        prev_hi = hi;
        have_prev = true;
    }
    return roots;
}

// Null vector of (M - alpha I) by partial-pivot elimination; the rank
// deficiency surfaces in the final pivot.  Result normalized to v[0] = 1
// (echelon coordinates make that a_f(1)).  The elimination loses roughly
// log2(||M|| / eigenvalue gap) bits, which grows linearly in k, so the
// caller passes a working precision sized for the weight.
std::vector<Real> eigenvector_for_root(const std::vector<std::vector<mpq_class>>& M,
                                       const Real& alpha, int prec) {
    const size_t d = M.size();
    std::vector<std::vector<Real>> B(d, std::vector<Real>(d, Real(0, prec)));
    for (size_t i = 0; i < d; ++i)
        for (size_t j = 0; j < d; ++j) {
            B[i][j] = Real(M[i][j], prec);
            if (i == j) B[i][j] -= Real(alpha, prec);
        }
    for (size_t col = 0; col + 1 < d; ++col) {
        size_t piv = col;
        for (size_t r = col + 1; r < d; ++r)
            if (abs(B[r][col]) > abs(B[piv][col])) piv = r;
        if (piv != col) std::swap(B[piv], B[col]);
        if (B[col][col] == 0)
            throw NumericError("hecke_eigenforms: unexpected rank deficiency during elimination");
        for (size_t r = col + 1; r < d; ++r) {
            Real f = B[r][col] / B[col][col];
            if (f == 0) continue;
            for (size_t cc = col; cc < d; ++cc) B[r][cc] -= f * B[col][cc];
        }
    }
    std::vector<Real> v(d, Real(0, prec));
    v[d - 1] = 1;
    for (size_t r = d - 1; r-- > 0;) {
        Real acc(0, prec);
        for (size_t cc = r + 1; cc < d; ++cc) acc += B[r][cc] * v[cc];
        v[r] = -acc / B[r][r];
    }
    if (v[0] == 0)
        throw NumericError("hecke_eigenforms: eigenvector has vanishing a_f(1)");
    const Real lead = v[0];
    for (auto& x : v) x /= lead;
    return v;
}

Real n_pow_half_km1(std::uint64_t n, int k) {
    Real t(0, kRealBits);
    mpf_set_ui(t.get_mpf_t(), static_cast<unsigned long>(n));
    mpf_pow_ui(t.get_mpf_t(), t.get_mpf_t(), static_cast<unsigned>(k - 1));
    mpf_sqrt(t.get_mpf_t(), t.get_mpf_t());
    return t;
}

} // namespace

HeckeEigenform::HeckeEigenform(int k, int index, int n_max, std::vector<Real> lambda,
                               std::vector<mpz_class> a_exact)
    : k_(k), index_(index), n_max_(n_max), exact_(!a_exact.empty()),
      lambda_(std::move(lambda)), a_(std::move(a_exact)) {
    if (lambda_.size() != static_cast<size_t>(n_max_) + 1)
        throw ConfigError("HeckeEigenform: lambda table size mismatch");
    if (exact_ && a_.size() != static_cast<size_t>(n_max_) + 1)
        throw ConfigError("HeckeEigenform: exact table size mismatch");
    lambda_d_.resize(lambda_.size());
    for (size_t i = 0; i < lambda_.size(); ++i) {
        lambda_[i] = snap30(lambda_[i]);
        lambda_d_[i] = lambda_[i].get_d();
    }
}

const Real& HeckeEigenform::lambda_hp(std::uint64_t n) const {
    if (n < 1 || n > static_cast<std::uint64_t>(n_max_))
        throw ConfigError("HeckeEigenform::lambda_hp: n out of range");
    return lambda_[static_cast<size_t>(n)];
}

double HeckeEigenform::lambda(std::uint64_t n) const {
    if (n < 1 || n > static_cast<std::uint64_t>(n_max_))
        throw ConfigError("HeckeEigenform::lambda: n out of range");
    return lambda_d_[static_cast<size_t>(n)];
}

const mpz_class& HeckeEigenform::a_exact(std::uint64_t n) const {
    if (!exact_)
        throw DataError("HeckeEigenform::a_exact: form carries no exact coefficients");
    if (n < 1 || n > static_cast<std::uint64_t>(n_max_))
        throw ConfigError("HeckeEigenform::a_exact: n out of range");
    return a_[static_cast<size_t>(n)];
}

Real HeckeEigenform::lambda_ext_hp(std::uint64_t n) const {
    if (n == 0) throw ConfigError("lambda_ext: n must be positive");
    if (n <= static_cast<std::uint64_t>(n_max_)) return lambda_[static_cast<size_t>(n)];
    Real out(1, kRealBits);
    for (auto [p, e] : factorize(n)) {
        if (p > static_cast<std::uint64_t>(n_max_))
            throw NumericError("lambda_ext: prime factor " + std::to_string(p) +
                               " exceeds the eigenvalue table");
        // Chebyshev recursion lambda(p^{j+1}) = lambda(p) lambda(p^j) - lambda(p^{j-1})
        Real lp = lambda_[static_cast<size_t>(p)];
        Real prev(1, kRealBits), cur = lp;
        for (unsigned j = 1; j < e; ++j) {
            Real next = lp * cur - prev;
            prev = cur;
            cur = next;
        }
        out *= (e == 0) ? Real(1, kRealBits) : cur;
    }
    return out;
}

double HeckeEigenform::lambda_ext(std::uint64_t n) const {
    if (n <= static_cast<std::uint64_t>(n_max_) && n >= 1)
        return lambda_d_[static_cast<size_t>(n)];
    return lambda_ext_hp(n).get_d();
}

mpq_class HeckeEigenform::exact_hecke_residual(std::uint64_t m, std::uint64_t n) const {
    if (!exact_)
        throw DataError("exact_hecke_residual: form carries no exact coefficients");
    if (m < 1 || n < 1 || m * n > static_cast<std::uint64_t>(n_max_))
        throw ConfigError("exact_hecke_residual: indices out of range");
    mpq_class rhs(0);
    for (std::uint64_t e : divisors(gcd_u64(m, n))) {
        mpz_class ek;
        mpz_ui_pow_ui(ek.get_mpz_t(), e, static_cast<unsigned>(k_ - 1));
        rhs += mpq_class(ek * a_[static_cast<size_t>(m * n / (e * e))]);
    }
    return mpq_class(a_[static_cast<size_t>(m)] * a_[static_cast<size_t>(n)]) - rhs;
}

Real HeckeEigenform::hecke_residual_hp(std::uint64_t m, std::uint64_t n) const {
    if (m < 1 || n < 1 || m * n > static_cast<std::uint64_t>(n_max_))
        throw ConfigError("hecke_residual_hp: indices out of range");
    Real rhs(0, kRealBits);
    for (std::uint64_t e : divisors(gcd_u64(m, n)))
        rhs += lambda_[static_cast<size_t>(m * n / (e * e))];
    Real r = lambda_[static_cast<size_t>(m)] * lambda_[static_cast<size_t>(n)] - rhs;
    return abs(r);
}

HeckeBasis hecke_eigenforms(int k, int n_max) {
    if (n_max < 2) throw ConfigError("hecke_eigenforms: n_max must be at least 2");
    HeckeBasis basis;
    basis.k = k;
    basis.n_max = n_max;
    const int d = dim_cusp_forms(k);
    if (d == 0) return basis;

    const int prec = std::max(n_max, 2 * d);
    const auto mb = miller_basis(k, prec);

    std::vector<std::vector<Real>> coeff_rows; // a_f(n) per form, n = 0..n_max
    std::vector<std::vector<mpz_class>> exact_rows;

    if (d == 1) {
        std::vector<mpz_class> a(static_cast<size_t>(n_max) + 1);
        for (int n = 1; n <= n_max; ++n) a[static_cast<size_t>(n)] = mb[0][n].get_num();
        std::vector<Real> lam(static_cast<size_t>(n_max) + 1, Real(0, kRealBits));
        for (int n = 1; n <= n_max; ++n)
            lam[static_cast<size_t>(n)] =
                Real(a[static_cast<size_t>(n)], kRealBits) / n_pow_half_km1(static_cast<std::uint64_t>(n), k);
        basis.forms.emplace_back(k, 0, n_max, std::move(lam), std::move(a));
    } else {
        const auto M = hecke_matrix(mb, k, 2);
        const auto p = charpoly_int(M);
        certify_squarefree(p);
        const auto roots = certified_real_roots(p, k);
        // Working precision for the nearly singular solve and the coefficient
        // assembly; both cancel by a factor that grows like 2^k.
        const int xprec = kRealBits + k + 128;
        int index = 0;
        for (const Real& alpha : roots) {
            const auto v = eigenvector_for_root(M, alpha, xprec);
            // residual check ||Mv - alpha v|| against the matrix scale
            Real scale(0, xprec), vmax(0, xprec);
            for (size_t i = 0; i < v.size(); ++i)
                if (abs(v[i]) > vmax) vmax = abs(v[i]);
            for (size_t i = 0; i < v.size(); ++i) {
                Real acc(0, xprec);
                for (size_t j = 0; j < v.size(); ++j) {
                    Real mij(M[i][j], xprec);
                    acc += mij * v[j];
                    if (abs(mij) > scale) scale = abs(mij);
                }
                acc -= Real(alpha, xprec) * v[i];
                if (abs(acc) > Real(1e-50, kRealBits) * scale * vmax)
                    throw NumericError("hecke_eigenforms: eigenvector residual too large");
            }
            std::vector<Real> lam(static_cast<size_t>(n_max) + 1, Real(0, kRealBits));
            for (int n = 1; n <= n_max; ++n) {
                Real a(0, xprec);
                for (int i = 0; i < d; ++i)
                    a += v[static_cast<size_t>(i)] * Real(mb[static_cast<size_t>(i)][n], xprec);
                lam[static_cast<size_t>(n)] =
                    Real(a / n_pow_half_km1(static_cast<std::uint64_t>(n), k), kRealBits);
            }
            basis.forms.emplace_back(k, index++, n_max, std::move(lam),
                                     std::vector<mpz_class>{});
        }
    }

    // Self checks on the finished forms: Deligne bound at primes and the
    // Hecke relation at a few composite pairs.
    for (const auto& f : basis.forms) {
        for (std::uint64_t pr : primes_upto(static_cast<std::uint64_t>(std::min(n_max, 200)))) {
            if (std::abs(f.lambda(pr)) > 2.0 + 1e-9)
                throw NumericError("hecke_eigenforms: Deligne bound violated at p=" +
                                   std::to_string(pr) + ", k=" + std::to_string(k));
        }
        static const std::pair<std::uint64_t, std::uint64_t> pairs[] =
            {{2, 2}, {2, 3}, {3, 4}, {2, 5}, {4, 6}, {6, 6}};
        for (auto [m, n] : pairs) {
            if (m * n > static_cast<std::uint64_t>(n_max)) continue;
            Real tol(1e-20, kRealBits);
            Real sc = abs(f.lambda_hp(m) * f.lambda_hp(n)) + 1;
            if (f.hecke_residual_hp(m, n) > tol * sc)
                throw NumericError("hecke_eigenforms: Hecke relation self-check failed at (" +
                                   std::to_string(m) + "," + std::to_string(n) + ")");
        }
    }

    // The roots were sorted ascending and a(2) -> lambda(2) is monotone, so
    // the forms come out ordered by lambda(2); enforce the invariant.
    for (size_t i = 1; i < basis.forms.size(); ++i)
        if (!(basis.forms[i - 1].lambda_hp(2) < basis.forms[i].lambda_hp(2)))
            throw NumericError("hecke_eigenforms: lambda(2) ordering invariant broken");
    return basis;
}

} // namespace cuspv
