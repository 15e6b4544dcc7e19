#pragma once

// Holomorphic Hecke eigenforms for the full modular group, from first
// principles.
//
// S_k is built as the Victor Miller echelon basis g_1..g_d (g_i = q^i +
// O(q^{d+1})) out of E4^a E6^b Delta^j products with exact rational
// coefficients.  T_2 acts exactly on that basis; its characteristic
// polynomial is computed exactly, certified squarefree, and its real
// roots are polished to full working precision.  Eigenforms are recovered
// in Miller coordinates, normalized to a_f(1) = 1, and carry normalized
// eigenvalues lambda_f(n) = a_f(n) / n^{(k-1)/2} to 30+ significant
// digits (exact integers a_f(n) alongside, when dim S_k = 1).

#include "cuspv/precision.hpp"
#include "cuspv/qseries.hpp"

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

namespace cuspv {

int dim_cusp_forms(int k);

// Echelonized integral basis of S_k to q^prec.  prec must be at least
// dim + 1; the echelon step never introduces denominators.
std::vector<QSeries> miller_basis(int k, int prec);

// Matrix of T_n on an echelon basis, column i = coordinates of T_n g_i:
// M[r][i] = sum_{e | (r, n)} e^{k-1} g_i[r n / e^2].  Needs prec >= n*dim.
std::vector<std::vector<mpq_class>> hecke_matrix(const std::vector<QSeries>& basis,
                                                 int k, std::uint64_t n);

class HeckeEigenform {
public:
    int k() const { return k_; }
    int index() const { return index_; }
    int n_max() const { return n_max_; }
    bool exact() const { return exact_; }

    // lambda_f(n) for 1 <= n <= n_max, snapped to its 30-digit decimal form.
    const Real& lambda_hp(std::uint64_t n) const;
    double lambda(std::uint64_t n) const;

    // Exact integer a_f(n); only for dim-1 spaces.
    const mpz_class& a_exact(std::uint64_t n) const;

    // lambda_f(n) for arbitrary n via multiplicativity and the Chebyshev
    // recursion at prime powers; every prime factor of n must be <= n_max.
    double lambda_ext(std::uint64_t n) const;
    Real lambda_ext_hp(std::uint64_t n) const;

    // a(m) a(n) - sum_{e | (m,n)} e^{k-1} a(m n / e^2) as an exact
    // rational (zero iff the Hecke relation holds); exact forms only.
    mpq_class exact_hecke_residual(std::uint64_t m, std::uint64_t n) const;

    // |lambda(m) lambda(n) - sum_{e|(m,n)} lambda(mn/e^2)| in high
    // precision, for the 1e-20-relative self checks.
    Real hecke_residual_hp(std::uint64_t m, std::uint64_t n) const;

    HeckeEigenform(int k, int index, int n_max, std::vector<Real> lambda,
                   std::vector<mpz_class> a_exact);

private:
    int k_ = 0, index_ = 0, n_max_ = 0;
    bool exact_ = false;
    std::vector<Real> lambda_;      // [0] unused
    std::vector<double> lambda_d_;
    std::vector<mpz_class> a_;      // exact forms only
};

struct HeckeBasis {
    int k = 0;
    int n_max = 0;
    std::vector<HeckeEigenform> forms;  // sorted by lambda(2) ascending
};

// Diagonalize T_2 on S_k and recover lambda_f(n) for n <= n_max.
// Throws NumericError if the characteristic polynomial fails the
// squarefree certificate (repeated eigenvalue) rather than guessing.
HeckeBasis hecke_eigenforms(int k, int n_max);

// --- eigencache ------------------------------------------------------
//
// Text format, magic "cuspvariance-eigencache v1", rows
//   k,form_index,n,lambda[,exact]
// sorted by (k, form_index, n); lambda is the 30-significant-digit
// decimal; the optional exact column holds a_f(n) as an exact rational.

void eigencache_write(const std::string& path, const std::vector<std::shared_ptr<const HeckeBasis>>& bases);
std::vector<std::shared_ptr<HeckeBasis>> eigencache_read(const std::string& path);

// In-memory registry with optional file backing.  get() serves the cached
// basis when it is deep enough, otherwise builds, revalidates, and
// persists.  Thread-safe; builds are serialized.
class BasisCache {
public:
    explicit BasisCache(std::string path = "");
    std::shared_ptr<const HeckeBasis> get(int k, int n_max);
    void flush();
    const std::string& path() const { return path_; }

private:
    std::string path_;
    std::mutex mu_;
    std::map<int, std::shared_ptr<const HeckeBasis>> mem_;
    bool dirty_ = false;
};

} // namespace cuspv
