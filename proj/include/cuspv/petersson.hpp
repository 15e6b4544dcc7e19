#pragma once

// The Petersson trace identity at level 1:
//
//   (2 pi^2 / (k-1)) sum_{f in H_k} lambda_f(n1) lambda_f(n2) / L(1, sym^2 f)
//     = delta_{n1 n2} + 2 pi (-1)^{k/2} sum_{c>=1} S(n1, n2; c) c^{-1}
//                                         J_{k-1}(4 pi sqrt(n1 n2) / c).
//
// The c-sum is truncated with a certificate: |S(m,n;c)/c| <= 1 and
// |J_{k-1}(x)| <= (x/2)^{k-1} / (k-1)!, so the tail beyond C is bounded
// by a computable geometric-type sum which must fall below tail_tol.

#include "cuspv/qforms.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace cuspv {

// Spectral side; Lsym2[i] pairs with basis.forms[i].
double petersson_lhs(const HeckeBasis& basis, const std::vector<double>& Lsym2,
                     std::uint64_t n1, std::uint64_t n2);

struct PeterssonRhs {
    double value = 0;
    std::uint64_t c_trunc = 0;   // first index excluded
    double tail_bound = 0;       // certified bound on the dropped tail
};

// Throws NumericError when no C <= 1e6 certifies the tail below tail_tol.
PeterssonRhs petersson_rhs(int k, std::uint64_t n1, std::uint64_t n2, double tail_tol);

struct PeterssonRow {
    int k = 0;
    std::uint64_t n1 = 0, n2 = 0;
    double lhs = 0, rhs = 0, abs_diff = 0;
    std::uint64_t c_truncation = 0;
};

// All even k in [k_min, k_max] with dim S_k > 0, all 1 <= n1 <= n2 <= n_bound.
std::vector<PeterssonRow> petersson_check(int k_min, int k_max, int n_bound,
                                          double tail_tol, BasisCache& cache);

// Header "k,n1,n2,lhs,rhs,abs_diff,c_truncation".
void write_petersson_csv(const std::string& path, const std::vector<PeterssonRow>& rows);

} // namespace cuspv
