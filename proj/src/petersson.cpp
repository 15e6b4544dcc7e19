#include "cuspv/petersson.hpp"

#include "cuspv/arith.hpp"
#include "cuspv/bessel.hpp"
#include "cuspv/csvio.hpp"
#include "cuspv/errors.hpp"
#include "cuspv/sym2.hpp"

#include <cmath>
#include <fstream>
#include <numbers>

namespace cuspv {

namespace {
constexpr double kPi = std::numbers::pi;
}

double petersson_lhs(const HeckeBasis& basis, const std::vector<double>& Lsym2,
                     std::uint64_t n1, std::uint64_t n2) {
    if (Lsym2.size() != basis.forms.size())
        throw ConfigError("petersson_lhs: L-value list does not match the basis");
    double acc = 0.0, comp = 0.0;
    for (size_t i = 0; i < basis.forms.size(); ++i) {
        if (!(Lsym2[i] > 0.0))
            throw DataError("petersson_lhs: nonpositive symmetric-square value");
        const double term =
            basis.forms[i].lambda(n1) * basis.forms[i].lambda(n2) / Lsym2[i];
        const double y = term - comp;
        const double t = acc + y;
        comp = (t - acc) - y;
        acc = t;
    }
    return 2.0 * kPi * kPi / (basis.k - 1) * acc;
}

PeterssonRhs petersson_rhs(int k, std::uint64_t n1, std::uint64_t n2, double tail_tol) {
    if (k < 12 || k % 2 != 0)
        throw ConfigError("petersson_rhs: weight must be even and at least 12");
    if (n1 < 1 || n2 < 1)
        throw ConfigError("petersson_rhs: indices must be positive");
    if (!(tail_tol > 0.0))
        throw ConfigError("petersson_rhs: tail_tol must be positive");

    const double A = 4.0 * kPi * std::sqrt(static_cast<double>(n1) * static_cast<double>(n2));
    const double nu = k - 1.0;

    // |J_{k-1}(A/c)| <= (A/(2c))^{k-1} / (k-1)!, so the dropped tail is below
    //   sum_{c > C} (A/(2c))^{k-1}/(k-1)!  <= t(C+1) (1 + (C+1)/(k-2))
    // with t(c) the first-term bound; find the smallest certifying C.
    auto log_tail = [&](std::uint64_t C) {
        const double t1 = log_bessel_j_bound(nu, A / static_cast<double>(C + 1));
        return t1 + std::log1p(static_cast<double>(C + 1) / (k - 2.0));
    };
    std::uint64_t C = static_cast<std::uint64_t>(std::ceil(A / 2.0)) + 1;
    while (log_tail(C) >= std::log(tail_tol)) {
        ++C;
        if (C > 1000000)
            throw NumericError("petersson_rhs: no truncation point up to 1e6 certifies "
                               "the Kloosterman-Bessel tail below tail_tol");
    }

    double acc = 0.0, comp = 0.0;
    for (std::uint64_t c = 1; c <= C; ++c) {
        const double term = kloosterman(static_cast<int64_t>(n1), static_cast<int64_t>(n2), c) /
                            static_cast<double>(c) * bessel_j(nu, A / static_cast<double>(c));
        const double y = term - comp;
        const double t = acc + y;
        comp = (t - acc) - y;
        acc = t;
    }
    const double sign = (k / 2) % 2 == 0 ? 1.0 : -1.0;
    PeterssonRhs out;
    out.value = (n1 == n2 ? 1.0 : 0.0) + 2.0 * kPi * sign * acc;
    out.c_trunc = C + 1;
    out.tail_bound = std::exp(log_tail(C));
    return out;
}

std::vector<PeterssonRow> petersson_check(int k_min, int k_max, int n_bound,
                                          double tail_tol, BasisCache& cache) {
    if (k_min > k_max || n_bound < 1)
        throw ConfigError("petersson_check: empty parameter ranges");
    std::vector<PeterssonRow> rows;
    for (int k = k_min + (k_min % 2); k <= k_max; k += 2) {
        if (dim_cusp_forms(k) == 0) continue;
        const int depth = std::max(n_bound, sym2_norm_nmax(k));
        const auto basis = cache.get(k, depth);
        std::vector<double> L;
        L.reserve(basis->forms.size());
        for (const auto& f : basis->forms) L.push_back(l_sym2_norm(f));
        for (std::uint64_t n1 = 1; n1 <= static_cast<std::uint64_t>(n_bound); ++n1)
            for (std::uint64_t n2 = n1; n2 <= static_cast<std::uint64_t>(n_bound); ++n2) {
                PeterssonRow row;
                row.k = k;
                row.n1 = n1;
                row.n2 = n2;
                row.lhs = petersson_lhs(*basis, L, n1, n2);
                const auto rhs = petersson_rhs(k, n1, n2, tail_tol);
                row.rhs = rhs.value;
                row.abs_diff = std::abs(row.lhs - row.rhs);
                row.c_truncation = rhs.c_trunc;
                rows.push_back(row);
            }
    }
    return rows;
}

void write_petersson_csv(const std::string& path, const std::vector<PeterssonRow>& rows) {
    std::ofstream out(path, std::ios::trunc);
    if (!out)
        throw DataError("write_petersson_csv: cannot open '" + path + "'");
    out << "k,n1,n2,lhs,rhs,abs_diff,c_truncation\n";
    for (const auto& r : rows) {
        out << r.k << ',' << r.n1 << ',' << r.n2 << ',' << fmt_g(r.lhs) << ','
            << fmt_g(r.rhs) << ',' << fmt_g(r.abs_diff) << ',' << r.c_truncation << '\n';
    }
    if (!out.good())
        throw DataError("write_petersson_csv: write failure on '" + path + "'");
}

} // namespace cuspv
