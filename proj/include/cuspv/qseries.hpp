#pragma once

// Truncated q-expansions with exact rational coefficients.
//
// A QSeries holds coefficients c[0..prec] of sum c[n] q^n.  All arithmetic
// truncates to the shorter operand's precision; nothing here ever rounds.
// These feed the Victor Miller echelon basis of S_k and the Hecke operator
// matrices, so exactness is the whole point.

#include <gmpxx.h>
#include <cstdint>
#include <vector>

namespace cuspv {

class QSeries {
public:
    QSeries() = default;
    explicit QSeries(int prec) : c_(static_cast<size_t>(prec) + 1) {}
    QSeries(int prec, std::vector<mpq_class> coeffs);

    int prec() const { return static_cast<int>(c_.size()) - 1; }
    const mpq_class& operator[](int n) const;
    mpq_class& at(int n);

    QSeries& operator+=(const QSeries& o);
    QSeries& operator-=(const QSeries& o);
    friend QSeries operator+(QSeries a, const QSeries& b) { return a += b; }
    friend QSeries operator-(QSeries a, const QSeries& b) { return a -= b; }
    QSeries operator*(const QSeries& o) const;
    QSeries& operator*=(const mpq_class& s);

    // a^e by binary powering, truncated at this->prec().
    QSeries pow(unsigned e) const;

    QSeries truncated(int new_prec) const;
    bool is_zero() const;

private:
    std::vector<mpq_class> c_;
};

// Normalized Eisenstein series E_k = 1 - (2k/B_k) sum sigma_{k-1}(n) q^n,
// k in {4, 6}: E4 = 1 + 240 sum sigma_3 q^n, E6 = 1 - 504 sum sigma_5 q^n.
QSeries eisenstein_q(int k, int prec);

// Discriminant cusp form Delta = (E4^3 - E6^2)/1728 to the given precision.
QSeries delta_q(int prec);

// sigma_m(n) as exact integer, for the Eisenstein coefficient sieves.
mpz_class sigma_pow(std::uint64_t n, unsigned m);

} // namespace cuspv
