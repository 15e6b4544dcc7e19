#include "cuspv/qseries.hpp"

#include "cuspv/errors.hpp"

#include <algorithm>

namespace cuspv {

QSeries::QSeries(int prec, std::vector<mpq_class> coeffs) : c_(std::move(coeffs)) {
    c_.resize(static_cast<size_t>(prec) + 1);
}

const mpq_class& QSeries::operator[](int n) const {
    static const mpq_class zero(0);
    if (n < 0 || n > prec()) return zero;
    return c_[static_cast<size_t>(n)];
}

mpq_class& QSeries::at(int n) {
    if (n < 0 || n > prec())
        throw ConfigError("QSeries::at: index out of range");
    return c_[static_cast<size_t>(n)];
}

QSeries& QSeries::operator+=(const QSeries& o) {
    int p = std::min(prec(), o.prec());
    c_.resize(static_cast<size_t>(p) + 1);
    for (int n = 0; n <= p; ++n) c_[n] += o.c_[n];
    return *this;
}

QSeries& QSeries::operator-=(const QSeries& o) {
    int p = std::min(prec(), o.prec());
    c_.resize(static_cast<size_t>(p) + 1);
    for (int n = 0; n <= p; ++n) c_[n] -= o.c_[n];
    return *this;
}

QSeries QSeries::operator*(const QSeries& o) const {
    int p = std::min(prec(), o.prec());
    QSeries r(p);
    mpq_class t;
    for (int i = 0; i <= p; ++i) {
        if (c_[i] == 0) continue;
        for (int j = 0; i + j <= p; ++j) {
            if (o.c_[j] == 0) continue;
            t = c_[i] * o.c_[j];
            r.c_[i + j] += t;
        }
    }
    return r;
}

QSeries& QSeries::operator*=(const mpq_class& s) {
    for (auto& x : c_) x *= s;
    return *this;
}

QSeries QSeries::pow(unsigned e) const {
    QSeries acc(prec());
    acc.c_[0] = 1;
    QSeries base = *this;
    while (e > 0) {
        if (e & 1u) acc = acc * base;
        e >>= 1u;
        if (e > 0) base = base * base;
    }
    return acc;
}

QSeries QSeries::truncated(int new_prec) const {
    if (new_prec > prec())
        throw ConfigError("QSeries::truncated: cannot extend precision");
    QSeries r(new_prec);
    std::copy(c_.begin(), c_.begin() + new_prec + 1, r.c_.begin());
    return r;
}

bool QSeries::is_zero() const {
    for (const auto& x : c_)
        if (x != 0) return false;
    return true;
}

mpz_class sigma_pow(std::uint64_t n, unsigned m) {
    if (n == 0) throw ConfigError("sigma_pow: n must be positive");
    mpz_class result(1);
    std::uint64_t rest = n;
    for (std::uint64_t p = 2; p * p <= rest; p += (p == 2) ? 1 : 2) {
        if (rest % p != 0) continue;
        mpz_class pm, pe(1);
        mpz_ui_pow_ui(pm.get_mpz_t(), p, m);
        mpz_class geo(1);
        while (rest % p == 0) {
            rest /= p;
            pe *= pm;
            geo += pe;
        }
        result *= geo;
    }
    if (rest > 1) {
        mpz_class pm, geo;
        mpz_ui_pow_ui(pm.get_mpz_t(), rest, m);
        geo = 1 + pm;
        result *= geo;
    }
    return result;
}

QSeries eisenstein_q(int k, int prec) {
    if (k != 4 && k != 6)
        throw ConfigError("eisenstein_q: only E4 and E6 are provided");
    QSeries e(prec);
    e.at(0) = 1;
    const int coeff = (k == 4) ? 240 : -504;
    const unsigned m = static_cast<unsigned>(k - 1);
    for (int n = 1; n <= prec; ++n)
        e.at(n) = mpq_class(coeff * sigma_pow(static_cast<std::uint64_t>(n), m));
    return e;
}

QSeries delta_q(int prec) {
    QSeries e4 = eisenstein_q(4, prec);
    QSeries e6 = eisenstein_q(6, prec);
    QSeries num = e4.pow(3) - e6 * e6;
    num *= mpq_class(1, 1728);
    return num;
}

} // namespace cuspv
