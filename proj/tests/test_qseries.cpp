#include <doctest.h>

#include "cuspv/errors.hpp"
#include "cuspv/qseries.hpp"

#include <gmpxx.h>

#include <vector>

using namespace cuspv;

TEST_CASE("Eisenstein expansions at low index") {
    QSeries e4 = eisenstein_q(4, 10);
    CHECK(e4[0] == 1);
    CHECK(e4[1] == 240);
    CHECK(e4[2] == 2160);        // 240 sigma_3(2)
    CHECK(e4[3] == 6720);        // 240 sigma_3(3)
    QSeries e6 = eisenstein_q(6, 10);
    CHECK(e6[0] == 1);
    CHECK(e6[1] == -504);
    CHECK(e6[2] == -16632);      // -504 sigma_5(2)
}

TEST_CASE("delta_q matches the small tau values") {
    QSeries d = delta_q(8);
    CHECK(d[0] == 0);
    CHECK(d[1] == 1);
    CHECK(d[2] == -24);
    CHECK(d[3] == 252);
    CHECK(d[4] == -1472);
    CHECK(d[5] == 4830);
    CHECK(d[6] == -6048);
    // multiplicativity at coprime 2*3
    CHECK(d[6] == d[2] * d[3]);
}

TEST_CASE("discriminant identity E4^3 - E6^2 = 1728 Delta") {
    const int prec = 50;
    QSeries lhs = eisenstein_q(4, prec).pow(3) - eisenstein_q(6, prec).pow(2);
    QSeries d = delta_q(prec);
    for (int n = 0; n <= prec; ++n) CHECK(lhs[n] == 1728 * d[n]);
}

TEST_CASE("delta_q against the eta product, exact to depth 100") {
    // q prod_{m>=1} (1 - q^m)^24, computed here by repeated in-place
    // multiplication with the sparse binomials.
    const int N = 100;
    std::vector<mpz_class> p(static_cast<size_t>(N), 0);
    p[0] = 1;
    for (int m = 1; m < N; ++m)
        for (int e = 0; e < 24; ++e)
            for (int i = N - 1; i >= m; --i) p[size_t(i)] -= p[size_t(i - m)];
    QSeries d = delta_q(N);
    for (int n = 1; n <= N; ++n) {
        CHECK(d[n].get_den() == 1);
        CHECK(d[n].get_num() == p[size_t(n - 1)]);
    }
}

TEST_CASE("sigma_pow") {
    CHECK(sigma_pow(1, 3) == 1);
    CHECK(sigma_pow(6, 3) == 252);   // 1 + 8 + 27 + 216
    CHECK(sigma_pow(4, 5) == 1057);  // 1 + 32 + 1024
}

TEST_CASE("QSeries arithmetic and truncation semantics") {
    QSeries a(5);
    a.at(0) = 1;
    a.at(1) = 1;
    QSeries b(5);
    b.at(0) = 1;
    b.at(1) = -1;
    QSeries prod = a * b;
    CHECK(prod.prec() == 5);
    CHECK(prod[0] == 1);
    CHECK(prod[1] == 0);
    CHECK(prod[2] == -1);
    CHECK(prod[3] == 0);

    QSeries t = prod.truncated(2);
    CHECK(t.prec() == 2);
    CHECK(t[2] == -1);

    QSeries z(4);
    CHECK(z.is_zero());
    CHECK_FALSE(a.is_zero());

    a *= mpq_class(3, 2);
    CHECK(a[1] == mpq_class(3, 2));

    CHECK(eisenstein_q(4, 6).pow(0)[0] == 1);
    CHECK_THROWS_AS(eisenstein_q(5, 4), ConfigError);
}
