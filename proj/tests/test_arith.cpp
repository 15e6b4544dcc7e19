#include <doctest.h>

#include "cuspv/arith.hpp"

#include <cmath>
#include <cstdint>

using namespace cuspv;

TEST_CASE("factorize handles units, primes, and prime powers") {
    CHECK(factorize(1).empty());
    auto f12 = factorize(12);
    REQUIRE(f12.size() == 2);
    CHECK(f12[0] == std::pair<uint64_t, unsigned>{2, 2});
    CHECK(f12[1] == std::pair<uint64_t, unsigned>{3, 1});
    auto f97 = factorize(97);
    REQUIRE(f97.size() == 1);
    CHECK(f97[0] == std::pair<uint64_t, unsigned>{97, 1});
    auto f600 = factorize(600);
    REQUIRE(f600.size() == 3);
    CHECK(f600[0] == std::pair<uint64_t, unsigned>{2, 3});
    CHECK(f600[1] == std::pair<uint64_t, unsigned>{3, 1});
    CHECK(f600[2] == std::pair<uint64_t, unsigned>{5, 2});
}

TEST_CASE("divisors come back sorted and complete") {
    CHECK(divisors(1) == std::vector<uint64_t>{1});
    CHECK(divisors(12) == std::vector<uint64_t>{1, 2, 3, 4, 6, 12});
    CHECK(divisors(49) == std::vector<uint64_t>{1, 7, 49});
}

TEST_CASE("sigma1 and the tau1 alias") {
    CHECK(sigma1(1) == 1);
    CHECK(sigma1(4) == 7);
    CHECK(sigma1(6) == 12);
    CHECK(sigma1(97) == 98);
    for (uint64_t n : {1ULL, 6ULL, 30ULL, 97ULL}) CHECK(tau1(n) == sigma1(n));
}

TEST_CASE("gcd_u64") {
    CHECK(gcd_u64(0, 5) == 5);
    CHECK(gcd_u64(5, 0) == 5);
    CHECK(gcd_u64(12, 18) == 6);
    CHECK(gcd_u64(35, 64) == 1);
}

TEST_CASE("Kloosterman sums at small moduli match hand evaluation") {
    // c = 1: empty congruence condition, S = 1.
    CHECK(kloosterman(1, 1, 1) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(kloosterman(3, 7, 1) == doctest::Approx(1.0).epsilon(1e-14));
    // c = 2: x = 1 only, e((m + n)/2).
    CHECK(kloosterman(1, 1, 2) == doctest::Approx(1.0).epsilon(1e-12));
    // c = 3: e(2/3) + e(4/3) = -1.
    CHECK(kloosterman(1, 1, 3) == doctest::Approx(-1.0).epsilon(1e-12));
    // c = 4: x in {1, 3}, both self-inverse: e(2/4) + e(6/4) = -2.
    CHECK(kloosterman(1, 1, 4) == doctest::Approx(-2.0).epsilon(1e-12));
}

TEST_CASE("Kloosterman symmetry S(m,n;c) = S(n,m;c)") {
    for (uint64_t c : {5ULL, 12ULL, 49ULL, 100ULL, 101ULL}) {
        for (auto [m, n] : {std::pair<int64_t, int64_t>{1, 2}, {3, 5}, {2, 7}}) {
            CHECK(kloosterman(m, n, c) ==
                  doctest::Approx(kloosterman(n, m, c)).epsilon(1e-10));
        }
    }
}

TEST_CASE("Kloosterman sums are real and respect the Weil bound") {
    for (uint64_t c = 1; c <= 500; c += 7) {
        double s = kloosterman(1, 1, c);
        double bound = static_cast<double>(divisors(c).size()) * std::sqrt(double(c));
        CHECK(std::isfinite(s));
        CHECK(std::abs(s) <= bound + 1e-9);
    }
}

TEST_CASE("periodic Bernoulli factor b2") {
    // b2(y) = B2({y})/2 with B2(t) = t^2 - t + 1/6.
    CHECK(b2(0.0) == doctest::Approx(1.0 / 12.0).epsilon(1e-15));
    CHECK(b2(0.5) == doctest::Approx(-1.0 / 24.0).epsilon(1e-15));
    for (double y : {0.125, 0.3, 0.77}) {
        CHECK(b2(y) == doctest::Approx(b2(y + 1.0)).epsilon(1e-13));
        CHECK(b2(y) == doctest::Approx(b2(y + 5.0)).epsilon(1e-13));
        // B2 is symmetric about t = 1/2.
        CHECK(b2(y) == doctest::Approx(b2(1.0 - y)).epsilon(1e-13));
    }
    // mean zero over one period
    double acc = 0.0;
    const int m = 200000;
    for (int i = 0; i < m; ++i) acc += b2((i + 0.5) / m);
    CHECK(std::abs(acc / m) < 1e-10);
}

TEST_CASE("primes_upto") {
    CHECK(primes_upto(1).empty());
    CHECK(primes_upto(2) == std::vector<uint64_t>{2});
    CHECK(primes_upto(20) == std::vector<uint64_t>{2, 3, 5, 7, 11, 13, 17, 19});
    CHECK(primes_upto(100).size() == 25);
}
