#include "cuspv/arith.hpp"

#include "cuspv/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace cuspv {

std::vector<std::pair<uint64_t, unsigned>> factorize(uint64_t n) {
    if (n == 0) throw ConfigError("factorize: n must be positive");
    std::vector<std::pair<uint64_t, unsigned>> f;
    for (uint64_t p = 2; p * p <= n; p += (p == 2) ? 1 : 2) {
        if (n % p != 0) continue;
        unsigned e = 0;
        while (n % p == 0) { n /= p; ++e; }
        f.emplace_back(p, e);
    }
    if (n > 1) f.emplace_back(n, 1u);
    return f;
}

std::vector<uint64_t> divisors(uint64_t n) {
    auto f = factorize(n);
    std::vector<uint64_t> d{1};
    for (auto [p, e] : f) {
        size_t base = d.size();
        uint64_t pk = 1;
        for (unsigned j = 1; j <= e; ++j) {
            pk *= p;
            for (size_t i = 0; i < base; ++i) d.push_back(d[i] * pk);
        }
    }
    std::sort(d.begin(), d.end());
    return d;
}

uint64_t sigma1(uint64_t n) {
    uint64_t s = 1;
    for (auto [p, e] : factorize(n)) {
        uint64_t pk = 1, geo = 1;
        for (unsigned j = 1; j <= e; ++j) { pk *= p; geo += pk; }
        s *= geo;
    }
    return s;
}

uint64_t gcd_u64(uint64_t a, uint64_t b) {
    while (b != 0) { uint64_t t = a % b; a = b; b = t; }
    return a;
}

namespace {

// a^{-1} mod c for gcd(a, c) = 1, via the extended Euclidean algorithm.
int64_t inv_mod(int64_t a, int64_t c) {
    int64_t r0 = c, r1 = a % c, s0 = 0, s1 = 1;
    while (r1 != 0) {
        int64_t q = r0 / r1;
        int64_t r2 = r0 - q * r1; r0 = r1; r1 = r2;
        int64_t s2 = s0 - q * s1; s0 = s1; s1 = s2;
    }
    return ((s0 % c) + c) % c;
}

} // namespace

double kloosterman(int64_t m, int64_t n, uint64_t c) {
    if (c == 0) throw ConfigError("kloosterman: c must be positive");
    if (c == 1) return 1.0;
    const auto ci = static_cast<int64_t>(c);
    const int64_t mr = ((m % ci) + ci) % ci;
    const int64_t nr = ((n % ci) + ci) % ci;
    long double acc = 0.0L;
    const long double w = 2.0L * std::numbers::pi_v<long double> / static_cast<long double>(c);
    for (int64_t a = 1; a < ci; ++a) {
        if (gcd_u64(static_cast<uint64_t>(a), c) != 1) continue;
        const int64_t ainv = inv_mod(a, ci);
        // exponent (m a + n a^{-1}) mod c, kept integral so the angle stays in [0, 2 pi)
        const int64_t e =
            (static_cast<int64_t>((static_cast<unsigned __int128>(mr) * a +
                                   static_cast<unsigned __int128>(nr) * ainv) %
                                  static_cast<unsigned __int128>(c)));
        acc += std::cos(w * static_cast<long double>(e));
    }
    return static_cast<double>(acc);
}

double b2(double y) {
    double t = y - std::floor(y);
    return 0.5 * (t * t - t + 1.0 / 6.0);
}

std::vector<uint64_t> primes_upto(uint64_t n) {
    std::vector<uint64_t> out;
    if (n < 2) return out;
    std::vector<bool> comp(n + 1, false);
    for (uint64_t p = 2; p <= n; ++p) {
        if (comp[p]) continue;
        out.push_back(p);
        for (uint64_t q = p * p; q <= n; q += p) comp[q] = true;
    }
    return out;
}

} // namespace cuspv
