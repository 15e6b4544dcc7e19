#pragma once

// Elementary arithmetic kernels: factorization by trial division,
// divisor-power sums, Kloosterman sums by direct enumeration, and the
// periodized second Bernoulli polynomial.

#include <cstdint>
#include <utility>
#include <vector>

namespace cuspv {

using std::int64_t;
using std::uint64_t;

std::vector<std::pair<uint64_t, unsigned>> factorize(uint64_t n);
std::vector<uint64_t> divisors(uint64_t n);

// sigma_1(n); tau_1 in the shifted-convolution main terms is this divisor sum.
uint64_t sigma1(uint64_t n);
inline uint64_t tau1(uint64_t n) { return sigma1(n); }

uint64_t gcd_u64(uint64_t a, uint64_t b);

// Kloosterman sum S(m, n; c) = sum_{a (c), (a,c)=1} e((m a + n a^{-1})/c).
// Real by the a <-> -a symmetry; computed as a cosine sum over units.
// S(m, n; 1) = 1 (empty product convention).
double kloosterman(int64_t m, int64_t n, uint64_t c);

// b2(y) = B2({y})/2 with B2(t) = t^2 - t + 1/6; the kernel of the
// second-order Euler-Maclaurin correction.  b2(0) = 1/12, b2(1/2) = -1/24.
double b2(double y);

// Primes up to n inclusive.
std::vector<uint64_t> primes_upto(uint64_t n);

} // namespace cuspv
