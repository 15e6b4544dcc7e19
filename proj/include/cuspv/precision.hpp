#pragma once

// High-precision scalar used for eigenvalue roots and normalized Hecke
// eigenvalues.  384 bits of mantissa (~115 decimal digits) leaves a wide
// margin over the 30 significant digits the cache format carries and over
// the 1e-20 relative tolerance of the Hecke-relation self checks.

#include <gmpxx.h>
#include <string>

namespace cuspv {

inline constexpr int kRealBits = 384;

namespace detail {
struct MpfPrecInit {
    MpfPrecInit() { mpf_set_default_prec(kRealBits); }
};
inline MpfPrecInit mpf_prec_init_once;
} // namespace detail

using Real = mpf_class;

// 30 significant digits, normalized scientific form, e.g. "-5.303300858899106433005494128839e-1".
std::string to_decimal30(const Real& x);

// Parse a decimal string (as produced by to_decimal30, but any mpf-readable
// decimal is accepted) at full working precision.
Real parse_decimal(const std::string& s);

// Round-trip x through its 30-digit decimal form.  Values stored in
// eigenforms are snapped this way at construction so a value computed
// fresh and a value read back from a cache file are bit-identical, which
// keeps downstream CSV output byte-stable across cache states.
Real snap30(const Real& x);

} // namespace cuspv
