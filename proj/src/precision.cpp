#include "cuspv/precision.hpp"

#include <stdexcept>

namespace cuspv {

std::string to_decimal30(const Real& x) {
    // gmp_asprintf handles mpf_t natively; %.29Fe gives one leading digit
    // plus 29 more, i.e. 30 significant digits in normalized form.
    char* buf = nullptr;
    gmp_asprintf(&buf, "%.29Fe", x.get_mpf_t());
    std::string s(buf);
    void (*freefunc)(void*, size_t) = nullptr;
    mp_get_memory_functions(nullptr, nullptr, &freefunc);
    freefunc(buf, s.size() + 1);
    return s;
}

Real parse_decimal(const std::string& s) {
    mpf_class x(0, kRealBits);
    if (x.set_str(s, 10) != 0)
        throw std::invalid_argument("parse_decimal: malformed decimal '" + s + "'");
    return x;
}

Real snap30(const Real& x) {
    return parse_decimal(to_decimal30(x));
}

} // namespace cuspv
