#include <doctest.h>

#include "cuspv/errors.hpp"
#include "cuspv/sym2.hpp"

#include "shared.hpp"

#include <cmath>

using namespace cuspv;

TEST_CASE("norm-route symmetric square value for the weight 12 form") {
    // frozen reference: L(1, sym^2) for the weight 12 form, computed
    // independently from the Petersson norm of the discriminant form
    auto b = testshared::cache().get(12, 2600);
    double v = l_sym2_norm(b->forms[0]);
    CHECK(v == doctest::Approx(0.631792945727883).epsilon(1e-9));
}

TEST_CASE("Petersson norm of the weight 12 form matches the literature value") {
    auto b = testshared::cache().get(12, 2600);
    double n2 = std::exp(log_petersson_norm_sq(b->forms[0]));
    CHECK(n2 == doctest::Approx(1.0353620568043209e-06).epsilon(1e-12));
}

TEST_CASE("sym2_norm_nmax covers the planned depths and grows with k") {
    CHECK(sym2_norm_nmax(12) == 52);
    CHECK(sym2_norm_nmax(40) == 56);
    CHECK(sym2_norm_nmax(50) == 57);
    CHECK(sym2_norm_nmax(128) == 68);
    CHECK(sym2_norm_nmax(200) == 78);
    CHECK(sym2_norm_nmax(256) == 86);
    for (int k = 14; k <= 254; k += 2) CHECK(sym2_norm_nmax(k + 2) >= sym2_norm_nmax(k));
}

TEST_CASE("norm route only needs the certified depth") {
    auto deep = testshared::cache().get(12, 2600);
    auto shallow = testshared::cache().get(12, sym2_norm_nmax(12));
    CHECK(l_sym2_norm(shallow->forms[0]) ==
          doctest::Approx(l_sym2_norm(deep->forms[0])).epsilon(1e-12));
}

TEST_CASE("positivity across a small weight sample") {
    for (int k : {12, 24, 50}) {
        auto b = testshared::cache().get(k, sym2_norm_nmax(k));
        for (const auto& f : b->forms) CHECK(l_sym2_norm(f) > 0.0);
    }
}

TEST_CASE("smoothed series stabilizes at loose tolerance with the measured gap law") {
    auto b = testshared::cache().get(12, 2600);
    auto sv = l_sym2_at_1(b->forms[0], 0.05);
    CHECK(sv.stabilized);
    CHECK(sv.gap <= 0.05);
    // the cutoff error decays like c/T with c of order 1
    CHECK(sv.gap >= 0.05 / sv.T);
    CHECK(sv.gap <= 5.0 / sv.T);
    CHECK(std::abs(sv.value - 0.631792945727883) <= 3.0 * std::max(sv.gap, 1.0 / sv.T));
    CHECK(sv.value > 0.0);
}

TEST_CASE("smoothed series refuses tolerances its table cannot certify") {
    auto b = testshared::cache().get(12, 2600);
    CHECK_THROWS_AS(l_sym2_at_1(b->forms[0], 1e-6), NumericError);
}
