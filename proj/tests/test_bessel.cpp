#include <doctest.h>

#include "cuspv/bessel.hpp"

#include <cmath>
#include <initializer_list>
#include <utility>

using namespace cuspv;

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TEST_CASE("J-Bessel reference values") {
    // reference values computed independently at 25 digits
    CHECK(bessel_j(0.0, 0.0) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(bessel_j(1.0, 0.0) == 0.0);
    CHECK(bessel_j(0.0, 1.0) == doctest::Approx(0.7651976865579665).epsilon(1e-12));
    CHECK(bessel_j(1.0, 1.0) == doctest::Approx(0.4400505857449335).epsilon(1e-12));
    CHECK(bessel_j(2.0, 3.5) == doctest::Approx(0.4586291841943075).epsilon(1e-12));
    CHECK(bessel_j(5.0, 9.25) == doctest::Approx(-0.1113566172619068).epsilon(1e-11));
    CHECK(bessel_j(19.0, 12.5) == doctest::Approx(0.0013910819970172212).epsilon(1e-10));
    CHECK(bessel_j(0.0, 60.0) == doctest::Approx(-0.09147180408906187).epsilon(1e-10));
    CHECK(bessel_j(28.5, 200.0) == doctest::Approx(0.046826422262383254).epsilon(1e-9));
    CHECK(bessel_j(3.0, 0.25) == doctest::Approx(3.242512526759081e-4).epsilon(1e-11));
    CHECK(bessel_j(11.0, 1.0) == doctest::Approx(1.1980067463031371e-11).epsilon(1e-9));
}

TEST_CASE("half-integer order reduces to elementary functions") {
    // J_{1/2}(x) = sqrt(2/(pi x)) sin x
    for (double x : {0.5, 2.0, 7.0, 31.0}) {
        double ref = std::sqrt(2.0 / (kPi * x)) * std::sin(x);
        CHECK(bessel_j(0.5, x) == doctest::Approx(ref).epsilon(1e-10));
    }
}

TEST_CASE("three-term recurrence J_{v-1} + J_{v+1} = (2v/x) J_v") {
    // non-integer orders stay inside the series region (x <= 10)
    for (auto [nu, x] : {std::pair<double, double>{3.0, 7.3}, {10.0, 40.0}, {2.0, 0.7}, {6.5, 8.0}}) {
        double lhs = bessel_j(nu - 1.0, x) + bessel_j(nu + 1.0, x);
        double rhs = 2.0 * nu / x * bessel_j(nu, x);
        double scale = std::abs(bessel_j(nu, x)) + std::abs(bessel_j(nu - 1.0, x)) + 1e-300;
        CHECK(std::abs(lhs - rhs) <= 1e-9 * scale + 1e-15);
    }
}

TEST_CASE("small-argument decay below the transition region") {
    // |J_v(x)| <= (x/2)^v / v! ; at v = 11, x = 1 that is about 1.2e-11
    double v = bessel_j(11.0, 1.0);
    CHECK(std::abs(v) <= 1.3e-11);
    CHECK(v > 0.0);
}

TEST_CASE("K-Bessel with imaginary order, reference values") {
    CHECK(bessel_k_imag(0.0, 1.0) == doctest::Approx(0.4210244382407083).epsilon(1e-12));
    CHECK(bessel_k_imag(1.0, 1.0) == doctest::Approx(0.2894280370259921).epsilon(1e-11));
    CHECK(bessel_k_imag(5.0, 2.0) == doctest::Approx(-3.4633788080657143e-4).epsilon(1e-9));
    CHECK(bessel_k_imag(2.5, 0.5) == doctest::Approx(-0.024450931569379752).epsilon(1e-10));
    CHECK(bessel_k_imag(9.533695261353557, 2.0 * kPi) ==
          doctest::Approx(6.827942758947837e-8).epsilon(1e-8));
    CHECK(bessel_k_imag(13.779751351891059, 3.0) ==
          doctest::Approx(-2.45486471281697e-10).epsilon(1e-7));
    CHECK(bessel_k_imag(1.0, 40.0) == doctest::Approx(8.289859745737483e-19).epsilon(1e-8));
}

TEST_CASE("K-Bessel is even in the order parameter") {
    for (double t : {0.7, 3.0, 9.5}) {
        for (double x : {0.8, 2.0, 6.0}) {
            CHECK(bessel_k_imag(t, x) == doctest::Approx(bessel_k_imag(-t, x)).epsilon(1e-13));
        }
    }
}

TEST_CASE("K-Bessel cutoff beyond x = 50 is exact zero") {
    CHECK(bessel_k_imag(1.0, 50.001) == 0.0);
    CHECK(bessel_k_imag(13.8, 100.0) == 0.0);
    CHECK(bessel_k_imag(0.0, 49.9) != 0.0);
}

TEST_CASE("log_bessel_j_bound dominates |J| on a sample battery") {
    // integer orders cover every regime; the non-integer order skips the
    // unsupported transitional window (10 < x < nu^2/2 + 10)
    for (auto [nu, x] : {std::pair<double, double>{10.0, 1.0}, {10.0, 5.0}, {10.0, 10.0},
                         {10.0, 20.0}, {10.0, 40.0}, {20.5, 1.0}, {20.5, 5.0}, {20.5, 9.5},
                         {20.5, 230.0}, {41.0, 1.0}, {41.0, 5.0}, {41.0, 20.5}, {41.0, 41.0},
                         {41.0, 82.0}}) {
        double j = bessel_j(nu, x);
        if (j == 0.0) continue;
        CHECK(log_bessel_j_bound(nu, x) >= std::log(std::abs(j)) - 1e-9);
    }
}
