#include <doctest.h>

#include "cuspv/errors.hpp"
#include "cuspv/maass.hpp"

#include "shared.hpp"

#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

using namespace cuspv;

namespace {

std::string write_temp(const std::string& name, const std::vector<std::string>& lines) {
    std::string path = name;
    std::ofstream out(path);
    for (const auto& l : lines) out << l << "\n";
    return path;
}

std::vector<std::string> valid_stub() {
    return {
        "cuspvariance-maass v1",
        "t 9.533695261353557",
        "parity odd",
        "1 1.0",
        "2 -1.068333551102932",
        "3 -0.456197355378967",
        "4 0.141336562796333",
    };
}

} // namespace

TEST_CASE("bundled eigenvalue tables parse and validate") {
    auto even = parse_maass_file(testshared::data_dir() + "/maass_even.txt");
    CHECK(even.t == doctest::Approx(13.779751351891059).epsilon(1e-15));
    CHECK(even.even);
    CHECK(even.n_max() == 64);
    CHECK(even.lambda[1] == 1.0);
    CHECK(even.source.find("maass_even.txt") != std::string::npos);

    auto odd = parse_maass_file(testshared::data_dir() + "/maass_odd.txt");
    CHECK(odd.t == doctest::Approx(9.533695261353557).epsilon(1e-15));
    CHECK_FALSE(odd.even);
    CHECK(odd.n_max() == 64);
}

TEST_CASE("bundled tables satisfy the Hecke relations they certify") {
    auto even = parse_maass_file(testshared::data_dir() + "/maass_even.txt");
    // lambda(2)lambda(3) = lambda(6); lambda(2)^2 = lambda(4) + 1
    CHECK(even.lambda[2] * even.lambda[3] == doctest::Approx(even.lambda[6]).epsilon(1e-12));
    CHECK(even.lambda[2] * even.lambda[2] - 1.0 == doctest::Approx(even.lambda[4]).epsilon(1e-12));
}

TEST_CASE("rejects a wrong magic line") {
    auto lines = valid_stub();
    lines[0] = "maass-table v2";
    auto p = write_temp("maass_bad_magic.txt", lines);
    CHECK_THROWS_AS(parse_maass_file(p), DataError);
    std::remove(p.c_str());
}

TEST_CASE("rejects corrupted multiplicativity with the offending pair named") {
    // start from the real file and poison lambda(6)
    std::ifstream in(testshared::data_dir() + "/maass_even.txt");
    std::vector<std::string> lines;
    std::string l;
    while (std::getline(in, l)) lines.push_back(l);
    for (auto& line : lines)
        if (line.rfind("6 ", 0) == 0) line = "6 0.5";
    auto p = write_temp("maass_bad_hecke.txt", lines);
    try {
        parse_maass_file(p);
        CHECK(false);
    } catch (const DataError& e) {
        std::string msg = e.what();
        CHECK(msg.find("Hecke") != std::string::npos);
        CHECK(msg.find("(2,3)") != std::string::npos);
    }
    std::remove(p.c_str());
}

TEST_CASE("rejects non-contiguous indices") {
    auto p = write_temp("maass_gap.txt", {
        "cuspvariance-maass v1", "t 9.5", "parity odd",
        "1 1.0", "3 0.5",
    });
    CHECK_THROWS_AS(parse_maass_file(p), DataError);
    std::remove(p.c_str());
}

TEST_CASE("rejects an empty eigenvalue list") {
    auto p = write_temp("maass_empty.txt", {"cuspvariance-maass v1", "t 9.5", "parity even"});
    CHECK_THROWS_AS(parse_maass_file(p), DataError);
    std::remove(p.c_str());
}

TEST_CASE("rejects trailing garbage on eigenvalue lines") {
    auto p = write_temp("maass_trail.txt", {
        "cuspvariance-maass v1", "t 9.5", "parity odd",
        "1 1.0 extra",
    });
    CHECK_THROWS_AS(parse_maass_file(p), DataError);
    std::remove(p.c_str());
}

TEST_CASE("rejects nonpositive spectral parameter and bad normalization") {
    auto p1 = write_temp("maass_badt.txt", {
        "cuspvariance-maass v1", "t -2.0", "parity odd", "1 1.0",
    });
    CHECK_THROWS_AS(parse_maass_file(p1), DataError);
    std::remove(p1.c_str());
    auto p2 = write_temp("maass_badnorm.txt", {
        "cuspvariance-maass v1", "t 9.5", "parity odd", "1 0.9",
    });
    CHECK_THROWS_AS(parse_maass_file(p2), DataError);
    std::remove(p2.c_str());
}

TEST_CASE("missing file raises DataError") {
    CHECK_THROWS_AS(parse_maass_file("no_such_maass_file.txt"), DataError);
}
