#include <doctest.h>

#include "cuspv/petersson.hpp"
#include "cuspv/sym2.hpp"

#include "shared.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

using namespace cuspv;

namespace {

std::vector<double> sym2_column(const HeckeBasis& b) {
    std::vector<double> L;
    for (const auto& f : b.forms) L.push_back(l_sym2_norm(f));
    return L;
}

} // namespace

TEST_CASE("geometric side collapses to the diagonal at large weight") {
    // at k = 40 the Bessel factor strangles every Kloosterman term
    auto rhs = petersson_rhs(40, 1, 1, 1e-9);
    CHECK(rhs.value == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(rhs.tail_bound <= 1e-9);
    auto off = petersson_rhs(40, 1, 2, 1e-9);
    CHECK(std::abs(off.value) <= 1e-8);
}

TEST_CASE("spectral side scales by the eigenvalue in one slot") {
    auto b = testshared::cache().get(12, 100);
    auto L = sym2_column(*b);
    double l11 = petersson_lhs(*b, L, 1, 1);
    double l21 = petersson_lhs(*b, L, 2, 1);
    CHECK(l21 == doctest::Approx(b->forms[0].lambda(2) * l11).epsilon(1e-13));
    CHECK(petersson_lhs(*b, L, 2, 3) == doctest::Approx(petersson_lhs(*b, L, 3, 2)).epsilon(1e-13));
}

TEST_CASE("the identity holds at weight 12 where the geometric side is live") {
    auto b = testshared::cache().get(12, 100);
    auto L = sym2_column(*b);
    double lhs = petersson_lhs(*b, L, 1, 1);
    auto rhs = petersson_rhs(12, 1, 1, 1e-8);
    CHECK(rhs.c_trunc > 2);  // Kloosterman terms genuinely summed
    CHECK(std::abs(lhs - rhs.value) <= 1e-6);
    double lhs23 = petersson_lhs(*b, L, 2, 3);
    auto rhs23 = petersson_rhs(12, 2, 3, 1e-8);
    CHECK(std::abs(lhs23 - rhs23.value) <= 1e-6);
}

TEST_CASE("geometric side is symmetric in (n1, n2)") {
    auto a = petersson_rhs(12, 2, 5, 1e-8);
    auto s = petersson_rhs(12, 5, 2, 1e-8);
    CHECK(a.value == doctest::Approx(s.value).epsilon(1e-13));
}

TEST_CASE("petersson_check sweeps a weight range below tolerance") {
    auto rows = petersson_check(12, 16, 2, 1e-7, testshared::cache());
    // weights 12 and 16 have forms; n1 <= n2 <= 2 gives 3 pairs each
    REQUIRE(rows.size() == 6);
    for (const auto& r : rows) {
        CHECK(r.abs_diff <= 1e-6);
        CHECK(r.abs_diff == doctest::Approx(std::abs(r.lhs - r.rhs)).epsilon(1e-12));
        CHECK(r.c_truncation >= 1);
    }
}

TEST_CASE("petersson CSV artifact") {
    auto rows = petersson_check(12, 12, 2, 1e-7, testshared::cache());
    const std::string path = "petersson_test_out.csv";
    write_petersson_csv(path, rows);
    std::ifstream in(path);
    std::string header;
    REQUIRE(std::getline(in, header));
    CHECK(header == "k,n1,n2,lhs,rhs,abs_diff,c_truncation");
    int count = 0;
    std::string line;
    while (std::getline(in, line))
        if (!line.empty()) ++count;
    CHECK(count == static_cast<int>(rows.size()));
    in.close();
    std::remove(path.c_str());
}
