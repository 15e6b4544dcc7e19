#pragma once

// Smooth compactly supported test weights.
//
// The canonical family is the bump W(y) = exp(-1/((y-a)(A-y))) on (a, A),
// extended by zero elsewhere; first and second derivatives are closed
// form, which the Euler-Maclaurin transform Wtilde(y) = y^2 W'' + 2 y W'
// relies on.  A polynomial-modulated variant (c0 + c1 y) * bump supplies
// mean-zero weights for the Eisenstein-pair functionals.  Tabulated
// weights exist so ingestion paths can be exercised; they carry no
// derivatives and are rejected by weight_tilde.

#include <memory>
#include <string>
#include <vector>

namespace cuspv {

enum class WeightFamily { bump, poly_bump, table, derived };

class TestWeight {
public:
    static TestWeight bump(double a, double A);
    static TestWeight poly_bump(double a, double A, double c0, double c1);
    static TestWeight table(std::vector<double> xs, std::vector<double> vs);

    double operator()(double y) const;
    double d1(double y) const;
    double d2(double y) const;
    bool has_derivatives() const;

    double support_lo() const;
    double support_hi() const;
    WeightFamily family() const;
    std::string describe() const;

    struct Impl;
    explicit TestWeight(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}

private:
    std::shared_ptr<const Impl> impl_;
};

// Wtilde(y) = y^2 V''(y) + 2 y V'(y) = (y^2 V'(y))', same support as V.
// Throws DataError for weights without two derivatives.
TestWeight weight_tilde(const TestWeight& V);

// (c0 + c1 y) * bump on (a, A) with integral of V(y) y^{-2} dy equal to
// zero; the coefficients are fixed by two moment quadratures.
TestWeight mean_zero_bump(double a, double A);

} // namespace cuspv
