#include "cuspv/weights.hpp"

#include "cuspv/errors.hpp"
#include "cuspv/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

namespace cuspv {

struct TestWeight::Impl {
    WeightFamily family = WeightFamily::bump;
    double lo = 0, hi = 0;
    bool has_d = false;
    std::string desc;
    std::function<double(double)> f0, f1, f2;
};

namespace {

// exp(-1/P) with P = (y-a)(A-y) and its first two derivatives.  Near the
// support edges P -> 0+ and the exponential crushes every inverse power of
// P, so everything is clamped to exact zero once -1/P underflows.
struct BumpCore {
    double a, A;
    double val(double y) const {
        if (y <= a || y >= A) return 0.0;
        double P = (y - a) * (A - y);
        double u = -1.0 / P;
        if (u < -700.0) return 0.0;
        return std::exp(u);
    }
    double d1(double y) const {
        if (y <= a || y >= A) return 0.0;
        double P = (y - a) * (A - y);
        double u = -1.0 / P;
        if (u < -690.0) return 0.0;
        double Pp = (A + a) - 2.0 * y;
        return std::exp(u) * Pp / (P * P);
    }
    double d2(double y) const {
        if (y <= a || y >= A) return 0.0;
        double P = (y - a) * (A - y);
        double u = -1.0 / P;
        if (u < -680.0) return 0.0;
        double Pp = (A + a) - 2.0 * y;
        // u' = P'/P^2, u'' = P''/P^2 - 2 P'^2/P^3 with P'' = -2
        double up = Pp / (P * P);
        double upp = -2.0 / (P * P) - 2.0 * Pp * Pp / (P * P * P);
        return std::exp(u) * (upp + up * up);
    }
};

std::shared_ptr<const TestWeight::Impl> make_impl(TestWeight::Impl v) {
    return std::make_shared<const TestWeight::Impl>(std::move(v));
}

} // namespace

TestWeight TestWeight::bump(double a, double A) {
    if (!(0.0 < a && a < A))
        throw ConfigError("TestWeight::bump: requires 0 < a < A");
    BumpCore core{a, A};
    TestWeight::Impl v;
    v.family = WeightFamily::bump;
    v.lo = a; v.hi = A; v.has_d = true;
    std::ostringstream os;
    os << "bump[" << a << "," << A << "]";
    v.desc = os.str();
    v.f0 = [core](double y) { return core.val(y); };
    v.f1 = [core](double y) { return core.d1(y); };
    v.f2 = [core](double y) { return core.d2(y); };
    return TestWeight(make_impl(std::move(v)));
}

TestWeight TestWeight::poly_bump(double a, double A, double c0, double c1) {
    if (!(0.0 < a && a < A))
        throw ConfigError("TestWeight::poly_bump: requires 0 < a < A");
    BumpCore core{a, A};
    TestWeight::Impl v;
    v.family = WeightFamily::poly_bump;
    v.lo = a; v.hi = A; v.has_d = true;
    std::ostringstream os;
    os << "poly_bump[" << a << "," << A << ";" << c0 << "," << c1 << "]";
    v.desc = os.str();
    v.f0 = [core, c0, c1](double y) { return (c0 + c1 * y) * core.val(y); };
    v.f1 = [core, c0, c1](double y) {
        return c1 * core.val(y) + (c0 + c1 * y) * core.d1(y);
    };
    v.f2 = [core, c0, c1](double y) {
        return 2.0 * c1 * core.d1(y) + (c0 + c1 * y) * core.d2(y);
    };
    return TestWeight(make_impl(std::move(v)));
}

TestWeight TestWeight::table(std::vector<double> xs, std::vector<double> vs) {
    if (xs.size() != vs.size() || xs.size() < 2)
        throw DataError("TestWeight::table: need matching abscissa/value lists of length >= 2");
    if (!std::is_sorted(xs.begin(), xs.end()))
        throw DataError("TestWeight::table: abscissae must be strictly increasing");
    for (size_t i = 1; i < xs.size(); ++i)
        if (xs[i] == xs[i - 1])
            throw DataError("TestWeight::table: abscissae must be strictly increasing");
    if (xs.front() <= 0.0)
        throw DataError("TestWeight::table: support must lie in y > 0");
    TestWeight::Impl v;
    v.family = WeightFamily::table;
    v.lo = xs.front(); v.hi = xs.back(); v.has_d = false;
    std::ostringstream os;
    os << "table[" << xs.size() << " pts," << v.lo << "," << v.hi << "]";
    v.desc = os.str();
    auto X = std::make_shared<std::vector<double>>(std::move(xs));
    auto V = std::make_shared<std::vector<double>>(std::move(vs));
    v.f0 = [X, V](double y) {
        if (y <= X->front() || y >= X->back()) return 0.0;
        auto it = std::upper_bound(X->begin(), X->end(), y);
        size_t i = static_cast<size_t>(it - X->begin());
        double t = (y - (*X)[i - 1]) / ((*X)[i] - (*X)[i - 1]);
        return (1.0 - t) * (*V)[i - 1] + t * (*V)[i];
    };
    return TestWeight(make_impl(std::move(v)));
}

double TestWeight::operator()(double y) const { return impl_->f0(y); }

double TestWeight::d1(double y) const {
    if (!impl_->has_d) throw DataError("TestWeight: derivative unavailable for " + impl_->desc);
    return impl_->f1(y);
}

double TestWeight::d2(double y) const {
    if (!impl_->has_d) throw DataError("TestWeight: derivative unavailable for " + impl_->desc);
    return impl_->f2(y);
}

bool TestWeight::has_derivatives() const { return impl_->has_d; }
double TestWeight::support_lo() const { return impl_->lo; }
double TestWeight::support_hi() const { return impl_->hi; }
WeightFamily TestWeight::family() const { return impl_->family; }
std::string TestWeight::describe() const { return impl_->desc; }

TestWeight weight_tilde(const TestWeight& V) {
    if (!V.has_derivatives())
        throw DataError("weight_tilde: weight " + V.describe() + " lacks derivatives");
    TestWeight::Impl v;
    v.family = WeightFamily::derived;
    v.lo = V.support_lo(); v.hi = V.support_hi(); v.has_d = false;
    v.desc = "tilde(" + V.describe() + ")";
    v.f0 = [V](double y) { return y * y * V.d2(y) + 2.0 * y * V.d1(y); };
    return TestWeight(make_impl(std::move(v)));
}

TestWeight mean_zero_bump(double a, double A) {
    TestWeight B = TestWeight::bump(a, A);
    // V = (c0 + c1 y) B with integral V y^{-2} = 0: take c0 = m_{-1}, c1 = -m_{-2}
    // where m_p = integral y^p B(y) dy, so c0 m_{-2} + c1 m_{-1} = 0.
    QuadratureSpec spec;
    spec.rel_tol = 1e-12;
    spec.abs_tol = 1e-15;
    double m2 = integrate([&](double y) { return B(y) / (y * y); }, a, A, spec).value;
    double m1 = integrate([&](double y) { return B(y) / y; }, a, A, spec).value;
    double s = std::max(std::abs(m1), std::abs(m2));
    if (s == 0.0)
        throw NumericError("mean_zero_bump: degenerate moment quadrature");
    return TestWeight::poly_bump(a, A, m1 / s, -m2 / s);
}

} // namespace cuspv
