#include "cuspv/quadrature.hpp"

#include "cuspv/errors.hpp"

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include <cmath>
#include <string>

namespace cuspv {

namespace {

[[noreturn]] void fail(const char* what, double err, double tol) {
    throw NumericError(std::string("integrate: ") + what + ": error estimate " +
                       std::to_string(err) + " exceeds tolerance " + std::to_string(tol));
}

} // namespace

QuadResult integrate(const std::function<double(double)>& f, double a, double b,
                     const QuadratureSpec& spec) {
    if (!(a < b)) {
        if (a == b) return {0.0, 0.0};
        throw ConfigError("integrate: interval endpoints out of order");
    }

    double value = 0, err = 0;
    const bool semi_infinite = std::isinf(b);

    QuadScheme scheme = spec.scheme;
    if (semi_infinite && scheme == QuadScheme::tanh_sinh) scheme = QuadScheme::exp_sinh;
    if (!semi_infinite && scheme == QuadScheme::exp_sinh) scheme = QuadScheme::adaptive_gk;

    switch (scheme) {
    case QuadScheme::adaptive_gk: {
        value = boost::math::quadrature::gauss_kronrod<double, 15>::integrate(
            f, a, b, spec.max_depth, spec.rel_tol, &err);
        break;
    }
    case QuadScheme::tanh_sinh: {
        boost::math::quadrature::tanh_sinh<double> integ(spec.max_depth);
        double l1 = 0;
        std::size_t levels = 0;
        value = integ.integrate(f, a, b, spec.rel_tol, &err, &l1, &levels);
        err *= std::max(std::abs(value), l1);
        break;
    }
    case QuadScheme::exp_sinh: {
        boost::math::quadrature::exp_sinh<double> integ(spec.max_depth);
        double l1 = 0;
        std::size_t levels = 0;
        value = integ.integrate(f, a, b, spec.rel_tol, &err, &l1, &levels);
        err *= std::max(std::abs(value), l1);
        break;
    }
    }

    const double tol = std::max(spec.abs_tol, spec.rel_tol * std::abs(value));
    if (!(err <= tol) || std::isnan(value))
        fail(semi_infinite ? "semi-infinite" : "finite interval", err, tol);
    return {value, err};
}

double gauss_legendre(const std::function<double(double)>& f, double a, double b, int order) {
    using boost::math::quadrature::gauss;
    switch (order) {
    case 4:  return gauss<double, 4>::integrate(f, a, b);
    case 6:  return gauss<double, 6>::integrate(f, a, b);
    case 8:  return gauss<double, 8>::integrate(f, a, b);
    case 12: return gauss<double, 12>::integrate(f, a, b);
    case 16: return gauss<double, 16>::integrate(f, a, b);
    case 24: return gauss<double, 24>::integrate(f, a, b);
    case 32: return gauss<double, 32>::integrate(f, a, b);
    case 64: return gauss<double, 64>::integrate(f, a, b);
    default:
        throw ConfigError("gauss_legendre: unsupported order " + std::to_string(order));
    }
}

} // namespace cuspv
