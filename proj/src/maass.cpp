// Maass form data ingestion.  The eigenvalues are produced offline (this
// library has no Maass solver); ingestion therefore distrusts the file and
// certifies the Hecke relation
//   lambda(m) lambda(n) = sum_{d | (m,n)} lambda(m n / d^2)
// for every m, n <= 10 whose right-hand entries are all present, at
// tolerance 1e-6.  A single failing pair rejects the whole file.

#include "cuspv/maass.hpp"

#include "cuspv/arith.hpp"
#include "cuspv/errors.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <string>

namespace cuspv {

namespace {

[[noreturn]] void bad_line(const std::string& path, int lineno, const std::string& what) {
    throw DataError(path + ":" + std::to_string(lineno) + ": " + what);
}

} // namespace

MaassFormData parse_maass_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open Maass data file " + path);

    MaassFormData rec;
    rec.source = path;

    std::string line;
    int lineno = 0;

    if (!std::getline(in, line)) bad_line(path, 1, "empty file, expected magic line");
    ++lineno;
    if (line != "cuspvariance-maass v1")
        bad_line(path, lineno, "bad magic, expected 'cuspvariance-maass v1', got '" + line + "'");

    if (!std::getline(in, line)) bad_line(path, 2, "missing 't <decimal>' line");
    ++lineno;
    {
        std::istringstream ss(line);
        std::string key;
        if (!(ss >> key >> rec.t) || key != "t")
            bad_line(path, lineno, "expected 't <decimal>', got '" + line + "'");
        if (!std::isfinite(rec.t) || rec.t <= 0.0)
            bad_line(path, lineno, "spectral parameter must be finite and positive");
    }

    if (!std::getline(in, line)) bad_line(path, 3, "missing 'parity even|odd' line");
    ++lineno;
    {
        std::istringstream ss(line);
        std::string key, val;
        ss >> key >> val;
        if (key != "parity" || (val != "even" && val != "odd"))
            bad_line(path, lineno, "expected 'parity even|odd', got '" + line + "'");
        rec.even = (val == "even");
    }

    rec.lambda.assign(1, 0.0);   // [0] unused
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::istringstream ss(line);
        long long n;
        double lam;
        if (!(ss >> n >> lam))
            bad_line(path, lineno, "expected 'n lambda', got '" + line + "'");
        std::string rest;
        if (ss >> rest) bad_line(path, lineno, "trailing content '" + rest + "'");
        if (n != static_cast<long long>(rec.lambda.size()))
            bad_line(path, lineno, "indices must ascend contiguously from 1, expected n=" +
                                       std::to_string(rec.lambda.size()) + ", got n=" +
                                       std::to_string(n));
        if (!std::isfinite(lam))
            bad_line(path, lineno, "eigenvalue for n=" + std::to_string(n) + " is not finite");
        rec.lambda.push_back(lam);
    }
    if (rec.n_max() < 1) throw DataError(path + ": no eigenvalue entries");
    if (std::fabs(rec.lambda[1] - 1.0) > 1e-12)
        throw DataError(path + ": lambda(1) must equal 1, got " + std::to_string(rec.lambda[1]));

    // Hecke multiplicativity certificate over the small window.
    for (std::uint64_t m = 2; m <= 10; ++m) {
        for (std::uint64_t n = m; n <= 10; ++n) {
            if (m * n > static_cast<std::uint64_t>(rec.n_max())) continue;
            double rhs = 0.0;
            for (std::uint64_t d : divisors(gcd_u64(m, n)))
                rhs += rec.lambda[m * n / (d * d)];
            double resid = std::fabs(rec.lambda[m] * rec.lambda[n] - rhs);
            if (!(resid < 1e-6))
                throw DataError(path + ": Hecke relation fails at (m,n)=(" + std::to_string(m) +
                                "," + std::to_string(n) + "), residual " + std::to_string(resid));
        }
    }
    return rec;
}

} // namespace cuspv
