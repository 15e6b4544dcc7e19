#pragma once

// Ingestion of externally computed Maass cusp form data.  This library
// never solves for Maass forms; it reads spectral parameters and Hecke
// eigenvalues from files of the form
//
//   cuspvariance-maass v1
//   t <decimal>
//   parity even|odd
//   1 1.0
//   2 <lambda_2>
//   ...
//
// with n ascending from 1, and validates multiplicativity before use:
// |lambda(m) lambda(n) - sum_{d|(m,n)} lambda(mn/d^2)| < 1e-6 for all
// m, n <= 10 whose required entries are present.

#include <string>
#include <vector>

namespace cuspv {

struct MaassFormData {
    double t = 0;                  // spectral parameter, s = 1/2 + i t
    bool even = true;
    std::vector<double> lambda;    // [0] unused; lambda[1] = 1
    std::string source;            // provenance label (file path)

    int n_max() const { return static_cast<int>(lambda.size()) - 1; }
};

// Throws DataError naming the offending line or (m, n) pair.
MaassFormData parse_maass_file(const std::string& path);

} // namespace cuspv
