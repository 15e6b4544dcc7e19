#include "cuspv/qforms.hpp"

#include "cuspv/errors.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <tuple>

namespace cuspv {

namespace {

constexpr const char* kMagic = "cuspvariance-eigencache v1";

struct RawForm {
    std::vector<std::string> lambda; // [0] unused
    std::vector<std::string> exact;
    bool has_exact = false;
};

} // namespace

void eigencache_write(const std::string& path,
                      const std::vector<std::shared_ptr<const HeckeBasis>>& bases) {
    std::ofstream out(path, std::ios::trunc);
    if (!out)
        throw DataError("eigencache_write: cannot open '" + path + "' for writing");
    out << kMagic << "\n";
    // bases are written in ascending k; rows per basis already ordered
    std::vector<std::shared_ptr<const HeckeBasis>> sorted = bases;
    std::sort(sorted.begin(), sorted.end(),
              [](const auto& a, const auto& b) { return a->k < b->k; });
    for (const auto& basis : sorted) {
        for (const auto& f : basis->forms) {
            for (int n = 1; n <= f.n_max(); ++n) {
                out << basis->k << ',' << f.index() << ',' << n << ','
                    << to_decimal30(f.lambda_hp(static_cast<std::uint64_t>(n)));
                if (f.exact()) out << ',' << f.a_exact(static_cast<std::uint64_t>(n)).get_str();
                out << '\n';
            }
        }
    }
    if (!out.good())
        throw DataError("eigencache_write: write failure on '" + path + "'");
}

std::vector<std::shared_ptr<HeckeBasis>> eigencache_read(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw DataError("eigencache_read: cannot open '" + path + "'");
    std::string line;
    if (!std::getline(in, line) || line != kMagic)
        throw DataError("eigencache_read: bad magic line in '" + path + "'");

    std::map<int, std::map<int, RawForm>> grouped;
    long prev_k = -1, prev_idx = -1, prev_n = -1;
    size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        std::vector<std::string> cols;
        std::stringstream ss(line);
        std::string col;
        while (std::getline(ss, col, ',')) cols.push_back(col);
        if (cols.size() != 4 && cols.size() != 5)
            throw DataError("eigencache_read: line " + std::to_string(line_no) +
                            ": expected 4 or 5 columns");
        long k, idx, n;
        try {
            k = std::stol(cols[0]);
            idx = std::stol(cols[1]);
            n = std::stol(cols[2]);
        } catch (const std::exception&) {
            throw DataError("eigencache_read: line " + std::to_string(line_no) +
                            ": malformed integer field");
        }
        if (std::tie(k, idx, n) <= std::tie(prev_k, prev_idx, prev_n))
            throw DataError("eigencache_read: line " + std::to_string(line_no) +
                            ": rows not strictly sorted by (k, form, n)");
        prev_k = k; prev_idx = idx; prev_n = n;
        RawForm& rf = grouped[static_cast<int>(k)][static_cast<int>(idx)];
        if (n != static_cast<long>(rf.lambda.size()) + 1)
            throw DataError("eigencache_read: line " + std::to_string(line_no) +
                            ": coefficient indices not contiguous from 1");
        rf.lambda.push_back(cols[3]);
        if (cols.size() == 5) {
            rf.exact.push_back(cols[4]);
            rf.has_exact = true;
        } else if (rf.has_exact) {
            throw DataError("eigencache_read: line " + std::to_string(line_no) +
                            ": exact column dropped mid-form");
        }
    }

    std::vector<std::shared_ptr<HeckeBasis>> out;
    for (auto& [k, forms] : grouped) {
        auto basis = std::make_shared<HeckeBasis>();
        basis->k = k;
        const int dim = dim_cusp_forms(k);
        if (static_cast<int>(forms.size()) != dim)
            throw DataError("eigencache_read: weight " + std::to_string(k) + " has " +
                            std::to_string(forms.size()) + " forms, expected " +
                            std::to_string(dim));
        int n_max = -1;
        int expect_idx = 0;
        for (auto& [idx, rf] : forms) {
            if (idx != expect_idx++)
                throw DataError("eigencache_read: weight " + std::to_string(k) +
                                ": form indices not contiguous from 0");
            if (n_max < 0) n_max = static_cast<int>(rf.lambda.size());
            else if (n_max != static_cast<int>(rf.lambda.size()))
                throw DataError("eigencache_read: weight " + std::to_string(k) +
                                ": forms have differing depths");
            if (rf.has_exact && rf.exact.size() != rf.lambda.size())
                throw DataError("eigencache_read: weight " + std::to_string(k) +
                                ": exact column has gaps");
            if (rf.has_exact && dim != 1)
                throw DataError("eigencache_read: exact coefficients on a dim>1 space");
            std::vector<Real> lam(rf.lambda.size() + 1, Real(0, kRealBits));
            for (size_t i = 0; i < rf.lambda.size(); ++i) {
                try {
                    lam[i + 1] = parse_decimal(rf.lambda[i]);
                } catch (const std::exception&) {
                    throw DataError("eigencache_read: weight " + std::to_string(k) +
                                    ": malformed lambda value '" + rf.lambda[i] + "'");
                }
            }
            std::vector<mpz_class> a;
            if (rf.has_exact) {
                a.resize(rf.exact.size() + 1);
                for (size_t i = 0; i < rf.exact.size(); ++i) {
                    if (a[i + 1].set_str(rf.exact[i], 10) != 0)
                        throw DataError("eigencache_read: weight " + std::to_string(k) +
                                        ": malformed exact value '" + rf.exact[i] + "'");
                }
            }
            basis->forms.emplace_back(k, idx, n_max, std::move(lam), std::move(a));
        }
        basis->n_max = n_max;
        if (n_max < 2)
            throw DataError("eigencache_read: weight " + std::to_string(k) +
                            ": depth below 2");
        for (size_t i = 1; i < basis->forms.size(); ++i)
            if (!(basis->forms[i - 1].lambda_hp(2) < basis->forms[i].lambda_hp(2)))
                throw DataError("eigencache_read: weight " + std::to_string(k) +
                                ": forms not sorted by lambda(2)");
        out.push_back(std::move(basis));
    }
    return out;
}

BasisCache::BasisCache(std::string path) : path_(std::move(path)) {
    if (!path_.empty() && std::filesystem::exists(path_)) {
        for (auto& b : eigencache_read(path_)) {
            const int k = b->k;   // read before the move empties b
            mem_[k] = std::shared_ptr<const HeckeBasis>(std::move(b));
        }
    }
}

std::shared_ptr<const HeckeBasis> BasisCache::get(int k, int n_max) {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = mem_.find(k);
    if (it != mem_.end() && it->second->n_max >= n_max) return it->second;
    const int depth = std::max(n_max, it == mem_.end() ? 0 : it->second->n_max);
    auto built = std::make_shared<HeckeBasis>(hecke_eigenforms(k, depth));
    mem_[k] = built;
    dirty_ = true;
    if (!path_.empty()) {
        std::vector<std::shared_ptr<const HeckeBasis>> all;
        for (auto& [kk, b] : mem_) all.push_back(b);
        eigencache_write(path_, all);
        dirty_ = false;
    }
    return built;
}

void BasisCache::flush() {
    std::lock_guard<std::mutex> lock(mu_);
    if (path_.empty() || !dirty_) return;
    std::vector<std::shared_ptr<const HeckeBasis>> all;
    for (auto& [kk, b] : mem_) all.push_back(b);
    eigencache_write(path_, all);
    dirty_ = false;
}

} // namespace cuspv
