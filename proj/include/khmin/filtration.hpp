#pragma once

#include <algorithm>
#include <map>
#include <vector>

#include "khmin/complex.hpp"

namespace khmin {
namespace filt {

// Dense exact linear algebra on small spaces: vectors over the generators of
// one homological degree. Spectral-sequence subquotients are computed from
// explicit spanning sets, so bases (not just ranks) are needed here.
using Vec = std::vector<Rational>;

inline int dim_span(std::vector<Vec> vectors) {
    int rank = 0;
    const std::size_t width = vectors.empty() ? 0 : vectors[0].size();
    std::vector<int> pivot_col;
    std::vector<Vec> rows;
    for (Vec& v : vectors) {
        for (std::size_t r = 0; r < rows.size(); ++r) {
            const Rational& lead = v[pivot_col[r]];
            if (!is_zero(lead)) {
                const Rational f = lead / rows[r][pivot_col[r]];
                for (std::size_t c = 0; c < width; ++c) v[c] -= f * rows[r][c];
            }
        }
        int lead = -1;
        for (std::size_t c = 0; c < width; ++c)
            if (!is_zero(v[c])) {
                lead = static_cast<int>(c);
                break;
            }
        if (lead >= 0) {
            rows.push_back(v);
            pivot_col.push_back(lead);
            ++rank;
        }
    }
    return rank;
}

// Basis of { x : x . M = 0 } where x runs over row vectors of length M.rows().
inline std::vector<Vec> left_kernel_basis(const SparseMatrix& m) {
    const int rows = m.rows(), cols = m.cols();
    // row-reduce the matrix augmented with the identity, tracking row operations
    std::vector<Vec> a(rows, Vec(cols, Rational(0)));
    std::vector<Vec> id(rows, Vec(rows, Rational(0)));
    for (int r = 0; r < rows; ++r) {
        id[r][r] = 1;
        for (const auto& [c, v] : m.row(r)) a[r][c] = v;
    }
    std::vector<bool> used(rows, false);
    for (int c = 0; c < cols; ++c) {
        int pivot = -1;
        for (int r = 0; r < rows; ++r)
            if (!used[r] && !is_zero(a[r][c])) {
                pivot = r;
                break;
            }
        if (pivot < 0) continue;
        used[pivot] = true;
        for (int r = 0; r < rows; ++r) {
            if (r == pivot || is_zero(a[r][c])) continue;
            const Rational f = a[r][c] / a[pivot][c];
            for (int cc = 0; cc < cols; ++cc) a[r][cc] -= f * a[pivot][cc];
            for (int cc = 0; cc < rows; ++cc) id[r][cc] -= f * id[pivot][cc];
        }
    }
    std::vector<Vec> out;
    for (int r = 0; r < rows; ++r)
        if (!used[r]) out.push_back(id[r]);
    return out;
}

// Filtered-complex subquotient data. The filtration is by quantum grading,
// F_s = span of generators with j >= s, and the differential never lowers j.
class PageEngine {
public:
    explicit PageEngine(const ChainComplex& c) : c_(&c) {
        for (const auto& [i, js] : c.gens) {
            j_levels_.insert(j_levels_.end(), js.begin(), js.end());
        }
        std::sort(j_levels_.begin(), j_levels_.end());
        j_levels_.erase(std::unique(j_levels_.begin(), j_levels_.end()), j_levels_.end());
    }

    int j_spread() const { return j_levels_.empty() ? 0 : j_levels_.back() - j_levels_.front(); }
    const std::vector<int>& j_levels() const { return j_levels_; }
    const ChainComplex& complex() const { return *c_; }

    // Z_rho^{s,i} = F_s(C^i) meet d^{-1}(F_{s+rho} C^{i+1}); rho may be huge
    // to mean "cycles".  Returned as explicit spanning vectors in C^i.
    std::vector<Vec> z_space(int i, int s, long rho) const {
        const int n = c_->dim(i);
        if (n == 0) return {};
        const auto& js = c_->gens.at(i);
        std::vector<int> src;  // generators in F_s
        for (int k = 0; k < n; ++k)
            if (js[k] >= s) src.push_back(k);
        if (src.empty()) return {};
        const SparseMatrix* d = c_->differential(i);
        std::vector<int> tgt;  // target generators below the cutoff
        if (d && c_->gens.count(i + 1)) {
            const auto& tjs = c_->gens.at(i + 1);
            for (int k = 0; k < static_cast<int>(tjs.size()); ++k)
                if (static_cast<long>(tjs[k]) < static_cast<long>(s) + rho) tgt.push_back(k);
        }
        SparseMatrix block(static_cast<int>(src.size()), static_cast<int>(tgt.size()));
        if (d) {
            std::map<int, int> tpos;
            for (int k = 0; k < static_cast<int>(tgt.size()); ++k) tpos[tgt[k]] = k;
            for (int r = 0; r < static_cast<int>(src.size()); ++r)
                for (const auto& [col, v] : d->row(src[r])) {
                    auto it = tpos.find(col);
                    if (it != tpos.end()) block.set(r, it->second, v);
                }
        }
        std::vector<Vec> kernel = left_kernel_basis(block);
        std::vector<Vec> out;
        out.reserve(kernel.size());
        for (const Vec& k : kernel) {
            Vec v(n, Rational(0));
            for (std::size_t p = 0; p < src.size(); ++p) v[src[p]] = k[p];
            out.push_back(std::move(v));
        }
        return out;
    }

    std::vector<Vec> d_image(int i, const std::vector<Vec>& vectors) const {
        const SparseMatrix* d = c_->differential(i);
        const int m = c_->dim(i + 1);
        std::vector<Vec> out;
        if (!d || m == 0) return out;
        for (const Vec& v : vectors) {
            Vec w(m, Rational(0));
            for (int r = 0; r < static_cast<int>(v.size()); ++r) {
                if (is_zero(v[r])) continue;
                for (const auto& [c, dv] : d->row(r)) w[c] += v[r] * dv;
            }
            out.push_back(std::move(w));
        }
        return out;
    }

    // dim E_rho^{s,i} = dim Z_rho^{s,i} - dim( Z_{rho-2}^{s+2,i} + d Z_{rho-2}^{s-rho+2,i-1} )
    int page_dim(int i, int s, long rho) const {
        const auto z = z_space(i, s, rho);
        if (z.empty()) return 0;
        auto junk = z_space(i, s + 2, rho - 2);
        auto dz = d_image(i - 1, z_space(i - 1, s - static_cast<int>(rho) + 2, rho - 2));
        junk.insert(junk.end(), dz.begin(), dz.end());
        return static_cast<int>(dim_span(z)) - dim_span(junk);
    }

    // rank of d_rho out of (s,i):
    // dim Z_rho^{s,i} - dim( Z_{rho+2}^{s,i} + Z_{rho-2}^{s+2,i} + d Z_{rho-2}^{s-rho+2,i-1} )
    int page_rank(int i, int s, long rho) const {
        const auto z = z_space(i, s, rho);
        if (z.empty()) return 0;
        auto big = z_space(i, s, rho + 2);
        auto z2 = z_space(i, s + 2, rho - 2);
        big.insert(big.end(), z2.begin(), z2.end());
        auto dz = d_image(i - 1, z_space(i - 1, s - static_cast<int>(rho) + 2, rho - 2));
        big.insert(big.end(), dz.begin(), dz.end());
        return static_cast<int>(dim_span(z)) - dim_span(big);
    }

private:
    const ChainComplex* c_;
    std::vector<int> j_levels_;
};

}  // namespace filt
}  // namespace khmin
