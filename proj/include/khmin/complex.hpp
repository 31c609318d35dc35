#pragma once

#include <future>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "khmin/bigraded.hpp"
#include "khmin/sparse.hpp"

namespace khmin {

// Bigraded chain complex over Q with differentials of homological degree +1.
// Generators in homological degree i are positional: generator k of degree i
// has quantum grading gens.at(i)[k]. diff.at(i) maps degree-i generators to
// degree-(i+1) generators (rows = source index, cols = target index).
//
// For Khovanov complexes every differential entry preserves j. For deformed
// (filtered) complexes entries may raise j; the j-degree of each entry is
// j_target - j_source and must be a nonnegative even number.
struct ChainComplex {
    std::map<int, std::vector<int>> gens;
    std::map<int, SparseMatrix> diff;

    int dim(int i) const {
        auto it = gens.find(i);
        return it == gens.end() ? 0 : static_cast<int>(it->second.size());
    }

    int total_dim() const {
        int t = 0;
        for (const auto& [i, v] : gens) t += static_cast<int>(v.size());
        return t;
    }

    BigradedDims generator_dims() const {
        BigradedDims out;
        for (const auto& [i, js] : gens)
            for (int j : js) out.add({i, j}, 1);
        return out;
    }

    const SparseMatrix* differential(int i) const {
        auto it = diff.find(i);
        return it == diff.end() ? nullptr : &it->second;
    }

    // Degrees of generators adjacent to degree i, as a (below, here, above) view.
    void validate_shapes() const {
        for (const auto& [i, m] : diff) {
            if (m.rows() != dim(i) || m.cols() != dim(i + 1))
                throw std::logic_error("differential shape mismatch at degree " + std::to_string(i));
        }
    }

    // Returns the bigrading of a source generator witnessing d(d(x)) != 0, if any.
    std::optional<Bigrading> dd_failure() const {
        validate_shapes();
        for (const auto& [i, m] : diff) {
            auto next = diff.find(i + 1);
            if (next == diff.end()) continue;
            SparseMatrix prod = m * next->second;
            for (int r = 0; r < prod.rows(); ++r)
                if (!prod.row(r).empty()) return Bigrading{i, gens.at(i)[r]};
        }
        return std::nullopt;
    }

    bool is_complex() const { return !dd_failure().has_value(); }

    // j-degree check: every entry must satisfy j_tgt - j_src == deg for some
    // deg in allowed (empty set = anything nonnegative and even).
    bool entries_have_degree_zero() const {
        for (const auto& [i, m] : diff) {
            for (int r = 0; r < m.rows(); ++r)
                for (const auto& [c, v] : m.row(r)) {
                    (void)v;
                    if (gens.at(i + 1)[c] != gens.at(i)[r]) return false;
                }
        }
        return true;
    }

    bool entries_filtration_compatible() const {
        for (const auto& [i, m] : diff) {
            for (int r = 0; r < m.rows(); ++r)
                for (const auto& [c, v] : m.row(r)) {
                    (void)v;
                    const int deg = gens.at(i + 1)[c] - gens.at(i)[r];
                    if (deg < 0 || deg % 2 != 0) return false;
                }
        }
        return true;
    }
};

namespace detail {

// Extract the block of d_i between fixed source and target quantum gradings.
inline SparseMatrix j_block(const ChainComplex& c, int i, int j_src, int j_tgt) {
    std::vector<int> src, tgt;
    const auto s_it = c.gens.find(i);
    const auto t_it = c.gens.find(i + 1);
    if (s_it != c.gens.end())
        for (int k = 0; k < static_cast<int>(s_it->second.size()); ++k)
            if (s_it->second[k] == j_src) src.push_back(k);
    if (t_it != c.gens.end())
        for (int k = 0; k < static_cast<int>(t_it->second.size()); ++k)
            if (t_it->second[k] == j_tgt) tgt.push_back(k);
    SparseMatrix out(static_cast<int>(src.size()), static_cast<int>(tgt.size()));
    const SparseMatrix* m = c.differential(i);
    if (!m) return out;
    std::map<int, int> tgt_pos;
    for (int k = 0; k < static_cast<int>(tgt.size()); ++k) tgt_pos[tgt[k]] = k;
    for (int r = 0; r < static_cast<int>(src.size()); ++r)
        for (const auto& [col, v] : m->row(src[r])) {
            auto it = tgt_pos.find(col);
            if (it != tgt_pos.end()) out.set(r, it->second, v);
        }
    return out;
}

}  // namespace detail

// Homology dimensions of a complex whose differential preserves j.
// dim H_{i,j} = dim C_{i,j} - rank d_{i,j} - rank d_{i-1,j}.
// Throws if d*d != 0, naming the first offending bigrading.
inline BigradedDims homology_dims(const ChainComplex& c, int jobs = 1) {
    if (auto bad = c.dd_failure())
        throw std::logic_error("d \xe2\x88\x98 d \xe2\x89\xa0 0 at (i,j) = (" + std::to_string(bad->i) + "," +
                               std::to_string(bad->j) + ")");
    if (!c.entries_have_degree_zero())
        throw std::logic_error("homology_dims requires a j-preserving differential");

    std::vector<Bigrading> support;
    for (const auto& [i, js] : c.gens)
        for (int j : js)
            if (support.empty() || support.back() != Bigrading{i, j}) support.push_back({i, j});
    std::sort(support.begin(), support.end());
    support.erase(std::unique(support.begin(), support.end()), support.end());

    auto dim_at = [&](Bigrading b) {
        int n = 0;
        auto it = c.gens.find(b.i);
        if (it != c.gens.end())
            for (int j : it->second)
                if (j == b.j) ++n;
        return n;
    };
    auto rank_out = [&c](Bigrading b) { return detail::j_block(c, b.i, b.j, b.j).rank(); };

    BigradedDims out;
    if (jobs <= 1) {
        for (const auto& b : support) {
            const int h = dim_at(b) - rank_out(b) - detail::j_block(c, b.i - 1, b.j, b.j).rank();
            out.add(b, h);
        }
        return out;
    }
    std::vector<std::future<int>> ranks(support.size());
    for (std::size_t k = 0; k < support.size(); ++k)
        ranks[k] = std::async(std::launch::async, [&, k] {
            return rank_out(support[k]) + detail::j_block(c, support[k].i - 1, support[k].j, support[k].j).rank();
        });
    for (std::size_t k = 0; k < support.size(); ++k) out.add(support[k], dim_at(support[k]) - ranks[k].get());
    return out;
}

// Homology ignoring the quantum grading, reported per homological degree.
// Valid for any complex (filtered Lee complexes have j-mixed differentials).
inline std::map<int, int> total_homology_by_i(const ChainComplex& c) {
    if (auto bad = c.dd_failure())
        throw std::logic_error("d \xe2\x88\x98 d \xe2\x89\xa0 0 at (i,j) = (" + std::to_string(bad->i) + "," +
                               std::to_string(bad->j) + ")");
    std::map<int, int> out;
    for (const auto& [i, js] : c.gens) {
        const SparseMatrix* d_out = c.differential(i);
        const SparseMatrix* d_in = c.differential(i - 1);
        int h = static_cast<int>(js.size());
        if (d_out) h -= d_out->rank();
        if (d_in) h -= d_in->rank();
        if (h != 0) out[i] = h;
    }
    return out;
}

}  // namespace khmin
