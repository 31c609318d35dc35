#pragma once

#include <map>
#include <set>
#include <vector>

#include "khmin/complex.hpp"

namespace khmin {

// Result of Gaussian-elimination simplification. The maps f (old -> new) and
// g (new -> old) are chain maps with f.g = id, so chain maps into or out of
// the original complex can be transported through the simplification.
struct Simplified {
    ChainComplex complex;
    std::map<int, SparseMatrix> f;  // rows = old generators of degree i, cols = new
    std::map<int, SparseMatrix> g;  // rows = new generators of degree i, cols = old
};

namespace detail {

struct ElimState {
    std::map<int, std::vector<int>> j;
    std::map<int, std::vector<bool>> alive;
    // out[i][k] : entries from (i,k) to degree i+1; in[i][k] : sources in degree i-1
    std::map<int, std::vector<std::map<int, Rational>>> out, in;

    explicit ElimState(const ChainComplex& c) {
        for (const auto& [i, js] : c.gens) {
            j[i] = js;
            alive[i] = std::vector<bool>(js.size(), true);
            out[i].resize(js.size());
            in[i].resize(js.size());
        }
        for (const auto& [i, m] : c.diff)
            for (int r = 0; r < m.rows(); ++r)
                for (const auto& [col, v] : m.row(r)) {
                    out[i][r][col] = v;
                    in[i + 1][col][r] = v;
                }
    }

    void set_entry(int i, int src, int tgt, const Rational& v) {
        if (is_zero(v)) {
            out[i][src].erase(tgt);
            in[i + 1][tgt].erase(src);
        } else {
            out[i][src][tgt] = v;
            in[i + 1][tgt][src] = v;
        }
    }
};

}  // namespace detail

// Cancel invertible differential entries until none remain. Only entries with
// j_src == j_tgt are used as pivots; on a filtered complex this preserves the
// whole filtered homotopy type, on a Khovanov complex it covers every entry.
// Pivots are chosen per row by the Markowitz cost (rw-1)*(cw-1).
inline Simplified simplify_with_maps(const ChainComplex& input, bool track_maps = true) {
    detail::ElimState st(input);

    // f/g tracked over original indices; dead generators get dropped at the end
    std::map<int, std::vector<std::map<int, Rational>>> fvec, gvec;
    std::map<int, std::vector<std::set<int>>> f_touch;  // alive gen -> originals hitting it
    if (track_maps) {
        for (const auto& [i, js] : st.j) {
            fvec[i].resize(js.size());
            gvec[i].resize(js.size());
            f_touch[i].resize(js.size());
            for (int k = 0; k < static_cast<int>(js.size()); ++k) {
                fvec[i][k] = {{k, Rational(1)}};
                gvec[i][k] = {{k, Rational(1)}};
                f_touch[i][k].insert(k);
            }
        }
    }

    auto eliminate = [&](int i, int g1, int g2) {
        const Rational phi = st.out[i][g1].at(g2);
        // snapshot the pivot row and column before rewriting anything
        const std::map<int, Rational> beta = [&] {
            auto b = st.out[i][g1];
            b.erase(g2);
            return b;
        }();
        const std::map<int, Rational> gamma = [&] {
            auto gm = st.in[i + 1][g2];
            gm.erase(g1);
            return gm;
        }();

        if (track_maps) {
            // g(x) = x - (gamma_x/phi) g1  : push corrections into gvec
            for (const auto& [x, gx] : gamma) {
                const Rational coef = gx / phi;
                for (const auto& [orig, v] : gvec[i][g1]) {
                    auto& cell = gvec[i][x][orig];
                    cell -= coef * v;
                    if (is_zero(cell)) gvec[i][x].erase(orig);
                }
            }
            // f(g2) = -(1/phi) beta, f(g1) = 0 : rewrite every f-vector with a g2 component
            const std::set<int> hit_g2 = f_touch[i + 1][g2];
            for (int z : hit_g2) {
                auto it = fvec[i + 1][z].find(g2);
                if (it == fvec[i + 1][z].end()) continue;
                const Rational c = it->second;
                fvec[i + 1][z].erase(it);
                for (const auto& [tgt, v] : beta) {
                    auto& cell = fvec[i + 1][z][tgt];
                    cell -= c * v / phi;
                    if (is_zero(cell)) {
                        fvec[i + 1][z].erase(tgt);
                        f_touch[i + 1][tgt].erase(z);
                    } else {
                        f_touch[i + 1][tgt].insert(z);
                    }
                }
            }
            f_touch[i + 1][g2].clear();
            const std::set<int> hit_g1 = f_touch[i][g1];
            for (int z : hit_g1) fvec[i][z].erase(g1);
            f_touch[i][g1].clear();
        }

        // d(a,b) -= d(a,g2) * phi^{-1} * d(g1,b)
        for (const auto& [a, va] : gamma)
            for (const auto& [b, vb] : beta) {
                Rational cur = Rational(0);
                auto it = st.out[i][a].find(b);
                if (it != st.out[i][a].end()) cur = it->second;
                st.set_entry(i, a, b, cur - va * vb / phi);
            }
        // detach the pair
        for (const auto& [b, vb] : beta) {
            (void)vb;
            st.set_entry(i, g1, b, Rational(0));
        }
        for (const auto& [a, va] : gamma) {
            (void)va;
            st.set_entry(i, a, g2, Rational(0));
        }
        st.set_entry(i, g1, g2, Rational(0));
        const auto incoming = st.in.at(i)[g1];
        for (const auto& [w, vw] : incoming) {
            (void)vw;
            st.set_entry(i - 1, w, g1, Rational(0));
        }
        const auto outgoing = st.out.at(i + 1)[g2];
        for (const auto& [b, vb] : outgoing) {
            (void)vb;
            st.set_entry(i + 1, g2, b, Rational(0));
        }
        st.alive[i][g1] = false;
        st.alive[i + 1][g2] = false;
    };

    bool progress = true;
    while (progress) {
        progress = false;
        for (auto& [i, rows] : st.out) {
            for (int k = 0; k < static_cast<int>(rows.size()); ++k) {
                if (!st.alive[i][k]) continue;
                // best j-preserving pivot in this row
                int best = -1;
                long best_cost = -1;
                for (const auto& [tgt, v] : rows[k]) {
                    (void)v;
                    if (st.j[i + 1][tgt] != st.j[i][k]) continue;
                    const long cost = static_cast<long>(rows[k].size() - 1) *
                                      static_cast<long>(st.in[i + 1][tgt].size() - 1);
                    if (best < 0 || cost < best_cost) {
                        best = tgt;
                        best_cost = cost;
                    }
                }
                if (best >= 0) {
                    eliminate(i, k, best);
                    progress = true;
                }
            }
        }
    }

    // compact surviving generators
    Simplified result;
    std::map<int, std::vector<int>> new_index;
    for (const auto& [i, al] : st.alive) {
        std::vector<int> idx(al.size(), -1);
        std::vector<int> js;
        for (int k = 0; k < static_cast<int>(al.size()); ++k)
            if (al[k]) {
                idx[k] = static_cast<int>(js.size());
                js.push_back(st.j[i][k]);
            }
        new_index[i] = idx;
        if (!js.empty()) result.complex.gens[i] = js;
    }
    for (const auto& [i, rows] : st.out) {
        if (!result.complex.gens.count(i) || !result.complex.gens.count(i + 1)) continue;
        SparseMatrix m(result.complex.dim(i), result.complex.dim(i + 1));
        bool any = false;
        for (int k = 0; k < static_cast<int>(rows.size()); ++k) {
            if (new_index[i][k] < 0) continue;
            for (const auto& [tgt, v] : rows[k]) {
                m.set(new_index[i][k], new_index[i + 1][tgt], v);
                any = true;
            }
        }
        if (any || (result.complex.dim(i) > 0 && result.complex.dim(i + 1) > 0)) result.complex.diff[i] = m;
    }
    if (track_maps) {
        for (const auto& [i, js] : st.j) {
            const int old_n = static_cast<int>(js.size());
            const int new_n = result.complex.dim(i);
            SparseMatrix fm(old_n, new_n), gm(new_n, old_n);
            for (int z = 0; z < old_n; ++z)
                for (const auto& [k, v] : fvec[i][z])
                    if (new_index[i][k] >= 0) fm.set(z, new_index[i][k], v);
            for (int k = 0; k < old_n; ++k)
                if (new_index[i][k] >= 0)
                    for (const auto& [orig, v] : gvec[i][k]) gm.set(new_index[i][k], orig, v);
            result.f[i] = fm;
            result.g[i] = gm;
        }
    }
    return result;
}

inline ChainComplex simplify(const ChainComplex& input) { return simplify_with_maps(input, false).complex; }

// Transports a chain map F : A -> B (given per homological degree, rows =
// A-generators, cols = B-generators) through simplifications of both sides:
// the result is f_B . F . g_A on the simplified complexes.
inline std::map<int, SparseMatrix> transport_chain_map(const std::map<int, SparseMatrix>& F,
                                                       const Simplified& a, const Simplified& b) {
    std::map<int, SparseMatrix> out;
    for (const auto& [i, m] : F) {
        auto git = a.g.find(i);
        auto fit = b.f.find(i);
        if (git == a.g.end() || fit == b.f.end()) continue;
        if (git->second.rows() == 0 || fit->second.cols() == 0) continue;
        out[i] = git->second * m * fit->second;
    }
    return out;
}

}  // namespace khmin
