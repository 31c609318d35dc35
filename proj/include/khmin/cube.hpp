#pragma once

#include <cstdint>
#include <set>
#include <functional>
#include <map>
#include <numeric>
#include <vector>

#include "khmin/complex.hpp"
#include "khmin/diagram.hpp"
#include "khmin/frobenius.hpp"

namespace khmin {

// One full smoothing of a diagram: the circle partition of the arc set.
// Circles are listed by least arc label; exactly one contains the basepoint.
struct CubeVertex {
    std::vector<std::vector<int>> circles;
    int basepoint_circle = -1;

    int count() const { return static_cast<int>(circles.size()); }
};

// Circles of the smoothing selected by `bits` (bit k = 1 means the 1-smoothing
// of crossing k). With arcs (a,b,c,d) counterclockwise from the incoming
// under-strand, the 0-smoothing joins a-d and b-c, the 1-smoothing a-b and c-d.
inline CubeVertex state_circles(const PlanarDiagram& d, std::uint32_t bits) {
    std::map<int, int> parent;
    std::vector<int> arcs(d.arcs().begin(), d.arcs().end());
    for (int a : arcs) parent[a] = a;
    std::function<int(int)> find = [&](int a) { return parent[a] == a ? a : parent[a] = find(parent[a]); };
    auto unite = [&](int a, int b) { parent[find(b)] = find(a); };
    const auto& xs = d.crossings();
    for (std::size_t k = 0; k < xs.size(); ++k) {
        const Crossing& x = xs[k];
        if (bits >> k & 1) {
            unite(x.a(), x.b());
            unite(x.c(), x.d());
        } else {
            unite(x.a(), x.d());
            unite(x.b(), x.c());
        }
    }
    std::map<int, std::vector<int>> by_root;
    for (int a : arcs) by_root[find(a)].push_back(a);
    CubeVertex out;
    std::map<int, int> circle_of_root;
    for (auto& [root, members] : by_root) {
        circle_of_root[root] = out.count();
        out.circles.push_back(std::move(members));
    }
    out.basepoint_circle = circle_of_root.at(find(d.basepoint()));
    return out;
}

// A generator of the cube complex: a smoothing plus a label per circle.
// Labels are packed as a bitmask over the free circles (all circles, or all
// but the pinned basepoint circle in the reduced theory), bit 1 = X.
struct CubeGen {
    std::uint32_t vertex = 0;
    std::uint32_t labels = 0;
    bool operator==(const CubeGen&) const = default;
};

class CubeComplex {
public:
    // Builds the full cube of resolutions. For the reduced theory the
    // basepoint circle is pinned to u = X - c and the quantum grading gets the
    // +1 shift placing the unknot at (0,0). Throws BudgetError if the total
    // generator count would exceed `budget`.
    CubeComplex(const PlanarDiagram& d, const FrobeniusSpec& spec, bool reduced,
                std::size_t budget = 10'000'000)
        : spec_(&spec), reduced_(reduced), n_(d.n_crossings()), n_plus_(d.n_plus()), n_minus_(d.n_minus()) {
        if (n_ > 24) throw BudgetError("diagram too large for the full cube (" + std::to_string(n_) + " crossings)");
        const std::uint32_t nv = 1u << n_;
        vertices_.reserve(nv);
        std::size_t total = 0;
        for (std::uint32_t v = 0; v < nv; ++v) {
            vertices_.push_back(state_circles(d, v));
            const int free_circles = vertices_.back().count() - (reduced_ ? 1 : 0);
            total += std::size_t{1} << free_circles;
            if (total > budget)
                throw BudgetError("generator budget exceeded: more than " + std::to_string(budget) +
                                  " generators required");
        }
        // generators, grouped by homological degree, ordered by (vertex, labels)
        offsets_.resize(nv);
        for (std::uint32_t v = 0; v < nv; ++v) {
            const int i = popcount(v) - n_minus_;
            const int nc = vertices_[v].count() - (reduced_ ? 1 : 0);
            auto& bucket = gens_[i];
            offsets_[v] = static_cast<int>(bucket.size());
            for (std::uint32_t lab = 0; lab < (1u << nc); ++lab) bucket.push_back({v, lab});
        }
        for (const auto& [i, bucket] : gens_) {
            auto& js = complex_.gens[i];
            js.reserve(bucket.size());
            for (const CubeGen& g : bucket) js.push_back(quantum_grading(g));
        }
        build_differential(d);
    }

    const ChainComplex& complex() const { return complex_; }
    const FrobeniusSpec& spec() const { return *spec_; }
    bool reduced() const { return reduced_; }
    const CubeVertex& vertex(std::uint32_t v) const { return vertices_[v]; }
    const std::map<int, std::vector<CubeGen>>& generators() const { return gens_; }

    int degree_of_vertex(std::uint32_t v) const { return popcount(v) - n_minus_; }

    int index_of(const CubeGen& g) const { return offsets_[g.vertex] + static_cast<int>(g.labels); }

    // label of a circle (by index within the smoothing) for a given generator;
    // the pinned basepoint circle reports EX (it carries u)
    Label label_of(const CubeGen& g, int circle) const {
        const CubeVertex& vx = vertices_[g.vertex];
        if (reduced_ && circle == vx.basepoint_circle) return Label::EX;
        return static_cast<Label>(g.labels >> free_index(g.vertex, circle) & 1);
    }

    int quantum_grading(const CubeGen& g) const {
        const CubeVertex& vx = vertices_[g.vertex];
        int j = popcount(g.vertex) + n_plus_ - 2 * n_minus_ + (reduced_ ? 1 : 0);
        for (int c = 0; c < vx.count(); ++c) j += label_degree(label_of(g, c));
        return j;
    }

    // position of a circle within the label mask (skips the pinned circle)
    int free_index(std::uint32_t v, int circle) const {
        const CubeVertex& vx = vertices_[v];
        if (!reduced_) return circle;
        if (circle == vx.basepoint_circle) return -1;
        return circle < vx.basepoint_circle ? circle : circle - 1;
    }

private:
    static int popcount(std::uint32_t v) { return __builtin_popcount(v); }

    void build_differential(const PlanarDiagram& d) {
        for (auto& [i, js] : complex_.gens) {
            if (complex_.gens.count(i + 1))
                complex_.diff[i] = SparseMatrix(static_cast<int>(js.size()),
                                                static_cast<int>(complex_.gens.at(i + 1).size()));
        }
        const Rational t = spec_->t, c = spec_->c;
        for (const auto& [i, bucket] : gens_) {
            if (!complex_.diff.count(i)) continue;
            SparseMatrix& m = complex_.diff.at(i);
            for (const CubeGen& g : bucket) {
                const int row = index_of(g);
                const CubeVertex& src = vertices_[g.vertex];
                for (int k = 0; k < n_; ++k) {
                    if (g.vertex >> k & 1) continue;
                    const std::uint32_t tv = g.vertex | (1u << k);
                    const CubeVertex& tgt = vertices_[tv];
                    const Rational sign((popcount(g.vertex & ((1u << k) - 1)) % 2) ? -1 : 1);
                    // arc-wise correspondence between the two circle partitions:
                    // exactly one source circle splits or one pair merges
                    std::map<int, int> tgt_circle_of_arc;
                    for (int tc = 0; tc < tgt.count(); ++tc)
                        for (int a : tgt.circles[tc]) tgt_circle_of_arc[a] = tc;
                    std::vector<std::set<int>> images(src.count());
                    std::vector<std::set<int>> preimages(tgt.count());
                    for (int sc = 0; sc < src.count(); ++sc)
                        for (int a : src.circles[sc]) {
                            const int tc = tgt_circle_of_arc.at(a);
                            images[sc].insert(tc);
                            preimages[tc].insert(sc);
                        }
                    int merged_tgt = -1, split_src = -1;
                    for (int tc = 0; tc < tgt.count(); ++tc)
                        if (preimages[tc].size() == 2) merged_tgt = tc;
                    for (int sc = 0; sc < src.count(); ++sc)
                        if (images[sc].size() == 2) split_src = sc;
                    auto image = [&](int sc) { return *images[sc].begin(); };

                    auto emit = [&](const std::vector<std::pair<int, Label>>& assignment, const Rational& coef) {
                        if (is_zero(coef)) return;
                        std::uint32_t labels = 0;
                        for (const auto& [tc, lab] : assignment) {
                            const int fi = free_index(tv, tc);
                            if (fi < 0) continue;  // pinned circle keeps u
                            if (lab == Label::EX) labels |= 1u << fi;
                        }
                        m.add(row, offsets_[tv] + static_cast<int>(labels), sign * coef);
                    };

                    if (merged_tgt >= 0) {
                        // two source circles merge; multiplication
                        const int p = *preimages[merged_tgt].begin();
                        const int q = *std::next(preimages[merged_tgt].begin());
                        std::vector<std::pair<int, Label>> rest;
                        for (int sc = 0; sc < src.count(); ++sc)
                            if (sc != p && sc != q) rest.push_back({image(sc), label_of(g, sc)});
                        const bool bp_involved = reduced_ && (p == src.basepoint_circle || q == src.basepoint_circle);
                        const Label lp = label_of(g, p), lq = label_of(g, q);
                        auto with = [&](Label z, const Rational& coef) {
                            auto assign = rest;
                            assign.push_back({merged_tgt, z});
                            emit(assign, coef);
                        };
                        if (bp_involved) {
                            // m(u, 1) = u ; m(u, X) = -c u   (result stays pinned)
                            const Label other = (p == src.basepoint_circle) ? lq : lp;
                            with(Label::EX, other == Label::ONE ? Rational(1) : -c);
                        } else if (lp == Label::ONE && lq == Label::ONE) {
                            with(Label::ONE, Rational(1));
                        } else if (lp == Label::EX && lq == Label::EX) {
                            with(Label::ONE, t);
                        } else {
                            with(Label::EX, Rational(1));
                        }
                    } else {
                        // one source circle splits; comultiplication
                        const int r1 = *images[split_src].begin();
                        const int r2 = *std::next(images[split_src].begin());
                        std::vector<std::pair<int, Label>> rest;
                        for (int sc = 0; sc < src.count(); ++sc)
                            if (sc != split_src) rest.push_back({image(sc), label_of(g, sc)});
                        auto with = [&](Label z1, Label z2, const Rational& coef) {
                            auto assign = rest;
                            assign.push_back({r1, z1});
                            assign.push_back({r2, z2});
                            emit(assign, coef);
                        };
                        const bool bp_involved = reduced_ && split_src == src.basepoint_circle;
                        if (bp_involved) {
                            // Delta(u) = u (x) (X - c.1): u stays on the circle with the basepoint
                            const int bp_tc = tgt_circle_of_arc.at(d.basepoint());
                            const int other_tc = (bp_tc == r1) ? r2 : r1;
                            auto assign1 = rest;
                            assign1.push_back({other_tc, Label::EX});
                            emit(assign1, Rational(1));
                            auto assign2 = rest;
                            assign2.push_back({other_tc, Label::ONE});
                            emit(assign2, -c);
                        } else if (label_of(g, split_src) == Label::ONE) {
                            with(Label::ONE, Label::EX, Rational(1));
                            with(Label::EX, Label::ONE, Rational(1));
                        } else {
                            with(Label::EX, Label::EX, Rational(1));
                            with(Label::ONE, Label::ONE, t);
                        }
                    }
                }
            }
        }
    }

    const FrobeniusSpec* spec_;
    bool reduced_;
    int n_, n_plus_, n_minus_;
    std::vector<CubeVertex> vertices_;
    std::vector<int> offsets_;
    std::map<int, std::vector<CubeGen>> gens_;
    ChainComplex complex_;
};

// Full-cube complex of a diagram. Reduced complexes pin the circle through
// the basepoint; multi-component diagrams are allowed here because cobordism
// evaluation needs them, while invariant computations enforce knot-ness at
// their own entry points.
inline ChainComplex build_complex(const PlanarDiagram& d, const FrobeniusSpec& spec, bool reduced,
                                  std::size_t budget = 10'000'000) {
    return CubeComplex(d, spec, reduced, budget).complex();
}

}  // namespace khmin
