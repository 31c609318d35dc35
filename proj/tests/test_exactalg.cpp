#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "khmin/complex.hpp"
#include "khmin/rational.hpp"
#include "khmin/simplify.hpp"
#include "khmin/sparse.hpp"

using namespace khmin;

TEST_CASE("rationals are exact and reduced") {
    Rational r(6, 4);
    CHECK(rat_num(r) == 3);
    CHECK(rat_den(r) == 2);
    Rational s = r - Rational(3, 2);
    CHECK(is_zero(s));
    // denominators stay positive
    Rational t(1, 1);
    t /= Rational(-2, 1);
    CHECK(rat_den(t) == 2);
    CHECK(rat_num(t) == -1);
}

TEST_CASE("sparse matrix rank basics") {
    SparseMatrix id2(2, 2);
    id2.set(0, 0, 1);
    id2.set(1, 1, 1);
    CHECK(id2.rank() == 2);

    SparseMatrix zero(3, 4);
    CHECK(zero.rank() == 0);

    SparseMatrix prop(2, 2);
    prop.set(0, 0, 1);
    prop.set(0, 1, 2);
    prop.set(1, 0, 2);
    prop.set(1, 1, 4);
    CHECK(prop.rank() == 1);
}

TEST_CASE("rank properties on random matrices") {
    std::mt19937 rng(20240517);
    std::uniform_int_distribution<int> dim(1, 8), val(-3, 3);
    for (int trial = 0; trial < 40; ++trial) {
        SparseMatrix m(dim(rng), dim(rng));
        for (int r = 0; r < m.rows(); ++r)
            for (int c = 0; c < m.cols(); ++c)
                if (val(rng) > 1) m.set(r, c, Rational(val(rng)));
        const int rk = m.rank();
        CHECK(rk == m.transpose().rank());
        CHECK(rk <= std::min(m.rows(), m.cols()));
    }
}

namespace {

ChainComplex two_term(const std::vector<int>& j0, const std::vector<int>& j1, const SparseMatrix& d) {
    ChainComplex c;
    if (!j0.empty()) c.gens[0] = j0;
    if (!j1.empty()) c.gens[1] = j1;
    c.diff[0] = d;
    return c;
}

}  // namespace

TEST_CASE("homology of simple complexes") {
    SECTION("zero differential keeps generator counts") {
        ChainComplex c;
        c.gens[0] = {0, 0};
        c.gens[2] = {4};
        BigradedDims h = homology_dims(c);
        CHECK(h.at({0, 0}) == 2);
        CHECK(h.at({2, 4}) == 1);
        CHECK(h.total() == 3);
    }
    SECTION("acyclic two-term complex") {
        SparseMatrix d(1, 1);
        d.set(0, 0, 1);
        BigradedDims h = homology_dims(two_term({0}, {0}, d));
        CHECK(h.total() == 0);
    }
    SECTION("rank-nullity") {
        SparseMatrix d(2, 1);
        d.set(0, 0, 1);
        BigradedDims h = homology_dims(two_term({0, 0}, {0}, d));
        CHECK(h.at({0, 0}) == 1);
        CHECK(h.total() == 1);
    }
    SECTION("d.d != 0 is reported with its bigrading") {
        ChainComplex c;
        c.gens[0] = {0};
        c.gens[1] = {0};
        c.gens[2] = {0};
        SparseMatrix d0(1, 1), d1(1, 1);
        d0.set(0, 0, 1);
        d1.set(0, 0, 1);
        c.diff[0] = d0;
        c.diff[1] = d1;
        CHECK_THROWS_WITH(homology_dims(c), Catch::Matchers::ContainsSubstring("(0,0)"));
    }
}

TEST_CASE("simplify basics") {
    SECTION("acyclic pair cancels to the empty complex") {
        SparseMatrix d(1, 1);
        d.set(0, 0, 1);
        ChainComplex s = simplify(two_term({3}, {3}, d));
        CHECK(s.total_dim() == 0);
    }
    SECTION("zero differential is untouched") {
        ChainComplex c;
        c.gens[0] = {1, 3};
        c.gens[1] = {5};
        ChainComplex s = simplify(c);
        CHECK(s.generator_dims() == c.generator_dims());
    }
    SECTION("only j-preserving entries are cancelled") {
        // filtered entry of degree +2 must survive
        SparseMatrix d(1, 1);
        d.set(0, 0, 1);
        ChainComplex s = simplify(two_term({0}, {2}, d));
        CHECK(s.total_dim() == 2);
    }
}

namespace {

// Random j-homogeneous complex built by inverse Gaussian moves, so d.d = 0 by
// construction but simplification has real work to do.
ChainComplex random_complex(std::mt19937& rng) {
    std::uniform_int_distribution<int> deg(0, 2), jval(-2, 2), val(-2, 2), npairs(2, 10);
    ChainComplex c;
    for (int i = 0; i <= 3; ++i) c.gens[i] = {};
    // a few permanent generators
    for (int i = 0; i <= 3; ++i)
        for (int k = std::uniform_int_distribution<int>(0, 2)(rng); k > 0; --k)
            c.gens[i].push_back(2 * jval(rng));

    std::map<int, std::vector<std::map<int, Rational>>> out;
    for (int i = 0; i <= 3; ++i) out[i].resize(c.gens[i].size());

    const int pairs = npairs(rng);
    for (int p = 0; p < pairs; ++p) {
        const int i = deg(rng);
        const int j = 2 * jval(rng);
        c.gens[i].push_back(j);
        c.gens[i + 1].push_back(j);
        out[i].emplace_back();
        out[i + 1].emplace_back();
        const int a = static_cast<int>(c.gens[i].size()) - 1;
        const int b = static_cast<int>(c.gens[i + 1].size()) - 1;
        Rational phi(val(rng));
        if (is_zero(phi)) phi = 1;
        out[i][a][b] = phi;
        // random extra row entries beta with matching j, then d(b) := -d(beta)/phi
        std::map<int, Rational> db;
        for (int t = 0; t + 1 < static_cast<int>(c.gens[i + 1].size()); ++t) {
            if (c.gens[i + 1][t] != j || val(rng) <= 0) continue;
            const Rational beta(val(rng));
            if (is_zero(beta)) continue;
            out[i][a][t] = beta;
            for (const auto& [tt, vv] : out[i + 1][t]) db[tt] -= beta * vv / phi;
        }
        for (const auto& [tt, vv] : db)
            if (!is_zero(vv)) out[i + 1][b][tt] = vv;
    }
    for (int i = 0; i <= 3; ++i) {
        SparseMatrix m(static_cast<int>(c.gens[i].size()), static_cast<int>(c.gens.count(i + 1) ? c.gens[i + 1].size() : 0));
        for (int r = 0; r < static_cast<int>(out[i].size()); ++r)
            for (const auto& [t, v] : out[i][r]) m.set(r, t, v);
        c.diff[i] = m;
    }
    for (int i = 0; i <= 3; ++i)
        if (c.gens[i].empty()) c.gens.erase(i);
    return c;
}

bool is_chain_map(const ChainComplex& a, const ChainComplex& b, const std::map<int, SparseMatrix>& F) {
    for (const auto& [i, m] : F) {
        const SparseMatrix* da = a.differential(i);
        const SparseMatrix* db = b.differential(i);
        auto next = F.find(i + 1);
        SparseMatrix lhs = (da && next != F.end()) ? (*da) * next->second : SparseMatrix(m.rows(), 0);
        SparseMatrix rhs = db ? m * (*db) : SparseMatrix(m.rows(), 0);
        if (lhs.cols() != rhs.cols()) {
            if (!lhs.is_zero_matrix() || !rhs.is_zero_matrix()) return false;
            continue;
        }
        if (!(lhs == rhs)) return false;
    }
    return true;
}

}  // namespace

TEST_CASE("simplify preserves homology and yields chain maps") {
    std::mt19937 rng(777);
    for (int trial = 0; trial < 30; ++trial) {
        ChainComplex c = random_complex(rng);
        REQUIRE(c.is_complex());
        Simplified s = simplify_with_maps(c);
        REQUIRE(s.complex.is_complex());
        CHECK(homology_dims(s.complex) == homology_dims(c));
        CHECK(s.complex.total_dim() <= c.total_dim());

        // f and g are chain maps and f.g = id on the small complex
        CHECK(is_chain_map(c, s.complex, s.f));
        CHECK(is_chain_map(s.complex, c, s.g));
        for (const auto& [i, gm] : s.g) {
            if (gm.rows() == 0) continue;
            SparseMatrix prod = gm * s.f.at(i);
            for (int r = 0; r < prod.rows(); ++r)
                for (int cidx = 0; cidx < prod.cols(); ++cidx)
                    CHECK(prod.get(r, cidx) == (r == cidx ? Rational(1) : Rational(0)));
        }
    }
}

TEST_CASE("fully simplified Khovanov-type complexes have zero differential") {
    std::mt19937 rng(991);
    for (int trial = 0; trial < 10; ++trial) {
        ChainComplex c = random_complex(rng);
        ChainComplex s = simplify(c);
        for (const auto& [i, m] : s.diff) {
            (void)i;
            // entries may only survive between distinct quantum gradings
            for (int r = 0; r < m.rows(); ++r)
                for (const auto& [col, v] : m.row(r)) {
                    (void)v;
                    CHECK(s.gens.at(i + 1)[col] != s.gens.at(i)[r]);
                }
        }
    }
}
