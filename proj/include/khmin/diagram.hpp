#pragma once

#include <array>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace khmin {

struct ParseError : std::runtime_error {
    explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};
struct ValidationError : std::runtime_error {
    explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};
struct BudgetError : std::runtime_error {
    explicit BudgetError(const std::string& what) : std::runtime_error(what) {}
};

// One crossing of a planar diagram. Arc labels are listed counterclockwise
// starting from the incoming under-strand, so the under-strand runs a -> c
// and the over-strand occupies positions b and d. sign = +1 means the
// over-strand runs b -> d.
struct Crossing {
    int sign = 0;
    std::array<int, 4> arcs{};

    int a() const { return arcs[0]; }
    int b() const { return arcs[1]; }
    int c() const { return arcs[2]; }
    int d() const { return arcs[3]; }
    bool operator==(const Crossing&) const = default;
};

// Oriented basepointed link diagram. Zero-crossing unknot components cannot
// be expressed by crossing tuples, so they are carried explicitly as the
// labels in free_loops.
class PlanarDiagram {
public:
    PlanarDiagram() = default;
    PlanarDiagram(std::vector<Crossing> crossings, std::vector<int> free_loops, int basepoint)
        : crossings_(std::move(crossings)), free_loops_(std::move(free_loops)), basepoint_(basepoint) {
        validate_and_orient();
    }

    static PlanarDiagram unknot() { return PlanarDiagram({}, {1}, 1); }

    const std::vector<Crossing>& crossings() const { return crossings_; }
    const std::vector<int>& free_loops() const { return free_loops_; }
    int basepoint() const { return basepoint_; }
    int n_crossings() const { return static_cast<int>(crossings_.size()); }
    int n_plus() const { return n_plus_; }
    int n_minus() const { return n_minus_; }
    int writhe() const { return n_plus_ - n_minus_; }

    const std::set<int>& arcs() const { return arcs_; }

    // number of link components, counting free loops
    int components() const { return strand_components_ + static_cast<int>(free_loops_.size()); }

    bool is_knot() const { return components() == 1; }

    // the diagram with all crossings switched; tuples are rotated so the new
    // under-strand leads, which makes the operation an involution
    PlanarDiagram mirrored() const {
        std::vector<Crossing> out;
        out.reserve(crossings_.size());
        for (const Crossing& x : crossings_) {
            Crossing m;
            m.sign = -x.sign;
            if (x.sign > 0)
                m.arcs = {x.arcs[1], x.arcs[2], x.arcs[3], x.arcs[0]};
            else
                m.arcs = {x.arcs[3], x.arcs[0], x.arcs[1], x.arcs[2]};
            out.push_back(m);
        }
        return PlanarDiagram(std::move(out), free_loops_, basepoint_);
    }

    bool operator==(const PlanarDiagram& other) const {
        return crossings_ == other.crossings_ && free_loops_ == other.free_loops_ &&
               basepoint_ == other.basepoint_;
    }

    std::string to_pd_string() const {
        std::ostringstream os;
        for (const Crossing& x : crossings_)
            os << "X[" << x.arcs[0] << "," << x.arcs[1] << "," << x.arcs[2] << "," << x.arcs[3] << "] ";
        for (std::size_t k = 0; k < free_loops_.size(); ++k) os << "U ";
        os << "base=" << basepoint_;
        return os.str();
    }

    int max_arc_label() const {
        int m = 0;
        for (int a : arcs_) m = std::max(m, a);
        return m;
    }

    // Which component (by traversal) an arc belongs to; components are indexed
    // deterministically by their least arc label.
    int component_of(int arc) const {
        auto it = component_of_.find(arc);
        if (it == component_of_.end()) throw ValidationError("unknown arc " + std::to_string(arc));
        return it->second;
    }

private:
    friend class MovieRunner;

    void validate_and_orient() {
        arcs_.clear();
        std::map<int, int> count;
        for (const Crossing& x : crossings_)
            for (int a : x.arcs) {
                if (a <= 0) throw ValidationError("arc labels must be positive");
                ++count[a];
                arcs_.insert(a);
            }
        for (const auto& [a, c] : count)
            if (c != 2)
                throw ValidationError("arc " + std::to_string(a) + " appears " + std::to_string(c) +
                                      " times (every arc must appear exactly twice)");
        for (int l : free_loops_) {
            if (l <= 0) throw ValidationError("arc labels must be positive");
            if (count.count(l)) throw ValidationError("free loop label " + std::to_string(l) + " collides with a crossing arc");
            if (!arcs_.insert(l).second) throw ValidationError("duplicate free loop label " + std::to_string(l));
        }
        if (crossings_.empty() && free_loops_.empty())
            throw ValidationError("empty diagram (use a free loop for the unknot)");
        if (!arcs_.count(basepoint_))
            throw ValidationError("basepoint arc " + std::to_string(basepoint_) + " does not exist");
        orient();
        count_components();
    }

    // Establish a consistent global orientation. The under-strand a -> c fixes
    // directions at two slots of each crossing; the over-direction is a free
    // bit per crossing constrained through shared arcs. sign = +1 iff the
    // over-strand runs b -> d; stored signs must match the deduced ones unless
    // they are 0 (then they are filled in).
    void orient() {
        const int n = n_crossings();
        // slot direction: +1 = arc flows out of the crossing at this slot
        // under: a is in (-1), c is out (+1); b,d depend on the over bit:
        // over bit 0 means b -> d (b in, d out)
        struct Slot {
            int crossing, pos;
        };
        std::map<int, std::vector<Slot>> slots;
        for (int k = 0; k < n; ++k)
            for (int p = 0; p < 4; ++p) slots[crossings_[k].arcs[p]].push_back({k, p});

        // dir(pos, bit): +1 = outgoing. bit 0 means the over-strand runs b -> d.
        auto fixed_dir = [](int pos) { return pos == 0 ? -1 : (pos == 2 ? +1 : 0); };
        auto over_dir = [](int pos, int bit) { return pos == 1 ? (bit == 0 ? -1 : +1) : (bit == 0 ? +1 : -1); };

        std::vector<int> over_bit(n, -1);
        std::vector<std::vector<std::pair<int, bool>>> related(n);  // (other, must_be_equal)
        std::vector<int> queue;
        auto force = [&](int k, int bit, int arc) {
            if (over_bit[k] == -1) {
                over_bit[k] = bit;
                queue.push_back(k);
            } else if (over_bit[k] != bit) {
                throw ValidationError("orientation inconsistent at arc " + std::to_string(arc));
            }
        };
        for (const auto& [arc, ss] : slots) {
            if (ss.size() != 2) continue;  // already ruled out by the arc count check
            const auto& [s1, s2] = std::pair(ss[0], ss[1]);
            const bool u1 = (s1.pos % 2 == 0), u2 = (s2.pos % 2 == 0);
            if (u1 && u2) {
                if (fixed_dir(s1.pos) == fixed_dir(s2.pos))
                    throw ValidationError("orientation inconsistent at arc " + std::to_string(arc));
            } else if (u1 || u2) {
                const Slot& us = u1 ? s1 : s2;
                const Slot& os = u1 ? s2 : s1;
                const int need = -fixed_dir(us.pos);
                force(os.crossing, over_dir(os.pos, 0) == need ? 0 : 1, arc);
            } else {
                // over-over: equal bits iff the two slots are of opposite kind
                const bool equal = (s1.pos != s2.pos);
                related[s1.crossing].push_back({s2.crossing, equal});
                related[s2.crossing].push_back({s1.crossing, equal});
            }
        }
        for (int seed = 0; seed <= n; ++seed) {
            while (!queue.empty()) {
                const int cur = queue.back();
                queue.pop_back();
                for (const auto& [other, equal] : related[cur]) {
                    const int bit = equal ? over_bit[cur] : 1 - over_bit[cur];
                    if (over_bit[other] == -1) {
                        over_bit[other] = bit;
                        queue.push_back(other);
                    } else if (over_bit[other] != bit) {
                        throw ValidationError("orientation inconsistent at crossing " + std::to_string(other + 1));
                    }
                }
            }
            // components never passing under get their bit from the stored
            // sign when present, otherwise a deterministic default
            if (seed < n && over_bit[seed] == -1) {
                over_bit[seed] = crossings_[seed].sign < 0 ? 1 : 0;
                queue.push_back(seed);
            }
        }
        n_plus_ = n_minus_ = 0;
        for (int k = 0; k < n; ++k) {
            const int deduced = over_bit[k] == 0 ? +1 : -1;
            if (crossings_[k].sign == 0)
                crossings_[k].sign = deduced;
            else if (crossings_[k].sign != deduced)
                throw ValidationError("stored crossing sign disagrees with orientation at crossing " +
                                      std::to_string(k + 1));
            (crossings_[k].sign > 0 ? n_plus_ : n_minus_)++;
        }
    }

    void count_components() {
        // follow strands: entering a crossing on the under-strand leaves on the
        // under-strand, same for over
        std::map<int, int> next;  // arc -> next arc along the orientation
        std::map<int, std::vector<std::pair<int, int>>> at;
        for (int k = 0; k < n_crossings(); ++k)
            for (int p = 0; p < 4; ++p) at[crossings_[k].arcs[p]].push_back({k, p});
        for (int k = 0; k < n_crossings(); ++k) {
            const Crossing& x = crossings_[k];
            next[x.a()] = x.c();
            if (x.sign > 0)
                next[x.b()] = x.d();
            else
                next[x.d()] = x.b();
        }
        component_of_.clear();
        strand_components_ = 0;
        std::set<int> seen;
        for (const auto& [arc, nxt] : next) {
            (void)nxt;
            if (seen.count(arc)) continue;
            std::vector<int> cycle;
            int cur = arc;
            while (!seen.count(cur)) {
                seen.insert(cur);
                cycle.push_back(cur);
                cur = next.at(cur);
            }
            int least = *std::min_element(cycle.begin(), cycle.end());
            for (int a : cycle) component_of_[a] = least;
            ++strand_components_;
        }
        for (int l : free_loops_) component_of_[l] = l;
    }

    std::vector<Crossing> crossings_;
    std::vector<int> free_loops_;
    int basepoint_ = 1;
    int n_plus_ = 0, n_minus_ = 0;
    int strand_components_ = 0;
    std::set<int> arcs_;
    std::map<int, int> component_of_;
};

// Braid word on a fixed number of strands; letters are +-generator indices.
struct BraidWord {
    int strands = 1;
    std::vector<int> letters;

    BraidWord(int s, std::vector<int> l) : strands(s), letters(std::move(l)) {
        if (strands < 1) throw ValidationError("braid needs at least one strand");
        for (int x : letters)
            if (x == 0 || std::abs(x) >= strands)
                throw ValidationError("braid letter " + std::to_string(x) + " out of range for " +
                                      std::to_string(strands) + " strands");
    }

    // cycles of the permutation the word induces on strand positions
    int closure_components() const {
        std::vector<int> perm(strands);
        std::iota(perm.begin(), perm.end(), 0);
        for (int x : letters) std::swap(perm[std::abs(x) - 1], perm[std::abs(x)]);
        std::vector<bool> seen(strands, false);
        int cycles = 0;
        for (int s = 0; s < strands; ++s) {
            if (seen[s]) continue;
            ++cycles;
            for (int t = s; !seen[t]; t = perm[t]) seen[t] = true;
        }
        return cycles;
    }
};

// (sigma_1 ... sigma_{p-1})^q
inline BraidWord torus_braid(int p, int q) {
    if (p < 2 || q < 2) throw ValidationError("torus braid requires p, q >= 2");
    std::vector<int> letters;
    letters.reserve(static_cast<std::size_t>(p - 1) * q);
    for (int rep = 0; rep < q; ++rep)
        for (int g = 1; g < p; ++g) letters.push_back(g);
    return BraidWord(p, std::move(letters));
}

// Standard closure of a braid word, strands oriented downward. Positive
// letters put the left strand on top. Arcs are relabelled 1..2n in order of
// first appearance; untouched strands close into free loops. The basepoint
// sits on the component through strand 1.
inline PlanarDiagram braid_closure(const BraidWord& w) {
    const int s = w.strands;
    int next_label = 1;
    std::vector<int> top(s), cur(s);
    for (int p = 0; p < s; ++p) top[p] = cur[p] = next_label++;

    std::vector<Crossing> crossings;
    std::set<int> touched;
    for (int letter : w.letters) {
        const int g = std::abs(letter);
        const int L = cur[g - 1], R = cur[g];
        const int L2 = next_label++, R2 = next_label++;
        Crossing x;
        if (letter > 0) {
            x.sign = +1;
            x.arcs = {R, L, L2, R2};
        } else {
            x.sign = -1;
            x.arcs = {L, L2, R2, R};
        }
        crossings.push_back(x);
        cur[g - 1] = L2;
        cur[g] = R2;
        touched.insert(g - 1);
        touched.insert(g);
    }
    // close up: the bottom arc of each touched strand is the top arc
    std::map<int, int> rename;
    for (int p = 0; p < s; ++p)
        if (touched.count(p) && cur[p] != top[p]) rename[cur[p]] = top[p];
    for (Crossing& x : crossings)
        for (int& a : x.arcs) {
            auto it = rename.find(a);
            if (it != rename.end()) a = it->second;
        }
    // contiguous labels 1..2n in order of first appearance, then free loops
    std::map<int, int> canon;
    int fresh = 1;
    for (const Crossing& x : crossings)
        for (int a : x.arcs)
            if (!canon.count(a)) canon[a] = fresh++;
    for (Crossing& x : crossings)
        for (int& a : x.arcs) a = canon.at(a);
    std::vector<int> loops;
    std::map<int, int> loop_label;
    for (int p = 0; p < s; ++p)
        if (!touched.count(p)) {
            loops.push_back(fresh);
            loop_label[p] = fresh++;
        }
    const int base = touched.count(0) ? canon.at(top[0]) : loop_label.at(0);
    return PlanarDiagram(std::move(crossings), std::move(loops), base);
}

inline PlanarDiagram mirror(const PlanarDiagram& d) { return d.mirrored(); }

// --- PD text grammar -------------------------------------------------------
//
// whitespace-separated terms:
//   X[a,b,c,d]        crossing tuple
//   U                 extra zero-crossing unknot component
//   B[s; l1,l2,...]   braid word (closure is taken); must be the only X/B term
//   base=<arc>        basepoint annotation (defaults to arc 1)
inline PlanarDiagram parse_pd(const std::string& text) {
    std::vector<Crossing> crossings;
    int u_count = 0;
    int base = -1;
    bool saw_braid = false;
    BraidWord braid(1, {});

    std::size_t pos = 0;
    auto fail = [&](const std::string& msg, std::size_t at) {
        throw ParseError("parse error at position " + std::to_string(at) + ": " + msg);
    };
    auto skip_ws = [&] {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    };
    auto read_int = [&]() -> int {
        skip_ws();
        std::size_t start = pos;
        if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) ++pos;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
        if (pos == start) fail("expected integer", start);
        return std::stoi(text.substr(start, pos - start));
    };
    auto expect = [&](char c) {
        skip_ws();
        if (pos >= text.size() || text[pos] != c) fail(std::string("expected '") + c + "'", pos);
        ++pos;
    };

    while (true) {
        skip_ws();
        if (pos >= text.size()) break;
        const std::size_t term_at = pos;
        if (text[pos] == 'X') {
            ++pos;
            expect('[');
            Crossing x;
            for (int k = 0; k < 4; ++k) {
                x.arcs[k] = read_int();
                if (x.arcs[k] <= 0) fail("arc labels must be positive", term_at);
                if (k < 3) expect(',');
            }
            expect(']');
            crossings.push_back(x);
        } else if (text[pos] == 'U') {
            ++pos;
            ++u_count;
        } else if (text[pos] == 'B') {
            if (saw_braid) fail("only one braid term allowed", term_at);
            ++pos;
            expect('[');
            const int strands = read_int();
            expect(';');
            std::vector<int> letters;
            skip_ws();
            if (pos < text.size() && text[pos] != ']') {
                letters.push_back(read_int());
                skip_ws();
                while (pos < text.size() && text[pos] == ',') {
                    ++pos;
                    letters.push_back(read_int());
                    skip_ws();
                }
            }
            expect(']');
            braid = BraidWord(strands, std::move(letters));
            saw_braid = true;
        } else if (text.compare(pos, 5, "base=") == 0) {
            pos += 5;
            base = read_int();
        } else {
            fail("unknown term", pos);
        }
    }

    if (saw_braid) {
        if (!crossings.empty()) throw ParseError("braid and crossing terms cannot be mixed");
        PlanarDiagram d = braid_closure(braid);
        std::vector<int> loops = d.free_loops();
        int label = d.max_arc_label();
        for (int k = 0; k < u_count; ++k) loops.push_back(++label);
        return PlanarDiagram(d.crossings(), std::move(loops), base > 0 ? base : d.basepoint());
    }
    std::vector<int> loops;
    int label = 0;
    for (const Crossing& x : crossings)
        for (int a : x.arcs) label = std::max(label, a);
    for (int k = 0; k < u_count; ++k) loops.push_back(++label);
    if (crossings.empty() && loops.empty()) throw ParseError("empty PD code");
    if (base <= 0) base = crossings.empty() ? loops.front() : 1;
    return PlanarDiagram(std::move(crossings), std::move(loops), base);
}

}  // namespace khmin
