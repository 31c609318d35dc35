#pragma once

#include <functional>
#include <map>
#include <sstream>
#include <string>

#include "khmin/diagram.hpp"
#include "khmin/rational.hpp"

namespace khmin {

// Laurent polynomial with integer coefficients; key = exponent.
using LaurentPoly = std::map<int, Integer>;

inline LaurentPoly laurent_mul(const LaurentPoly& a, const LaurentPoly& b) {
    LaurentPoly out;
    for (const auto& [ea, ca] : a)
        for (const auto& [eb, cb] : b) {
            auto& cell = out[ea + eb];
            cell += ca * cb;
            if (cell == 0) out.erase(ea + eb);
        }
    return out;
}

inline void laurent_add(LaurentPoly& a, const LaurentPoly& b) {
    for (const auto& [e, c] : b) {
        auto& cell = a[e];
        cell += c;
        if (cell == 0) a.erase(e);
    }
}

inline std::string laurent_to_string(const LaurentPoly& p, const std::string& var = "q") {
    if (p.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : p) {
        if (c > 0 && !first) os << " + ";
        if (c < 0) os << (first ? "-" : " - ");
        const Integer mag = c < 0 ? Integer(-c) : c;
        if (mag != 1 || e == 0) os << mag.str();
        if (e != 0) {
            if (mag != 1) os << "*";
            os << var;
            if (e != 1) os << "^" << e;
        }
        first = false;
    }
    return os.str();
}

// Jones polynomial by the Kauffman bracket state sum, normalized so the
// unknot maps to 1 and written in the variable q with
//   J(q) = sum over states, matching the graded Euler characteristic
// convention sum_{i,j} (-1)^i q^j dim Kh_{i,j}.
//
// This routine is an independent oracle: it has its own state enumeration and
// circle counting and shares nothing with the homology pipeline.
inline LaurentPoly jones_polynomial(const PlanarDiagram& d) {
    if (!d.is_knot()) throw ValidationError("jones_polynomial expects a knot diagram");
    const int n = d.n_crossings();
    const auto& xs = d.crossings();

    // bracket in the variable A
    LaurentPoly bracket;
    const LaurentPoly loop_value{{2, Integer(-1)}, {-2, Integer(-1)}};  // -A^2 - A^-2
    for (std::uint64_t state = 0; state < (std::uint64_t{1} << n); ++state) {
        // circle count by elementary scanning over arc identifications
        std::map<int, int> parent;
        for (int a : d.arcs()) parent[a] = a;
        std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
        int exponent = 0;
        for (int k = 0; k < n; ++k) {
            const auto& t = xs[k].arcs;
            if (state >> k & 1) {
                parent[find(t[0])] = find(t[1]);
                parent[find(t[2])] = find(t[3]);
                exponent -= 1;
            } else {
                parent[find(t[0])] = find(t[3]);
                parent[find(t[1])] = find(t[2]);
                exponent += 1;
            }
        }
        std::map<int, bool> roots;
        for (int a : d.arcs()) roots[find(a)] = true;
        const int circles = static_cast<int>(roots.size());

        LaurentPoly term{{exponent, Integer(1)}};
        for (int c = 1; c < circles; ++c) term = laurent_mul(term, loop_value);
        laurent_add(bracket, term);
    }

    // normalize: f = (-A^3)^(-w) * bracket, then substitute t = A^-4 = q^2
    const int w = d.writhe();
    LaurentPoly f;
    for (const auto& [e, c] : bracket) {
        const Integer coef = (w % 2 == 0) ? c : -c;
        const int ee = e - 3 * w;
        auto& cell = f[ee];
        cell += coef;
        if (cell == 0) f.erase(ee);
    }
    LaurentPoly out;
    for (const auto& [e, c] : f) {
        if (e % 4 != 0) throw std::logic_error("non-integral Jones exponent on a knot");
        out[-e / 2] = c;
    }
    return out;
}

}  // namespace khmin
