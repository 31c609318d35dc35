#pragma once

#include <string>

#include "khmin/rational.hpp"

namespace khmin {

// The two-dimensional Frobenius algebra Q[X]/(X^2 - t) with basis {1, X},
// counit eps(1) = 0, eps(X) = 1. t = 0 gives the Khovanov theory, t = 1 the
// Lee deformation. Reduced complexes pin the basepoint circle to the rank-one
// ideal spanned by u = X - c where c^2 = t, so c = t on the two specs we use.
//
// quantum degrees: deg 1 = +1, deg X = deg u = -1.
struct FrobeniusSpec {
    std::string name;
    Rational t;
    Rational c;

    static const FrobeniusSpec& khovanov() {
        static const FrobeniusSpec spec{"Khovanov", Rational(0), Rational(0)};
        return spec;
    }
    static const FrobeniusSpec& lee() {
        static const FrobeniusSpec spec{"Lee", Rational(1), Rational(1)};
        return spec;
    }

    bool operator==(const FrobeniusSpec& o) const { return name == o.name; }
};

// label values on circles; ONE is the unit (often written v_plus), EX is X
// (v_minus). BP marks the pinned basepoint generator u in reduced complexes.
enum class Label : unsigned char { ONE = 0, EX = 1 };

inline int label_degree(Label l) { return l == Label::ONE ? +1 : -1; }

}  // namespace khmin
