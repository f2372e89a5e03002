#pragma once

// Matrices transcribed by hand from the published displays, used as
// fixtures for the closed-form generators.

#include "cspec/transfer.hpp"

namespace fixtures {

using cspec::Poly;
using cspec::Rational;
using cspec::RationalFn;
using cspec::TransferMatrix;

inline RationalFn mono(const Rational& a, int b) { return RationalFn(Poly::monomial(a, b)); }

// a D^b / (12 - D^5)
inline RationalFn beta(const Rational& a, int b) {
    return RationalFn(Poly::monomial(a, b), Poly(std::vector<Rational>{12, 0, 0, 0, 0, -1}));
}

// D^{2+x} / (2 (2 - D))
inline RationalFn alpha(int x) {
    return RationalFn(Poly::monomial(1, 2 + x), Poly(std::vector<Rational>{4, -2}));
}

// A-LOCO, m = 4, x = 1.
inline TransferMatrix aloco_4_1() {
    TransferMatrix g(5);
    const Rational r35(3, 5), r25(2, 5), r15(1, 5), r53(5, 3), r23(2, 3), r13(1, 3), r52(5, 2), r32(3, 2),
        r12(1, 2), r512(5, 12);
    g.at(0, 0) = beta(1, 5);
    g.at(0, 1) = mono(r35, 1) + beta(r35, 6);
    g.at(0, 2) = beta(r25, 7);
    g.at(0, 3) = mono(r15, 3) + beta(r15, 8);
    g.at(1, 0) = beta(r53, 4);
    g.at(1, 1) = beta(1, 5);
    g.at(1, 2) = mono(r23, 1) + beta(r23, 6);
    g.at(1, 3) = beta(r13, 7);
    g.at(2, 0) = beta(r52, 3);
    g.at(2, 1) = beta(r32, 4);
    g.at(2, 2) = beta(1, 5);
    g.at(2, 3) = mono(r12, 1) + beta(r12, 6);
    g.at(3, 0) = beta(r512, 7);
    g.at(3, 1) = beta(3, 3);
    g.at(3, 2) = beta(2, 4);
    g.at(3, 3) = beta(1, 5);
    g.at(3, 4) = mono(r512, 1);
    g.at(4, 0) = mono(1, 1);
    return g;
}

// Bit-flipped A signal of LOCO, m = 4, x = 1.
inline TransferMatrix loco_a_4_1() {
    TransferMatrix g(8);
    g.at(0, 1) = mono(Rational(3, 5), 1);
    g.at(0, 6) = mono(Rational(1, 5), 3);
    g.at(0, 7) = mono(Rational(1, 5), 4);
    g.at(1, 2) = mono(Rational(2, 3), 1);
    g.at(1, 7) = mono(Rational(1, 3), 3);
    g.at(2, 3) = mono(Rational(1, 2), 1);
    g.at(2, 7) = mono(Rational(1, 2), 2);
    g.at(3, 7) = mono(1, 1);
    g.at(4, 2) = mono(1, 1);
    g.at(5, 3) = mono(1, 1);
    g.at(6, 7) = mono(1, 1);
    g.at(7, 0) = mono(Rational(1, 2), 1);
    g.at(7, 4) = mono(Rational(1, 5), 2);
    g.at(7, 5) = mono(Rational(1, 10), 3);
    g.at(7, 6) = mono(Rational(1, 10), 4);
    g.at(7, 7) = mono(Rational(1, 10), 5);
    return g;
}

}  // namespace fixtures
