#include <doctest.h>

#include "cspec/errors.hpp"
#include "cspec/ratfn.hpp"

using namespace cspec;

TEST_SUITE("ratfn") {

TEST_CASE("frac is canonical") {
    CHECK(frac(6, 4) == Rational(3, 2));
    CHECK(to_string(frac(6, 4)) == "3/2");
    CHECK(to_string(frac(-4, -2)) == "2");
    CHECK(to_string(frac(0, 7)) == "0");
    CHECK(parse_rational("10/4") == Rational(5, 2));
    CHECK(parse_rational("-3") == Rational(-3));
}

TEST_CASE("polynomial arithmetic") {
    const Poly a(std::vector<Rational>{1, 1});   // 1 + D
    const Poly b(std::vector<Rational>{-1, 1});  // D - 1
    const Poly prod = a * b;                      // D^2 - 1
    CHECK(prod.degree() == 2);
    CHECK(prod.coeff(0) == -1);
    CHECK(prod.coeff(1) == 0);
    CHECK(prod.coeff(2) == 1);
    Poly q, r;
    prod.divmod(a, q, r);
    CHECK(q == b);
    CHECK(r.is_zero());
    CHECK(gcd(prod, a * a).monic() == a.monic());
    CHECK((a - a).is_zero());
    CHECK(prod.derivative() == Poly::monomial(2, 1));
}

TEST_CASE("rational functions are normalized") {
    // (D^2 - 1) / (2D + 2) = (D - 1) / 2
    const RationalFn f(Poly(std::vector<Rational>{-1, 0, 1}), Poly(std::vector<Rational>{2, 2}));
    CHECK(f.den().degree() == 0);
    CHECK(f.den().leading() == 1);
    CHECK(f == RationalFn(Poly(std::vector<Rational>{Rational(-1, 2), Rational(1, 2)})));
    CHECK(f - f == RationalFn(Rational(0)));
}

TEST_CASE("geometric run-length family") {
    // sum_k (1/2)^k D^k = D / (2 - D)
    const RationalFn g = RationalFn::geometric(Rational(1, 2), 1, Rational(1, 2), 1);
    const RationalFn expect(Poly::monomial(1, 1), Poly(std::vector<Rational>{2, -1}));
    CHECK(g == expect);
    CHECK(g.eval(Rational(1)) == 1);
    const auto s = g.series(5);
    CHECK(s[0] == 0);
    CHECK(s[1] == Rational(1, 2));
    CHECK(s[4] == Rational(1, 16));
    CHECK(std::abs(g.eval(std::complex<double>(-1, 0)) - std::complex<double>(-1.0 / 3, 0)) < 1e-15);
}

TEST_CASE("derivative by the quotient rule") {
    // alpha = D^3 / (2 (2 - D)); alpha'(1) = 3/2 + 1/2 = 2
    const RationalFn alpha(Poly::monomial(1, 3), Poly(std::vector<Rational>{4, -2}));
    CHECK(alpha.eval(Rational(1)) == Rational(1, 2));
    CHECK(alpha.derivative().eval(Rational(1)) == 2);
}

TEST_CASE("poles are reported") {
    const RationalFn g(Poly::monomial(1, 1), Poly(std::vector<Rational>{2, -1}));
    CHECK_THROWS_AS(g.eval(Rational(2)), ComputationError);
}

TEST_CASE("printing") {
    const RationalFn g(Poly::monomial(1, 1), Poly(std::vector<Rational>{2, -1}));
    CHECK(g.to_string() == "(-D) / (D - 2)");
    CHECK(RationalFn(Poly::monomial(Rational(1, 2), 1)).to_string() == "1/2*D");
}

}
