#pragma once

#include <gmpxx.h>

#include <complex>
#include <string>
#include <vector>

namespace cspec {

using Rational = mpq_class;

// Canonical a/b; b must be nonzero.
Rational frac(long long a, long long b);
std::string to_string(const Rational& q);
Rational parse_rational(const std::string& text);

// Dense univariate polynomial in D with exact rational coefficients.
// coeffs_[i] multiplies D^i; trailing zeros are always trimmed.
class Poly {
public:
    Poly() = default;
    Poly(const Rational& constant);  // NOLINT(google-explicit-constructor)
    explicit Poly(std::vector<Rational> coeffs);

    static Poly monomial(const Rational& a, int degree);

    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    bool is_zero() const { return coeffs_.empty(); }
    Rational coeff(int i) const;
    const Rational& leading() const { return coeffs_.back(); }
    const std::vector<Rational>& coeffs() const { return coeffs_; }

    Poly operator-() const;
    Poly& operator+=(const Poly& o);
    Poly& operator-=(const Poly& o);
    Poly& operator*=(const Poly& o);
    Poly& operator*=(const Rational& s);
    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator*(Poly a, const Poly& b) { return a *= b; }
    friend Poly operator*(Poly a, const Rational& s) { return a *= s; }
    friend bool operator==(const Poly& a, const Poly& b) { return a.coeffs_ == b.coeffs_; }

    // Euclidean division: *this = q * d + r with deg r < deg d.
    void divmod(const Poly& d, Poly& q, Poly& r) const;
    Poly derivative() const;
    Poly monic() const;

    Rational eval(const Rational& x) const;
    std::complex<double> eval(std::complex<double> x) const;

    std::string to_string() const;

private:
    void trim();
    std::vector<Rational> coeffs_;
};

Poly gcd(Poly a, Poly b);

// Ratio of two polynomials kept in canonical form: common factors removed
// and the denominator made monic, so structural equality is exact.
class RationalFn {
public:
    RationalFn() : num_(), den_(Rational(1)) {}
    RationalFn(const Rational& c) : num_(c), den_(Rational(1)) {}  // NOLINT
    RationalFn(const Poly& p) : num_(p), den_(Rational(1)) {}      // NOLINT
    RationalFn(Poly num, Poly den);

    // a * D^b / (1 - r * D^period): one geometric family of run lengths.
    static RationalFn geometric(const Rational& a, int b, const Rational& r, int period);

    const Poly& num() const { return num_; }
    const Poly& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }

    RationalFn operator-() const;
    RationalFn& operator+=(const RationalFn& o);
    RationalFn& operator-=(const RationalFn& o);
    RationalFn& operator*=(const RationalFn& o);
    RationalFn& operator/=(const RationalFn& o);
    friend RationalFn operator+(RationalFn a, const RationalFn& b) { return a += b; }
    friend RationalFn operator-(RationalFn a, const RationalFn& b) { return a -= b; }
    friend RationalFn operator*(RationalFn a, const RationalFn& b) { return a *= b; }
    friend RationalFn operator/(RationalFn a, const RationalFn& b) { return a /= b; }
    friend bool operator==(const RationalFn& a, const RationalFn& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const RationalFn& a, const RationalFn& b) { return !(a == b); }

    RationalFn derivative() const;
    // Throws ComputationError when x is a pole.
    Rational eval(const Rational& x) const;
    std::complex<double> eval(std::complex<double> x) const;
    // First n power-series coefficients around D = 0 (requires den(0) != 0).
    std::vector<Rational> series(int n) const;

    // "num(D) / den(D)" with the denominator omitted when it is 1.
    std::string to_string() const;

private:
    void normalize();
    Poly num_;
    Poly den_;
};

}  // namespace cspec
