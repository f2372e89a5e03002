#include "cspec/ratfn.hpp"

#include <sstream>
#include <utility>

#include "cspec/errors.hpp"

namespace cspec {

Rational frac(long long a, long long b) {
    if (b == 0) throw ComputationError("zero denominator");
    Rational q{mpz_class(std::to_string(a)), mpz_class(std::to_string(b))};
    q.canonicalize();
    return q;
}

std::string to_string(const Rational& q) {
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Rational parse_rational(const std::string& text) {
    Rational q;
    if (q.set_str(text, 10) != 0) throw UsageError("not a rational number: '" + text + "'");
    q.canonicalize();
    if (q.get_den() == 0) throw UsageError("zero denominator in '" + text + "'");
    return q;
}

// ---------------------------------------------------------------- Poly

Poly::Poly(const Rational& constant) {
    if (constant != 0) coeffs_.push_back(constant);
}

Poly::Poly(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

Poly Poly::monomial(const Rational& a, int degree) {
    Poly p;
    if (a == 0) return p;
    p.coeffs_.assign(static_cast<size_t>(degree) + 1, Rational(0));
    p.coeffs_.back() = a;
    return p;
}

void Poly::trim() {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

Rational Poly::coeff(int i) const {
    if (i < 0 || i >= static_cast<int>(coeffs_.size())) return Rational(0);
    return coeffs_[static_cast<size_t>(i)];
}

Poly Poly::operator-() const {
    Poly r = *this;
    for (auto& c : r.coeffs_) c = -c;
    return r;
}

Poly& Poly::operator+=(const Poly& o) {
    if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size(), Rational(0));
    for (size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
    trim();
    return *this;
}

Poly& Poly::operator-=(const Poly& o) {
    if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size(), Rational(0));
    for (size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
    trim();
    return *this;
}

Poly& Poly::operator*=(const Poly& o) {
    if (is_zero() || o.is_zero()) {
        coeffs_.clear();
        return *this;
    }
    std::vector<Rational> out(coeffs_.size() + o.coeffs_.size() - 1, Rational(0));
    for (size_t i = 0; i < coeffs_.size(); ++i) {
        if (coeffs_[i] == 0) continue;
        for (size_t j = 0; j < o.coeffs_.size(); ++j) out[i + j] += coeffs_[i] * o.coeffs_[j];
    }
    coeffs_ = std::move(out);
    trim();
    return *this;
}

Poly& Poly::operator*=(const Rational& s) {
    if (s == 0) {
        coeffs_.clear();
        return *this;
    }
    for (auto& c : coeffs_) c *= s;
    return *this;
}

void Poly::divmod(const Poly& d, Poly& q, Poly& r) const {
    if (d.is_zero()) throw ComputationError("polynomial division by zero");
    r = *this;
    q = Poly();
    if (degree() < d.degree()) return;
    std::vector<Rational> qc(static_cast<size_t>(degree() - d.degree()) + 1, Rational(0));
    const Rational lead = d.leading();
    while (!r.is_zero() && r.degree() >= d.degree()) {
        const int shift = r.degree() - d.degree();
        const Rational f = r.leading() / lead;
        qc[static_cast<size_t>(shift)] = f;
        for (int i = 0; i <= d.degree(); ++i) {
            r.coeffs_[static_cast<size_t>(i + shift)] -= f * d.coeffs_[static_cast<size_t>(i)];
        }
        r.trim();
    }
    q = Poly(std::move(qc));
}

Poly Poly::derivative() const {
    if (coeffs_.size() <= 1) return Poly();
    std::vector<Rational> out(coeffs_.size() - 1);
    for (size_t i = 1; i < coeffs_.size(); ++i) out[i - 1] = coeffs_[i] * static_cast<long>(i);
    return Poly(std::move(out));
}

Poly Poly::monic() const {
    if (is_zero()) return *this;
    Poly r = *this;
    const Rational lead = leading();
    for (auto& c : r.coeffs_) c /= lead;
    return r;
}

Rational Poly::eval(const Rational& x) const {
    Rational acc = 0;
    for (size_t i = coeffs_.size(); i-- > 0;) acc = acc * x + coeffs_[i];
    return acc;
}

std::complex<double> Poly::eval(std::complex<double> x) const {
    std::complex<double> acc = 0.0;
    for (size_t i = coeffs_.size(); i-- > 0;) acc = acc * x + coeffs_[i].get_d();
    return acc;
}

std::string Poly::to_string() const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (size_t i = coeffs_.size(); i-- > 0;) {
        const Rational& c = coeffs_[i];
        if (c == 0) continue;
        Rational mag = abs(c);
        if (first) {
            if (c < 0) os << "-";
        } else {
            os << (c < 0 ? " - " : " + ");
        }
        first = false;
        if (i == 0) {
            os << cspec::to_string(mag);
            continue;
        }
        if (mag != 1) os << cspec::to_string(mag) << "*";
        os << "D";
        if (i > 1) os << "^" << i;
    }
    return os.str();
}

Poly gcd(Poly a, Poly b) {
    while (!b.is_zero()) {
        Poly q, r;
        a.divmod(b, q, r);
        a = std::move(b);
        b = r.monic();
    }
    return a.monic();
}

// ---------------------------------------------------------- RationalFn

RationalFn::RationalFn(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) throw ComputationError("rational function with zero denominator");
    normalize();
}

RationalFn RationalFn::geometric(const Rational& a, int b, const Rational& r, int period) {
    return RationalFn(Poly::monomial(a, b), Poly(Rational(1)) - Poly::monomial(r, period));
}

void RationalFn::normalize() {
    if (num_.is_zero()) {
        den_ = Poly(Rational(1));
        return;
    }
    if (den_.degree() > 0) {
        Poly g = gcd(num_, den_);
        if (g.degree() > 0) {
            Poly q, r;
            num_.divmod(g, q, r);
            num_ = q;
            den_.divmod(g, q, r);
            den_ = q;
        }
    }
    const Rational lead = den_.leading();
    if (lead != 1) {
        const Rational inv = 1 / lead;
        num_ *= inv;
        den_ *= inv;
    }
}

RationalFn RationalFn::operator-() const {
    RationalFn r = *this;
    r.num_ = -r.num_;
    return r;
}

RationalFn& RationalFn::operator+=(const RationalFn& o) {
    if (o.is_zero()) return *this;
    if (is_zero()) return *this = o;
    if (den_ == o.den_) {
        num_ += o.num_;
    } else {
        num_ = num_ * o.den_ + o.num_ * den_;
        den_ *= o.den_;
    }
    normalize();
    return *this;
}

RationalFn& RationalFn::operator-=(const RationalFn& o) { return *this += -o; }

RationalFn& RationalFn::operator*=(const RationalFn& o) {
    num_ *= o.num_;
    den_ *= o.den_;
    normalize();
    return *this;
}

RationalFn& RationalFn::operator/=(const RationalFn& o) {
    if (o.is_zero()) throw ComputationError("division by the zero rational function");
    num_ *= o.den_;
    den_ *= o.num_;
    normalize();
    return *this;
}

RationalFn RationalFn::derivative() const {
    return RationalFn(num_.derivative() * den_ - num_ * den_.derivative(), den_ * den_);
}

Rational RationalFn::eval(const Rational& x) const {
    const Rational d = den_.eval(x);
    if (d == 0) throw ComputationError("pole of " + to_string() + " at D = " + cspec::to_string(x));
    return num_.eval(x) / d;
}

std::complex<double> RationalFn::eval(std::complex<double> x) const {
    return num_.eval(x) / den_.eval(x);
}

std::vector<Rational> RationalFn::series(int n) const {
    const Rational d0 = den_.coeff(0);
    if (d0 == 0) throw ComputationError("series expansion needs a nonzero constant denominator term");
    std::vector<Rational> out(static_cast<size_t>(n), Rational(0));
    for (int k = 0; k < n; ++k) {
        Rational acc = num_.coeff(k);
        for (int j = 1; j <= k && j <= den_.degree(); ++j) acc -= den_.coeff(j) * out[static_cast<size_t>(k - j)];
        out[static_cast<size_t>(k)] = acc / d0;
    }
    return out;
}

std::string RationalFn::to_string() const {
    if (den_.degree() == 0) return num_.to_string();
    return "(" + num_.to_string() + ") / (" + den_.to_string() + ")";
}

}  // namespace cspec
