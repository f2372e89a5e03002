#include "cspec/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>

#include "cspec/cyclo.hpp"
#include "cspec/errors.hpp"
#include "cspec/parallel.hpp"

namespace cspec {

std::string method_name(Method m) {
    switch (m) {
        case Method::Auto: return "auto";
        case Method::ClosedForm: return "closed-form";
        case Method::Grid: return "grid";
        case Method::Alternate: return "alternate";
    }
    return "?";
}

Method parse_method(const std::string& name) {
    if (name == "auto") return Method::Auto;
    if (name == "closed-form") return Method::ClosedForm;
    if (name == "grid") return Method::Grid;
    if (name == "alternate") return Method::Alternate;
    throw UsageError("unknown method '" + name + "' (auto, closed-form, grid, alternate)");
}

// ------------------------------------------------------ exact linear algebra

namespace {

// Solves A y = b exactly; throws when A is singular.
std::vector<Rational> solve_exact(RationalMatrix a, std::vector<Rational> b) {
    const size_t n = a.size();
    for (size_t col = 0; col < n; ++col) {
        size_t piv = col;
        while (piv < n && a[piv][col] == 0) ++piv;
        if (piv == n) throw ComputationError("singular system");
        std::swap(a[piv], a[col]);
        std::swap(b[piv], b[col]);
        for (size_t r = 0; r < n; ++r) {
            if (r == col || a[r][col] == 0) continue;
            const Rational f = a[r][col] / a[col][col];
            for (size_t c = col; c < n; ++c) a[r][c] -= f * a[col][c];
            b[r] -= f * b[col];
        }
    }
    for (size_t i = 0; i < n; ++i) b[i] /= a[i][i];
    return b;
}

Rational dot(const std::vector<Rational>& a, const std::vector<Rational>& b) {
    Rational s = 0;
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

std::vector<Rational> row_times(const std::vector<Rational>& v, const RationalMatrix& m) {
    std::vector<Rational> out(m.size(), Rational(0));
    for (size_t i = 0; i < m.size(); ++i)
        for (size_t j = 0; j < m.size(); ++j) out[j] += v[i] * m[i][j];
    return out;
}

std::vector<Rational> times_col(const RationalMatrix& m, const std::vector<Rational>& v) {
    std::vector<Rational> out(m.size(), Rational(0));
    for (size_t i = 0; i < m.size(); ++i)
        for (size_t j = 0; j < m.size(); ++j) out[i] += m[i][j] * v[j];
    return out;
}

}  // namespace

std::vector<Rational> stationary_distribution(const TransferMatrix& g) {
    const size_t n = g.size();
    if (n == 0) throw ComputationError("empty transfer matrix");
    const RationalMatrix g1 = g.at_one();
    // (I - G(1))^T pi^T = 0 with the last equation replaced by sum(pi) = 1.
    RationalMatrix a(n, std::vector<Rational>(n));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) a[i][j] = (i == j ? Rational(1) : Rational(0)) - g1[j][i];
    for (size_t j = 0; j < n; ++j) a[n - 1][j] = 1;
    std::vector<Rational> b(n, Rational(0));
    b[n - 1] = 1;
    std::vector<Rational> pi;
    try {
        pi = solve_exact(a, b);
    } catch (const ComputationError&) {
        throw ComputationError("no unique stationary distribution for " + g.family);
    }
    for (const auto& v : pi) {
        if (v < 0) throw ComputationError("stationary distribution has a negative entry for " + g.family);
    }
    return pi;
}

Rational prob_one(const TransferMatrix& g, const std::vector<Rational>& pi) {
    const RationalMatrix d = g.derivative_at_one();
    const std::vector<Rational> u(g.size(), Rational(1));
    const Rational mean_run = dot(pi, times_col(d, u));
    if (mean_run <= 0) throw ComputationError("non-positive mean run length");
    return 1 / mean_run;
}

// ------------------------------------------------------- SpectrumContext

namespace {

// Inside this distance from D = 1 the direct resolvents lose accuracy to the
// cancelling poles, so the regularized form is used instead.
constexpr double kRegularRadius = 0.25;

}  // namespace

namespace {

// f(1/D) as a rational function in D.
RationalFn reciprocal(const RationalFn& f) {
    if (f.is_zero()) return f;
    auto reversed = [](const Poly& p) {
        std::vector<Rational> c = p.coeffs();
        std::reverse(c.begin(), c.end());
        return Poly(std::move(c));
    };
    const int shift = f.den().degree() - f.num().degree();
    Poly num = reversed(f.num());
    Poly den = reversed(f.den());
    if (shift >= 0) {
        num *= Poly::monomial(1, shift);
    } else {
        den *= Poly::monomial(1, -shift);
    }
    return RationalFn(std::move(num), std::move(den));
}

// (f(1) - f(D)) / (1 - D), exact; f must be finite at D = 1.
RationalFn slope_at_one(const RationalFn& f) {
    const Poly one_minus_d(std::vector<Rational>{Rational(1), Rational(-1)});
    const Poly diff = f.den() * f.eval(Rational(1)) - f.num();
    Poly q, r;
    diff.divmod(one_minus_d, q, r);
    if (!r.is_zero()) throw ComputationError("difference quotient at D = 1 is not exact");
    return RationalFn(std::move(q), f.den());
}

TransferMatrix scalar_matrix(const RationalFn& f) {
    TransferMatrix m(1);
    m.at(0, 0) = f;
    return m;
}

std::complex<double> scalar_value(const CompiledMatrix& c, std::complex<double> D) {
    Eigen::MatrixXcd out;
    c.evaluate(D, out);
    return out(0, 0);
}

}  // namespace

SpectrumContext::SpectrumContext(TransferMatrix g)
    : g_(std::move(g)), compiled_(g_), pi_(stationary_distribution(g_)), p1_(prob_one(g_, pi_)) {
    const size_t n = g_.size();
    pi_d_.resize(static_cast<Eigen::Index>(n));
    for (size_t i = 0; i < n; ++i) pi_d_(static_cast<Eigen::Index>(i)) = pi_[i].get_d();
    p1_d_ = p1_.get_d();

    TransferMatrix slope(n);
    RationalFn s;
    for (size_t i = 0; i < n; ++i) {
        RationalFn row;
        for (size_t j = 0; j < n; ++j) {
            if (g_.at(i, j).is_zero()) continue;
            slope.at(i, j) = slope_at_one(g_.at(i, j));
            row += slope.at(i, j);
        }
        s += RationalFn(pi_[i]) * row;
    }
    const RationalFn numerator = reciprocal(s) - RationalFn(Poly::monomial(1, 1)) * s;
    const Poly one_minus_d(std::vector<Rational>{Rational(1), Rational(-1)});
    Poly q, r;
    numerator.num().divmod(one_minus_d, q, r);
    if (!r.is_zero()) throw ComputationError("pole terms do not cancel at D = 1 for " + g_.family);
    slope_ = CompiledMatrix(slope);
    s_ = CompiledMatrix(scalar_matrix(s));
    t_ = CompiledMatrix(scalar_matrix(RationalFn(q, numerator.den())));

    const RationalMatrix g1 = g_.at_one();
    bordered_.resize(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j)
            bordered_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
                Rational((i == j ? Rational(1) : Rational(0)) - g1[i][j] + pi_[j]).get_d();
}

std::complex<double> SpectrumContext::resolvent_remainder(std::complex<double> D) const {
    // Split v = (I - G(D))^{-1} u^T as v = alpha u^T + w with pi w = 0. Using
    // I - G(D) = I - G(1) + (1 - D) F(D) gives alpha = 1 / ((1 - D) s) - pi F w / s,
    // and w solves a system that stays well conditioned as D -> 1.
    const auto n = static_cast<Eigen::Index>(g_.size());
    const std::complex<double> delta = 1.0 - D;
    Eigen::MatrixXcd f;
    slope_.evaluate(D, f);
    const std::complex<double> s = scalar_value(s_, D);
    const Eigen::VectorXcd u = Eigen::VectorXcd::Ones(n);
    const Eigen::VectorXcd pi = pi_d_.cast<std::complex<double>>();
    const Eigen::VectorXcd fu = f * u;
    const Eigen::RowVectorXcd pif = pi.transpose() * f;
    const Eigen::MatrixXcd k = bordered_.cast<std::complex<double>>() + delta * (f - fu * pif / s);
    Eigen::PartialPivLU<Eigen::MatrixXcd> lu(k);
    if (!(lu.rcond() > 1e-13)) throw ComputationError("regularized resolvent is singular for " + g_.family);
    const Eigen::VectorXcd w = lu.solve(u - fu / s);
    return -(pif * w)(0) / s;
}

std::complex<double> SpectrumContext::regular_resolvent_sum(std::complex<double> D) const {
    const std::complex<double> inv = 1.0 / D;
    const std::complex<double> poles = scalar_value(t_, D) / (scalar_value(s_, D) * scalar_value(s_, inv));
    return poles + resolvent_remainder(D) + resolvent_remainder(inv);
}

double SpectrumContext::quadratic_form(std::complex<double> D, double sign) const {
    if (sign < 0 && std::abs(1.0 - D) < kRegularRadius) {
        const std::complex<double> total = regular_resolvent_sum(D) - 1.0;
        if (std::abs(total.imag()) > 1e-9 * std::max(1.0, std::abs(total.real()))) {
            throw ComputationError("spectrum has a non-negligible imaginary part");
        }
        return total.real();
    }
    const auto n = static_cast<Eigen::Index>(g_.size());
    const Eigen::VectorXcd u = Eigen::VectorXcd::Ones(n);
    const Eigen::MatrixXcd I = Eigen::MatrixXcd::Identity(n, n);
    Eigen::MatrixXcd gd;
    std::complex<double> total = -1.0;  // pi u^T = 1
    for (std::complex<double> z : {D, 1.0 / D}) {
        compiled_.evaluate(z, gd);
        Eigen::PartialPivLU<Eigen::MatrixXcd> lu(I + sign * gd);
        if (!(lu.rcond() > 1e-13)) {
            throw DiscreteFrequencyError("I - G(D) is singular at D = (" + std::to_string(D.real()) + ", " +
                                         std::to_string(D.imag()) +
                                         "); this is a spectral-line frequency, use the cyclostationary analysis");
        }
        const Eigen::VectorXcd v = lu.solve(u);
        total += pi_d_.cast<std::complex<double>>().dot(v);
    }
    if (std::abs(total.imag()) > 1e-9 * std::max(1.0, std::abs(total.real()))) {
        throw ComputationError("spectrum has a non-negligible imaginary part");
    }
    return total.real();
}

double SpectrumContext::psd_X(std::complex<double> D) const { return p1_d_ * quadratic_form(D, -1.0); }

double SpectrumContext::psd_V(std::complex<double> D) const { return 4.0 * p1_d_ * quadratic_form(D, 1.0); }

Rational SpectrumContext::psd_X_dc_limit() const {
    // Expand (I - G(D))^{-1} u^T around D = 1 as a Laurent series: with
    // A0 = I - G(1), A1 = G'(1), A2 = -G''(1)/2 the pole and constant terms
    // follow from two solves against the bordered matrix A0 + u^T pi.
    const size_t n = g_.size();
    const RationalMatrix g1 = g_.at_one();
    const RationalMatrix d1 = g_.derivative_at_one();
    const RationalMatrix d2 = g_.second_derivative_at_one();
    const Rational& a = p1_;
    const std::vector<Rational> u(n, Rational(1));

    RationalMatrix z(n, std::vector<Rational>(n));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) z[i][j] = (i == j ? Rational(1) : Rational(0)) - g1[i][j] + pi_[j];
    std::vector<Rational> r = times_col(d1, u);
    for (size_t i = 0; i < n; ++i) r[i] = 1 - a * r[i];
    const std::vector<Rational> y = solve_exact(z, r);

    RationalMatrix a2(n, std::vector<Rational>(n));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) a2[i][j] = -d2[i][j] / 2;
    const Rational b = a * (-a * dot(pi_, times_col(a2, u)) - dot(row_times(pi_, d1), y));
    const Rational d = dot(pi_, y) + b;
    return a * (2 * d + a - 1);
}

// ------------------------------------------------------------ mapping

double psd_Y_from_X(double sx, double p1, bool at_dc) { return at_dc ? 4 * sx + 1 - 4 * p1 : 4 * sx; }

double sinc2(double f) {
    if (f == 0) return 1.0;
    const double a = std::numbers::pi * f;
    const double s = std::sin(a) / a;
    return s * s;
}

double psd_W(double sy, double f) { return sinc2(f) * sy; }

std::vector<double> frequency_grid(int points) {
    if (points < 2) throw UsageError("the frequency grid needs at least 2 points");
    std::vector<double> f(static_cast<size_t>(points));
    for (int i = 0; i < points; ++i) f[static_cast<size_t>(i)] = -0.5 + (i + 0.5) / points;
    return f;
}

double dc_line_weight(const Rational& p1) {
    const Rational mean = 2 * p1 - 1;
    return Rational(mean * mean).get_d();
}

// ----------------------------------------------------------- dispatch

namespace {

std::complex<double> unit(double f) { return std::polar(1.0, 2 * std::numbers::pi * f); }

std::vector<double> eval_on_grid(const std::vector<double>& grid, const std::function<double(double)>& fn) {
    std::vector<double> out(grid.size());
    parallel_for(grid.size(), [&](size_t i) { out[i] = fn(grid[i]); });
    return out;
}

void add_lines_from_autocorr(const ConstraintFamily& family, PsdResult& r) {
    try {
        const AutocorrSeries s = exact_autocorr(family, Process::Y);
        for (const auto& line : discrete_lines(s).lines) r.lines.push_back(line);
    } catch (const CapacityError& e) {
        r.notes.push_back(std::string("discrete lines skipped: ") + e.what());
    }
}

}  // namespace

TransferMatrix family_matrix(const ConstraintFamily& family, Method method) {
    family.validate();
    switch (family.kind) {
        case Kind::Free: return unconstrained_matrix();
        case Kind::Ax:
            if (method == Method::Grid) return grid_ostm(family);
            if (method == Method::Alternate) return alternate_ax(family.x);
            return closed_form_ax(family.x);
        case Kind::Sx:
            if (method == Method::Grid) return grid_ostm(family);
            if (method == Method::Alternate) return alternate_sx(family.x);
            return closed_form_sx(family.x);
        case Kind::ALoco:
        case Kind::Loco:
        case Kind::CALoco:
        case Kind::CLoco: {
            if (method == Method::Alternate) throw UsageError("the alternate method exists only for ax and sx");
            const bool closed_ok = !is_clocked(family.kind) && *family.m >= family.x + 2;
            if (method == Method::ClosedForm && !closed_ok) {
                throw UsageError("no closed form for " + family.label() + " (needs an unclocked code with m >= x+2)");
            }
            if (method == Method::Grid || !closed_ok) return grid_ostm(family);
            return family.kind == Kind::ALoco ? closed_form_aloco(*family.m, family.x)
                                              : closed_form_loco_A(*family.m, family.x);
        }
    }
    throw UsageError("unsupported family");
}

PsdResult psd_loco(const ConstraintFamily& family, const std::vector<double>& grid, Method method) {
    if (!uses_z_bridge(family.kind)) throw UsageError("psd_loco needs a LOCO family");
    const SpectrumContext a(family_matrix(family, method));
    const SpectrumContext c(loco_C_matrix(*family.m, family.x));
    PsdResult r;
    r.family = family.label();
    r.method = a.matrix().method;
    r.grid = grid;
    auto& sa = r.components["S_A"];
    auto& sc = r.components["S_C"];
    sa = eval_on_grid(grid, [&](double f) { return a.psd_X(unit(f)); });
    sc = eval_on_grid(grid, [&](double f) { return c.psd_X(unit(f)); });
    auto& sy = r.components["S_Y"];
    sy.resize(grid.size());
    r.continuous.resize(grid.size());
    for (size_t i = 0; i < grid.size(); ++i) {
        sy[i] = 4 * sa[i] - sc[i];
        r.continuous[i] = psd_W(sy[i], grid[i]);
    }
    r.dc_limit = Rational(4 * a.psd_X_dc_limit() - c.psd_X_dc_limit()).get_d();
    return r;
}

PsdResult compute_psd(const ConstraintFamily& family, const PsdOptions& options) {
    family.validate();
    const std::vector<double> grid = frequency_grid(options.points);
    if (uses_z_bridge(family.kind)) return psd_loco(family, grid, options.method);

    const SpectrumContext main(family_matrix(family, options.method == Method::Alternate ? Method::Auto
                                                                                          : options.method));
    PsdResult r;
    r.family = family.label();
    r.grid = grid;
    auto& sy = r.components["S_Y"];
    if (options.method == Method::Alternate) {
        const SpectrumContext alt(family_matrix(family, Method::Alternate));
        r.method = "alternate";
        sy = eval_on_grid(grid, [&](double f) {
            const std::complex<double> D = unit(f);
            return alt.psd_V(D) / std::norm(1.0 - D);
        });
    } else {
        r.method = main.matrix().method;
        sy = eval_on_grid(grid, [&](double f) { return 4 * main.psd_X(unit(f)); });
    }
    r.continuous.resize(grid.size());
    for (size_t i = 0; i < grid.size(); ++i) r.continuous[i] = psd_W(sy[i], grid[i]);
    r.dc_limit = Rational(4 * main.psd_X_dc_limit()).get_d();

    if (is_finite(family.kind)) {
        if (options.lines) add_lines_from_autocorr(family, r);
    } else {
        const double w = dc_line_weight(main.p1());
        if (w > 0) r.lines.push_back({0.0, w});
    }
    return r;
}

}  // namespace cspec
